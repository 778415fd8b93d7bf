// spectra: command line front end for the builders, the curve toolkit and the
// reductions. Exit codes: 1 malformed input, 2 verification failure,
// 3 inconclusive reduction.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "spectra/constructions.hpp"
#include "spectra/curves.hpp"
#include "spectra/error.hpp"
#include "spectra/reductions.hpp"

using namespace spectra;

namespace {

constexpr int kMalformed = 1;
constexpr int kVerifyFailed = 2;
constexpr int kInconclusive = 3;

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::InvalidArgument, "cannot read " + path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

void write_file(const std::string& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::InvalidArgument, "cannot write " + path);
    out << text;
}

Presentation load_interpreted(const std::string& path)
{
    Presentation p = Presentation::load(read_file(path));
    if (!p.has_interpretation())
        throw Error(ErrorKind::InvalidArgument, path + ": dump has no interpretation section");
    return p;
}

std::string pair_text(const std::pair<std::size_t, std::size_t>& p)
{
    return "(" + std::to_string(p.first) + ", " + std::to_string(p.second) + ")";
}

std::string rational_text(const mpq_class& q) { return q.get_str(); }

struct BuildArgs {
    std::string kind, set, target, chip, phi, out, truth, policy = "toy";
    std::size_t stages = 0, closure = 1;
};

void emit_build(const BuildResult& r, const BuildArgs& a)
{
    const std::string dump = r.presentation.dump();
    if (a.out.empty())
        std::cout << dump;
    else
        write_file(a.out, dump);
    if (!a.truth.empty()) write_file(a.truth, r.truth.to_text());
    if (!a.out.empty())
        std::cout << "stages " << r.presentation.stage() << " domain " << r.presentation.domain_size() << " facts "
                  << r.presentation.facts().size() << '\n';
}

struct OracleArgs {
    std::string source = "structural";
    std::size_t degree = 7;
    std::uint64_t height = 64;

    TranscendenceOracle oracle() const
    {
        if (source == "structural") return TranscendenceOracle::structural();
        if (source == "bounded") return TranscendenceOracle::bounded(degree, height);
        throw Error(ErrorKind::InvalidArgument, "unknown oracle " + source);
    }
};

void add_oracle_flags(CLI::App* c, OracleArgs& o)
{
    c->add_option("--oracle", o.source, "structural or bounded")->check(CLI::IsMember({"structural", "bounded"}));
    c->add_option("--degree", o.degree, "degree bound of the bounded oracle");
    c->add_option("--height", o.height, "height bound of the bounded oracle");
}

// Comma separated indices or labels.
std::vector<std::size_t> parse_index_list(const Presentation& p, const std::string& text)
{
    std::vector<std::size_t> out;
    std::stringstream in(text);
    for (std::string tok; std::getline(in, tok, ',');) {
        if (tok.empty()) continue;
        if (std::all_of(tok.begin(), tok.end(), [](unsigned char c) { return std::isdigit(c); })) {
            std::size_t idx = std::stoull(tok);
            if (idx >= p.domain_size()) throw Error(ErrorKind::InvalidArgument, "index " + tok + " outside the domain");
            out.push_back(idx);
        } else {
            out.push_back(p.label(tok).index);
        }
    }
    return out;
}

void print_basis(const BasisEnumeration& b)
{
    for (std::size_t k = 0; k < b.emitted.size(); ++k) std::cout << b.emitted[k] << "  " << b.provenance[k] << '\n';
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"spectra: presentations of Fermat-curve fields and their transcendence relations"};
    app.require_subcommand(1);

    // primes
    std::size_t count = 1;
    bool toy = false, paper = false, allow_slow = false;
    auto* primes = app.add_subcommand("primes", "print q_0 .. q_{k-1}");
    primes->add_option("--count", count, "number of primes")->required();
    auto* paper_flag = primes->add_flag("--paper", paper, "q_{i+1} the least prime above (4(q_i - 1)(q_i - 2))^2 (default)");
    primes->add_flag("--toy", toy, "odd primes from 5")->excludes(paper_flag);
    primes->add_flag("--allow-slow", allow_slow, "allow the q_2 search");

    // curve
    std::size_t index = 0;
    bool curve_toy = false, curve_slow = false;
    auto* curve = app.add_subcommand("curve", "q_i, genus, rational points and orbit count of curve i");
    curve->add_option("--index", index, "curve index")->required();
    curve->add_flag("--toy", curve_toy, "toy prime sequence");
    curve->add_flag("--allow-slow", curve_slow, "allow the q_2 search");

    // build
    BuildArgs ba;
    auto* build_cmd = app.add_subcommand("build", "run a builder and write its dump");
    build_cmd->add_option("kind", ba.kind, "singleton, upcone or edegree")
        ->required()
        ->check(CLI::IsMember({"singleton", "upcone", "edegree"}));
    build_cmd->add_option("--set", ba.set, "schedule file for C");
    build_cmd->add_option("--chip", ba.chip, "chip file");
    build_cmd->add_option("--stages", ba.stages, "number of stages")->required();
    build_cmd->add_option("--policy", ba.policy, "paper or toy")->check(CLI::IsMember({"paper", "toy"}));
    build_cmd->add_option("--out", ba.out, "dump file (stdout when omitted)");
    build_cmd->add_option("--truth", ba.truth, "ground truth sidecar");
    build_cmd->add_option("--closure-steps", ba.closure, "closure steps per stage");

    BuildArgs ca;
    auto* copy_cmd = app.add_subcommand("build-copy", "run a copy builder driven by a target set D");
    copy_cmd->add_option("kind", ca.kind, "upcone or edegree")->required()->check(CLI::IsMember({"upcone", "edegree"}));
    copy_cmd->add_option("--set", ca.set, "schedule file for C");
    copy_cmd->add_option("--target", ca.target, "schedule file for D")->required();
    copy_cmd->add_option("--phi", ca.phi, "phi table file");
    copy_cmd->add_option("--stages", ca.stages, "number of stages")->required();
    copy_cmd->add_option("--policy", ca.policy, "paper or toy")->check(CLI::IsMember({"paper", "toy"}));
    copy_cmd->add_option("--out", ca.out, "dump file (stdout when omitted)");
    copy_cmd->add_option("--truth", ca.truth, "ground truth sidecar");
    copy_cmd->add_option("--closure-steps", ca.closure, "closure steps per stage");

    // fork
    std::size_t fork_curve = 0, prefix = 0, fork_stages = 0;
    std::string out_f, out_e, truth_f, truth_e, fork_policy = "toy";
    auto* fork = app.add_subcommand("fork", "two presentations sharing a diagram prefix");
    fork->add_option("--curve", fork_curve, "curve index")->required();
    fork->add_option("--prefix-stages", prefix, "stages in the shared prefix")->required();
    fork->add_option("--stages", fork_stages, "total stages")->required();
    fork->add_option("--out-f", out_f, "dump of F")->required();
    fork->add_option("--out-e", out_e, "dump of E")->required();
    fork->add_option("--truth-f", truth_f, "ground truth of F");
    fork->add_option("--truth-e", truth_e, "ground truth of E");
    fork->add_option("--policy", fork_policy, "paper or toy")->check(CLI::IsMember({"paper", "toy"}));

    // verify
    std::string dump_path, against;
    auto* verify_cmd = app.add_subcommand("verify", "check a dump");
    verify_cmd->add_option("dump", dump_path, "dump file")->required();
    verify_cmd->add_option("--against", against, "earlier dump of the same build");

    // reduce
    std::string verb, presentation, set_path, target_path, phi_path, basis_list;
    std::size_t reduce_curve = 0, j = 0, member_index = 0;
    MembershipBounds mb;
    OracleArgs oa;
    auto* reduce = app.add_subcommand("reduce", "run a reduction against a dump");
    reduce->add_option("verb", verb, "c-from-t, d-from-t, basis-from-c, basis-from-d or membership")
        ->required()
        ->check(CLI::IsMember({"c-from-t", "d-from-t", "basis-from-c", "basis-from-d", "membership"}));
    reduce->add_option("--presentation", presentation, "dump with interpretation")->required();
    reduce->add_option("--curve", reduce_curve, "curve index (c-from-t)");
    reduce->add_option("--j", j, "odd-side index (d-from-t)");
    reduce->add_option("--set", set_path, "schedule file for C (basis-from-c)");
    reduce->add_option("--target", target_path, "schedule file for D (basis-from-d)");
    reduce->add_option("--phi", phi_path, "phi table file (basis-from-d)");
    reduce->add_option("--basis", basis_list, "comma separated indices or labels (membership)");
    reduce->add_option("--index", member_index, "element index (membership)");
    reduce->add_option("--max-degree", mb.degree, "degree bound (membership)");
    reduce->add_option("--support", mb.support, "largest basis subset (membership)");
    add_oracle_flags(reduce, oa);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kMalformed;
    }

    try {
        if (*primes) {
            const PrimePolicy policy = toy ? PrimePolicy::Toy : PrimePolicy::Paper;
            for (std::size_t k = 0; k < count; ++k)
                std::cout << (k ? " " : "") << prime_sequence(k, policy, allow_slow);
            std::cout << '\n';
            return 0;
        }
        if (*curve) {
            const std::uint64_t q = prime_sequence(index, curve_toy ? PrimePolicy::Toy : PrimePolicy::Paper, curve_slow);
            std::cout << "index " << index << "\nq " << q << "\ngenus " << genus(q) << "\nsolutions";
            for (const auto& [x, y] : rational_solutions(index))
                std::cout << " (" << rational_text(x) << "," << rational_text(y) << ")";
            std::cout << "\norbit " << orbit_count(q) << '\n';
            return 0;
        }
        if (*build_cmd) {
            BuildRecipe rec;
            rec.stages = ba.stages;
            rec.policy = parse_policy(ba.policy);
            if (ba.kind == "edegree") {
                rec.kind = RecipeKind::Edegree;
                if (!ba.chip.empty()) rec.chips = parse_chips(read_file(ba.chip));
            } else {
                rec.kind = ba.kind == "singleton" ? RecipeKind::Singleton : RecipeKind::Upcone;
                if (!ba.set.empty()) rec.c = parse_schedule(read_file(ba.set));
            }
            emit_build(build(rec, {ba.closure, false}), ba);
            return 0;
        }
        if (*copy_cmd) {
            BuildRecipe rec;
            rec.stages = ca.stages;
            rec.policy = parse_policy(ca.policy);
            rec.d = parse_schedule(read_file(ca.target));
            if (ca.kind == "upcone") {
                rec.kind = RecipeKind::UpconeCopy;
                rec.c = ca.set.empty() ? EnumerationSchedule{} : parse_schedule(read_file(ca.set));
            } else {
                rec.kind = RecipeKind::EdegreeCopy;
                if (!ca.phi.empty()) rec.phi = parse_phi(read_file(ca.phi));
            }
            emit_build(build(rec, {ca.closure, false}), ca);
            return 0;
        }
        if (*fork) {
            ForkResult r = build_fork(fork_curve, prefix, fork_stages, parse_policy(fork_policy));
            write_file(out_f, r.f.presentation.dump());
            write_file(out_e, r.e.presentation.dump());
            if (!truth_f.empty()) write_file(truth_f, r.f.truth.to_text());
            if (!truth_e.empty()) write_file(truth_e, r.e.truth.to_text());
            std::cout << "prefix facts " << r.prefix_facts << '\n';
            return 0;
        }
        if (*verify_cmd) {
            std::optional<std::string> earlier;
            if (!against.empty()) earlier = read_file(against);
            VerifyReport rep = verify_dump(read_file(dump_path), earlier);
            if (rep.ok()) {
                std::cout << "ok\n";
                return 0;
            }
            std::cout << rep.to_string();
            return kVerifyFailed;
        }
        if (*reduce) {
            Presentation p = load_interpreted(presentation);
            const TranscendenceOracle oracle = oa.oracle();
            if (verb == "c-from-t") {
                CFromT r = c_from_t(p, oracle, reduce_curve);
                if (!r.conclusive) {
                    std::cout << "curve " << reduce_curve << ": inconclusive\n";
                    return kInconclusive;
                }
                if (r.in_c)
                    std::cout << "curve " << reduce_curve << ": in C (" << r.note << ")\n";
                else
                    std::cout << "curve " << reduce_curve << ": not in C, witness " << pair_text(*r.witness) << '\n';
                return 0;
            }
            if (verb == "d-from-t") {
                auto r = d_from_t(p, oracle, j);
                if (!r) {
                    std::cout << "j " << j << ": inconclusive\n";
                    return kInconclusive;
                }
                std::cout << "j " << j << ": " << (*r ? "in D" : "not in D") << '\n';
                return 0;
            }
            if (verb == "basis-from-c") {
                EnumerationSchedule c = set_path.empty() ? EnumerationSchedule{} : parse_schedule(read_file(set_path));
                print_basis(basis_from_c(p, c));
                return 0;
            }
            if (verb == "basis-from-d") {
                EnumerationSchedule d =
                    target_path.empty() ? EnumerationSchedule{} : parse_schedule(read_file(target_path));
                PhiTable phi = phi_path.empty() ? PhiTable{} : parse_phi(read_file(phi_path));
                print_basis(basis_from_d(p, d, phi));
                return 0;
            }
            // membership
            BasisEnumeration b;
            b.emitted = parse_index_list(p, basis_list);
            b.provenance.assign(b.emitted.size(), "command line");
            if (member_index >= p.domain_size()) throw Error(ErrorKind::InvalidArgument, "index outside the domain");
            MembershipDecision m = membership_via_basis(p, b, member_index, mb);
            switch (m.status) {
            case MembershipDecision::Status::Member: std::cout << "member"; break;
            case MembershipDecision::Status::NonMember: std::cout << "non-member"; break;
            case MembershipDecision::Status::Inconclusive: std::cout << "inconclusive\n"; return kInconclusive;
            }
            std::cout << ", witness " << m.witness->to_string() << '\n';
            return 0;
        }
    } catch (const Error& e) {
        std::cerr << "spectra: " << e.what() << '\n';
        return kMalformed;
    }
    return kMalformed;
}
