#include "spectra/presentation.hpp"

#include <algorithm>
#include <sstream>

#include "spectra/error.hpp"

namespace spectra {

std::string Fact::to_string() const
{
    std::ostringstream out;
    out << (kind == FactKind::Add ? "add " : "mul ") << a << ' ' << b << ' ' << c;
    return out.str();
}

std::string LedgerEntry::describe() const
{
    switch (kind) {
    case LedgerKind::Constant: return "constant";
    case LedgerKind::Transcendental: return "transcendental";
    case LedgerKind::Radical: return "radical q=" + std::to_string(q);
    case LedgerKind::Rationalized: return "rationalized a=" + value.get_num().get_str() + "/" + value.get_den().get_str();
    }
    return "";
}

StageEvent StageEvent::adjoin_pair(std::size_t curve, std::string x, std::string y)
{
    return {EventKind::AdjoinPair, curve, std::move(x), std::move(y)};
}

StageEvent StageEvent::adjoin_transcendental(std::string label)
{
    return {EventKind::AdjoinTranscendental, 0, std::move(label), {}};
}

StageEvent StageEvent::rationalize(std::string label) { return {EventKind::Rationalize, 0, std::move(label), {}}; }

Presentation::Presentation(PrimePolicy policy) : policy_(policy)
{
    intern(FieldElement::constant(tower_, 0));
    intern(FieldElement::constant(tower_, 1));
    record(FactKind::Mul, 1, 1, 1);
    ledger_.push_back({"zero", 0, LedgerKind::Constant, 0, 0});
    ledger_.push_back({"one", 1, LedgerKind::Constant, 0, 0});
    ledger_pos_["zero"] = 0;
    ledger_pos_["one"] = 1;
}

Presentation new_presentation(PrimePolicy policy) { return Presentation(policy); }

const LedgerEntry* Presentation::find_label(std::string_view label) const
{
    auto it = ledger_pos_.find(label);
    return it == ledger_pos_.end() ? nullptr : &ledger_[it->second];
}

const LedgerEntry& Presentation::label(std::string_view label) const
{
    const LedgerEntry* e = find_label(label);
    if (!e) throw Error(ErrorKind::UnknownLabel, "no ledger label '" + std::string(label) + "'");
    return *e;
}

std::optional<std::size_t> Presentation::index_of(const FieldElement& value) const
{
    auto it = index_.find(value);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

void Presentation::check_fresh(const std::string& label) const
{
    if (find_label(label) || tower_.find(label)) throw Error(ErrorKind::DuplicateLabel, "label '" + label + "' in use");
}

std::size_t Presentation::intern(FieldElement value)
{
    auto it = index_.find(value);
    if (it != index_.end()) return it->second;
    std::size_t n = interp_.size();
    index_.emplace(value, n);
    interp_.push_back(std::move(value));
    return n;
}

void Presentation::record(FactKind kind, std::size_t a, std::size_t b, std::size_t c)
{
    facts_.push_back({kind, a, b, c});
    fact_of_[{static_cast<int>(kind), std::min(a, b), std::max(a, b)}] = c;
    if (kind == FactKind::Add && c == 0) {
        negated_.insert(a);
        negated_.insert(b);
    }
    if (kind == FactKind::Mul && c == 1) {
        inverted_.insert(a);
        inverted_.insert(b);
    }
}

std::optional<std::size_t> Presentation::covered(FactKind kind, std::size_t a, std::size_t b) const
{
    auto it = fact_of_.find({static_cast<int>(kind), std::min(a, b), std::max(a, b)});
    if (it == fact_of_.end()) return std::nullopt;
    return it->second;
}

std::size_t Presentation::compute(FactKind kind, std::size_t a, std::size_t b)
{
    FieldElement v = kind == FactKind::Add ? interp_[a] + interp_[b] : interp_[a] * interp_[b];
    std::size_t c = intern(std::move(v));
    record(kind, a, b, c);
    return c;
}

std::pair<std::size_t, std::size_t> Presentation::adjoin_curve_pair(std::size_t curve, const std::string& label_x,
                                                                    const std::string& label_y)
{
    check_fresh(label_x);
    check_fresh(label_y);
    if (label_x == label_y) throw Error(ErrorKind::DuplicateLabel, "label '" + label_x + "' used twice");
    const std::uint64_t q64 = prime_sequence(curve, policy_);
    if (q64 > 0xffffffffULL) throw Error(ErrorKind::Unsupported, "curve exponent too large");
    const auto q = static_cast<std::uint32_t>(q64);

    Tower t = adjoin(tower_, GeneratorSpec::transcendental(label_x));
    FieldElement x = FieldElement::generator(t, label_x);
    t = adjoin(t, GeneratorSpec::radical(label_y, q, FieldElement::constant(t, 1) - x.pow(q)));
    tower_ = t;
    std::size_t ix = intern(FieldElement::generator(tower_, label_x));
    std::size_t iy = intern(FieldElement::generator(tower_, label_y));
    ledger_pos_[label_x] = ledger_.size();
    ledger_.push_back({label_x, ix, LedgerKind::Transcendental, 0, 0});
    ledger_pos_[label_y] = ledger_.size();
    ledger_.push_back({label_y, iy, LedgerKind::Radical, q, 0});
    pairs_.push_back({label_x, label_y, curve, q});
    enqueue_curve_program(ix, iy, q);
    return {ix, iy};
}

std::size_t Presentation::adjoin_transcendental(const std::string& label)
{
    check_fresh(label);
    tower_ = adjoin(tower_, GeneratorSpec::transcendental(label));
    std::size_t ix = intern(FieldElement::generator(tower_, label));
    ledger_pos_[label] = ledger_.size();
    ledger_.push_back({label, ix, LedgerKind::Transcendental, 0, 0});
    return ix;
}

void Presentation::rebuild_index()
{
    index_.clear();
    for (std::size_t i = 0; i < interp_.size(); ++i) index_.emplace(interp_[i], i);
}

mpq_class Presentation::rationalize(const std::string& label_x)
{
    const LedgerEntry& entry = label(label_x);
    const Generator* g = tower_.find(label_x);
    if (entry.kind != LedgerKind::Transcendental || !g || g->kind != GeneratorKind::Transcendental) {
        throw Error(ErrorKind::NotTranscendental, "'" + label_x + "' is not a transcendental generator");
    }
    for (auto& v : interp_) v = v.embed(tower_);

    for (long a = 2; a < 100000; ++a) {
        const mpq_class value(a);
        Tower target;
        try {
            target = substituted_tower(tower_, label_x, value);
        } catch (const Error& e) {
            if (e.kind() == ErrorKind::DegenerateRadicand || e.kind() == ErrorKind::ReducibleRelation) continue;
            throw;
        }
        std::vector<FieldElement> next;
        next.reserve(interp_.size());
        std::unordered_map<FieldElement, std::size_t, FieldElementHash> seen;
        bool ok = true;
        for (std::size_t i = 0; i < interp_.size() && ok; ++i) {
            try {
                FieldElement v = substitute(interp_[i], label_x, value, target);
                ok = seen.emplace(v, i).second;
                next.push_back(std::move(v));
            } catch (const Error& e) {
                if (e.kind() != ErrorKind::SubstitutionSingularity && e.kind() != ErrorKind::DivisionByZero) throw;
                ok = false;
            }
        }
        if (!ok) continue;

        tower_ = target;
        interp_ = std::move(next);
        index_ = std::move(seen);
        LedgerEntry& e = ledger_[ledger_pos_.at(label_x)];
        e.kind = LedgerKind::Rationalized;
        e.value = value;
        enqueue_integer_program(e.index, value);
        return value;
    }
    throw Error(ErrorKind::Unsupported, "no admissible rational value for '" + label_x + "'");
}

void Presentation::enqueue_curve_program(std::size_t x, std::size_t y, std::uint32_t q)
{
    // x^2, ..., x^q, then y^2, ..., y^q, then x^q + y^q
    Program prog;
    std::size_t xq = 0;
    for (std::size_t base : {x, y}) {
        Operand prev{false, base};
        for (std::uint32_t e = 2; e <= q; ++e) {
            prog.steps.push_back({FactKind::Mul, prev, Operand{false, base}});
            prev = Operand{true, prog.steps.size() - 1};
        }
        if (base == x) xq = prog.steps.size() - 1;
    }
    prog.steps.push_back({FactKind::Add, Operand{true, xq}, Operand{true, prog.steps.size() - 1}});
    programs_.push_back(std::move(prog));
}

void Presentation::enqueue_integer_program(std::size_t, const mpq_class& value)
{
    // 1 + 1, then + 1 until the value
    if (value.get_den() != 1 || value < 2) return;
    Program prog;
    Operand prev{false, 1};
    for (mpz_class k = 2; k <= value.get_num(); ++k) {
        prog.steps.push_back({FactKind::Add, prev, Operand{false, 1}});
        prev = Operand{true, prog.steps.size() - 1};
    }
    programs_.push_back(std::move(prog));
}

bool Presentation::program_step()
{
    while (!programs_.empty()) {
        Program& prog = programs_.front();
        if (prog.results.size() == prog.steps.size()) {
            programs_.pop_front();
            continue;
        }
        const ProgramStep& st = prog.steps[prog.results.size()];
        auto resolve = [&](const Operand& o) { return o.from_step ? prog.results[o.value] : o.value; };
        std::size_t a = resolve(st.a), b = resolve(st.b);
        if (auto c = covered(st.op, a, b)) {
            prog.results.push_back(*c);
            continue;
        }
        prog.results.push_back(compute(st.op, a, b));
        return true;
    }
    return false;
}

bool Presentation::dovetail_step()
{
    // level k: add(a,k), mul(a,k) for a = 0..k, then neg(k), inv(k)
    while (level_ < interp_.size()) {
        const std::size_t k = level_, pos = position_;
        if (++position_ == 2 * k + 4) {
            ++level_;
            position_ = 0;
        }
        if (pos < 2 * k + 2) {
            const FactKind kind = pos % 2 == 0 ? FactKind::Add : FactKind::Mul;
            const std::size_t a = pos / 2;
            if (covered(kind, a, k)) continue;
            compute(kind, a, k);
            return true;
        }
        if (pos == 2 * k + 2) {
            if (negated_.count(k)) continue;
            std::size_t r = intern(-interp_[k]);
            record(FactKind::Add, k, r, 0);
            return true;
        }
        if (k == 0 || inverted_.count(k)) continue;
        std::size_t r = intern(interp_[k].inverse());
        record(FactKind::Mul, k, r, 1);
        return true;
    }
    return false;
}

bool Presentation::closure_step()
{
    const bool program_first = program_turn_;
    program_turn_ = !program_turn_;
    if (program_first && program_step()) return true;
    if (dovetail_step()) return true;
    return program_step();
}

void Presentation::apply(const StageEvent& event)
{
    switch (event.kind) {
    case EventKind::AdjoinPair: adjoin_curve_pair(event.curve, event.label, event.label_y); break;
    case EventKind::AdjoinTranscendental: adjoin_transcendental(event.label); break;
    case EventKind::Rationalize: rationalize(event.label); break;
    }
}

void Presentation::advance_stage(const std::vector<StageEvent>& events, std::size_t closure_steps)
{
    for (const StageEvent& e : events) apply(e);
    for (std::size_t k = 0; k < closure_steps; ++k) closure_step();
    ++stage_;
}

std::string Presentation::dump(bool debug) const
{
    std::ostringstream out;
    out << "presentation v1\n";
    out << "policy " << to_string(policy_) << '\n';
    out << "stage " << stage_ << '\n';
    out << "domain " << interp_.size() << '\n';
    for (const Fact& f : facts_) out << f.to_string() << '\n';
    for (const LedgerEntry& e : ledger_) out << "label " << e.label << ' ' << e.index << ' ' << e.describe() << '\n';
    if (!debug || !has_interp_) return out.str();
    for (const Generator& g : tower_.generators()) {
        out << "# gen " << g.label;
        if (g.kind == GeneratorKind::Transcendental)
            out << " transcendental\n";
        else
            out << " radical " << g.q << ' ' << g.radicand->to_string() << '\n';
    }
    for (const CurvePairRecord& c : pairs_)
        out << "# pair " << c.x_label << ' ' << c.y_label << ' ' << c.curve << ' ' << c.q << '\n';
    for (std::size_t i = 0; i < interp_.size(); ++i) out << "# interp " << i << ' ' << interp_[i].to_string() << '\n';
    return out.str();
}

namespace {

[[noreturn]] void parse_fail(std::size_t line, const std::string& why)
{
    throw Error(ErrorKind::ParseError, "line " + std::to_string(line) + ": " + why);
}

std::size_t parse_index(const std::string& t, std::size_t line)
{
    if (t.empty() || !std::all_of(t.begin(), t.end(), [](char c) { return c >= '0' && c <= '9'; }))
        parse_fail(line, "expected an index, got '" + t + "'");
    try {
        return std::stoull(t);
    } catch (const std::exception&) {
        parse_fail(line, "index out of range '" + t + "'");
    }
}

// Rest of the line after n whitespace-separated tokens.
std::string rest_after(const std::string& line, int n)
{
    std::istringstream ls(line);
    std::string t;
    for (int k = 0; k < n; ++k) ls >> t;
    std::string rest;
    std::getline(ls, rest);
    rest.erase(0, rest.find_first_not_of(' '));
    return rest;
}

}  // namespace

Presentation Presentation::load(std::string_view text)
{
    std::istringstream in{std::string(text)};
    std::vector<std::string> lines;
    for (std::string l; std::getline(in, l);) lines.push_back(l);

    const char* header[] = {"presentation", "policy", "stage", "domain"};
    if (lines.size() < 4) parse_fail(lines.size() + 1, "truncated header");
    std::vector<std::string> values;
    for (int k = 0; k < 4; ++k) {
        std::istringstream ls(lines[k]);
        std::string key, value, extra;
        ls >> key >> value;
        if (key != header[k] || value.empty() || (ls >> extra)) parse_fail(k + 1, "expected '" + std::string(header[k]) + " <value>'");
        values.push_back(value);
    }
    if (values[0] != "v1") parse_fail(1, "unsupported version '" + values[0] + "'");
    Presentation p;
    try {
        p.policy_ = parse_policy(values[1]);
    } catch (const Error&) {
        parse_fail(2, "unknown policy '" + values[1] + "'");
    }
    p.stage_ = parse_index(values[2], 3);
    const std::size_t domain = parse_index(values[3], 4);

    p.facts_.clear();
    p.fact_of_.clear();
    p.negated_.clear();
    p.inverted_.clear();
    p.ledger_.clear();
    p.ledger_pos_.clear();
    std::map<std::size_t, std::pair<std::size_t, std::string>> interp_text;  // index -> line, text
    Tower tower;

    for (std::size_t k = 4; k < lines.size(); ++k) {
        const std::size_t no = k + 1;
        const std::string& line = lines[k];
        std::istringstream ls(line);
        std::vector<std::string> tok;
        for (std::string t; ls >> t;) tok.push_back(t);
        if (tok.empty()) continue;
        if (tok[0] == "add" || tok[0] == "mul") {
            if (tok.size() != 4) parse_fail(no, "fact needs three indices");
            std::size_t a = parse_index(tok[1], no), b = parse_index(tok[2], no), c = parse_index(tok[3], no);
            if (a >= domain || b >= domain || c >= domain) parse_fail(no, "fact index outside the domain");
            p.record(tok[0] == "add" ? FactKind::Add : FactKind::Mul, a, b, c);
        } else if (tok[0] == "label") {
            if (tok.size() < 4) parse_fail(no, "label needs name, index and kind");
            LedgerEntry e{tok[1], parse_index(tok[2], no), LedgerKind::Constant, 0, 0};
            if (e.index >= domain) parse_fail(no, "label index outside the domain");
            const std::string& kind = tok[3];
            if (kind == "constant" && tok.size() == 4) {
            } else if (kind == "transcendental" && tok.size() == 4) {
                e.kind = LedgerKind::Transcendental;
            } else if (kind == "radical" && tok.size() == 5 && tok[4].rfind("q=", 0) == 0) {
                e.kind = LedgerKind::Radical;
                e.q = static_cast<std::uint32_t>(parse_index(tok[4].substr(2), no));
            } else if (kind == "rationalized" && tok.size() == 5 && tok[4].rfind("a=", 0) == 0) {
                e.kind = LedgerKind::Rationalized;
                try {
                    e.value = mpq_class(tok[4].substr(2));
                    e.value.canonicalize();
                } catch (const std::exception&) {
                    parse_fail(no, "bad rational '" + tok[4] + "'");
                }
            } else {
                parse_fail(no, "unknown ledger kind");
            }
            if (p.ledger_pos_.count(e.label)) parse_fail(no, "duplicate label '" + e.label + "'");
            p.ledger_pos_[e.label] = p.ledger_.size();
            p.ledger_.push_back(std::move(e));
        } else if (tok[0] == "#") {
            if (tok.size() >= 2 && tok[1] == "gen") {
                if (tok.size() == 4 && tok[3] == "transcendental") {
                    try {
                        tower = adjoin(tower, GeneratorSpec::transcendental(tok[2]));
                    } catch (const Error& e) {
                        parse_fail(no, e.what());
                    }
                } else if (tok.size() >= 6 && tok[3] == "radical") {
                    try {
                        auto q = static_cast<std::uint32_t>(parse_index(tok[4], no));
                        FieldElement rad = parse_element(rest_after(line, 5), tower);
                        tower = adjoin(tower, GeneratorSpec::radical(tok[2], q, rad));
                    } catch (const Error& e) {
                        parse_fail(no, e.what());
                    }
                } else {
                    parse_fail(no, "malformed generator line");
                }
            } else if (tok.size() >= 2 && tok[1] == "pair") {
                if (tok.size() != 6) parse_fail(no, "malformed pair line");
                p.pairs_.push_back({tok[2], tok[3], parse_index(tok[4], no),
                                    static_cast<std::uint32_t>(parse_index(tok[5], no))});
            } else if (tok.size() >= 2 && tok[1] == "interp") {
                if (tok.size() < 4) parse_fail(no, "malformed interp line");
                std::size_t idx = parse_index(tok[2], no);
                if (idx >= domain || interp_text.count(idx)) parse_fail(no, "bad interp index");
                interp_text[idx] = {no, rest_after(line, 3)};
            }
        } else {
            parse_fail(no, "unrecognized line");
        }
    }

    p.tower_ = tower;
    p.interp_.clear();
    p.index_.clear();
    if (interp_text.size() == domain) {
        for (const auto& [idx, where] : interp_text) {
            try {
                p.interp_.push_back(parse_element(where.second, tower));
            } catch (const Error& e) {
                parse_fail(where.first, e.what());
            }
        }
        p.rebuild_index();
    } else {
        if (!interp_text.empty()) parse_fail(lines.size(), "interp section covers only part of the domain");
        p.has_interp_ = false;
        for (std::size_t i = 0; i < domain; ++i) p.interp_.push_back(FieldElement::constant(tower, 0));
    }
    return p;
}

std::string VerifyReport::to_string() const
{
    if (violations.empty()) return "ok\n";
    std::ostringstream out;
    for (const Violation& v : violations) out << '(' << v.check << ") " << v.message << '\n';
    return out.str();
}

std::vector<std::string> dump_fact_lines(std::string_view dump)
{
    std::vector<std::string> out;
    std::istringstream in{std::string(dump)};
    for (std::string l; std::getline(in, l);) {
        if (l.rfind("add ", 0) == 0 || l.rfind("mul ", 0) == 0) out.push_back(l);
    }
    return out;
}

VerifyReport verify(const Presentation& p, const std::optional<std::string>& earlier_dump)
{
    VerifyReport r;
    const std::size_t n = p.domain_size();
    if (!p.has_interpretation()) {
        r.violations.push_back({'a', "no interpretation section; facts cannot be checked"});
    } else {
        for (std::size_t k = 0; k < p.facts().size(); ++k) {
            const Fact& f = p.facts()[k];
            if (f.a >= n || f.b >= n || f.c >= n) {
                r.violations.push_back({'a', "fact " + std::to_string(k) + " '" + f.to_string() + "' leaves the domain"});
                continue;
            }
            FieldElement v = f.kind == FactKind::Add ? p.interp(f.a) + p.interp(f.b) : p.interp(f.a) * p.interp(f.b);
            if (v != p.interp(f.c))
                r.violations.push_back({'a', "fact " + std::to_string(k) + " '" + f.to_string() + "' does not hold"});
        }
        std::unordered_map<FieldElement, std::size_t, FieldElementHash> seen;
        for (std::size_t i = 0; i < n; ++i) {
            auto [it, fresh] = seen.emplace(p.interp(i), i);
            if (!fresh)
                r.violations.push_back(
                    {'b', "indices " + std::to_string(it->second) + " and " + std::to_string(i) + " denote one element"});
        }
        for (const CurvePairRecord& c : p.curve_pairs()) {
            const LedgerEntry* x = p.find_label(c.x_label);
            const LedgerEntry* y = p.find_label(c.y_label);
            if (!x || !y) {
                r.violations.push_back({'d', "curve pair " + c.x_label + ", " + c.y_label + " is not in the ledger"});
                continue;
            }
            if (!evaluate_curve_q(c.q, p.interp(x->index), p.interp(y->index)).is_zero())
                r.violations.push_back({'d', "curve pair " + c.x_label + ", " + c.y_label + " is off its curve"});
        }
    }
    if (earlier_dump) {
        auto before = dump_fact_lines(*earlier_dump);
        if (before.size() > p.facts().size()) {
            r.violations.push_back({'c', "earlier dump has more facts"});
        } else {
            for (std::size_t k = 0; k < before.size(); ++k) {
                if (before[k] != p.facts()[k].to_string()) {
                    r.violations.push_back({'c', "fact " + std::to_string(k) + " differs from the earlier dump"});
                    break;
                }
            }
        }
    }
    return r;
}

VerifyReport verify_dump(std::string_view dump, const std::optional<std::string>& earlier_dump)
{
    return verify(Presentation::load(dump), earlier_dump);
}

}  // namespace spectra
