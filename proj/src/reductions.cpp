#include "spectra/reductions.hpp"

#include <algorithm>
#include <map>
#include <regex>
#include <set>
#include <sstream>

#include "spectra/error.hpp"

namespace spectra {

bool ground_truth_T(const Presentation& p, std::size_t idx) { return !p.interp(idx).is_structurally_algebraic(); }

std::string_view to_string(Verdict v)
{
    switch (v) {
    case Verdict::Transcendental: return "transcendental";
    case Verdict::Algebraic: return "algebraic";
    case Verdict::Inconclusive: return "inconclusive";
    }
    return "";
}

namespace {

using Exponents = std::vector<std::uint32_t>;

// total degree first, then lex with earlier variables more significant
bool deglex_greater(const Monomial& a, const Monomial& b)
{
    if (a.total_degree() != b.total_degree()) return a.total_degree() > b.total_degree();
    return Monomial::compare(a, b) > 0;
}

}  // namespace

std::string Witness::to_string() const
{
    if (poly.is_zero()) return "0";
    std::vector<Poly::Term> terms = poly.terms();
    std::sort(terms.begin(), terms.end(),
              [](const Poly::Term& a, const Poly::Term& b) { return deglex_greater(a.mono, b.mono); });
    std::ostringstream os;
    bool first = true;
    for (const auto& t : terms) {
        mpz_class c = t.coeff;
        if (first)
            os << (c < 0 ? "-" : "");
        else
            os << (c < 0 ? " - " : " + ");
        first = false;
        c = abs(c);
        bool wrote = false;
        if (c != 1 || t.mono.is_one()) {
            os << c.get_str();
            wrote = true;
        }
        for (const auto& [v, e] : t.mono.factors()) {
            if (wrote) os << "*";
            os << names.at(v);
            if (e != 1) os << "^" << e;
            wrote = true;
        }
    }
    return os.str();
}

mpz_class Witness::height() const
{
    mpz_class h = 0;
    for (const auto& t : poly.terms()) h = std::max<mpz_class>(h, abs(t.coeff));
    return h;
}

namespace {

// ---------------------------------------------------------------- linear algebra over Q

// A coordinate of a tower element scaled to a common denominator: radical
// monomial times a monomial in the transcendentals.
struct Key {
    Monomial r, t;
};

struct KeyGreater {
    bool operator()(const Key& a, const Key& b) const
    {
        int c = Monomial::compare(a.r, b.r);
        if (c != 0) return c > 0;
        return Monomial::compare(a.t, b.t) > 0;
    }
};

using Vec = std::map<Key, mpq_class, KeyGreater>;
using Comb = std::map<std::size_t, mpq_class>;

template <class Map>
void axpy(Map& dst, const mpq_class& f, const Map& src)
{
    for (const auto& [k, c] : src) {
        auto [it, fresh] = dst.emplace(k, 0);
        it->second -= f * c;
        if (it->second == 0) dst.erase(it);
    }
}

// Incremental echelon form keyed by leading coordinate. Elements are scaled by
// a running common denominator L; when L grows every stored row is multiplied
// by the same polynomial, which keeps leading coordinates distinct.
class Eliminator {
public:
    std::optional<Comb> add(const FieldElement& value, std::size_t id)
    {
        Vec v = to_vec(value);
        Comb comb{{id, 1}};
        while (!v.empty()) {
            auto it = rows_.find(v.begin()->first);
            if (it == rows_.end()) {
                Key lead = v.begin()->first;
                rows_.emplace(std::move(lead), Row{std::move(v), std::move(comb)});
                return std::nullopt;
            }
            const mpq_class f = v.begin()->second / it->second.v.begin()->second;
            axpy(v, f, it->second.v);
            axpy(comb, f, it->second.comb);
        }
        return comb;
    }

private:
    struct Row {
        Vec v;
        Comb comb;
    };

    Vec to_vec(const FieldElement& value)
    {
        for (const auto& term : value.terms()) {
            const Poly& d = term.coeff.den();
            if (!l_.divide_exact(d)) {
                Poly k = *d.divide_exact(gcd(l_, d));
                rescale(k);
                l_ *= k;
            }
        }
        Vec v;
        for (const auto& term : value.terms()) {
            Poly scaled = term.coeff.num() * *l_.divide_exact(term.coeff.den());
            for (const auto& pt : scaled.terms()) v.emplace(Key{term.radicals, pt.mono}, mpq_class(pt.coeff));
        }
        return v;
    }

    void rescale(const Poly& k)
    {
        std::map<Key, Row, KeyGreater> next;
        for (auto& [lead, row] : rows_) {
            Vec nv;
            for (const auto& [key, c] : row.v) {
                for (const auto& kt : k.terms()) {
                    auto [it, fresh] = nv.emplace(Key{key.r, key.t * kt.mono}, 0);
                    it->second += c * kt.coeff;
                    if (it->second == 0) nv.erase(it);
                }
            }
            Key nl = nv.begin()->first;
            next.emplace(std::move(nl), Row{std::move(nv), std::move(row.comb)});
        }
        rows_ = std::move(next);
    }

    Poly l_ = Poly(1);
    std::map<Key, Row, KeyGreater> rows_;
};

// Exponent vectors of n variables with total degree d, highest lex first.
void exponents_of_degree(std::size_t n, std::uint32_t d, Exponents& cur, std::vector<Exponents>& out)
{
    if (cur.size() + 1 == n) {
        cur.push_back(d);
        out.push_back(cur);
        cur.pop_back();
        return;
    }
    for (std::uint32_t e = d + 1; e-- > 0;) {
        cur.push_back(e);
        exponents_of_degree(n, d - e, cur, out);
        cur.pop_back();
    }
}

std::vector<Exponents> exponents_of_degree(std::size_t n, std::uint32_t d)
{
    std::vector<Exponents> out;
    Exponents cur;
    if (n == 0) {
        if (d == 0) out.push_back({});
        return out;
    }
    exponents_of_degree(n, d, cur, out);
    return out;
}

Monomial monomial_of(const Exponents& e)
{
    Monomial m;
    for (std::size_t k = 0; k < e.size(); ++k)
        if (e[k]) m = m * Monomial::var(k, e[k]);
    return m;
}

// Values of monomials in a fixed tuple, with cached powers.
class MonomialValues {
public:
    MonomialValues(const Presentation& p, std::vector<std::size_t> tuple) : p_(p), tuple_(std::move(tuple))
    {
        powers_.resize(tuple_.size());
        for (std::size_t k = 0; k < tuple_.size(); ++k) powers_[k].push_back(FieldElement::constant(p.tower(), 1));
    }

    FieldElement value(const Exponents& e)
    {
        FieldElement v = FieldElement::constant(p_.tower(), 1);
        for (std::size_t k = 0; k < e.size(); ++k)
            if (e[k]) v = v * power(k, e[k]);
        return v;
    }

private:
    const FieldElement& power(std::size_t k, std::uint32_t e)
    {
        auto& pw = powers_[k];
        while (pw.size() <= e) pw.push_back(pw.back() * p_.interp(tuple_[k]));
        return pw[e];
    }

    const Presentation& p_;
    std::vector<std::size_t> tuple_;
    std::vector<std::vector<FieldElement>> powers_;
};

// Search state for one tuple, grown one total degree at a time.
class KernelSearch {
public:
    KernelSearch(const Presentation& p, std::vector<std::size_t> tuple)
        : n_(tuple.size()), values_(p, std::move(tuple))
    {
    }

    // Adds all monomials of the next degree; returns the kernel vectors found.
    std::vector<Poly> grow()
    {
        std::vector<Poly> found;
        for (Exponents& e : exponents_of_degree(n_, next_degree_)) {
            const std::size_t id = monos_.size();
            monos_.push_back(std::move(e));
            if (auto comb = elim_.add(values_.value(monos_.back()), id)) found.push_back(to_poly(*comb));
        }
        ++next_degree_;
        return found;
    }

    std::uint32_t degree_done() const { return next_degree_ == 0 ? 0 : next_degree_ - 1; }

private:
    Poly to_poly(const Comb& comb) const
    {
        mpz_class den = 1;
        for (const auto& [id, c] : comb) den = lcm(den, c.get_den());
        Poly f;
        for (const auto& [id, c] : comb) {
            mpq_class s = c * den;
            f += Poly::monomial(monomial_of(monos_[id]), s.get_num());
        }
        f = f.divide_integer(f.integer_content());
        // sign of the degree-lex leading term
        const Poly::Term* lead = &f.terms().front();
        for (const auto& t : f.terms())
            if (deglex_greater(t.mono, lead->mono)) lead = &t;
        if (lead->coeff < 0) f = -f;
        return f;
    }

    std::size_t n_;
    MonomialValues values_;
    Eliminator elim_;
    std::vector<Exponents> monos_;
    std::uint32_t next_degree_ = 0;
};

// Lower height first, then coefficients in degree-lex order.
bool better_witness(const Poly& a, const Poly& b)
{
    auto height = [](const Poly& f) {
        mpz_class h = 0;
        for (const auto& t : f.terms()) h = std::max<mpz_class>(h, abs(t.coeff));
        return h;
    };
    mpz_class ha = height(a), hb = height(b);
    if (ha != hb) return ha < hb;
    auto sorted = [](const Poly& f) {
        std::vector<Poly::Term> t = f.terms();
        std::sort(t.begin(), t.end(), [](const auto& x, const auto& y) { return deglex_greater(x.mono, y.mono); });
        return t;
    };
    auto ta = sorted(a), tb = sorted(b);
    for (std::size_t k = 0; k < std::min(ta.size(), tb.size()); ++k) {
        if (ta[k].mono != tb[k].mono) return deglex_greater(ta[k].mono, tb[k].mono);
        if (ta[k].coeff != tb[k].coeff) return ta[k].coeff < tb[k].coeff;
    }
    return ta.size() < tb.size();
}

std::vector<std::string> tuple_names(std::size_t n)
{
    if (n == 1) return {"X"};
    if (n == 2) return {"X", "Y"};
    std::vector<std::string> out;
    for (std::size_t k = 1; k <= n; ++k) out.push_back("X" + std::to_string(k));
    return out;
}

}  // namespace

FieldElement evaluate_witness(const Presentation& p, const Poly& f, const std::vector<std::size_t>& tuple)
{
    FieldElement sum = FieldElement::constant(p.tower(), 0);
    for (const auto& t : f.terms()) {
        FieldElement term = FieldElement::constant(p.tower(), mpq_class(t.coeff));
        for (const auto& [v, e] : t.mono.factors()) term = term * p.interp(tuple.at(v)).pow(e);
        sum = sum + term;
    }
    return sum;
}

AnnihilatorResult annihilator_search(const Presentation& p, const std::vector<std::size_t>& tuple,
                                     std::size_t degree_bound, const mpz_class& height_bound)
{
    if (tuple.empty()) throw Error(ErrorKind::InvalidArgument, "empty tuple");
    for (auto idx : tuple)
        if (idx >= p.domain_size()) throw Error(ErrorKind::InvalidArgument, "index outside the domain");

    AnnihilatorResult r;
    KernelSearch search(p, tuple);
    bool any = false;
    for (std::size_t d = 0; d <= degree_bound; ++d) {
        std::optional<Poly> best;
        for (Poly& f : search.grow()) {
            if (!any) r.kernel_degree = d;
            any = true;
            mpz_class h = 0;
            for (const auto& t : f.terms()) h = std::max<mpz_class>(h, abs(t.coeff));
            if (h > height_bound) continue;
            if (!best || better_witness(f, *best)) best = std::move(f);
        }
        if (best) {
            if (!evaluate_witness(p, *best, tuple).is_zero())
                throw Error(ErrorKind::Unsupported, "internal: witness does not annihilate");
            r.status = SearchStatus::Found;
            r.witness = Witness{std::move(*best), tuple_names(tuple.size())};
            return r;
        }
    }
    r.status = any ? SearchStatus::ExistsBeyondHeight : SearchStatus::NoneExists;
    return r;
}

Verdict TranscendenceOracle::query(const Presentation& p, std::size_t idx) const
{
    if (source == Source::Structural) return ground_truth_T(p, idx) ? Verdict::Transcendental : Verdict::Algebraic;
    AnnihilatorResult r = annihilator_search(p, {idx}, degree_bound, height_bound);
    switch (r.status) {
    case SearchStatus::Found: return Verdict::Algebraic;
    case SearchStatus::NoneExists: return Verdict::Transcendental;
    case SearchStatus::ExistsBeyondHeight: return Verdict::Inconclusive;
    }
    return Verdict::Inconclusive;
}

MembershipDecision membership_via_basis(const Presentation& p, const BasisEnumeration& b, std::size_t idx,
                                        const MembershipBounds& bounds)
{
    const std::vector<std::size_t>& basis = b.emitted;
    const std::size_t max_k = std::min(bounds.support, basis.size());
    std::map<std::vector<std::size_t>, KernelSearch> searches;  // by positions in B

    for (std::size_t d = 0; d <= bounds.degree; ++d) {
        for (std::size_t k = 0; k <= max_k; ++k) {
            // subsets of positions of size k, lex order
            std::vector<std::size_t> pos(k);
            for (std::size_t m = 0; m < k; ++m) pos[m] = m;
            while (true) {
                auto it = searches.find(pos);
                if (it == searches.end()) {
                    std::vector<std::size_t> tuple{idx};
                    for (auto q : pos) tuple.push_back(basis[q]);
                    it = searches.emplace(pos, KernelSearch(p, tuple)).first;
                }
                std::optional<Poly> best;
                for (Poly& f : it->second.grow()) {
                    if (!f.contains(0))
                        throw Error(ErrorKind::InvalidArgument, "basis elements satisfy a polynomial relation");
                    if (!best || better_witness(f, *best)) best = std::move(f);
                }
                if (best) {
                    MembershipDecision out;
                    std::vector<std::string> names{"X"};
                    bool member = false;
                    for (auto q : pos) {
                        names.push_back("Y" + std::to_string(q));
                        out.support.push_back(basis[q]);
                        member = member || basis[q] == idx;
                    }
                    out.status = member ? MembershipDecision::Status::Member : MembershipDecision::Status::NonMember;
                    out.witness = Witness{std::move(*best), std::move(names)};
                    return out;
                }
                // next subset
                std::size_t m = k;
                while (m > 0 && pos[m - 1] == basis.size() - k + m - 1) --m;
                if (m == 0) break;
                ++pos[m - 1];
                for (std::size_t r = m; r < k; ++r) pos[r] = pos[r - 1] + 1;
            }
        }
    }
    return {};
}

std::vector<std::size_t> curves_in(const Presentation& p)
{
    std::set<std::size_t> out;
    for (const auto& c : p.curve_pairs()) out.insert(c.curve);
    return {out.begin(), out.end()};
}

namespace {

// Domain pairs by max index n: (a, n) for a <= n, then (n, a) for a < n.
template <class Visit>
void for_each_pair(std::size_t domain, Visit visit)
{
    for (std::size_t n = 0; n < domain; ++n) {
        for (std::size_t a = 0; a <= n; ++a)
            if (visit(a, n)) return;
        for (std::size_t a = 0; a < n; ++a)
            if (visit(n, a)) return;
    }
}

class CurveTest {
public:
    CurveTest(const Presentation& p, std::size_t curve)
        : p_(p), q_(prime_sequence(curve, p.policy())), powers_(p.domain_size())
    {
    }

    bool nontrivial(std::size_t a, std::size_t b) const { return !p_.interp(a).is_zero() && !p_.interp(b).is_zero(); }
    bool on_curve(std::size_t a, std::size_t b) { return (power(a) + power(b)).is_one(); }

private:
    const FieldElement& power(std::size_t a)
    {
        if (!powers_[a]) powers_[a] = p_.interp(a).pow(q_);
        return *powers_[a];
    }

    const Presentation& p_;
    std::uint64_t q_;
    std::vector<std::optional<FieldElement>> powers_;
};

}  // namespace

CurveSearch find_transcendental_solution(const Presentation& p, const TranscendenceOracle& t, std::size_t curve)
{
    CurveSearch out;
    CurveTest test(p, curve);
    std::map<std::size_t, Verdict> verdicts;
    for_each_pair(p.domain_size(), [&](std::size_t a, std::size_t b) {
        if (!test.nontrivial(a, b) || !test.on_curve(a, b)) return false;
        auto it = verdicts.find(a);
        if (it == verdicts.end()) it = verdicts.emplace(a, t.query(p, a)).first;
        if (it->second == Verdict::Inconclusive) out.conclusive = false;
        if (it->second != Verdict::Transcendental) return false;
        out.found = true;
        out.pair = std::make_pair(a, b);
        return true;
    });
    if (out.found) out.conclusive = true;
    return out;
}

CFromT c_from_t(const Presentation& p, const TranscendenceOracle& t, std::size_t curve)
{
    CurveSearch s = find_transcendental_solution(p, t, curve);
    CFromT out;
    out.in_c = !s.found;
    out.conclusive = s.conclusive;
    out.witness = s.pair;
    if (!s.found) out.note = "not in the complement of C within the horizon";
    return out;
}

BasisEnumeration basis_from_c(const Presentation& p, const EnumerationSchedule& c)
{
    BasisEnumeration out;
    for (std::size_t i : curves_in(p)) {
        if (c.member(i)) continue;
        CurveTest test(p, i);
        for_each_pair(p.domain_size(), [&](std::size_t a, std::size_t b) {
            if (!test.nontrivial(a, b) || !test.on_curve(a, b)) return false;
            out.emitted.push_back(a);
            out.provenance.push_back("curve " + std::to_string(i) + ": first solution (" + std::to_string(a) + ", " +
                                     std::to_string(b) + ")");
            return true;
        });
    }
    return out;
}

std::optional<bool> d_from_t(const Presentation& p, const TranscendenceOracle& t, std::size_t j)
{
    const LedgerEntry& e = p.label("x" + std::to_string(2 * j + 1));
    switch (t.query(p, e.index)) {
    case Verdict::Transcendental: return false;
    case Verdict::Algebraic: return true;
    case Verdict::Inconclusive: return std::nullopt;
    }
    return std::nullopt;
}

BasisEnumeration basis_from_d(const Presentation& p, const EnumerationSchedule& d, const PhiTable& phi)
{
    static const std::regex generation(R"(x(\d+)\.(\d+))"), plain(R"(x(\d+))");
    std::map<std::size_t, std::map<std::size_t, std::size_t>> generations;  // i -> g -> index
    std::set<std::size_t> odd;
    for (const LedgerEntry& e : p.ledger()) {
        std::smatch m;
        if (std::regex_match(e.label, m, generation)) {
            std::size_t k = std::stoull(m[1]);
            if (k % 2 == 0) generations[k / 2][std::stoull(m[2])] = e.index;
        } else if (std::regex_match(e.label, m, plain)) {
            std::size_t k = std::stoull(m[1]);
            if (k % 2 == 1) odd.insert(k);
        }
    }

    BasisEnumeration out;
    for (const auto& [i, gens] : generations) {
        auto st = true_stability(phi, d, i);
        if (!st) continue;
        // the generation current at stage s+1
        auto it = gens.upper_bound(st->first + 1);
        if (it == gens.begin()) continue;
        --it;
        out.emitted.push_back(it->second);
        out.provenance.push_back("i=" + std::to_string(i) + ": stable at stage " + std::to_string(st->first) +
                                 " with use " + std::to_string(st->second) + ", generation " +
                                 std::to_string(it->first));
    }
    for (std::size_t k : odd) {
        const std::size_t j = (k - 1) / 2;
        const bool in_d = d.member(j);
        const std::string label = "x" + std::to_string(k) + (in_d ? "'" : "");
        out.emitted.push_back(p.label(label).index);
        out.provenance.push_back("j=" + std::to_string(j) + (in_d ? ": in D, replacement " : ": not in D, original ") +
                                 label);
    }
    return out;
}

}  // namespace spectra
