#include "spectra/poly.hpp"

#include <algorithm>
#include <sstream>

#include "spectra/error.hpp"

namespace spectra {

namespace {

std::size_t mix(std::size_t seed, std::size_t v)
{
    return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

std::size_t hash_mpz(const mpz_class& z)
{
    std::size_t h = static_cast<std::size_t>(mpz_sgn(z.get_mpz_t()) + 1);
    const std::size_t limbs = mpz_size(z.get_mpz_t());
    for (std::size_t i = 0; i < limbs; ++i) {
        h = mix(h, static_cast<std::size_t>(mpz_getlimbn(z.get_mpz_t(), i)));
    }
    return h;
}

}  // namespace

// ---------------------------------------------------------------- Monomial

Monomial Monomial::var(Var v, std::uint32_t exp)
{
    Monomial m;
    if (exp != 0) m.factors_.emplace_back(v, exp);
    return m;
}

std::uint32_t Monomial::exponent(Var v) const
{
    auto it = std::lower_bound(factors_.begin(), factors_.end(), v,
                               [](const Factor& f, Var x) { return f.first < x; });
    return (it != factors_.end() && it->first == v) ? it->second : 0;
}

std::uint64_t Monomial::total_degree() const
{
    std::uint64_t d = 0;
    for (const auto& f : factors_) d += f.second;
    return d;
}

Monomial Monomial::operator*(const Monomial& o) const
{
    Monomial r;
    r.factors_.reserve(factors_.size() + o.factors_.size());
    std::size_t i = 0, j = 0;
    while (i < factors_.size() && j < o.factors_.size()) {
        if (factors_[i].first == o.factors_[j].first) {
            r.factors_.emplace_back(factors_[i].first, factors_[i].second + o.factors_[j].second);
            ++i;
            ++j;
        } else if (factors_[i].first < o.factors_[j].first) {
            r.factors_.push_back(factors_[i++]);
        } else {
            r.factors_.push_back(o.factors_[j++]);
        }
    }
    for (; i < factors_.size(); ++i) r.factors_.push_back(factors_[i]);
    for (; j < o.factors_.size(); ++j) r.factors_.push_back(o.factors_[j]);
    return r;
}

std::optional<Monomial> Monomial::divide(const Monomial& o) const
{
    Monomial r;
    std::size_t i = 0;
    for (const auto& [v, e] : o.factors_) {
        while (i < factors_.size() && factors_[i].first < v) r.factors_.push_back(factors_[i++]);
        if (i == factors_.size() || factors_[i].first != v || factors_[i].second < e) return std::nullopt;
        if (factors_[i].second > e) r.factors_.emplace_back(v, factors_[i].second - e);
        ++i;
    }
    for (; i < factors_.size(); ++i) r.factors_.push_back(factors_[i]);
    return r;
}

Monomial Monomial::pow(std::uint32_t e) const
{
    if (e == 0) return {};
    Monomial r = *this;
    for (auto& f : r.factors_) f.second *= e;
    return r;
}

Monomial Monomial::with_exponent(Var v, std::uint32_t exp) const
{
    Monomial r;
    bool placed = false;
    for (const auto& f : factors_) {
        if (!placed && f.first >= v) {
            placed = true;
            if (exp != 0) r.factors_.emplace_back(v, exp);
            if (f.first == v) continue;
        }
        r.factors_.push_back(f);
    }
    if (!placed && exp != 0) r.factors_.emplace_back(v, exp);
    return r;
}

int Monomial::compare(const Monomial& a, const Monomial& b)
{
    std::size_t i = 0, j = 0;
    while (i < a.factors_.size() && j < b.factors_.size()) {
        const auto& fa = a.factors_[i];
        const auto& fb = b.factors_[j];
        if (fa.first == fb.first) {
            if (fa.second != fb.second) return fa.second > fb.second ? 1 : -1;
            ++i;
            ++j;
        } else {
            // the side holding the earlier variable has it with a positive exponent
            return fa.first < fb.first ? 1 : -1;
        }
    }
    if (i < a.factors_.size()) return 1;
    if (j < b.factors_.size()) return -1;
    return 0;
}

std::size_t Monomial::hash() const
{
    std::size_t h = 0x51ed27;
    for (const auto& [v, e] : factors_) h = mix(mix(h, v), e);
    return h;
}

// ---------------------------------------------------------------- Poly

Poly::Poly(long c)
{
    if (c != 0) terms_.push_back({Monomial{}, mpz_class(c)});
}

Poly::Poly(const mpz_class& c)
{
    if (c != 0) terms_.push_back({Monomial{}, c});
}

Poly Poly::variable(Var v) { return monomial(Monomial::var(v), 1); }

Poly Poly::monomial(const Monomial& m, const mpz_class& c)
{
    Poly p;
    if (c != 0) p.terms_.push_back({m, c});
    return p;
}

Poly Poly::from_terms(std::vector<Term> terms)
{
    std::sort(terms.begin(), terms.end(),
              [](const Term& a, const Term& b) { return Monomial::compare(a.mono, b.mono) > 0; });
    Poly p;
    for (auto& t : terms) {
        if (!p.terms_.empty() && p.terms_.back().mono == t.mono) {
            p.terms_.back().coeff += t.coeff;
        } else {
            if (!p.terms_.empty() && p.terms_.back().coeff == 0) p.terms_.pop_back();
            p.terms_.push_back(std::move(t));
        }
    }
    if (!p.terms_.empty() && p.terms_.back().coeff == 0) p.terms_.pop_back();
    return p;
}

mpz_class Poly::constant_value() const
{
    if (terms_.empty()) return 0;
    if (!is_constant()) throw Error(ErrorKind::Unsupported, "polynomial is not constant");
    return terms_[0].coeff;
}

int Poly::sign() const { return terms_.empty() ? 0 : sgn(terms_[0].coeff); }

std::vector<Var> Poly::variables() const
{
    std::vector<Var> vs;
    for (const auto& t : terms_)
        for (const auto& f : t.mono.factors()) vs.push_back(f.first);
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
    return vs;
}

bool Poly::contains(Var v) const
{
    return std::any_of(terms_.begin(), terms_.end(), [v](const Term& t) { return t.mono.contains(v); });
}

std::uint32_t Poly::degree_in(Var v) const
{
    std::uint32_t d = 0;
    for (const auto& t : terms_) d = std::max(d, t.mono.exponent(v));
    return d;
}

std::uint64_t Poly::total_degree() const
{
    std::uint64_t d = 0;
    for (const auto& t : terms_) d = std::max(d, t.mono.total_degree());
    return d;
}

std::map<std::uint32_t, Poly> Poly::coefficients_in(Var v) const
{
    std::map<std::uint32_t, Poly> out;
    // terms stay sorted within each bucket since removing v preserves lex order among equal v-exponents
    for (const auto& t : terms_) {
        out[t.mono.exponent(v)].terms_.push_back({t.mono.without(v), t.coeff});
    }
    return out;
}

Poly Poly::from_coefficients(Var v, const std::map<std::uint32_t, Poly>& coeffs)
{
    std::vector<Term> all;
    for (const auto& [e, c] : coeffs)
        for (const auto& t : c.terms_) all.push_back({t.mono.with_exponent(v, e), t.coeff});
    return from_terms(std::move(all));
}

Poly Poly::operator-() const
{
    Poly r = *this;
    for (auto& t : r.terms_) t.coeff = -t.coeff;
    return r;
}

Poly Poly::operator+(const Poly& o) const
{
    Poly r;
    r.terms_.reserve(terms_.size() + o.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < terms_.size() && j < o.terms_.size()) {
        int c = Monomial::compare(terms_[i].mono, o.terms_[j].mono);
        if (c > 0) {
            r.terms_.push_back(terms_[i++]);
        } else if (c < 0) {
            r.terms_.push_back(o.terms_[j++]);
        } else {
            mpz_class s = terms_[i].coeff + o.terms_[j].coeff;
            if (s != 0) r.terms_.push_back({terms_[i].mono, std::move(s)});
            ++i;
            ++j;
        }
    }
    for (; i < terms_.size(); ++i) r.terms_.push_back(terms_[i]);
    for (; j < o.terms_.size(); ++j) r.terms_.push_back(o.terms_[j]);
    return r;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator*(const Poly& o) const
{
    if (is_zero() || o.is_zero()) return {};
    if (o.is_constant()) return *this * o.terms_[0].coeff;
    if (is_constant()) return o * terms_[0].coeff;
    if (o.terms_.size() == 1) return mul_monomial(o.terms_[0].mono) * o.terms_[0].coeff;
    if (terms_.size() == 1) return o.mul_monomial(terms_[0].mono) * terms_[0].coeff;
    std::vector<Term> all;
    all.reserve(terms_.size() * o.terms_.size());
    for (const auto& a : terms_)
        for (const auto& b : o.terms_) all.push_back({a.mono * b.mono, a.coeff * b.coeff});
    return from_terms(std::move(all));
}

Poly Poly::operator*(const mpz_class& c) const
{
    if (c == 0) return {};
    Poly r = *this;
    for (auto& t : r.terms_) t.coeff *= c;
    return r;
}

Poly Poly::mul_monomial(const Monomial& m) const
{
    Poly r = *this;
    for (auto& t : r.terms_) t.mono = t.mono * m;
    return r;
}

Poly Poly::pow(std::uint64_t e) const
{
    Poly result(1);
    Poly base = *this;
    while (e > 0) {
        if (e & 1) result = result * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return result;
}

std::optional<Poly> Poly::divide_exact(const Poly& o) const
{
    if (o.is_zero()) throw Error(ErrorKind::DivisionByZero, "polynomial division by zero");
    if (is_zero()) return Poly{};
    if (o.is_constant()) {
        const mpz_class& c = o.terms_[0].coeff;
        for (const auto& t : terms_)
            if (!mpz_divisible_p(t.coeff.get_mpz_t(), c.get_mpz_t())) return std::nullopt;
        Poly r = *this;
        for (auto& t : r.terms_) mpz_divexact(t.coeff.get_mpz_t(), t.coeff.get_mpz_t(), c.get_mpz_t());
        return r;
    }
    std::vector<Term> quotient;
    std::map<Monomial, mpz_class, MonomialGreater> rem;
    for (const auto& t : terms_) rem.emplace(t.mono, t.coeff);
    const Term& lead = o.terms_[0];
    while (!rem.empty()) {
        auto top = rem.begin();
        auto m = top->first.divide(lead.mono);
        if (!m || !mpz_divisible_p(top->second.get_mpz_t(), lead.coeff.get_mpz_t())) return std::nullopt;
        mpz_class c;
        mpz_divexact(c.get_mpz_t(), top->second.get_mpz_t(), lead.coeff.get_mpz_t());
        rem.erase(top);
        for (std::size_t i = 1; i < o.terms_.size(); ++i) {
            Monomial mono = o.terms_[i].mono * *m;
            auto it = rem.find(mono);
            if (it == rem.end()) {
                rem.emplace(std::move(mono), -c * o.terms_[i].coeff);
            } else {
                it->second -= c * o.terms_[i].coeff;
                if (it->second == 0) rem.erase(it);
            }
        }
        quotient.push_back({std::move(*m), std::move(c)});
    }
    Poly q;
    q.terms_ = std::move(quotient);  // generated in strictly decreasing order
    return q;
}

Poly Poly::divide_integer(const mpz_class& c) const
{
    Poly r = *this;
    for (auto& t : r.terms_) mpz_divexact(t.coeff.get_mpz_t(), t.coeff.get_mpz_t(), c.get_mpz_t());
    return r;
}

Poly Poly::derivative(Var v) const
{
    std::vector<Term> out;
    for (const auto& t : terms_) {
        std::uint32_t e = t.mono.exponent(v);
        if (e == 0) continue;
        out.push_back({t.mono.with_exponent(v, e - 1), t.coeff * e});
    }
    return from_terms(std::move(out));
}

mpz_class Poly::integer_content() const
{
    mpz_class g = 0;
    for (const auto& t : terms_) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.coeff.get_mpz_t());
        if (g == 1) break;
    }
    return g;
}

std::pair<Poly, std::uint32_t> Poly::substitute(Var v, const mpz_class& num, const mpz_class& den) const
{
    const std::uint32_t d = degree_in(v);
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) {
        std::uint32_t e = t.mono.exponent(v);
        mpz_class a, b;
        mpz_pow_ui(a.get_mpz_t(), num.get_mpz_t(), e);
        mpz_pow_ui(b.get_mpz_t(), den.get_mpz_t(), d - e);
        out.push_back({t.mono.without(v), t.coeff * a * b});
    }
    return {from_terms(std::move(out)), d};
}

bool Poly::operator==(const Poly& o) const
{
    if (terms_.size() != o.terms_.size()) return false;
    for (std::size_t i = 0; i < terms_.size(); ++i) {
        if (terms_[i].coeff != o.terms_[i].coeff || terms_[i].mono != o.terms_[i].mono) return false;
    }
    return true;
}

std::size_t Poly::hash() const
{
    std::size_t h = 0x2545f491;
    for (const auto& t : terms_) h = mix(mix(h, t.mono.hash()), hash_mpz(t.coeff));
    return h;
}

std::string Poly::to_string(const std::function<std::string(Var)>& name) const
{
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& t : terms_) {
        mpz_class c = t.coeff;
        if (first) {
            if (c < 0) os << "-";
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        c = abs(c);
        first = false;
        bool wrote = false;
        if (c != 1 || t.mono.is_one()) {
            os << c.get_str();
            wrote = true;
        }
        for (const auto& [v, e] : t.mono.factors()) {
            if (wrote) os << "*";
            os << name(v);
            if (e != 1) os << "^" << e;
            wrote = true;
        }
    }
    return os.str();
}

// ---------------------------------------------------------------- gcd

namespace {

Poly normalize_sign(Poly p) { return p.sign() < 0 ? -p : p; }

Poly exact(const Poly& a, const Poly& b)
{
    auto q = a.divide_exact(b);
    if (!q) throw Error(ErrorKind::Unsupported, "internal: inexact polynomial division");
    return std::move(*q);
}

Poly leading_coefficient_in(const Poly& p, Var v)
{
    auto coeffs = p.coefficients_in(v);
    return coeffs.rbegin()->second;
}

Poly pseudo_remainder(const Poly& a, const Poly& b, Var v)
{
    const std::uint32_t db = b.degree_in(v);
    const Poly lcb = leading_coefficient_in(b, v);
    Poly r = a;
    while (!r.is_zero()) {
        const std::uint32_t dr = r.degree_in(v);
        if (dr < db) break;
        Poly lcr = leading_coefficient_in(r, v);
        r = r * lcb - (lcr * b).mul_monomial(Monomial::var(v, dr - db));
    }
    return r;
}

Poly primitive_in(const Poly& p, Var v)
{
    if (p.is_zero()) return p;
    return exact(p, content_in(p, v));
}

}  // namespace

Poly content_in(const Poly& a, Var v)
{
    auto coeffs = a.coefficients_in(v);
    Poly g;
    for (const auto& [e, c] : coeffs) {
        g = gcd(g, c);
        if (g.is_one()) break;
    }
    return g;
}

namespace {

// Heuristic gcd: evaluate the main variable at a large integer, take the gcd
// of the images recursively and read the answer back off its xi-adic digits.
// Any candidate is confirmed by trial division; nullopt means "use the PRS".
constexpr std::size_t heuristic_bit_limit = 1u << 22;

mpz_class max_norm(const Poly& p)
{
    mpz_class m = 0;
    for (const auto& t : p.terms())
        if (abs(t.coeff) > m) m = abs(t.coeff);
    return m;
}

Poly evaluate_at(const Poly& p, Var v, const mpz_class& xi)
{
    std::vector<Poly::Term> out;
    out.reserve(p.terms().size());
    std::vector<mpz_class> powers{1};
    for (const auto& t : p.terms()) {
        std::uint32_t e = t.mono.exponent(v);
        while (powers.size() <= e) powers.push_back(powers.back() * xi);
        out.push_back({t.mono.without(v), t.coeff * powers[e]});
    }
    return Poly::from_terms(std::move(out));
}

Poly interpolate_digits(const Poly& g, Var v, const mpz_class& xi)
{
    std::vector<Poly::Term> out;
    mpz_class half = xi / 2;
    for (const auto& t : g.terms()) {
        mpz_class c = t.coeff;
        std::uint32_t i = 0;
        while (c != 0) {
            mpz_class d;
            mpz_fdiv_r(d.get_mpz_t(), c.get_mpz_t(), xi.get_mpz_t());
            if (d > half) d -= xi;
            if (d != 0) out.push_back({t.mono * Monomial::var(v, i), d});
            c -= d;
            mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), xi.get_mpz_t());
            ++i;
        }
    }
    return Poly::from_terms(std::move(out));
}

Poly primitive_integer(const Poly& p)
{
    Poly r = p.divide_integer(p.integer_content());
    return normalize_sign(r);
}

// Both inputs primitive over Z and nonzero.
std::optional<Poly> heuristic_gcd(const Poly& a, const Poly& b)
{
    if (a.is_constant() || b.is_constant()) return Poly(1);
    auto va = a.variables();
    auto vb = b.variables();
    const Var v = std::max(va.back(), vb.back());
    mpz_class xi = 2 * std::min(max_norm(a), max_norm(b)) + 29;
    const std::uint64_t deg = std::max(a.degree_in(v), b.degree_in(v)) + 1;
    for (int attempt = 0; attempt < 6; ++attempt) {
        if (mpz_sizeinbase(xi.get_mpz_t(), 2) * deg > heuristic_bit_limit) return std::nullopt;
        Poly ea = evaluate_at(a, v, xi);
        Poly eb = evaluate_at(b, v, xi);
        if (!ea.is_zero() && !eb.is_zero()) {
            std::optional<Poly> gamma;
            if (ea.is_constant() && eb.is_constant()) {
                mpz_class g;
                mpz_gcd(g.get_mpz_t(), ea.constant_value().get_mpz_t(), eb.constant_value().get_mpz_t());
                gamma = Poly(g);
            } else {
                gamma = gcd(ea, eb);
            }
            Poly cand = primitive_integer(interpolate_digits(*gamma, v, xi));
            if (!cand.is_zero() && a.divide_exact(cand) && b.divide_exact(cand)) return cand;
        }
        xi = xi * 73794 / 27011;
    }
    return std::nullopt;
}

Poly gcd_prs(const Poly& a, const Poly& b);

}  // namespace

Poly gcd(const Poly& a, const Poly& b)
{
    if (a.is_zero()) return normalize_sign(b);
    if (b.is_zero()) return normalize_sign(a);
    if (a.is_constant() || b.is_constant()) {
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), a.integer_content().get_mpz_t(), b.integer_content().get_mpz_t());
        return Poly(g);
    }
    if (a == b) return normalize_sign(a);
    mpz_class ca = a.integer_content(), cb = b.integer_content(), cg;
    mpz_gcd(cg.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
    Poly pa = a.divide_integer(ca), pb = b.divide_integer(cb);
    if (auto h = heuristic_gcd(pa, pb)) return *h * cg;
    return gcd_prs(a, b);
}

namespace {

Poly gcd_prs(const Poly& a, const Poly& b)
{
    if (b.is_zero()) return normalize_sign(a);
    if (a.is_constant() || b.is_constant()) {
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), a.integer_content().get_mpz_t(), b.integer_content().get_mpz_t());
        return Poly(g);
    }
    if (a == b) return normalize_sign(a);
    Var v = 0;
    {
        auto va = a.variables();
        auto vb = b.variables();
        v = std::max(va.back(), vb.back());
    }
    const bool in_a = a.contains(v);
    const bool in_b = b.contains(v);
    if (!in_a) return gcd(a, content_in(b, v));
    if (!in_b) return gcd(content_in(a, v), b);

    Poly ca = content_in(a, v);
    Poly cb = content_in(b, v);
    Poly r0 = exact(a, ca);
    Poly r1 = exact(b, cb);
    Poly c = gcd(ca, cb);
    if (r0.degree_in(v) < r1.degree_in(v)) std::swap(r0, r1);
    while (!r1.is_zero() && r1.degree_in(v) > 0) {
        Poly r = pseudo_remainder(r0, r1, v);
        r0 = std::move(r1);
        r1 = primitive_in(r, v);
    }
    Poly g = r1.is_zero() ? primitive_in(r0, v) : Poly(1);
    return normalize_sign(c * g);
}

}  // namespace

std::vector<std::pair<Poly, std::uint32_t>> squarefree_decomposition(const Poly& a)
{
    std::vector<std::pair<Poly, std::uint32_t>> out;
    if (a.is_zero()) throw Error(ErrorKind::DegenerateRadicand, "squarefree decomposition of zero");
    if (a.is_constant()) return out;
    const Var v = a.variables().back();
    Poly cont = content_in(a, v);
    Poly p = exact(a, cont);
    cont = cont.divide_integer(cont.integer_content());

    // Yun's algorithm in v over the coefficient ring Z[other vars].
    Poly dp = p.derivative(v);
    Poly g = gcd(p, dp);
    Poly b = exact(p, g);
    Poly c = exact(dp, g);
    Poly d = c - b.derivative(v);
    std::uint32_t i = 1;
    while (b.degree_in(v) > 0) {
        Poly f = gcd(b, d);
        if (!f.is_constant()) out.emplace_back(f, i);
        b = exact(b, f);
        c = exact(d, f);
        d = c - b.derivative(v);
        ++i;
    }
    if (!cont.is_constant()) {
        auto rest = squarefree_decomposition(cont);
        out.insert(out.end(), rest.begin(), rest.end());
    }
    return out;
}

// ---------------------------------------------------------------- RatFunc

RatFunc::RatFunc(const mpq_class& q) : num_(q.get_num()), den_(q.get_den()) {}

RatFunc::RatFunc(Poly num, Poly den)
{
    if (den.is_zero()) throw Error(ErrorKind::DivisionByZero, "zero denominator");
    if (num.is_zero()) {
        num_ = Poly{};
        den_ = Poly(1);
        return;
    }
    if (!den.is_one()) {
        Poly g = gcd(num, den);
        if (!g.is_one()) {
            num = exact(num, g);
            den = exact(den, g);
        }
        if (den.sign() < 0) {
            num = -num;
            den = -den;
        }
    }
    num_ = std::move(num);
    den_ = std::move(den);
}

mpq_class RatFunc::constant_value() const
{
    mpq_class q(num_.constant_value(), den_.constant_value());
    q.canonicalize();
    return q;
}

RatFunc RatFunc::operator-() const { return RatFunc(-num_, den_, Reduced{}); }

RatFunc RatFunc::operator+(const RatFunc& o) const
{
    if (is_zero()) return o;
    if (o.is_zero()) return *this;
    if (den_.is_one() && o.den_.is_one()) return RatFunc(num_ + o.num_, den_, Reduced{});
    if (den_ == o.den_) return RatFunc(num_ + o.num_, den_);
    Poly g = gcd(den_, o.den_);
    if (g.is_one()) {
        // coprime reduced denominators: the sum is already reduced
        Poly n = num_ * o.den_ + o.num_ * den_;
        if (n.is_zero()) return RatFunc{};
        return RatFunc(std::move(n), den_ * o.den_, Reduced{});
    }
    return RatFunc(num_ * exact(o.den_, g) + o.num_ * exact(den_, g), exact(den_, g) * o.den_);
}

RatFunc RatFunc::operator-(const RatFunc& o) const { return *this + (-o); }

RatFunc RatFunc::operator*(const RatFunc& o) const
{
    if (is_zero() || o.is_zero()) return RatFunc{};
    if (den_.is_one() && o.den_.is_one()) return RatFunc(num_ * o.num_, den_, Reduced{});
    Poly g1 = gcd(num_, o.den_);
    Poly g2 = gcd(o.num_, den_);
    Poly n = exact(num_, g1) * exact(o.num_, g2);
    Poly d = exact(den_, g2) * exact(o.den_, g1);
    if (d.sign() < 0) {
        n = -n;
        d = -d;
    }
    return RatFunc(std::move(n), std::move(d), Reduced{});
}

RatFunc RatFunc::inverse() const
{
    if (is_zero()) throw Error(ErrorKind::DivisionByZero, "inverse of zero");
    if (num_.sign() < 0) return RatFunc(-den_, -num_, Reduced{});
    return RatFunc(den_, num_, Reduced{});
}

RatFunc RatFunc::operator/(const RatFunc& o) const { return *this * o.inverse(); }

RatFunc RatFunc::pow(std::uint64_t e) const { return RatFunc(num_.pow(e), den_.pow(e), Reduced{}); }

std::size_t RatFunc::hash() const { return mix(num_.hash(), den_.hash()); }

}  // namespace spectra
