#include "spectra/field.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <map>
#include <sstream>

#include "spectra/error.hpp"

namespace spectra {

namespace {

std::atomic<std::uint64_t> next_symbol{1};
std::atomic<std::uint64_t> next_uid{1};

using Accumulator = std::map<Monomial, RatFunc, MonomialGreater>;

void accumulate(Accumulator& acc, const Tower& tower, Monomial mono, RatFunc coeff)
{
    if (coeff.is_zero()) return;
    for (;;) {
        const Generator* over = nullptr;
        std::uint32_t exp = 0;
        for (const auto& [v, e] : mono.factors()) {
            const Generator& g = tower.at_symbol(v);
            if (e >= g.q) {
                over = &g;
                exp = e;
                break;
            }
        }
        if (over == nullptr) break;
        const std::uint32_t k = exp / over->q;
        mono = mono.with_exponent(over->symbol, exp % over->q);
        if (over->base_radicand) {
            coeff = coeff * over->base_radicand->pow(k);
        } else {
            FieldElement rp = over->radicand->embed(tower).pow(k);
            for (const auto& t : rp.terms()) accumulate(acc, tower, mono * t.radicals, coeff * t.coeff);
            return;
        }
    }
    auto it = acc.find(mono);
    if (it == acc.end()) {
        acc.emplace(std::move(mono), std::move(coeff));
    } else {
        it->second = it->second + coeff;
        if (it->second.is_zero()) acc.erase(it);
    }
}

std::size_t mix(std::size_t seed, std::size_t v)
{
    return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

RatFunc substitute_ratfunc(const RatFunc& r, Var v, const mpq_class& value)
{
    if (!r.contains(v)) return r;
    const mpz_class& p = value.get_num();
    const mpz_class& s = value.get_den();
    auto [n, dn] = r.num().substitute(v, p, s);
    auto [d, dd] = r.den().substitute(v, p, s);
    if (d.is_zero()) throw Error(ErrorKind::SubstitutionSingularity, "denominator vanishes under substitution");
    // n / s^dn divided by d / s^dd
    mpz_class sn, sd;
    mpz_pow_ui(sn.get_mpz_t(), s.get_mpz_t(), dd);
    mpz_pow_ui(sd.get_mpz_t(), s.get_mpz_t(), dn);
    return RatFunc(n * sn, d * sd);
}

// Coefficient-wise substitution; radical monomials are untouched.
FieldElement substitute_terms(const FieldElement& a, Var v, const mpq_class& value, const Tower& target)
{
    std::vector<FieldElement::Term> out;
    out.reserve(a.terms().size());
    for (const auto& t : a.terms()) {
        RatFunc c = substitute_ratfunc(t.coeff, v, value);
        if (!c.is_zero()) out.push_back({t.radicals, std::move(c)});
    }
    return FieldElement::reduce(target, std::move(out));
}

// Dense polynomial in the top radical with coefficients from the lower levels.
using UPoly = std::vector<FieldElement>;

void trim(UPoly& p)
{
    while (!p.empty() && p.back().is_zero()) p.pop_back();
}

UPoly upoly_sub(const UPoly& a, const UPoly& b, const Tower& t)
{
    UPoly r(std::max(a.size(), b.size()), FieldElement(t));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] = r[i] - b[i];
    trim(r);
    return r;
}

UPoly upoly_mul(const UPoly& a, const UPoly& b, const Tower& t)
{
    if (a.empty() || b.empty()) return {};
    UPoly r(a.size() + b.size() - 1, FieldElement(t));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.size(); ++j) {
            if (b[j].is_zero()) continue;
            r[i + j] = r[i + j] + a[i] * b[j];
        }
    }
    trim(r);
    return r;
}

// a = q*b + r
std::pair<UPoly, UPoly> upoly_divmod(UPoly a, const UPoly& b, const Tower& t)
{
    const FieldElement lead_inv = b.back().inverse();
    UPoly q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, FieldElement(t));
    while (a.size() >= b.size()) {
        const std::size_t shift = a.size() - b.size();
        FieldElement c = a.back() * lead_inv;
        q[shift] = c;
        for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] = a[shift + i] - c * b[i];
        a.pop_back();
        trim(a);
    }
    trim(q);
    return {std::move(q), std::move(a)};
}

}  // namespace

// ---------------------------------------------------------------- GeneratorSpec

GeneratorSpec GeneratorSpec::transcendental(std::string label)
{
    GeneratorSpec s;
    s.label = std::move(label);
    return s;
}

GeneratorSpec GeneratorSpec::radical(std::string label, std::uint32_t q, const FieldElement& radicand)
{
    GeneratorSpec s;
    s.label = std::move(label);
    s.kind = GeneratorKind::Radical;
    s.q = q;
    s.radicand = std::make_shared<const FieldElement>(radicand);
    return s;
}

// ---------------------------------------------------------------- Tower

Tower::Tower()
{
    static const auto empty = std::make_shared<const Data>();
    data_ = empty;
}

const Generator* Tower::find(std::string_view label) const
{
    auto it = data_->by_label.find(std::string(label));
    return it == data_->by_label.end() ? nullptr : &data_->gens[it->second];
}

const Generator& Tower::at(std::string_view label) const
{
    const Generator* g = find(label);
    if (g == nullptr) throw Error(ErrorKind::UnknownLabel, "no generator labelled '" + std::string(label) + "'");
    return *g;
}

const Generator& Tower::at_symbol(Var symbol) const
{
    auto it = data_->by_symbol.find(symbol);
    if (it == data_->by_symbol.end()) throw Error(ErrorKind::TowerMismatch, "symbol not in tower");
    return data_->gens[it->second];
}

bool Tower::compatible_with(const Tower& o) const
{
    if (data_ == o.data_) return true;
    const auto& a = data_->gens;
    const auto& b = o.data_->gens;
    const std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i)
        if (a[i].uid != b[i].uid) return false;
    return true;
}

const Tower& Tower::join(const Tower& a, const Tower& b)
{
    if (a.data_ == b.data_) return a;
    if (!a.compatible_with(b)) throw Error(ErrorKind::TowerMismatch, "elements belong to unrelated towers");
    return a.size() >= b.size() ? a : b;
}

Tower Tower::with_generator(Generator g) const
{
    auto d = std::make_shared<Data>(*data_);
    d->by_label.emplace(g.label, d->gens.size());
    d->by_symbol.emplace(g.symbol, d->gens.size());
    d->gens.push_back(std::move(g));
    return Tower(std::move(d));
}

Tower Tower::from_generators(std::vector<Generator> gens)
{
    auto d = std::make_shared<Data>();
    for (std::size_t i = 0; i < gens.size(); ++i) {
        d->by_label.emplace(gens[i].label, i);
        d->by_symbol.emplace(gens[i].symbol, i);
    }
    d->gens = std::move(gens);
    return Tower(std::move(d));
}

// ---------------------------------------------------------------- FieldElement

FieldElement FieldElement::constant(Tower tower, const mpq_class& value)
{
    return from_ratfunc(std::move(tower), RatFunc(value));
}

FieldElement FieldElement::from_ratfunc(Tower tower, RatFunc value)
{
    FieldElement e(std::move(tower));
    if (!value.is_zero()) e.terms_.push_back({Monomial{}, std::move(value)});
    return e;
}

FieldElement FieldElement::generator(Tower tower, std::string_view label)
{
    const Generator& g = tower.at(label);
    FieldElement e(tower);
    if (g.kind == GeneratorKind::Transcendental) {
        e.terms_.push_back({Monomial{}, RatFunc(Poly::variable(g.symbol))});
    } else {
        e.terms_.push_back({Monomial::var(g.symbol), RatFunc(1)});
    }
    return e;
}

FieldElement FieldElement::reduce(Tower tower, std::vector<Term> raw)
{
    Accumulator acc;
    for (auto& t : raw) accumulate(acc, tower, std::move(t.radicals), std::move(t.coeff));
    FieldElement e(std::move(tower));
    e.terms_.reserve(acc.size());
    for (auto& [m, c] : acc) e.terms_.push_back({m, std::move(c)});
    return e;
}

bool FieldElement::is_one() const
{
    return terms_.size() == 1 && terms_[0].radicals.is_one() && terms_[0].coeff.is_one();
}

bool FieldElement::is_base() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].radicals.is_one()); }

std::optional<mpq_class> FieldElement::rational_value() const
{
    if (terms_.empty()) return mpq_class(0);
    if (!is_base() || !terms_[0].coeff.is_constant()) return std::nullopt;
    return terms_[0].coeff.constant_value();
}

bool FieldElement::involves(Var symbol) const
{
    for (const auto& t : terms_)
        if (t.radicals.contains(symbol) || t.coeff.contains(symbol)) return true;
    return false;
}

bool FieldElement::is_structurally_algebraic() const
{
    for (const auto& t : terms_) {
        if (!t.coeff.is_constant()) return false;
        for (const auto& [v, e] : t.radicals.factors())
            if (!tower_.at_symbol(v).algebraic_type) return false;
    }
    return true;
}

FieldElement FieldElement::operator-() const
{
    FieldElement r = *this;
    for (auto& t : r.terms_) t.coeff = -t.coeff;
    return r;
}

FieldElement FieldElement::operator+(const FieldElement& o) const
{
    const Tower& tw = Tower::join(tower_, o.tower_);
    FieldElement r(tw);
    r.terms_.reserve(terms_.size() + o.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < terms_.size() && j < o.terms_.size()) {
        int c = Monomial::compare(terms_[i].radicals, o.terms_[j].radicals);
        if (c > 0) {
            r.terms_.push_back(terms_[i++]);
        } else if (c < 0) {
            r.terms_.push_back(o.terms_[j++]);
        } else {
            RatFunc s = terms_[i].coeff + o.terms_[j].coeff;
            if (!s.is_zero()) r.terms_.push_back({terms_[i].radicals, std::move(s)});
            ++i;
            ++j;
        }
    }
    for (; i < terms_.size(); ++i) r.terms_.push_back(terms_[i]);
    for (; j < o.terms_.size(); ++j) r.terms_.push_back(o.terms_[j]);
    return r;
}

FieldElement FieldElement::operator-(const FieldElement& o) const { return *this + (-o); }

FieldElement FieldElement::operator*(const FieldElement& o) const
{
    const Tower& tw = Tower::join(tower_, o.tower_);
    if (is_zero() || o.is_zero()) return FieldElement(tw);
    if (o.is_base() || is_base()) {
        const FieldElement& poly = o.is_base() ? *this : o;
        const RatFunc& c = o.is_base() ? o.terms_[0].coeff : terms_[0].coeff;
        FieldElement r(tw);
        r.terms_.reserve(poly.terms_.size());
        for (const auto& t : poly.terms_) r.terms_.push_back({t.radicals, t.coeff * c});
        return r;
    }
    Accumulator acc;
    for (const auto& a : terms_)
        for (const auto& b : o.terms_) accumulate(acc, tw, a.radicals * b.radicals, a.coeff * b.coeff);
    FieldElement r(tw);
    r.terms_.reserve(acc.size());
    for (auto& [m, c] : acc) r.terms_.push_back({m, std::move(c)});
    return r;
}

FieldElement FieldElement::operator/(const FieldElement& o) const { return *this * o.inverse(); }

FieldElement FieldElement::inverse() const
{
    if (is_zero()) throw Error(ErrorKind::DivisionByZero, "inverse of zero");
    if (is_base()) return from_ratfunc(tower_, terms_[0].coeff.inverse());

    if (terms_.size() == 1) {
        // y^-e = y^(q-e) / radicand
        const Term& t = terms_[0];
        Monomial mono;
        FieldElement radicands = constant(tower_, 1);
        for (const auto& [v, e] : t.radicals.factors()) {
            const Generator& g = tower_.at_symbol(v);
            mono = mono * Monomial::var(v, g.q - e);
            radicands = radicands * g.radicand->embed(tower_);
        }
        FieldElement lifted(tower_);
        lifted.terms_.push_back({std::move(mono), t.coeff.inverse()});
        return lifted * radicands.inverse();
    }

    if (terms_.size() == 2) {
        if (auto r = binomial_inverse()) return *r;
    }

    // Extended Euclid against Y^q - radicand for the latest radical present.
    Var top = 0;
    for (const auto& t : terms_)
        for (const auto& f : t.radicals.factors()) top = std::max(top, f.first);
    const Generator& g = tower_.at_symbol(top);

    UPoly a(g.q, FieldElement(tower_));
    for (const auto& t : terms_) {
        std::uint32_t k = t.radicals.exponent(top);
        a[k].terms_.push_back({t.radicals.without(top), t.coeff});  // stays sorted
    }
    trim(a);
    UPoly m(g.q + 1, FieldElement(tower_));
    m[0] = -g.radicand->embed(tower_);
    m[g.q] = constant(tower_, 1);

    UPoly r0 = std::move(m), r1 = std::move(a);
    UPoly s0, s1{constant(tower_, 1)};
    while (r1.size() > 1) {
        auto [quot, rem] = upoly_divmod(r0, r1, tower_);
        if (rem.empty()) throw Error(ErrorKind::ReducibleRelation, "radical relation has a nontrivial factor");
        UPoly s2 = upoly_sub(s0, upoly_mul(quot, s1, tower_), tower_);
        // monic remainders keep the coefficient swell down
        const FieldElement l = rem.back().inverse();
        for (auto& c : rem) c = c * l;
        for (auto& c : s2) c = c * l;
        r0 = std::move(r1);
        r1 = std::move(rem);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    const FieldElement c_inv = r1[0].inverse();
    FieldElement result(tower_);
    for (std::size_t k = 0; k < s1.size(); ++k) {
        if (s1[k].is_zero()) continue;
        FieldElement coeff = s1[k] * c_inv;
        FieldElement shifted(tower_);
        for (const auto& t : coeff.terms_)
            shifted.terms_.push_back({t.radicals * Monomial::var(top, static_cast<std::uint32_t>(k)), t.coeff});
        result = result + shifted;
    }
    return result;
}

// m1 + m2 = m1 (1 + w) with w = m2/m1 a monomial; (-w)^N lies in the base
// field for N the product of the exponents of w's radicals, so
// (1 + w)^-1 = (1 - w + ... + w^(N-1)) / (1 + w^N) for odd N.
std::optional<FieldElement> FieldElement::binomial_inverse() const
{
    FieldElement m1(tower_), m2(tower_);
    m1.terms_.push_back(terms_[0]);
    m2.terms_.push_back(terms_[1]);
    FieldElement w = m2 * m1.inverse();
    if (w.terms_.size() != 1) return std::nullopt;
    std::uint64_t n = 1;
    for (const auto& [v, e] : w.terms_[0].radicals.factors()) {
        const Generator& g = tower_.at_symbol(v);
        if (!g.base_radicand) return std::nullopt;
        n *= g.q;
    }
    FieldElement series = constant(tower_, 1);
    FieldElement power = constant(tower_, 1);
    const FieldElement minus_w = -w;
    for (std::uint64_t i = 1; i < n; ++i) {
        power = power * minus_w;
        series = series + power;
    }
    FieldElement top = power * minus_w;  // (-w)^N = -(w^N)
    if (!top.is_base()) return std::nullopt;
    FieldElement norm = constant(tower_, 1) - top;
    if (norm.is_zero()) throw Error(ErrorKind::ReducibleRelation, "radical relation has a nontrivial factor");
    return m1.inverse() * series * from_ratfunc(tower_, norm.terms_[0].coeff.inverse());
}

FieldElement FieldElement::pow(std::uint64_t e) const
{
    FieldElement result = constant(tower_, 1);
    FieldElement base = *this;
    while (e > 0) {
        if (e & 1) result = result * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return result;
}

FieldElement FieldElement::embed(const Tower& tower) const
{
    if (!tower_.compatible_with(tower)) throw Error(ErrorKind::TowerMismatch, "cannot embed element in unrelated tower");
    FieldElement r = *this;
    if (tower.size() >= tower_.size()) r.tower_ = tower;
    return r;
}

bool FieldElement::operator==(const FieldElement& o) const
{
    if (terms_.size() != o.terms_.size()) return false;
    for (std::size_t i = 0; i < terms_.size(); ++i)
        if (terms_[i].radicals != o.terms_[i].radicals || terms_[i].coeff != o.terms_[i].coeff) return false;
    return true;
}

std::size_t FieldElement::hash() const
{
    std::size_t h = 0x7f4a7c15;
    for (const auto& t : terms_) h = mix(mix(h, t.radicals.hash()), t.coeff.hash());
    return h;
}

std::string FieldElement::to_string() const
{
    if (terms_.empty()) return "0";
    auto name = [this](Var v) { return tower_.label_of(v); };
    std::ostringstream os;
    bool first = true;
    for (const auto& t : terms_) {
        std::string piece;
        const bool single = t.coeff.num().terms().size() == 1;
        std::string num = t.coeff.num().to_string(name);
        std::string coeff;
        if (t.coeff.den().is_one()) {
            coeff = single ? num : "(" + num + ")";
        } else {
            coeff = "(" + num + ")/(" + t.coeff.den().to_string(name) + ")";
        }
        std::string mono;
        for (const auto& [v, e] : t.radicals.factors()) {
            if (!mono.empty()) mono += "*";
            mono += name(v);
            if (e != 1) mono += "^" + std::to_string(e);
        }
        if (mono.empty()) {
            piece = (terms_.size() == 1 && t.coeff.den().is_one()) ? num : coeff;
        } else if (t.coeff.is_one()) {
            piece = mono;
        } else if (t.coeff.den().is_one() && single && t.coeff.num().terms()[0].coeff == -1 &&
                   t.coeff.num().terms()[0].mono.is_one()) {
            piece = "-" + mono;
        } else {
            piece = coeff + "*" + mono;
        }
        if (first) {
            os << piece;
        } else if (piece[0] == '-') {
            os << " - " << piece.substr(1);
        } else {
            os << " + " << piece;
        }
        first = false;
    }
    return os.str();
}

// ---------------------------------------------------------------- operations

FieldElement normal_form(const RawExpression& raw, const Tower& tower)
{
    auto build = [&tower](const std::vector<RawTerm>& terms) {
        std::vector<FieldElement::Term> out;
        for (const auto& rt : terms) {
            Poly base(1);
            Monomial radicals;
            for (const auto& [label, e] : rt.powers) {
                const Generator& g = tower.at(label);
                if (g.kind == GeneratorKind::Transcendental) {
                    base = base * Poly::monomial(Monomial::var(g.symbol, e), 1);
                } else {
                    radicals = radicals * Monomial::var(g.symbol, e);
                }
            }
            out.push_back({std::move(radicals), RatFunc(base) * RatFunc(rt.coeff)});
        }
        return FieldElement::reduce(tower, std::move(out));
    };
    FieldElement num = build(raw.numerator);
    FieldElement den = build(raw.denominator);
    if (den.is_zero()) throw Error(ErrorKind::DivisionByZero, "denominator reduces to zero");
    return num * den.inverse();
}

FieldElement arithmetic(const FieldElement& a, const FieldElement& b, FieldOp op)
{
    switch (op) {
    case FieldOp::Add: return a + b;
    case FieldOp::Sub: return a - b;
    case FieldOp::Mul: return a * b;
    }
    throw Error(ErrorKind::InvalidArgument, "unknown field operation");
}

FieldElement invert(const FieldElement& a) { return a.inverse(); }

bool is_zero(const FieldElement& a) { return a.is_zero(); }

namespace {

bool integer_is_qth_power(const mpz_class& n, std::uint32_t q)
{
    mpz_class a = abs(n);
    mpz_class root;
    return mpz_root(root.get_mpz_t(), a.get_mpz_t(), q) != 0;
}

bool poly_is_qth_power(const Poly& p, std::uint32_t q)
{
    if (!integer_is_qth_power(p.integer_content(), q)) return false;
    for (const auto& [factor, mult] : squarefree_decomposition(p))
        if (mult % q != 0) return false;
    return true;
}

}  // namespace

bool qth_power_test(const FieldElement& c, std::uint32_t q)
{
    if (c.is_zero()) throw Error(ErrorKind::DegenerateRadicand, "radicand is zero");
    if (!c.is_base()) return false;
    const RatFunc& r = c.terms()[0].coeff;
    // odd q: the sign is always a q-th power
    return poly_is_qth_power(r.num(), q) && poly_is_qth_power(r.den(), q);
}

bool is_prime(std::uint64_t n)
{
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    if (n % 3 == 0) return n == 3;
    for (std::uint64_t d = 5; d * d <= n; d += 6)
        if (n % d == 0 || n % (d + 2) == 0) return false;
    return true;
}

Tower adjoin(const Tower& tower, const GeneratorSpec& spec)
{
    if (tower.find(spec.label) != nullptr) throw Error(ErrorKind::DuplicateLabel, "label '" + spec.label + "' already used");
    if (spec.label.empty()) throw Error(ErrorKind::InvalidArgument, "empty generator label");
    Generator g;
    g.label = spec.label;
    g.kind = spec.kind;
    g.symbol = next_symbol.fetch_add(1);
    g.uid = next_uid.fetch_add(1);
    if (spec.kind == GeneratorKind::Radical) {
        if (spec.q < 5 || !is_prime(spec.q))
            throw Error(ErrorKind::InvalidArgument, "radical exponent must be a prime >= 5");
        if (!spec.radicand) throw Error(ErrorKind::DegenerateRadicand, "missing radicand");
        FieldElement rad = spec.radicand->embed(tower);
        // Y^q - c is irreducible for prime q iff c is not a q-th power. That
        // criterion is exact over the base field; for radicands with a radical
        // part qth_power_test is only a guard, and whether more is needed there
        // is unsettled.
        if (qth_power_test(rad, spec.q))
            throw Error(ErrorKind::ReducibleRelation, "radicand of '" + spec.label + "' is a q-th power");
        g.q = spec.q;
        g.algebraic_type = rad.is_structurally_algebraic();
        if (rad.is_base()) g.base_radicand = rad.terms()[0].coeff;
        g.radicand = std::make_shared<const FieldElement>(std::move(rad));
    }
    return tower.with_generator(std::move(g));
}

Tower substituted_tower(const Tower& source, std::string_view label, const mpq_class& value)
{
    const Generator& x = source.at(label);
    if (x.kind != GeneratorKind::Transcendental)
        throw Error(ErrorKind::NotTranscendental, "'" + std::string(label) + "' is not transcendental");
    Tower partial;
    bool after = false;
    for (const Generator& g : source.generators()) {
        if (g.symbol == x.symbol) {
            after = true;
            continue;
        }
        Generator ng = g;
        if (after) ng.uid = next_uid.fetch_add(1);
        if (g.kind == GeneratorKind::Radical) {
            FieldElement rad = substitute_terms(*g.radicand, x.symbol, value, partial);
            if (rad.is_zero()) throw Error(ErrorKind::DegenerateRadicand, "radicand of '" + g.label + "' vanishes");
            if (qth_power_test(rad, g.q))
                throw Error(ErrorKind::ReducibleRelation, "radicand of '" + g.label + "' becomes a q-th power");
            ng.algebraic_type = rad.is_structurally_algebraic();
            ng.base_radicand.reset();
            if (rad.is_base()) ng.base_radicand = rad.terms()[0].coeff;
            ng.radicand = std::make_shared<const FieldElement>(std::move(rad));
        }
        partial = partial.with_generator(std::move(ng));
    }
    return partial;
}

FieldElement substitute(const FieldElement& a, std::string_view label, const mpq_class& value, const Tower& target)
{
    const Generator& x = a.tower().at(label);
    if (x.kind != GeneratorKind::Transcendental)
        throw Error(ErrorKind::NotTranscendental, "'" + std::string(label) + "' is not transcendental");
    if (target.has_symbol(x.symbol)) throw Error(ErrorKind::TowerMismatch, "target tower still contains the label");
    for (const auto& t : a.terms())
        for (const auto& f : t.radicals.factors())
            if (!target.has_symbol(f.first)) throw Error(ErrorKind::TowerMismatch, "target tower lacks a radical");
    return substitute_terms(a, x.symbol, value, target);
}

// ---------------------------------------------------------------- parser

namespace {

class Parser {
public:
    Parser(std::string_view text, const Tower& tower) : text_(text), tower_(tower) {}

    FieldElement parse()
    {
        FieldElement e = expr();
        skip();
        if (pos_ != text_.size()) fail("unexpected trailing input");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const
    {
        throw Error(ErrorKind::ParseError, msg + " at column " + std::to_string(pos_ + 1));
    }

    void skip()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c)
    {
        skip();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    FieldElement expr()
    {
        FieldElement e = term();
        for (;;) {
            if (accept('+')) {
                e = e + term();
            } else if (accept('-')) {
                e = e - term();
            } else {
                return e;
            }
        }
    }

    FieldElement term()
    {
        FieldElement e = unary();
        for (;;) {
            if (accept('*')) {
                e = e * unary();
            } else if (accept('/')) {
                FieldElement d = unary();
                if (d.is_zero()) fail("division by zero");
                e = e * d.inverse();
            } else {
                return e;
            }
        }
    }

    FieldElement unary()
    {
        if (accept('-')) return -unary();
        return power();
    }

    FieldElement power()
    {
        FieldElement base = primary();
        if (accept('^')) {
            skip();
            std::size_t start = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            if (start == pos_) fail("expected exponent");
            return base.pow(std::stoull(std::string(text_.substr(start, pos_ - start))));
        }
        return base;
    }

    FieldElement primary()
    {
        skip();
        if (pos_ >= text_.size()) fail("unexpected end of expression");
        char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            FieldElement e = expr();
            if (!accept(')')) fail("expected ')'");
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            return FieldElement::constant(tower_, mpq_class(mpz_class(std::string(text_.substr(start, pos_ - start)))));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < text_.size()) {
                char d = text_[pos_];
                if (std::isalnum(static_cast<unsigned char>(d)) || d == '_' || d == '.' || d == '\'') {
                    ++pos_;
                } else {
                    break;
                }
            }
            std::string label(text_.substr(start, pos_ - start));
            if (tower_.find(label) == nullptr) fail("unknown generator '" + label + "'");
            return FieldElement::generator(tower_, label);
        }
        fail(std::string("unexpected character '") + c + "'");
    }

    std::string_view text_;
    const Tower& tower_;
    std::size_t pos_ = 0;
};

}  // namespace

FieldElement parse_element(std::string_view text, const Tower& tower) { return Parser(text, tower).parse(); }

}  // namespace spectra
