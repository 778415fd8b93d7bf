#pragma once

// Exact arithmetic in radical towers Q(t_1, ..., t_m)[y_1, ..., y_r] where
// each y_k satisfies y_k^q = c_k for an odd prime q and a radicand c_k built
// from earlier generators.
//
// All transcendental generators form the base rational-function field; the
// radical generators sit above it in creation order. An element is a sum of
// radical monomials (every exponent below its generator's q) with reduced
// rational-function coefficients, so equal elements have identical terms.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <gmpxx.h>

#include "spectra/poly.hpp"

namespace spectra {

class FieldElement;

enum class GeneratorKind { Transcendental, Radical };

struct Generator {
    std::string label;
    Var symbol = 0;
    GeneratorKind kind = GeneratorKind::Transcendental;
    std::uint32_t q = 0;
    std::shared_ptr<const FieldElement> radicand;  // radical generators only
    std::optional<RatFunc> base_radicand;          // set when the radicand has no radical part
    bool algebraic_type = false;                   // radical whose radicand is algebraic over Q
    std::uint64_t uid = 0;                         // identity of this relation record
};

// What a caller asks to adjoin.
struct GeneratorSpec {
    std::string label;
    GeneratorKind kind = GeneratorKind::Transcendental;
    std::uint32_t q = 0;
    std::shared_ptr<const FieldElement> radicand;

    static GeneratorSpec transcendental(std::string label);
    static GeneratorSpec radical(std::string label, std::uint32_t q, const FieldElement& radicand);
};

// Immutable, cheap to copy. Towers that share a generator prefix are
// compatible: elements of the shorter one embed unchanged in the longer.
class Tower {
public:
    Tower();

    const std::vector<Generator>& generators() const { return data_->gens; }
    std::size_t size() const { return data_->gens.size(); }
    const Generator* find(std::string_view label) const;
    const Generator& at_symbol(Var symbol) const;
    const Generator& at(std::string_view label) const;  // throws UnknownLabel
    std::string label_of(Var symbol) const { return at_symbol(symbol).label; }
    bool has_symbol(Var symbol) const { return data_->by_symbol.count(symbol) != 0; }

    bool same(const Tower& o) const { return data_ == o.data_; }
    bool compatible_with(const Tower& o) const;
    // The longer of two compatible towers; throws TowerMismatch otherwise.
    static const Tower& join(const Tower& a, const Tower& b);

    // Building blocks for adjoin() and substitution; no validity checks.
    Tower with_generator(Generator g) const;
    static Tower from_generators(std::vector<Generator> gens);

private:
    struct Data {
        std::vector<Generator> gens;
        std::unordered_map<std::string, std::size_t> by_label;
        std::unordered_map<Var, std::size_t> by_symbol;
    };
    explicit Tower(std::shared_ptr<const Data> d) : data_(std::move(d)) {}

    std::shared_ptr<const Data> data_;
};

class FieldElement {
public:
    struct Term {
        Monomial radicals;  // exponents of radical generators, each < q
        RatFunc coeff;      // nonzero
    };

    explicit FieldElement(Tower tower) : tower_(std::move(tower)) {}
    static FieldElement constant(Tower tower, const mpq_class& value);
    static FieldElement generator(Tower tower, std::string_view label);
    static FieldElement from_ratfunc(Tower tower, RatFunc value);

    const Tower& tower() const { return tower_; }
    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_one() const;
    // True when the element lies in the base field (no radical part).
    bool is_base() const;
    std::optional<mpq_class> rational_value() const;
    bool involves(Var symbol) const;
    // No transcendental generator and only algebraic-type radicals.
    bool is_structurally_algebraic() const;

    FieldElement operator-() const;
    FieldElement operator+(const FieldElement& o) const;
    FieldElement operator-(const FieldElement& o) const;
    FieldElement operator*(const FieldElement& o) const;
    FieldElement operator/(const FieldElement& o) const;
    FieldElement& operator+=(const FieldElement& o) { return *this = *this + o; }
    FieldElement& operator*=(const FieldElement& o) { return *this = *this * o; }
    FieldElement inverse() const;
    FieldElement pow(std::uint64_t e) const;

    // Same element viewed in a compatible (usually longer) tower.
    FieldElement embed(const Tower& tower) const;

    bool operator==(const FieldElement& o) const;
    bool operator!=(const FieldElement& o) const { return !(*this == o); }
    std::size_t hash() const;

    // Parseable text in terms of generator labels.
    std::string to_string() const;

    // Low level: builds a normal form from terms whose radical exponents may
    // exceed q.
    static FieldElement reduce(Tower tower, std::vector<Term> raw);

private:
    std::optional<FieldElement> binomial_inverse() const;

    Tower tower_;
    std::vector<Term> terms_;  // leading radical monomial first
};

struct FieldElementHash {
    std::size_t operator()(const FieldElement& e) const { return e.hash(); }
};

// A polynomial fraction over tower generators with arbitrary exponents.
struct RawTerm {
    mpq_class coeff;
    std::vector<std::pair<std::string, std::uint32_t>> powers;  // label, exponent
};
struct RawExpression {
    std::vector<RawTerm> numerator;
    std::vector<RawTerm> denominator{RawTerm{1, {}}};
};

enum class FieldOp { Add, Sub, Mul };

FieldElement normal_form(const RawExpression& raw, const Tower& tower);
FieldElement arithmetic(const FieldElement& a, const FieldElement& b, FieldOp op);
FieldElement invert(const FieldElement& a);
bool is_zero(const FieldElement& a);

// True iff c = d^q for some d in c's tower. Exact for base-field radicands
// (squarefree exponents of numerator and denominator plus a rational q-th
// root of the integer contents). Radicands with a radical part are reported
// as non-powers.
bool qth_power_test(const FieldElement& c, std::uint32_t q);

bool is_prime(std::uint64_t n);

// Radical exponents must be primes >= 5 and the radicand a non-q-th power.
Tower adjoin(const Tower& tower, const GeneratorSpec& spec);

// Target of the substitution label -> value: the label is removed and every
// radicand rewritten. Throws DegenerateRadicand / ReducibleRelation when a
// rewritten radicand is zero / a q-th power.
Tower substituted_tower(const Tower& source, std::string_view label, const mpq_class& value);
// Image of a under label -> value, in normal form over target.
FieldElement substitute(const FieldElement& a, std::string_view label, const mpq_class& value,
                        const Tower& target);

// Parses the text produced by FieldElement::to_string (and general
// expressions with + - * / ^ and parentheses) over the tower's labels.
FieldElement parse_element(std::string_view text, const Tower& tower);

}  // namespace spectra
