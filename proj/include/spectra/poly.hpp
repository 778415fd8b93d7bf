#pragma once

// Sparse multivariate polynomials over Z and reduced fractions of them.
//
// Variables are symbol ids; a smaller id is an earlier generator and is more
// significant in the lexicographic order. Terms are kept sorted with the
// leading (largest) monomial first.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace spectra {

using Var = std::uint64_t;

class Monomial {
public:
    using Factor = std::pair<Var, std::uint32_t>;

    Monomial() = default;
    static Monomial var(Var v, std::uint32_t exp = 1);

    const std::vector<Factor>& factors() const { return factors_; }
    bool is_one() const { return factors_.empty(); }
    std::uint32_t exponent(Var v) const;
    std::uint64_t total_degree() const;
    bool contains(Var v) const { return exponent(v) != 0; }

    Monomial operator*(const Monomial& o) const;
    // Returns the quotient when o divides *this.
    std::optional<Monomial> divide(const Monomial& o) const;
    Monomial pow(std::uint32_t e) const;
    Monomial with_exponent(Var v, std::uint32_t exp) const;
    Monomial without(Var v) const { return with_exponent(v, 0); }

    // Lexicographic: -1, 0, 1.
    static int compare(const Monomial& a, const Monomial& b);
    bool operator==(const Monomial& o) const { return factors_ == o.factors_; }
    bool operator!=(const Monomial& o) const { return factors_ != o.factors_; }
    bool operator<(const Monomial& o) const { return compare(*this, o) < 0; }

    std::size_t hash() const;

private:
    std::vector<Factor> factors_;
};

// Orders containers with the largest monomial first.
struct MonomialGreater {
    bool operator()(const Monomial& a, const Monomial& b) const { return Monomial::compare(a, b) > 0; }
};

class Poly {
public:
    struct Term {
        Monomial mono;
        mpz_class coeff;
    };

    Poly() = default;
    Poly(long c);  // NOLINT: integers embed implicitly
    Poly(const mpz_class& c);  // NOLINT
    static Poly variable(Var v);
    static Poly monomial(const Monomial& m, const mpz_class& c);
    // Builds from unsorted terms, combining duplicates.
    static Poly from_terms(std::vector<Term> terms);

    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }
    bool is_one() const { return is_constant() && !is_zero() && terms_[0].coeff == 1; }
    mpz_class constant_value() const;
    const Term& leading() const { return terms_.front(); }
    int sign() const;  // sign of the leading coefficient

    std::vector<Var> variables() const;  // ascending
    bool contains(Var v) const;
    std::uint32_t degree_in(Var v) const;
    std::uint64_t total_degree() const;
    // Coefficients as a polynomial in v; keys are exponents of v.
    std::map<std::uint32_t, Poly> coefficients_in(Var v) const;
    static Poly from_coefficients(Var v, const std::map<std::uint32_t, Poly>& coeffs);

    Poly operator-() const;
    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator*(const Poly& o) const;
    Poly operator*(const mpz_class& c) const;
    Poly& operator+=(const Poly& o) { return *this = *this + o; }
    Poly& operator-=(const Poly& o) { return *this = *this - o; }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }
    Poly pow(std::uint64_t e) const;
    Poly mul_monomial(const Monomial& m) const;

    // Exact division; nullopt when o does not divide *this in Z[vars].
    std::optional<Poly> divide_exact(const Poly& o) const;
    Poly divide_integer(const mpz_class& c) const;  // c must divide every coefficient

    Poly derivative(Var v) const;
    mpz_class integer_content() const;  // nonnegative

    // Substitutes v = num/den; returns (P, k) with the result equal to P / den^k.
    std::pair<Poly, std::uint32_t> substitute(Var v, const mpz_class& num, const mpz_class& den) const;

    bool operator==(const Poly& o) const;
    bool operator!=(const Poly& o) const { return !(*this == o); }
    std::size_t hash() const;

    std::string to_string(const std::function<std::string(Var)>& name) const;

private:
    std::vector<Term> terms_;
};

Poly gcd(const Poly& a, const Poly& b);
// gcd of the coefficients of a viewed as a polynomial in v.
Poly content_in(const Poly& a, Var v);

// Squarefree decomposition of a nonzero polynomial: pairs (factor, multiplicity)
// with pairwise coprime nonconstant squarefree factors; the integer content and
// sign are not included.
std::vector<std::pair<Poly, std::uint32_t>> squarefree_decomposition(const Poly& a);

// Reduced fraction num/den over Z[vars]; gcd(num, den) = 1 and the leading
// coefficient of den is positive.
class RatFunc {
public:
    RatFunc() : num_(0), den_(1) {}
    RatFunc(long c) : num_(c), den_(1) {}  // NOLINT
    RatFunc(Poly p) : num_(std::move(p)), den_(1) {}  // NOLINT
    RatFunc(const mpq_class& q);  // NOLINT
    RatFunc(Poly num, Poly den);  // reduces; throws DivisionByZero on den = 0

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_.is_one() && den_.is_one(); }
    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
    bool contains(Var v) const { return num_.contains(v) || den_.contains(v); }
    mpq_class constant_value() const;

    RatFunc operator-() const;
    RatFunc operator+(const RatFunc& o) const;
    RatFunc operator-(const RatFunc& o) const;
    RatFunc operator*(const RatFunc& o) const;
    RatFunc operator/(const RatFunc& o) const;
    RatFunc inverse() const;
    RatFunc pow(std::uint64_t e) const;

    bool operator==(const RatFunc& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const RatFunc& o) const { return !(*this == o); }
    std::size_t hash() const;

private:
    struct Reduced {};
    RatFunc(Poly num, Poly den, Reduced) : num_(std::move(num)), den_(std::move(den)) {}

    Poly num_;
    Poly den_;
};

}  // namespace spectra
