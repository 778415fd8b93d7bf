#pragma once

// The Fermat curves X^q + Y^q = 1 over a sparse sequence of primes.

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "spectra/field.hpp"
#include "spectra/poly.hpp"

namespace spectra {

enum class PrimePolicy { Paper, Toy };

std::string_view to_string(PrimePolicy policy);
PrimePolicy parse_policy(std::string_view text);  // "paper" | "toy"

// Exact bound for q1 -> q2: (4 * 2308 * 2307)^2.
inline constexpr std::uint64_t kSecondBound = 453614345554176ULL;

// Least prime strictly above bound (trial division on a 2-3-5 wheel).
std::uint64_t next_prime_above(std::uint64_t bound);
bool is_prime_wheel(std::uint64_t n);

// q_n under the policy. Paper: q_0 = 5, q_{i+1} the least prime above
// (4(q_i - 1)(q_i - 2))^2. q_2 needs allow_slow; q_3 and beyond overflow
// 64 bits and raise Unsupported. Toy: the odd primes from 5 upward.
std::uint64_t prime_sequence(std::size_t n, PrimePolicy policy, bool allow_slow = false);

// (d - 1)(d - 2)/2
std::uint64_t genus(std::uint64_t d);

// Symbols used for the two affine coordinates of curve polynomials.
inline constexpr Var kCurveX = ~Var{0} - 1;
inline constexpr Var kCurveY = ~Var{0};

struct CurvePoly {
    std::uint64_t q = 0;
    Poly poly;  // X^q + Y^q - 1 in kCurveX, kCurveY
    std::string to_string() const;
};

CurvePoly curve_poly(std::size_t i, PrimePolicy policy, bool allow_slow = false);

using RationalPoint = std::pair<mpq_class, mpq_class>;

// The rational points of curve i: only the trivial ones, for every i.
std::vector<RationalPoint> rational_solutions(std::size_t i);

// All rational points (x, y) of X^q + Y^q = 1 with height(x) <= max_height;
// y is recovered exactly from 1 - x^q, so no bound is placed on it.
std::vector<RationalPoint> search_rational_points(std::uint64_t q, std::uint64_t max_height);

// x^q + y^q - 1 in normal form.
FieldElement evaluate_curve_q(std::uint64_t q, const FieldElement& x, const FieldElement& y);
FieldElement evaluate_curve(std::size_t i, const FieldElement& x, const FieldElement& y,
                            PrimePolicy policy = PrimePolicy::Toy);

// (x, y), (-x/y, 1/y), (-y/x, 1/x) and the three transpositions.
using FieldPair = std::pair<FieldElement, FieldElement>;
std::vector<FieldPair> derived_solutions(const FieldElement& x, const FieldElement& y, std::uint64_t q);

// 6 q^2
std::uint64_t orbit_count(std::uint64_t q);

}  // namespace spectra
