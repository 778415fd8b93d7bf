#include "spectra/curves.hpp"

#include <mutex>

#include "spectra/error.hpp"

namespace spectra {

std::string_view to_string(PrimePolicy policy) { return policy == PrimePolicy::Paper ? "paper" : "toy"; }

PrimePolicy parse_policy(std::string_view text)
{
    if (text == "paper") return PrimePolicy::Paper;
    if (text == "toy") return PrimePolicy::Toy;
    throw Error(ErrorKind::ParseError, "unknown prime policy '" + std::string(text) + "'");
}

bool is_prime_wheel(std::uint64_t n)
{
    if (n < 2) return false;
    for (std::uint64_t p : {2, 3, 5}) {
        if (n % p == 0) return n == p;
    }
    static constexpr std::uint64_t gaps[8] = {4, 2, 4, 2, 4, 6, 2, 6};  // 7, 11, 13, 17, 19, 23, 29, 31, ...
    std::uint64_t d = 7;
    for (int k = 0; d * d <= n; k = (k + 1) & 7) {
        if (n % d == 0) return false;
        d += gaps[k];
    }
    return true;
}

std::uint64_t next_prime_above(std::uint64_t bound)
{
    std::uint64_t n = bound + 1;
    while (!is_prime_wheel(n)) ++n;
    return n;
}

namespace {

struct PrimeCache {
    std::mutex mu;
    std::vector<std::uint64_t> paper{5};
    std::vector<std::uint64_t> toy{5};
};

PrimeCache& cache()
{
    static PrimeCache c;
    return c;
}

}  // namespace

std::uint64_t prime_sequence(std::size_t n, PrimePolicy policy, bool allow_slow)
{
    PrimeCache& c = cache();
    std::lock_guard<std::mutex> lock(c.mu);
    if (policy == PrimePolicy::Toy) {
        while (c.toy.size() <= n) c.toy.push_back(next_prime_above(c.toy.back()));
        return c.toy[n];
    }
    if (n >= 3) throw Error(ErrorKind::Unsupported, "q_3 and beyond exceed 64-bit arithmetic");
    if (n == 2 && !allow_slow) throw Error(ErrorKind::Unsupported, "q_2 requires the slow search to be enabled");
    while (c.paper.size() <= n) {
        const std::uint64_t q = c.paper.back();
        const std::uint64_t root = 4 * (q - 1) * (q - 2);
        c.paper.push_back(next_prime_above(root * root));
    }
    return c.paper[n];
}

std::uint64_t genus(std::uint64_t d)
{
    if (d < 1) throw Error(ErrorKind::InvalidArgument, "degree must be positive");
    return (d - 1) * (d - 2) / 2;
}

std::string CurvePoly::to_string() const
{
    return poly.to_string([](Var v) { return std::string(v == kCurveX ? "X" : "Y"); });
}

CurvePoly curve_poly(std::size_t i, PrimePolicy policy, bool allow_slow)
{
    CurvePoly c;
    c.q = prime_sequence(i, policy, allow_slow);
    const auto q = static_cast<std::uint32_t>(c.q);
    c.poly = Poly::monomial(Monomial::var(kCurveX, q), 1) + Poly::monomial(Monomial::var(kCurveY, q), 1) - Poly(1);
    return c;
}

std::vector<RationalPoint> rational_solutions(std::size_t)
{
    return {{mpq_class(0), mpq_class(1)}, {mpq_class(1), mpq_class(0)}};
}

namespace {

std::optional<mpz_class> exact_root(const mpz_class& n, std::uint64_t q)
{
    mpz_class r;
    mpz_class a = abs(n);
    if (mpz_root(r.get_mpz_t(), a.get_mpz_t(), q) == 0) return std::nullopt;
    return n < 0 ? mpz_class(-r) : r;  // q is odd
}

}  // namespace

std::vector<RationalPoint> search_rational_points(std::uint64_t q, std::uint64_t max_height)
{
    std::vector<RationalPoint> found;
    const long h = static_cast<long>(max_height);
    for (long b = 1; b <= h; ++b) {
        for (long a = -h; a <= h; ++a) {
            mpz_class ga;
            mpz_class za = a, zb = b;
            mpz_gcd(ga.get_mpz_t(), za.get_mpz_t(), zb.get_mpz_t());
            if (ga != 1) continue;
            mpq_class x(za, zb);
            mpq_class xq;
            mpz_pow_ui(xq.get_num_mpz_t(), za.get_mpz_t(), q);
            mpz_pow_ui(xq.get_den_mpz_t(), zb.get_mpz_t(), q);
            mpq_class rest = 1 - xq;
            rest.canonicalize();
            auto rn = exact_root(rest.get_num(), q);
            auto rd = exact_root(rest.get_den(), q);
            if (rn && rd) found.emplace_back(x, mpq_class(*rn, *rd));
        }
    }
    return found;
}

FieldElement evaluate_curve_q(std::uint64_t q, const FieldElement& x, const FieldElement& y)
{
    const Tower& t = Tower::join(x.tower(), y.tower());
    return x.pow(q) + y.pow(q) - FieldElement::constant(t, 1);
}

FieldElement evaluate_curve(std::size_t i, const FieldElement& x, const FieldElement& y, PrimePolicy policy)
{
    return evaluate_curve_q(prime_sequence(i, policy), x, y);
}

std::vector<FieldPair> derived_solutions(const FieldElement& x, const FieldElement& y, std::uint64_t q)
{
    if (x.is_zero() || y.is_zero()) throw Error(ErrorKind::TrivialSolution, "x*y = 0");
    if (!evaluate_curve_q(q, x, y).is_zero()) throw Error(ErrorKind::NotOnCurve, "pair does not satisfy X^q + Y^q = 1");
    const FieldElement ix = x.inverse(), iy = y.inverse();
    FieldPair p1{x, y};
    FieldPair p2{-x * iy, iy};
    FieldPair p3{-y * ix, ix};
    return {p1, p2, p3, {p1.second, p1.first}, {p2.second, p2.first}, {p3.second, p3.first}};
}

std::uint64_t orbit_count(std::uint64_t q) { return 6 * q * q; }

}  // namespace spectra
