#pragma once

// Oracle computations on built presentations: the transcendence relation,
// bounded annihilator search, basis membership, and the reductions between
// T and the sets driving the builders.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "spectra/poly.hpp"
#include "spectra/presentation.hpp"
#include "spectra/schedules.hpp"

namespace spectra {

// Transcendental over Q by the normal form: some transcendental generator, or
// a radical over one, survives.
bool ground_truth_T(const Presentation& p, std::size_t idx);

// Polynomial over Q in named variables; variable k is Var k.
struct Witness {
    Poly poly;  // primitive, positive leading coefficient
    std::vector<std::string> names;
    std::string to_string() const;  // degree-lex, highest first
    mpz_class height() const;
};

enum class SearchStatus {
    Found,               // witness within both bounds
    NoneExists,          // no annihilator up to the degree bound
    ExistsBeyondHeight,  // annihilators exist, none found within the height bound
};

struct AnnihilatorResult {
    SearchStatus status = SearchStatus::NoneExists;
    std::optional<Witness> witness;
    std::size_t kernel_degree = 0;  // least degree with an annihilator, when one exists
    bool conclusive() const { return status != SearchStatus::ExistsBeyondHeight; }
};

// Nonzero f with f(tuple) = 0, by total degree, then height, then
// coefficients. Variables are X for one element, X, Y for two, X1..Xn beyond.
AnnihilatorResult annihilator_search(const Presentation& p, const std::vector<std::size_t>& tuple,
                                     std::size_t degree_bound, const mpz_class& height_bound);

// Evaluates f at the tuple exactly.
FieldElement evaluate_witness(const Presentation& p, const Poly& f, const std::vector<std::size_t>& tuple);

enum class Verdict { Transcendental, Algebraic, Inconclusive };

std::string_view to_string(Verdict v);

struct TranscendenceOracle {
    enum class Source { Structural, BoundedSearch };
    Source source = Source::Structural;
    std::size_t degree_bound = 7;
    mpz_class height_bound = 64;

    static TranscendenceOracle structural() { return {}; }
    static TranscendenceOracle bounded(std::size_t degree, const mpz_class& height)
    {
        return {Source::BoundedSearch, degree, height};
    }
    // Bounded search: no annihilator to the degree bound counts as
    // transcendental; one beyond the height bound is Inconclusive.
    Verdict query(const Presentation& p, std::size_t idx) const;
};

struct BasisEnumeration {
    std::vector<std::size_t> emitted;
    std::vector<std::string> provenance;  // one line per emitted index
};

struct MembershipBounds {
    std::size_t degree = 7;
    std::size_t support = 1;  // largest basis subset tried
};

struct MembershipDecision {
    enum class Status { Member, NonMember, Inconclusive };
    Status status = Status::Inconclusive;
    std::optional<Witness> witness;        // in X, Y0, Y1, ...
    std::vector<std::size_t> support;      // basis indices the witness uses
};

// Dovetails over degree d, then support size, then subsets of B, looking for
// an annihilator of (x, b_S) involving X. x is in B iff x is in that S.
MembershipDecision membership_via_basis(const Presentation& p, const BasisEnumeration& b, std::size_t idx,
                                        const MembershipBounds& bounds);

struct CurveSearch {
    bool found = false;
    std::optional<std::pair<std::size_t, std::size_t>> pair;
    bool conclusive = true;  // false when the oracle was inconclusive on a candidate
};

// Pairs (x, y) of the domain with xy != 0, f_i(x, y) = 0 and x in T, scanned
// by max index, then (a, n) before (n, a).
CurveSearch find_transcendental_solution(const Presentation& p, const TranscendenceOracle& t, std::size_t curve);

struct CFromT {
    bool in_c = false;  // no witness in the dumped domain
    bool conclusive = true;
    std::optional<std::pair<std::size_t, std::size_t>> witness;
    std::string note;
};

CFromT c_from_t(const Presentation& p, const TranscendenceOracle& t, std::size_t curve);
BasisEnumeration basis_from_c(const Presentation& p, const EnumerationSchedule& c);

// j in D iff the original x_{2j+1} is not in T; empty when the oracle is
// inconclusive. UnknownLabel when that label is missing.
std::optional<bool> d_from_t(const Presentation& p, const TranscendenceOracle& t, std::size_t j);
BasisEnumeration basis_from_d(const Presentation& p, const EnumerationSchedule& d, const PhiTable& phi);

// Curve indices with a ledger pair.
std::vector<std::size_t> curves_in(const Presentation& p);

}  // namespace spectra
