#include "doctest.h"

#include <algorithm>

#include "spectra/constructions.hpp"
#include "spectra/error.hpp"
#include "spectra/reductions.hpp"
#include "test_support.hpp"

using namespace spectra;

namespace {

EnumerationSchedule schedule(std::initializer_list<std::pair<std::uint64_t, Stage>> entries, Stage horizon = 0)
{
    EnumerationSchedule c(horizon);
    for (auto [n, s] : entries) c.enter(n, s);
    return c;
}

std::size_t at(const Presentation& p, const std::string& label) { return p.label(label).index; }

std::set<std::size_t> indices_of(const Presentation& p, const std::set<std::string>& labels)
{
    std::set<std::size_t> out;
    for (const auto& l : labels) out.insert(at(p, l));
    return out;
}

std::set<std::size_t> as_set(const BasisEnumeration& b) { return {b.emitted.begin(), b.emitted.end()}; }

// Independent check of a witness: substitute and compare with zero.
bool annihilates(const Presentation& p, const Witness& w, const std::vector<std::size_t>& tuple)
{
    return evaluate_witness(p, w.poly, tuple).is_zero();
}

const auto structural = TranscendenceOracle::structural();

}  // namespace

TEST_CASE("ground truth T")
{
    Presentation p;
    p.adjoin_curve_pair(0, "x0", "y0");
    p.adjoin_curve_pair(1, "x1", "y1");
    p.rationalize("x1");
    CHECK(ground_truth_T(p, at(p, "x0")));
    CHECK_FALSE(ground_truth_T(p, at(p, "x1")));
    CHECK_FALSE(ground_truth_T(p, at(p, "y1")));
    CHECK(ground_truth_T(p, at(p, "y0")));
    CHECK(annihilator_search(p, {at(p, "y0")}, 6, 1000000).status == SearchStatus::NoneExists);
}

TEST_CASE("annihilator search")
{
    Presentation p;
    p.adjoin_curve_pair(0, "x0", "y0");
    p.adjoin_curve_pair(1, "x1", "y1");
    const std::size_t x0 = at(p, "x0"), y0 = at(p, "y0");

    auto pair = annihilator_search(p, {x0, y0}, 5, 1);
    REQUIRE(pair.status == SearchStatus::Found);
    CHECK(pair.witness->to_string() == "X^5 + Y^5 - 1");
    CHECK(pair.kernel_degree == 5);
    CHECK(annihilates(p, *pair.witness, {x0, y0}));
    CHECK(annihilator_search(p, {x0, y0}, 4, 100).status == SearchStatus::NoneExists);
    CHECK(annihilator_search(p, {x0, y0}, 5, 0).status == SearchStatus::ExistsBeyondHeight);
    CHECK(annihilator_search(p, {x0}, 9, 1000).status == SearchStatus::NoneExists);

    p.rationalize("x1");
    auto r = annihilator_search(p, {at(p, "x1")}, 7, 64);
    REQUIRE(r.status == SearchStatus::Found);
    CHECK(r.kernel_degree == 1);
    CHECK(r.witness->to_string() == "X - 2");

    // y1^7 = 1 - 2^7
    auto y = annihilator_search(p, {at(p, "y1")}, 7, 200);
    REQUIRE(y.status == SearchStatus::Found);
    CHECK(y.witness->to_string() == "X^7 + 127");
    CHECK(y.witness->height() == 127);

    auto three = annihilator_search(p, {x0, y0, at(p, "x1")}, 1, 10);
    REQUIRE(three.status == SearchStatus::Found);
    CHECK(three.witness->to_string() == "X3 - 2");
    CHECK_THROWS_AS(annihilator_search(p, {}, 3, 3), Error);
    CHECK_THROWS_AS(annihilator_search(p, {p.domain_size()}, 3, 3), Error);
}

TEST_CASE("annihilator search picks the lowest height at the least degree")
{
    Presentation p;
    p.adjoin_curve_pair(0, "x0", "y0");
    const std::size_t x0 = at(p, "x0");
    std::size_t two_x = p.intern_for_testing(p.interp(x0) * FieldElement::constant(p.tower(), 2));
    std::size_t sq = p.intern_for_testing(p.interp(x0) * p.interp(x0));
    // (x, 2x, x^2): degree 1 gives 2*X1 - X2, degree 2 first has X1^2 - X3
    auto r = annihilator_search(p, {x0, two_x, sq}, 2, 10);
    REQUIRE(r.status == SearchStatus::Found);
    CHECK(r.witness->to_string() == "2*X1 - X2");
    auto only_sq = annihilator_search(p, {x0, sq}, 3, 10);
    REQUIRE(only_sq.status == SearchStatus::Found);
    CHECK(only_sq.witness->to_string() == "X^2 - Y");
}

TEST_CASE("transcendence oracles")
{
    Presentation p;
    p.adjoin_curve_pair(0, "x0", "y0");
    p.rationalize("x0");
    auto bounded = TranscendenceOracle::bounded(7, 64);
    CHECK(bounded.query(p, at(p, "x0")) == Verdict::Algebraic);
    CHECK(bounded.query(p, at(p, "y0")) == Verdict::Algebraic);
    CHECK(structural.query(p, at(p, "y0")) == Verdict::Algebraic);
    CHECK(TranscendenceOracle::bounded(7, 10).query(p, at(p, "y0")) == Verdict::Inconclusive);
    p.adjoin_transcendental("t");
    CHECK(bounded.query(p, at(p, "t")) == Verdict::Transcendental);
    CHECK(to_string(Verdict::Inconclusive) == "inconclusive");
}

TEST_CASE("membership via basis")
{
    Presentation p;
    p.adjoin_curve_pair(0, "x0", "y0");
    p.adjoin_curve_pair(1, "x1", "y1");
    BasisEnumeration b{{at(p, "x0"), at(p, "x1")}, {"", ""}};

    auto self = membership_via_basis(p, b, at(p, "x0"), {7, 1});
    CHECK(self.status == MembershipDecision::Status::Member);
    CHECK(self.witness->to_string() == "X - Y0");

    auto second = membership_via_basis(p, b, at(p, "x1"), {7, 1});
    CHECK(second.status == MembershipDecision::Status::Member);
    CHECK(second.witness->to_string() == "X - Y1");

    auto y = membership_via_basis(p, b, at(p, "y0"), {7, 1});
    CHECK(y.status == MembershipDecision::Status::NonMember);
    CHECK(y.witness->to_string() == "X^5 + Y0^5 - 1");
    CHECK(y.support == std::vector<std::size_t>{at(p, "x0")});

    CHECK(membership_via_basis(p, b, at(p, "y1"), {6, 1}).status == MembershipDecision::Status::Inconclusive);
    CHECK(membership_via_basis(p, b, at(p, "y0"), {4, 2}).status == MembershipDecision::Status::Inconclusive);
    CHECK(membership_via_basis(p, b, 1, {1, 1}).status == MembershipDecision::Status::NonMember);

    BasisEnumeration dependent{{at(p, "x0"), at(p, "y0")}, {"", ""}};
    CHECK_THROWS_AS(membership_via_basis(p, dependent, at(p, "x1"), {5, 2}), Error);
}

TEST_CASE("c from T on a singleton build")
{
    auto r = build_singleton(schedule({{1, 3}}), 10);
    const Presentation& p = r.presentation;
    auto one = c_from_t(p, structural, 1);
    CHECK(one.in_c);
    CHECK(one.conclusive);
    auto zero = c_from_t(p, structural, 0);
    CHECK_FALSE(zero.in_c);
    REQUIRE(zero.witness);
    CHECK(*zero.witness == std::make_pair(at(p, "x0"), at(p, "y0")));
    for (std::size_t i = 2; i < 10; ++i) CHECK_FALSE(c_from_t(p, structural, i).in_c);
}

TEST_CASE("trivial solutions are ignored")
{
    // 0 and 1 lie on every curve but never count
    Presentation p;
    auto s = find_transcendental_solution(p, structural, 0);
    CHECK_FALSE(s.found);
    CHECK(basis_from_c(p, EnumerationSchedule{}).emitted.empty());
}

TEST_CASE("basis from C")
{
    auto empty = build_singleton(EnumerationSchedule{}, 5);
    auto b = basis_from_c(empty.presentation, EnumerationSchedule{});
    CHECK(as_set(b) == indices_of(empty.presentation, empty.truth.basis));
    CHECK(b.emitted.size() == 5);

    auto r = build_singleton(schedule({{1, 3}}), 5);
    const Presentation& p = r.presentation;
    auto c = schedule({{1, 3}});
    auto bc = basis_from_c(p, c);
    CHECK(as_set(bc) == std::set<std::size_t>{at(p, "x0"), at(p, "x2"), at(p, "x3"), at(p, "x4")});
    CHECK(annihilator_search(p, bc.emitted, 4, 10).status == SearchStatus::NoneExists);
    REQUIRE(bc.provenance.size() == bc.emitted.size());
    CHECK(bc.provenance[0].rfind("curve 0", 0) == 0);
}

TEST_CASE("D from T on an upcone copy")
{
    auto r = build_upcone_copy(EnumerationSchedule{}, schedule({{0, 3}}), 8);
    const Presentation& p = r.presentation;
    CHECK(d_from_t(p, structural, 0) == std::optional<bool>(true));
    CHECK(d_from_t(p, structural, 1) == std::optional<bool>(false));
    CHECK(d_from_t(p, structural, 3) == std::optional<bool>(false));
    CHECK_THROWS_AS(d_from_t(p, structural, 4), Error);
    // a bounded oracle that cannot reach y's height still answers from x
    CHECK(d_from_t(p, TranscendenceOracle::bounded(3, 4), 0) == std::optional<bool>(true));
}

TEST_CASE("basis from D")
{
    auto plain = build_edegree_copy(PhiTable{}, EnumerationSchedule{}, 8);
    auto b = basis_from_d(plain.presentation, EnumerationSchedule{}, PhiTable{});
    CHECK(as_set(b) == indices_of(plain.presentation, {"x1", "x3", "x5", "x7"}));
    CHECK(as_set(b) == indices_of(plain.presentation, plain.truth.basis));

    PhiTable phi;
    phi.add(0, 4, 2);
    auto d = schedule({{1, 2}}, 10);
    auto r = build_edegree_copy(phi, d, 10);
    auto bd = basis_from_d(r.presentation, d, phi);
    CHECK(as_set(bd) == indices_of(r.presentation, r.truth.basis));
    CHECK(std::count(bd.emitted.begin(), bd.emitted.end(), at(r.presentation, "x0.4")) == 1);
    CHECK(std::count(bd.emitted.begin(), bd.emitted.end(), at(r.presentation, "x3'")) == 1);
}

TEST_CASE("property: oracle agreement on small builds")
{
    auto rng = seeded_rng(41);
    std::uniform_int_distribution<int> stage(0, 5), coin(0, 2);
    for (int run = 0; run < 4; ++run) {
        EnumerationSchedule c(5);
        // at most one rationalized curve keeps every algebraic element of degree <= its q
        const std::uint64_t n = coin(rng);
        if (coin(rng)) c.enter(n, stage(rng));
        auto r = build_singleton(c, 3);
        const Presentation& p = r.presentation;
        for (std::size_t idx = 0; idx < p.domain_size(); ++idx) {
            INFO(idx << " " << p.interp(idx).to_string());
            const bool t = ground_truth_T(p, idx);
            auto s = annihilator_search(p, {idx}, 11, 64);
            if (s.status == SearchStatus::Found) {
                CHECK_FALSE(t);
                CHECK(annihilates(p, *s.witness, {idx}));
            }
            // an algebraic element has an annihilator within the degree bound
            CHECK((s.status == SearchStatus::NoneExists) == t);
        }
    }
}

TEST_CASE("property: round trips")
{
    auto rng = seeded_rng(43);
    std::uniform_int_distribution<int> stage(0, 7), coin(0, 3);
    for (int run = 0; run < 4; ++run) {
        EnumerationSchedule c(7), d(7);
        for (std::uint64_t k = 0; k < 4; ++k) {
            if (coin(rng) == 0) c.enter(k, stage(rng));
            if (coin(rng) == 0) d.enter(k, stage(rng));
        }
        auto single = build_singleton(c, 6);
        for (std::size_t i = 0; i < 6; ++i) CHECK(c_from_t(single.presentation, structural, i).in_c == c.member(i));
        auto bc = basis_from_c(single.presentation, c);
        CHECK(as_set(bc) == indices_of(single.presentation, single.truth.basis));

        auto copy = build_upcone_copy(c, d, 8);
        for (std::size_t j = 0; j < 4; ++j) CHECK(d_from_t(copy.presentation, structural, j) == d.member(j));

        PhiTable phi;
        for (std::uint64_t i = 0; i < 4; ++i)
            if (coin(rng) < 2) phi.add(i, stage(rng), coin(rng));
        auto e = build_edegree_copy(phi, d, 8);
        auto bd = basis_from_d(e.presentation, d, phi);
        CHECK(as_set(bd) == indices_of(e.presentation, e.truth.basis));
        CHECK(bd.emitted.size() == as_set(bd).size());
    }
}

TEST_CASE("property: every ledger generator is decided against the basis")
{
    auto r = build_singleton(schedule({{1, 2}}), 4);
    const Presentation& p = r.presentation;
    auto b = basis_from_c(p, schedule({{1, 2}}));
    for (const LedgerEntry& e : p.ledger()) {
        if (e.kind == LedgerKind::Constant) continue;
        INFO(e.label);
        auto m = membership_via_basis(p, b, e.index, {13, 1});
        REQUIRE(m.status != MembershipDecision::Status::Inconclusive);
        CHECK((m.status == MembershipDecision::Status::Member) == (r.truth.basis.count(e.label) == 1));
        std::vector<std::size_t> tuple{e.index};
        tuple.insert(tuple.end(), m.support.begin(), m.support.end());
        CHECK(annihilates(p, *m.witness, tuple));
    }
}

TEST_CASE("property: bounded independence agrees with T on ledger tuples")
{
    auto r = build_singleton(schedule({{0, 1}}), 3);
    const Presentation& p = r.presentation;
    std::vector<std::size_t> gens;
    for (const LedgerEntry& e : p.ledger())
        if (e.kind != LedgerKind::Constant) gens.push_back(e.index);
    for (std::size_t a = 0; a < gens.size(); ++a) {
        for (std::size_t b = a + 1; b < gens.size(); ++b) {
            auto s = annihilator_search(p, {gens[a], gens[b]}, 7, 1000000);
            // a pair containing an algebraic element is never independent
            if (!ground_truth_T(p, gens[a]) || !ground_truth_T(p, gens[b])) CHECK(s.status == SearchStatus::Found);
        }
    }
}
