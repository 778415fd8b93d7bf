#include "doctest.h"

#include <algorithm>
#include <functional>

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

bool transcendental(const Presentation& p, const std::string& label)
{
    return ground_truth_T(p, p.label(label).index);
}

std::optional<mpq_class> rational(const Presentation& p, const std::string& label)
{
    return p.interp(p.label(label).index).rational_value();
}

// Generators adjoined as transcendentals are in the basis exactly when they
// still are; algebraic labels are not transcendental.
void check_truth(const BuildResult& r)
{
    const Presentation& p = r.presentation;
    for (const LedgerEntry& e : p.ledger()) {
        if (e.kind != LedgerKind::Transcendental && e.kind != LedgerKind::Rationalized) continue;
        INFO(e.label);
        CHECK(r.truth.basis.count(e.label) == std::size_t(ground_truth_T(p, e.index)));
    }
    for (const auto& l : r.truth.algebraic) {
        INFO(l);
        CHECK_FALSE(r.truth.basis.count(l));
        CHECK_FALSE(transcendental(p, l));
    }
    for (const auto& l : r.truth.basis) CHECK(p.find_label(l));
}

void check_stage_dumps(const BuildResult& r)
{
    std::optional<std::string> previous;
    for (const auto& d : r.stage_dumps) {
        auto rep = verify_dump(d, previous);
        INFO(rep.to_string());
        REQUIRE(rep.ok());
        previous = d;
    }
}

BuildOptions keep() { return {1, true}; }

}  // namespace

TEST_CASE("singleton: empty C")
{
    auto r = build_singleton(EnumerationSchedule{}, 5);
    for (int k = 0; k < 5; ++k) CHECK(r.presentation.label("x" + std::to_string(k)).kind == LedgerKind::Transcendental);
    CHECK(r.truth.basis == std::set<std::string>{"x0", "x1", "x2", "x3", "x4"});
    CHECK(r.truth.algebraic.empty());
    check_truth(r);
}

TEST_CASE("singleton: C = {1@3}")
{
    auto r = build_singleton(schedule({{1, 3}}), 10, PrimePolicy::Toy, keep());
    const Presentation& p = r.presentation;
    CHECK(rational(p, "x1"));
    CHECK_FALSE(transcendental(p, "x1"));
    CHECK_FALSE(transcendental(p, "y1"));
    // x1 untouched until the stage that sees 1 in C_3
    CHECK(r.stage_events[2] == 1);
    CHECK(r.stage_events[3] == 2);
    CHECK(Presentation::load(r.stage_dumps[2]).label("x1").kind == LedgerKind::Transcendental);
    CHECK(Presentation::load(r.stage_dumps[3]).label("x1").kind == LedgerKind::Rationalized);
    for (int k : {0, 2, 3, 4, 9}) CHECK(transcendental(p, "x" + std::to_string(k)));
    CHECK(r.truth.algebraic == std::set<std::string>{"x1", "y1"});
    check_truth(r);
    check_stage_dumps(r);
}

TEST_CASE("singleton: least unserved i first, one per stage")
{
    auto r = build_singleton(schedule({{0, 1}, {1, 1}}), 6, PrimePolicy::Toy, keep());
    auto at = [&](std::size_t s, const char* l) { return Presentation::load(r.stage_dumps[s]).label(l).kind; };
    CHECK(at(0, "x0") == LedgerKind::Transcendental);
    CHECK(at(1, "x0") == LedgerKind::Rationalized);
    CHECK(at(1, "x1") == LedgerKind::Transcendental);
    CHECK(at(2, "x1") == LedgerKind::Rationalized);
    check_truth(r);
}

TEST_CASE("singleton: entries after the last stage are settled")
{
    auto r = build_singleton(schedule({{0, 4}, {1, 4}}), 3);
    CHECK_FALSE(transcendental(r.presentation, "x0"));
    CHECK_FALSE(transcendental(r.presentation, "x1"));
    check_truth(r);
}

TEST_CASE("upcone")
{
    auto r = build_upcone(schedule({{0, 2}}), 8, PrimePolicy::Toy, keep());
    const Presentation& p = r.presentation;
    CHECK_FALSE(transcendental(p, "x0"));
    for (int k = 1; k < 8; ++k) CHECK(transcendental(p, "x" + std::to_string(k)));
    // even labels carry C-bar, odd labels omega
    CHECK(r.truth.basis == std::set<std::string>{"x1", "x2", "x3", "x4", "x5", "x6", "x7"});
    check_truth(r);
    check_stage_dumps(r);

    auto none = build_upcone(EnumerationSchedule{}, 6);
    for (const auto& e : none.presentation.ledger()) CHECK(e.kind != LedgerKind::Rationalized);
}

TEST_CASE("upcone copy")
{
    auto r = build_upcone_copy(schedule({{0, 2}}), schedule({{0, 3}}), 8, PrimePolicy::Toy, keep());
    const Presentation& p = r.presentation;
    CHECK_FALSE(transcendental(p, "x1"));
    CHECK(transcendental(p, "x1'"));
    CHECK(r.truth.replaced.at("x1") == "x1'");
    CHECK(Presentation::load(r.stage_dumps[2]).label("x1").kind == LedgerKind::Transcendental);
    CHECK(Presentation::load(r.stage_dumps[3]).label("x1").kind == LedgerKind::Rationalized);
    check_truth(r);
    check_stage_dumps(r);

    // one surviving transcendental pair per odd curve index
    for (std::size_t k = 1; k < 8; k += 2) {
        int live = 0;
        for (const auto& c : p.curve_pairs())
            if (c.curve == k && ground_truth_T(p, p.label(c.x_label).index)) ++live;
        CHECK(live == 1);
    }

    auto plain = build_upcone(schedule({{0, 2}}), 8);
    auto copy = build_upcone_copy(schedule({{0, 2}}), EnumerationSchedule{}, 8);
    CHECK(plain.presentation.dump() == copy.presentation.dump());
    CHECK(plain.truth == copy.truth);
}

TEST_CASE("edegree: generations")
{
    ChipSpec chips({{0, 5}, {1, 5}, {2, 0}, {3, 5}, {4, 5}, {5, 0}, {6, 5}, {7, 5}, {8, 5}, {9, 5}, {10, 5}}, {},
                   10);
    auto r = build_edegree(chips, 10, PrimePolicy::Toy, keep());
    const Presentation& p = r.presentation;
    CHECK_FALSE(transcendental(p, "x0.0"));
    CHECK_FALSE(transcendental(p, "x0.3"));
    CHECK(transcendental(p, "x0.6"));
    CHECK(r.truth.replaced.at("x0.0") == "x0.3");
    CHECK(r.truth.replaced.at("x0.3") == "x0.6");
    CHECK(transcendental(p, "x2.0"));
    CHECK(r.truth.basis.count("x0.6"));
    CHECK(r.truth.basis.count("x2.0"));
    check_truth(r);
    check_stage_dumps(r);
}

TEST_CASE("edegree: infinitely hit index loses its solutions")
{
    // i = 1 hit at every even stage, i = 0 once
    std::map<Stage, std::uint64_t> table{{1, 0}};
    ChipSpec chips(table, {1, 7}, 12);
    auto r = build_edegree(chips, 12);
    const Presentation& p = r.presentation;
    auto transcendental_pair = [&](std::size_t curve) {
        for (const auto& c : p.curve_pairs())
            if (c.curve == curve && ground_truth_T(p, p.label(c.x_label).index)) return true;
        return false;
    };
    CHECK(transcendental_pair(0));
    CHECK_FALSE(transcendental_pair(2));
    check_truth(r);
}

TEST_CASE("edegree copy")
{
    PhiTable phi;
    phi.add(0, 4, 2);
    auto r = build_edegree_copy(phi, schedule({}, 10), 10, PrimePolicy::Toy, keep());
    const Presentation& p = r.presentation;
    CHECK(transcendental(p, "x0.4"));
    CHECK(r.truth.basis.count("x0.4"));
    check_truth(r);
    check_stage_dumps(r);

    // D changes below the use right after convergence: retirement continues
    auto moved = build_edegree_copy(phi, schedule({{1, 5}}, 10), 10);
    CHECK_FALSE(transcendental(moved.presentation, "x0.4"));
    check_truth(moved);

    auto odd = build_edegree_copy(PhiTable{}, schedule({{1, 2}}), 6);
    CHECK_FALSE(transcendental(odd.presentation, "x3"));
    CHECK(transcendental(odd.presentation, "x3'"));
    CHECK(odd.truth.basis.count("x3'"));
    check_truth(odd);
}

TEST_CASE("fork")
{
    auto fk = build_fork(0, 6, 20, PrimePolicy::Toy, keep());
    std::string f = fk.f.presentation.dump(false), e = fk.e.presentation.dump(false);
    auto ff = dump_fact_lines(f), ef = dump_fact_lines(e);
    REQUIRE(ff.size() >= fk.prefix_facts);
    REQUIRE(ef.size() >= fk.prefix_facts);
    CHECK(std::equal(ff.begin(), ff.begin() + fk.prefix_facts, ef.begin()));
    CHECK(fk.f.stage_dumps[5] == fk.e.stage_dumps[5]);

    CHECK(transcendental(fk.f.presentation, "x1"));
    CHECK(transcendental(fk.f.presentation, "y1"));
    CHECK_FALSE(transcendental(fk.e.presentation, "x1"));
    CHECK_FALSE(transcendental(fk.e.presentation, "y1"));
    check_truth(fk.f);
    check_truth(fk.e);
    check_stage_dumps(fk.e);
    CHECK_THROWS_AS(build_fork(0, 5, 5), Error);
}

TEST_CASE("recipes")
{
    BuildRecipe rec;
    rec.kind = RecipeKind::Upcone;
    rec.stages = 4;
    CHECK_THROWS_AS(build(rec), Error);
    rec.c = schedule({{1, 1}});
    CHECK(build(rec).presentation.dump() == build_upcone(*rec.c, 4).presentation.dump());
    rec.kind = RecipeKind::Fork;
    CHECK_THROWS_AS(build(rec), Error);
}

TEST_CASE("ground truth sidecar")
{
    auto r = build_upcone_copy(schedule({{0, 1}}), schedule({{1, 3}}), 6);
    GroundTruth back = GroundTruth::parse(r.truth.to_text());
    CHECK(back == r.truth);
    CHECK(r.truth.to_text().find("replaced x3 by x3'") != std::string::npos);
    CHECK_THROWS_AS(GroundTruth::parse("basis\n"), Error);
}

TEST_CASE("property: determinism, budget and verification on random schedules")
{
    auto rng = seeded_rng(31);
    std::uniform_int_distribution<int> stage(0, 9), small(0, 4);
    for (int run = 0; run < 4; ++run) {
        EnumerationSchedule c(9), d(9);
        for (std::uint64_t n = 0; n < 5; ++n) {
            if (small(rng) < 2) c.enter(n, stage(rng));
            if (small(rng) < 2) d.enter(n, stage(rng));
        }
        PhiTable phi;
        for (std::uint64_t i = 0; i < 3; ++i)
            if (small(rng) < 3) phi.add(i, stage(rng), small(rng));
        std::map<Stage, std::uint64_t> table;
        for (Stage s = 0; s <= 9; ++s) table[s] = small(rng) % 3;
        ChipSpec chips(table, {}, 9);

        std::vector<std::function<BuildResult()>> builders{
            [&] { return build_singleton(c, 10, PrimePolicy::Toy, keep()); },
            [&] { return build_upcone(c, 10, PrimePolicy::Toy, keep()); },
            [&] { return build_upcone_copy(c, d, 10, PrimePolicy::Toy, keep()); },
            [&] { return build_edegree(chips, 10, PrimePolicy::Toy, keep()); },
            [&] { return build_edegree_copy(phi, d, 10, PrimePolicy::Toy, keep()); },
        };
        for (auto& b : builders) {
            BuildResult one = b(), two = b();
            CHECK(one.presentation.dump() == two.presentation.dump());
            CHECK(one.truth.to_text() == two.truth.to_text());
            check_stage_dumps(one);
            check_truth(one);
            // at most: one pair, a rationalization and a replacement pair per
            // live index, plus the closure element
            std::size_t previous = 2;
            for (std::size_t s = 0; s < one.domain_sizes.size(); ++s) {
                CHECK(one.domain_sizes[s] - previous <= 2 + 2 * 10 + 1);
                previous = one.domain_sizes[s];
            }
        }
    }
}
