#include "doctest.h"

#include "spectra/error.hpp"
#include "spectra/schedules.hpp"
#include "test_support.hpp"

using namespace spectra;

namespace {

std::set<std::uint64_t> below(const std::set<std::uint64_t>& s, std::uint64_t u)
{
    return {s.begin(), s.lower_bound(u)};
}

// quiet_from: no entries at or after this stage
EnumerationSchedule random_schedule(std::mt19937_64& rng, Stage horizon, Stage quiet_from)
{
    EnumerationSchedule d(horizon);
    std::uniform_int_distribution<int> count(0, 6);
    std::uniform_int_distribution<std::uint64_t> elem(0, 9), stage(0, quiet_from - 1);
    for (int k = count(rng); k > 0; --k) {
        std::uint64_t n = elem(rng);
        if (!d.member(n)) d.enter(n, stage(rng));
    }
    return d;
}

PhiTable random_phi(std::mt19937_64& rng, Stage horizon)
{
    PhiTable phi;
    std::uniform_int_distribution<int> count(0, 5);
    std::uniform_int_distribution<std::uint64_t> input(0, 3), stage(0, horizon), use(0, 8);
    for (int k = count(rng); k > 0; --k) {
        std::uint64_t i = input(rng);
        Stage s = stage(rng);
        if (!phi.rows().count({i, s})) phi.add(i, s, use(rng));
    }
    return phi;
}

}  // namespace

TEST_CASE("member_at")
{
    EnumerationSchedule c = parse_schedule("enter 1 at 3\nhorizon 10\n");
    CHECK_FALSE(member_at(c, 1, 2));
    CHECK(member_at(c, 1, 3));
    CHECK_FALSE(member_at(c, 7, 100));
    CHECK(c.horizon() == 10);
    CHECK(c.members() == std::set<std::uint64_t>{1});
}

TEST_CASE("schedule files")
{
    EnumerationSchedule c = parse_schedule("# C\nenter 0 at 2\nenter 4 at 1\n");
    CHECK(c.horizon() == 2);
    CHECK(parse_schedule(c.to_text()).entries() == c.entries());
    CHECK_THROWS_AS(parse_schedule("enter 1 at 3\nenter 1 at 4\n"), Error);
    CHECK_THROWS_AS(parse_schedule("enter 1 at 9\nhorizon 4\n"), Error);
    try {
        parse_schedule("enter 1 at 3\nenter x at 4\n");
        FAIL("no error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::ParseError);
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }

    ChipSpec h = parse_chips("chip 3 0\ntail cycle 1\nhorizon 12\n");
    CHECK(h.value_at(3) == 0);
    CHECK(h.value_at(4) == 1);
    CHECK(h.hits_up_to(1, 12) == 12);
    CHECK(h.finitely_hit(0));
    CHECK_FALSE(h.finitely_hit(1));
    CHECK(parse_chips(h.to_text()).table() == h.table());
    CHECK_THROWS_AS(parse_chips("chip 0 1\nhorizon 3\n"), Error);  // not total

    PhiTable phi = parse_phi("phi 0 at 4 use 3\nphi 1 at 2 use 0\n");
    CHECK(phi.rows().size() == 2);
    CHECK(parse_phi(phi.to_text()).rows() == phi.rows());
    CHECK_THROWS_AS(parse_phi("phi 0 at 4 use 3\nphi 0 at 4 use 2\n"), Error);
}

TEST_CASE("stable_use")
{
    PhiTable phi;
    phi.add(0, 4, 3);
    EnumerationSchedule quiet(12);
    quiet.enter(5, 5);
    CHECK(stable_use(phi, quiet, 0, 4) == std::optional<std::uint64_t>(3));

    EnumerationSchedule moving(12);
    moving.enter(1, 5);
    CHECK_FALSE(stable_use(phi, moving, 0, 4));
    CHECK_FALSE(stable_use(phi, quiet, 1, 4));
    // before the row converges there is nothing
    CHECK_FALSE(stable_use(phi, quiet, 0, 3));
    // a convergence keeps holding while D is quiet below its use
    CHECK(stable_use(phi, quiet, 0, 9) == std::optional<std::uint64_t>(3));
    CHECK_FALSE(stable_use(phi, moving, 0, 9));
}

TEST_CASE("true_stability")
{
    PhiTable phi;
    phi.add(0, 4, 3);
    EnumerationSchedule d(12);
    CHECK(true_stability(phi, d, 0) == std::make_pair<Stage, std::uint64_t>(4, 3));

    // invalidated at stage 6, re-converges at 8
    phi.add(0, 8, 3);
    d.enter(2, 6);
    CHECK(true_stability(phi, d, 0) == std::make_pair<Stage, std::uint64_t>(8, 3));
    CHECK_FALSE(true_stability(phi, d, 1));
}

TEST_CASE("join_spec")
{
    EnumerationSchedule c(5);
    c.enter(0, 1);
    ChipSpec h = join_spec(c, {1});
    auto s = h.encoded_set(join_probe_end(c, {1}));
    CHECK(s.count(0));
    CHECK(s.count(3));

    CHECK_THROWS_AS(join_spec(c, {0}), Error);
    try {
        join_spec(c, {0});
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::InconsistentSpec);
    }

    EnumerationSchedule empty;
    ChipSpec odd = join_spec(empty, {0, 1});
    CHECK(odd.encoded_set(join_probe_end(empty, {0, 1})) == std::set<std::uint64_t>{1, 3});
}

TEST_CASE("property: member_at is monotone in s")
{
    auto rng = seeded_rng(11);
    for (int iter = 0; iter < 300; ++iter) {
        EnumerationSchedule c = random_schedule(rng, 20, 20);
        for (std::uint64_t n = 0; n < 10; ++n) {
            for (Stage s = 0; s < 21; ++s) {
                if (c.member_at(n, s)) REQUIRE(c.member_at(n, s + 1));
            }
        }
    }
}

TEST_CASE("property: quiesced schedules make stable_use at the horizon agree with true_stability")
{
    auto rng = seeded_rng(12);
    std::uniform_int_distribution<Stage> horizon(6, 30);
    int stable = 0;
    for (int iter = 0; iter < 500; ++iter) {
        Stage h = horizon(rng);
        EnumerationSchedule d = random_schedule(rng, h, h - h / 3);
        PhiTable phi = random_phi(rng, h);
        for (std::uint64_t i = 0; i < 4; ++i) {
            auto at_horizon = stable_use(phi, d, i, h);
            auto truth = true_stability(phi, d, i);
            REQUIRE(at_horizon.has_value() == truth.has_value());

            // oracle: least row whose use region already equals the final one
            std::optional<Stage> expect;
            for (const PhiRow& r : phi.rows_for(i)) {
                if (below(d.members_at(r.stage), r.use) == below(d.members(), r.use)) {
                    expect = r.stage;
                    break;
                }
            }
            REQUIRE(expect.has_value() == truth.has_value());
            if (truth) {
                CHECK(truth->first == *expect);
                ++stable;
            }
        }
    }
    CHECK(stable > 50);
}

TEST_CASE("property: join_spec encodes C and its complement")
{
    auto rng = seeded_rng(13);
    for (int iter = 0; iter < 200; ++iter) {
        EnumerationSchedule c = random_schedule(rng, 15, 15);
        std::set<std::uint64_t> witness;
        for (std::uint64_t n = 0; n < 10; ++n) {
            if (!c.member(n)) witness.insert(n);
        }
        ChipSpec h = join_spec(c, witness);
        std::uint64_t end = join_probe_end(c, witness);
        auto s = h.encoded_set(end);
        for (std::uint64_t n = 0; 2 * n + 1 < end; ++n) {
            // enumerating S decides C, and C decides S
            REQUIRE((s.count(2 * n) == 1) == c.member(n));
            REQUIRE((s.count(2 * n + 1) == 1) == !c.member(n));
        }
        for (auto code : s) REQUIRE(h.hits_up_to(code, h.horizon()) <= 1);
    }
}
