#pragma once

// Finite stand-ins for c.e. sets, chip functions and use-annotated oracle
// computations. Everything here is an immutable value.

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace spectra {

using Stage = std::uint64_t;

class EnumerationSchedule {
public:
    EnumerationSchedule() = default;
    explicit EnumerationSchedule(Stage horizon) : horizon_(horizon) {}

    // Throws InconsistentSpec on a second entry for n or a stage past the horizon.
    EnumerationSchedule& enter(std::uint64_t n, Stage s);
    EnumerationSchedule& set_horizon(Stage h);

    const std::map<std::uint64_t, Stage>& entries() const { return entries_; }
    Stage horizon() const { return horizon_; }
    std::optional<Stage> entry_stage(std::uint64_t n) const;

    bool member_at(std::uint64_t n, Stage s) const;
    bool member(std::uint64_t n) const { return entries_.count(n) != 0; }
    std::set<std::uint64_t> members() const;
    std::set<std::uint64_t> members_at(Stage s) const;
    // Some n < u enters at a stage in (from, to].
    bool changes_below(std::uint64_t u, Stage from, Stage to) const;

    std::string to_text() const;

private:
    std::map<std::uint64_t, Stage> entries_;
    Stage horizon_ = 0;
};

bool member_at(const EnumerationSchedule& c, std::uint64_t n, Stage s);

// Lines `enter <n> at <s>` and `horizon <s>`; '#' starts a comment. Without a
// horizon line the horizon is the last entry stage.
EnumerationSchedule parse_schedule(std::string_view text);

class ChipSpec {
public:
    // Stages missing from the table take tail_cycle[s mod len]. With an empty
    // cycle the table must cover [0, horizon].
    ChipSpec(std::map<Stage, std::uint64_t> table, std::vector<std::uint64_t> tail_cycle, Stage horizon);

    const std::map<Stage, std::uint64_t>& table() const { return table_; }
    const std::vector<std::uint64_t>& tail_cycle() const { return cycle_; }
    Stage horizon() const { return horizon_; }

    std::uint64_t value_at(Stage s) const;
    std::size_t hits_up_to(std::uint64_t n, Stage s) const;
    // h^{-1}(n) is finite exactly when n is not in the tail cycle.
    bool finitely_hit(std::uint64_t n) const;
    std::set<std::uint64_t> encoded_set(std::uint64_t probe_end) const;

    std::string to_text() const;

private:
    std::map<Stage, std::uint64_t> table_;
    std::vector<std::uint64_t> cycle_;
    Stage horizon_ = 0;
};

// Lines `chip <s> <v>`, `tail cycle <v1> <v2> ...`, `horizon <s>`.
ChipSpec parse_chips(std::string_view text);

struct PhiRow {
    std::uint64_t input = 0;
    Stage stage = 0;
    std::uint64_t use = 0;
};

class PhiTable {
public:
    // Throws InconsistentSpec on a second row for (i, s).
    PhiTable& add(std::uint64_t i, Stage s, std::uint64_t u);
    const std::map<std::pair<std::uint64_t, Stage>, std::uint64_t>& rows() const { return rows_; }
    std::vector<PhiRow> rows_for(std::uint64_t i) const;
    std::set<std::uint64_t> inputs() const;
    std::string to_text() const;

private:
    std::map<std::pair<std::uint64_t, Stage>, std::uint64_t> rows_;
};

// Lines `phi <i> at <s> use <u>`.
PhiTable parse_phi(std::string_view text);

// The use u of a convergence Phi_{e,s}^{D_s}(i) that survives into stage s+1.
// A row (i, s0, u) with s0 <= s keeps converging while D does not change
// below u, so it counts at s when D is unchanged below u on (s0, s+1].
std::optional<std::uint64_t> stable_use(const PhiTable& phi, const EnumerationSchedule& d, std::uint64_t i,
                                        Stage s);

// Least s with a row (i, s, u) whose use region of D never changes up to the
// horizon.
std::optional<std::pair<Stage, std::uint64_t>> true_stability(const PhiTable& phi, const EnumerationSchedule& d,
                                                               std::uint64_t i);

// Chip spec for S = C (+) witness: 2n in S iff n in C, 2n+1 in S iff n in
// witness, on codes [0, 2m) with m = 1 + max(C u witness).
ChipSpec join_spec(const EnumerationSchedule& c, const std::set<std::uint64_t>& complement_witness);
std::uint64_t join_probe_end(const EnumerationSchedule& c, const std::set<std::uint64_t>& complement_witness);

}  // namespace spectra
