#pragma once

// Finite-stage presentations of fields: an append-only list of add/mul facts
// over domain indices 0..n-1, with each index interpreted in a radical tower.

#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <tuple>
#include <unordered_map>
#include <vector>

#include <gmpxx.h>

#include "spectra/curves.hpp"
#include "spectra/field.hpp"

namespace spectra {

enum class FactKind { Add, Mul };

struct Fact {
    FactKind kind = FactKind::Add;
    std::size_t a = 0, b = 0, c = 0;  // a op b = c
    bool operator==(const Fact& o) const { return kind == o.kind && a == o.a && b == o.b && c == o.c; }
    std::string to_string() const;
};

enum class LedgerKind { Constant, Transcendental, Radical, Rationalized };

struct LedgerEntry {
    std::string label;
    std::size_t index = 0;
    LedgerKind kind = LedgerKind::Constant;
    std::uint32_t q = 0;  // radical
    mpq_class value;      // rationalized
    std::string describe() const;
};

struct CurvePairRecord {
    std::string x_label, y_label;
    std::size_t curve = 0;
    std::uint32_t q = 0;
};

enum class EventKind { AdjoinPair, AdjoinTranscendental, Rationalize };

struct StageEvent {
    EventKind kind = EventKind::AdjoinPair;
    std::size_t curve = 0;
    std::string label;
    std::string label_y;

    static StageEvent adjoin_pair(std::size_t curve, std::string x, std::string y);
    static StageEvent adjoin_transcendental(std::string label);
    static StageEvent rationalize(std::string label);
};

class Presentation {
public:
    explicit Presentation(PrimePolicy policy = PrimePolicy::Toy);

    PrimePolicy policy() const { return policy_; }
    std::size_t stage() const { return stage_; }
    std::size_t domain_size() const { return interp_.size(); }
    const std::vector<Fact>& facts() const { return facts_; }
    const FieldElement& interp(std::size_t index) const { return interp_.at(index); }
    bool has_interpretation() const { return has_interp_; }
    const Tower& tower() const { return tower_; }
    const std::vector<LedgerEntry>& ledger() const { return ledger_; }
    const LedgerEntry* find_label(std::string_view label) const;
    const LedgerEntry& label(std::string_view label) const;  // throws UnknownLabel
    const std::vector<CurvePairRecord>& curve_pairs() const { return pairs_; }
    std::optional<std::size_t> index_of(const FieldElement& value) const;

    std::pair<std::size_t, std::size_t> adjoin_curve_pair(std::size_t curve, const std::string& label_x,
                                                          const std::string& label_y);
    std::size_t adjoin_transcendental(const std::string& label);
    // Replaces a transcendental generator by the first admissible integer
    // a = 2, 3, 4, ...
    mpq_class rationalize(const std::string& label);
    // Processes one pending request; false when nothing was pending.
    bool closure_step();
    void apply(const StageEvent& event);
    void advance_stage(const std::vector<StageEvent>& events, std::size_t closure_steps = 1);

    std::string dump(bool debug = true) const;
    static Presentation load(std::string_view text);

    // Appends a fact without checking it; for tests of verify.
    void inject_fact_for_testing(const Fact& f) { facts_.push_back(f); }
    // Adds a domain element with no fact deriving it; for tests.
    std::size_t intern_for_testing(const FieldElement& value) { return intern(value); }

private:
    struct Operand {
        bool from_step = false;
        std::size_t value = 0;
    };
    struct ProgramStep {
        FactKind op;
        Operand a, b;
    };
    struct Program {
        std::vector<ProgramStep> steps;
        std::vector<std::size_t> results;
    };
    using FactKey = std::tuple<int, std::size_t, std::size_t>;

    void check_fresh(const std::string& label) const;
    std::size_t intern(FieldElement value);
    void record(FactKind kind, std::size_t a, std::size_t b, std::size_t c);
    std::optional<std::size_t> covered(FactKind kind, std::size_t a, std::size_t b) const;
    std::size_t compute(FactKind kind, std::size_t a, std::size_t b);
    bool program_step();
    bool dovetail_step();
    void enqueue_curve_program(std::size_t x, std::size_t y, std::uint32_t q);
    void enqueue_integer_program(std::size_t target, const mpq_class& value);
    void rebuild_index();

    PrimePolicy policy_;
    std::size_t stage_ = 0;
    Tower tower_;
    std::vector<FieldElement> interp_;
    bool has_interp_ = true;
    std::unordered_map<FieldElement, std::size_t, FieldElementHash> index_;
    std::vector<Fact> facts_;
    std::map<FactKey, std::size_t> fact_of_;
    std::set<std::size_t> negated_, inverted_;
    std::vector<LedgerEntry> ledger_;
    std::map<std::string, std::size_t, std::less<>> ledger_pos_;
    std::vector<CurvePairRecord> pairs_;

    std::deque<Program> programs_;
    bool program_turn_ = true;
    std::size_t level_ = 0, position_ = 0;  // dovetail cursor
};

Presentation new_presentation(PrimePolicy policy = PrimePolicy::Toy);

struct Violation {
    char check = 'a';  // a facts, b injectivity, c prefix, d curve pairs
    std::string message;
};

struct VerifyReport {
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
    std::string to_string() const;
};

// earlier_dump: facts must be a prefix of P's facts.
VerifyReport verify(const Presentation& p, const std::optional<std::string>& earlier_dump = std::nullopt);
VerifyReport verify_dump(std::string_view dump, const std::optional<std::string>& earlier_dump = std::nullopt);

// The facts section of a dump, one line per fact.
std::vector<std::string> dump_fact_lines(std::string_view dump);

}  // namespace spectra
