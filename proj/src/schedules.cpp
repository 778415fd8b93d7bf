#include "spectra/schedules.hpp"

#include <algorithm>
#include <sstream>

#include "spectra/error.hpp"

namespace spectra {

EnumerationSchedule& EnumerationSchedule::enter(std::uint64_t n, Stage s)
{
    if (entries_.count(n)) throw Error(ErrorKind::InconsistentSpec, "element " + std::to_string(n) + " entered twice");
    if (s > horizon_) horizon_ = s;
    entries_[n] = s;
    return *this;
}

EnumerationSchedule& EnumerationSchedule::set_horizon(Stage h)
{
    for (const auto& [n, s] : entries_) {
        if (s > h) {
            throw Error(ErrorKind::InconsistentSpec,
                        "element " + std::to_string(n) + " enters after horizon " + std::to_string(h));
        }
    }
    horizon_ = h;
    return *this;
}

std::optional<Stage> EnumerationSchedule::entry_stage(std::uint64_t n) const
{
    auto it = entries_.find(n);
    if (it == entries_.end()) return std::nullopt;
    return it->second;
}

bool EnumerationSchedule::member_at(std::uint64_t n, Stage s) const
{
    auto it = entries_.find(n);
    return it != entries_.end() && it->second <= s;
}

std::set<std::uint64_t> EnumerationSchedule::members() const
{
    std::set<std::uint64_t> out;
    for (const auto& e : entries_) out.insert(e.first);
    return out;
}

std::set<std::uint64_t> EnumerationSchedule::members_at(Stage s) const
{
    std::set<std::uint64_t> out;
    for (const auto& [n, t] : entries_) {
        if (t <= s) out.insert(n);
    }
    return out;
}

bool EnumerationSchedule::changes_below(std::uint64_t u, Stage from, Stage to) const
{
    for (auto it = entries_.begin(); it != entries_.end() && it->first < u; ++it) {
        if (it->second > from && it->second <= to) return true;
    }
    return false;
}

std::string EnumerationSchedule::to_text() const
{
    std::vector<std::pair<Stage, std::uint64_t>> by_stage;
    for (const auto& [n, s] : entries_) by_stage.emplace_back(s, n);
    std::sort(by_stage.begin(), by_stage.end());
    std::ostringstream out;
    for (const auto& [s, n] : by_stage) out << "enter " << n << " at " << s << '\n';
    out << "horizon " << horizon_ << '\n';
    return out.str();
}

bool member_at(const EnumerationSchedule& c, std::uint64_t n, Stage s) { return c.member_at(n, s); }

namespace {

[[noreturn]] void bad_line(std::size_t line, const std::string& why)
{
    throw Error(ErrorKind::ParseError, "line " + std::to_string(line) + ": " + why);
}

// Splits into lines and whitespace tokens, dropping comments and blank lines.
std::vector<std::pair<std::size_t, std::vector<std::string>>> tokenize(std::string_view text)
{
    std::vector<std::pair<std::size_t, std::vector<std::string>>> out;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t number = 0;
    while (std::getline(in, line)) {
        ++number;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::vector<std::string> tokens;
        for (std::string t; ls >> t;) tokens.push_back(t);
        if (!tokens.empty()) out.emplace_back(number, std::move(tokens));
    }
    return out;
}

std::uint64_t number_at(const std::vector<std::string>& tokens, std::size_t k, std::size_t line)
{
    const std::string& t = tokens.at(k);
    if (t.empty() || !std::all_of(t.begin(), t.end(), [](char c) { return c >= '0' && c <= '9'; })) {
        bad_line(line, "expected a natural number, got '" + t + "'");
    }
    try {
        return std::stoull(t);
    } catch (const std::exception&) {
        bad_line(line, "number out of range '" + t + "'");
    }
}

}  // namespace

EnumerationSchedule parse_schedule(std::string_view text)
{
    EnumerationSchedule c;
    std::optional<Stage> horizon;
    for (const auto& [line, tok] : tokenize(text)) {
        if (tok[0] == "enter" && tok.size() == 4 && tok[2] == "at") {
            c.enter(number_at(tok, 1, line), number_at(tok, 3, line));
        } else if (tok[0] == "horizon" && tok.size() == 2) {
            if (horizon) bad_line(line, "second horizon line");
            horizon = number_at(tok, 1, line);
        } else {
            bad_line(line, "unrecognized schedule line");
        }
    }
    if (horizon) c.set_horizon(*horizon);
    return c;
}

ChipSpec::ChipSpec(std::map<Stage, std::uint64_t> table, std::vector<std::uint64_t> tail_cycle, Stage horizon)
    : table_(std::move(table)), cycle_(std::move(tail_cycle)), horizon_(horizon)
{
    if (cycle_.empty()) {
        for (Stage s = 0; s <= horizon_; ++s) {
            if (!table_.count(s)) {
                throw Error(ErrorKind::InconsistentSpec,
                            "no chip at stage " + std::to_string(s) + " and no tail cycle");
            }
        }
    }
}

std::uint64_t ChipSpec::value_at(Stage s) const
{
    if (auto it = table_.find(s); it != table_.end()) return it->second;
    if (cycle_.empty()) throw Error(ErrorKind::InvalidArgument, "stage beyond chip table");
    return cycle_[s % cycle_.size()];
}

std::size_t ChipSpec::hits_up_to(std::uint64_t n, Stage s) const
{
    std::size_t hits = 0;
    for (Stage t = 0; t <= s; ++t) hits += value_at(t) == n;
    return hits;
}

bool ChipSpec::finitely_hit(std::uint64_t n) const
{
    return std::find(cycle_.begin(), cycle_.end(), n) == cycle_.end();
}

std::set<std::uint64_t> ChipSpec::encoded_set(std::uint64_t probe_end) const
{
    std::set<std::uint64_t> out;
    for (std::uint64_t n = 0; n < probe_end; ++n) {
        if (finitely_hit(n)) out.insert(n);
    }
    return out;
}

std::string ChipSpec::to_text() const
{
    std::ostringstream out;
    for (const auto& [s, v] : table_) out << "chip " << s << ' ' << v << '\n';
    if (!cycle_.empty()) {
        out << "tail cycle";
        for (auto v : cycle_) out << ' ' << v;
        out << '\n';
    }
    out << "horizon " << horizon_ << '\n';
    return out.str();
}

ChipSpec parse_chips(std::string_view text)
{
    std::map<Stage, std::uint64_t> table;
    std::vector<std::uint64_t> cycle;
    std::optional<Stage> horizon;
    bool have_cycle = false;
    for (const auto& [line, tok] : tokenize(text)) {
        if (tok[0] == "chip" && tok.size() == 3) {
            Stage s = number_at(tok, 1, line);
            if (table.count(s)) bad_line(line, "second chip for stage " + std::to_string(s));
            table[s] = number_at(tok, 2, line);
        } else if (tok[0] == "tail" && tok.size() >= 3 && tok[1] == "cycle") {
            if (have_cycle) bad_line(line, "second tail cycle");
            have_cycle = true;
            for (std::size_t k = 2; k < tok.size(); ++k) cycle.push_back(number_at(tok, k, line));
        } else if (tok[0] == "horizon" && tok.size() == 2) {
            if (horizon) bad_line(line, "second horizon line");
            horizon = number_at(tok, 1, line);
        } else {
            bad_line(line, "unrecognized chip line");
        }
    }
    if (!horizon) {
        if (table.empty()) throw Error(ErrorKind::ParseError, "chip file needs a horizon");
        horizon = table.rbegin()->first;
    }
    return ChipSpec(std::move(table), std::move(cycle), *horizon);
}

PhiTable& PhiTable::add(std::uint64_t i, Stage s, std::uint64_t u)
{
    if (!rows_.emplace(std::make_pair(i, s), u).second) {
        throw Error(ErrorKind::InconsistentSpec,
                    "two phi rows for input " + std::to_string(i) + " at stage " + std::to_string(s));
    }
    return *this;
}

std::vector<PhiRow> PhiTable::rows_for(std::uint64_t i) const
{
    std::vector<PhiRow> out;
    for (auto it = rows_.lower_bound({i, 0}); it != rows_.end() && it->first.first == i; ++it) {
        out.push_back({i, it->first.second, it->second});
    }
    return out;
}

std::set<std::uint64_t> PhiTable::inputs() const
{
    std::set<std::uint64_t> out;
    for (const auto& r : rows_) out.insert(r.first.first);
    return out;
}

std::string PhiTable::to_text() const
{
    std::ostringstream out;
    for (const auto& [key, u] : rows_) out << "phi " << key.first << " at " << key.second << " use " << u << '\n';
    return out.str();
}

PhiTable parse_phi(std::string_view text)
{
    PhiTable phi;
    for (const auto& [line, tok] : tokenize(text)) {
        if (tok.size() == 6 && tok[0] == "phi" && tok[2] == "at" && tok[4] == "use") {
            phi.add(number_at(tok, 1, line), number_at(tok, 3, line), number_at(tok, 5, line));
        } else {
            bad_line(line, "unrecognized phi line");
        }
    }
    return phi;
}

std::optional<std::uint64_t> stable_use(const PhiTable& phi, const EnumerationSchedule& d, std::uint64_t i, Stage s)
{
    auto rows = phi.rows_for(i);
    // latest convergence first
    for (auto it = rows.rbegin(); it != rows.rend(); ++it) {
        if (it->stage > s) continue;
        if (!d.changes_below(it->use, it->stage, s + 1)) return it->use;
    }
    return std::nullopt;
}

std::optional<std::pair<Stage, std::uint64_t>> true_stability(const PhiTable& phi, const EnumerationSchedule& d,
                                                               std::uint64_t i)
{
    for (const PhiRow& r : phi.rows_for(i)) {
        if (!d.changes_below(r.use, r.stage, std::max(d.horizon(), r.stage))) return std::make_pair(r.stage, r.use);
    }
    return std::nullopt;
}

std::uint64_t join_probe_end(const EnumerationSchedule& c, const std::set<std::uint64_t>& complement_witness)
{
    std::uint64_t m = 0;
    for (auto n : c.members()) m = std::max(m, n + 1);
    for (auto n : complement_witness) m = std::max(m, n + 1);
    return 2 * m;
}

ChipSpec join_spec(const EnumerationSchedule& c, const std::set<std::uint64_t>& complement_witness)
{
    for (auto n : complement_witness) {
        if (c.member(n)) {
            throw Error(ErrorKind::InconsistentSpec, std::to_string(n) + " is both in C and in the complement witness");
        }
    }
    const std::uint64_t end = join_probe_end(c, complement_witness);
    std::set<std::uint64_t> s;
    for (auto n : c.members()) s.insert(2 * n);
    for (auto n : complement_witness) s.insert(2 * n + 1);

    // one hit for every code of S, then the rest of the probe range forever
    std::map<Stage, std::uint64_t> table;
    Stage next = 0;
    for (auto code : s) table[next++] = code;
    std::vector<std::uint64_t> cycle;
    for (std::uint64_t code = 0; code < end; ++code) {
        if (!s.count(code)) cycle.push_back(code);
    }
    if (cycle.empty()) cycle.push_back(end);
    Stage horizon = std::max<Stage>(c.horizon(), next);
    return ChipSpec(std::move(table), std::move(cycle), horizon);
}

}  // namespace spectra
