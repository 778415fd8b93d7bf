#include "spectra/constructions.hpp"

#include <sstream>

#include "spectra/error.hpp"

namespace spectra {

std::string x_label(std::size_t k) { return "x" + std::to_string(k); }
std::string y_label(std::size_t k) { return "y" + std::to_string(k); }

std::string generation_label(char coord, std::size_t k, std::size_t g)
{
    return std::string(1, coord) + std::to_string(k) + "." + std::to_string(g);
}

std::string GroundTruth::to_text() const
{
    std::ostringstream out;
    for (const auto& l : basis) out << "basis " << l << '\n';
    for (const auto& l : algebraic) out << "algebraic " << l << '\n';
    for (const auto& [a, b] : replaced) out << "replaced " << a << " by " << b << '\n';
    return out.str();
}

GroundTruth GroundTruth::parse(std::string_view text)
{
    GroundTruth t;
    std::istringstream in{std::string(text)};
    std::size_t no = 0;
    for (std::string line; std::getline(in, line);) {
        ++no;
        std::istringstream ls(line);
        std::vector<std::string> tok;
        for (std::string s; ls >> s;) tok.push_back(s);
        if (tok.empty()) continue;
        if (tok[0] == "basis" && tok.size() == 2) {
            t.basis.insert(tok[1]);
        } else if (tok[0] == "algebraic" && tok.size() == 2) {
            t.algebraic.insert(tok[1]);
        } else if (tok[0] == "replaced" && tok.size() == 4 && tok[2] == "by") {
            t.replaced[tok[1]] = tok[3];
        } else {
            throw Error(ErrorKind::ParseError, "line " + std::to_string(no) + ": unrecognized sidecar line");
        }
    }
    return t;
}

namespace {

class Runner {
public:
    Runner(PrimePolicy policy, const BuildOptions& opt) : opt_(opt) { out_.presentation = Presentation(policy); }

    void stage(const std::vector<StageEvent>& events)
    {
        out_.presentation.advance_stage(events, opt_.closure_steps);
        out_.domain_sizes.push_back(out_.presentation.domain_size());
        out_.stage_events.push_back(events.size());
        if (opt_.keep_stage_dumps) out_.stage_dumps.push_back(out_.presentation.dump());
    }

    BuildResult& out() { return out_; }
    GroundTruth& truth() { return out_.truth; }

    // x made rational, so both coordinates of its pair are algebraic
    void mark_algebraic(const std::string& x, const std::string& y)
    {
        out_.truth.algebraic.insert(x);
        out_.truth.algebraic.insert(y);
    }

    void mark_replaced(const std::string& x, const std::string& y, const std::string& nx, const std::string& ny)
    {
        out_.truth.replaced[x] = nx;
        out_.truth.replaced[y] = ny;
    }

private:
    BuildOptions opt_;
    BuildResult out_;
};

// Odd side shared by the copy builders: when j enters D, x_{2j+1} is made
// rational and a primed pair takes its place.
void swallow_odd(Runner& r, const EnumerationSchedule& d, std::size_t s, bool last, std::set<std::size_t>& swallowed,
                 std::vector<StageEvent>& ev)
{
    for (std::size_t k = 1; k <= s; k += 2) {
        const std::size_t j = (k - 1) / 2;
        if (swallowed.count(j)) continue;
        if (!d.member_at(j, s) && !(last && d.member(j))) continue;
        swallowed.insert(j);
        ev.push_back(StageEvent::rationalize(x_label(k)));
        ev.push_back(StageEvent::adjoin_pair(k, x_label(k) + "'", y_label(k) + "'"));
        r.mark_algebraic(x_label(k), y_label(k));
        r.mark_replaced(x_label(k), y_label(k), x_label(k) + "'", y_label(k) + "'");
    }
}

void odd_truth(Runner& r, std::size_t stages, const EnumerationSchedule* d)
{
    for (std::size_t k = 1; k < stages; k += 2) {
        const std::size_t j = (k - 1) / 2;
        r.truth().basis.insert(d && d->member(j) ? x_label(k) + "'" : x_label(k));
    }
}

BuildResult upcone_impl(const EnumerationSchedule& c, const EnumerationSchedule* d, std::size_t stages,
                        PrimePolicy policy, const BuildOptions& opt)
{
    Runner r(policy, opt);
    std::set<std::size_t> served, swallowed;
    for (std::size_t s = 0; s < stages; ++s) {
        const bool last = s + 1 == stages;
        std::vector<StageEvent> ev{StageEvent::adjoin_pair(s, x_label(s), y_label(s))};
        for (std::size_t k = 0; k <= s; k += 2) {
            const std::size_t i = k / 2;
            if (served.count(i)) continue;
            // entries past the last stage are taken now
            if (!c.member_at(i, s) && !(last && c.member(i))) continue;
            served.insert(i);
            ev.push_back(StageEvent::rationalize(x_label(k)));
        }
        if (d) swallow_odd(r, *d, s, last, swallowed, ev);
        r.stage(ev);
    }
    for (std::size_t k = 0; k < stages; k += 2) {
        if (c.member(k / 2))
            r.mark_algebraic(x_label(k), y_label(k));
        else
            r.truth().basis.insert(x_label(k));
    }
    odd_truth(r, stages, d);
    return std::move(r.out());
}

// Even pairs of the chip-driven builders, by i: live generation number.
struct Generations {
    std::map<std::size_t, std::size_t> live;

    void retire(Runner& r, std::size_t i, std::vector<StageEvent>& ev)
    {
        const std::size_t k = 2 * i, g = live.at(i);
        ev.push_back(StageEvent::rationalize(generation_label('x', k, g)));
        r.mark_algebraic(generation_label('x', k, g), generation_label('y', k, g));
        live.erase(i);
    }

    void replace(Runner& r, std::size_t i, std::size_t s, std::vector<StageEvent>& ev)
    {
        const std::size_t k = 2 * i, g = live.at(i);
        retire(r, i, ev);
        ev.push_back(StageEvent::adjoin_pair(k, generation_label('x', k, s + 1), generation_label('y', k, s + 1)));
        r.mark_replaced(generation_label('x', k, g), generation_label('y', k, g), generation_label('x', k, s + 1),
                        generation_label('y', k, s + 1));
        live[i] = s + 1;
    }

    std::vector<std::size_t> indices() const
    {
        std::vector<std::size_t> out;
        for (const auto& e : live) out.push_back(e.first);
        return out;
    }
};

StageEvent adjoin_with_generations(std::size_t s, Generations& gens)
{
    if (s % 2 == 0) {
        gens.live[s / 2] = 0;
        return StageEvent::adjoin_pair(s, generation_label('x', s, 0), generation_label('y', s, 0));
    }
    return StageEvent::adjoin_pair(s, x_label(s), y_label(s));
}

void even_truth(Runner& r, const Generations& gens)
{
    for (const auto& [i, g] : gens.live) r.truth().basis.insert(generation_label('x', 2 * i, g));
}

}  // namespace

BuildResult build_singleton(const EnumerationSchedule& c, std::size_t stages, PrimePolicy policy,
                            const BuildOptions& opt)
{
    Runner r(policy, opt);
    std::set<std::size_t> served;
    for (std::size_t s = 0; s < stages; ++s) {
        std::vector<StageEvent> ev{StageEvent::adjoin_pair(s, x_label(s), y_label(s))};
        // least unserved i <= s in C_s
        for (std::size_t i = 0; i <= s; ++i) {
            if (served.count(i) || !c.member_at(i, s)) continue;
            served.insert(i);
            ev.push_back(StageEvent::rationalize(x_label(i)));
            break;
        }
        if (s + 1 == stages) {
            // still waiting at the last stage: act on them now
            for (std::size_t i = 0; i <= s; ++i) {
                if (served.count(i) || !c.member(i)) continue;
                served.insert(i);
                ev.push_back(StageEvent::rationalize(x_label(i)));
            }
        }
        r.stage(ev);
    }
    for (std::size_t k = 0; k < stages; ++k) {
        if (c.member(k))
            r.mark_algebraic(x_label(k), y_label(k));
        else
            r.truth().basis.insert(x_label(k));
    }
    return std::move(r.out());
}

BuildResult build_upcone(const EnumerationSchedule& c, std::size_t stages, PrimePolicy policy,
                         const BuildOptions& opt)
{
    return upcone_impl(c, nullptr, stages, policy, opt);
}

BuildResult build_upcone_copy(const EnumerationSchedule& c, const EnumerationSchedule& d, std::size_t stages,
                              PrimePolicy policy, const BuildOptions& opt)
{
    return upcone_impl(c, &d, stages, policy, opt);
}

BuildResult build_edegree(const ChipSpec& chips, std::size_t stages, PrimePolicy policy, const BuildOptions& opt)
{
    Runner r(policy, opt);
    Generations gens;
    for (std::size_t s = 0; s < stages; ++s) {
        const bool last = s + 1 == stages;
        std::vector<StageEvent> ev{adjoin_with_generations(s, gens)};
        const std::size_t v = chips.value_at(s);
        if (gens.live.count(v)) {
            if (last && !chips.finitely_hit(v))
                gens.retire(r, v, ev);
            else
                gens.replace(r, v, s, ev);
        }
        if (last) {
            // hits that continue past the horizon would retire these
            for (std::size_t i : gens.indices()) {
                if (!chips.finitely_hit(i)) gens.retire(r, i, ev);
            }
        }
        r.stage(ev);
    }
    even_truth(r, gens);
    odd_truth(r, stages, nullptr);
    return std::move(r.out());
}

BuildResult build_edegree_copy(const PhiTable& phi, const EnumerationSchedule& d, std::size_t stages,
                               PrimePolicy policy, const BuildOptions& opt)
{
    Runner r(policy, opt);
    Generations gens;
    std::set<std::size_t> swallowed;
    for (std::size_t s = 0; s < stages; ++s) {
        const bool last = s + 1 == stages;
        std::vector<StageEvent> ev{adjoin_with_generations(s, gens)};
        for (std::size_t i : gens.indices()) {
            if (stable_use(phi, d, i, s)) continue;
            if (last && !true_stability(phi, d, i))
                gens.retire(r, i, ev);
            else
                gens.replace(r, i, s, ev);
        }
        if (last) {
            for (std::size_t i : gens.indices()) {
                if (!true_stability(phi, d, i)) gens.retire(r, i, ev);
            }
        }
        swallow_odd(r, d, s, last, swallowed, ev);
        r.stage(ev);
    }
    even_truth(r, gens);
    odd_truth(r, stages, &d);
    return std::move(r.out());
}

ForkResult build_fork(std::size_t curve, std::size_t prefix_stages, std::size_t total_stages, PrimePolicy policy,
                      const BuildOptions& opt)
{
    if (prefix_stages == 0 || prefix_stages >= total_stages)
        throw Error(ErrorKind::InvalidRecipe, "fork needs 0 < prefix stages < total stages");
    auto events = [&](std::size_t s) {
        if (s == 0) return std::vector<StageEvent>{StageEvent::adjoin_pair(curve, "x1", "y1")};
        return std::vector<StageEvent>{StageEvent::adjoin_transcendental(y_label(s + 1))};
    };
    Runner prefix(policy, opt);
    for (std::size_t s = 0; s < prefix_stages; ++s) prefix.stage(events(s));

    ForkResult out;
    out.prefix_facts = prefix.out().presentation.facts().size();
    Runner f = prefix, e = prefix;
    for (std::size_t s = prefix_stages; s < total_stages; ++s) {
        f.stage(events(s));
        auto ev = events(s);
        if (s == prefix_stages) ev.insert(ev.begin(), StageEvent::rationalize("x1"));
        e.stage(ev);
    }
    f.truth().basis.insert("x1");
    e.mark_algebraic("x1", "y1");
    for (std::size_t k = 2; k <= total_stages; ++k) {
        f.truth().basis.insert(y_label(k));
        e.truth().basis.insert(y_label(k));
    }
    out.f = std::move(f.out());
    out.e = std::move(e.out());
    return out;
}

std::string_view to_string(RecipeKind kind)
{
    switch (kind) {
    case RecipeKind::Singleton: return "singleton";
    case RecipeKind::Upcone: return "upcone";
    case RecipeKind::UpconeCopy: return "upcone_copy";
    case RecipeKind::Edegree: return "edegree";
    case RecipeKind::EdegreeCopy: return "edegree_copy";
    case RecipeKind::Fork: return "fork";
    }
    return "";
}

BuildResult build(const BuildRecipe& recipe, const BuildOptions& opt)
{
    auto need = [&](bool ok, const char* what) {
        if (!ok)
            throw Error(ErrorKind::InvalidRecipe, std::string(to_string(recipe.kind)) + " build needs " + what);
    };
    switch (recipe.kind) {
    case RecipeKind::Singleton:
        need(recipe.c.has_value(), "a set C");
        return build_singleton(*recipe.c, recipe.stages, recipe.policy, opt);
    case RecipeKind::Upcone:
        need(recipe.c.has_value(), "a set C");
        return build_upcone(*recipe.c, recipe.stages, recipe.policy, opt);
    case RecipeKind::UpconeCopy:
        need(recipe.c.has_value(), "a set C");
        need(recipe.d.has_value(), "a target set D");
        return build_upcone_copy(*recipe.c, *recipe.d, recipe.stages, recipe.policy, opt);
    case RecipeKind::Edegree:
        need(recipe.chips.has_value(), "a chip file");
        return build_edegree(*recipe.chips, recipe.stages, recipe.policy, opt);
    case RecipeKind::EdegreeCopy:
        need(recipe.d.has_value(), "a target set D");
        return build_edegree_copy(recipe.phi.value_or(PhiTable{}), *recipe.d, recipe.stages, recipe.policy, opt);
    case RecipeKind::Fork: break;
    }
    throw Error(ErrorKind::InvalidRecipe, "fork recipes are built with build_fork");
}

}  // namespace spectra
