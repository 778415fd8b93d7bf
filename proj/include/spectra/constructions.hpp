#pragma once

// Stage-by-stage builders. Stage s+1 adjoins curve pair s, then applies the
// rationalizations the schedules call for, then closes one step.
//
// Labels: pair k is x<k>, y<k>; a replacement pair is x<k>', y<k>'; in the
// chip-driven builders the even pair 2i comes in generations x<2i>.<g>,
// y<2i>.<g> where g is the stage that created it (0 for the first one).

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "spectra/presentation.hpp"
#include "spectra/schedules.hpp"

namespace spectra {

struct GroundTruth {
    std::set<std::string> basis;
    std::set<std::string> algebraic;
    std::map<std::string, std::string> replaced;

    std::string to_text() const;
    static GroundTruth parse(std::string_view text);
    bool operator==(const GroundTruth& o) const
    {
        return basis == o.basis && algebraic == o.algebraic && replaced == o.replaced;
    }
};

struct BuildOptions {
    std::size_t closure_steps = 1;
    bool keep_stage_dumps = false;
};

struct BuildResult {
    Presentation presentation;
    GroundTruth truth;
    std::vector<std::string> stage_dumps;   // after each stage, when kept
    std::vector<std::size_t> domain_sizes;  // after each stage
    std::vector<std::size_t> stage_events;  // adjoins + rationalizations per stage
};

BuildResult build_singleton(const EnumerationSchedule& c, std::size_t stages, PrimePolicy policy = PrimePolicy::Toy,
                            const BuildOptions& opt = {});
BuildResult build_upcone(const EnumerationSchedule& c, std::size_t stages, PrimePolicy policy = PrimePolicy::Toy,
                         const BuildOptions& opt = {});
BuildResult build_upcone_copy(const EnumerationSchedule& c, const EnumerationSchedule& d, std::size_t stages,
                              PrimePolicy policy = PrimePolicy::Toy, const BuildOptions& opt = {});
BuildResult build_edegree(const ChipSpec& chips, std::size_t stages, PrimePolicy policy = PrimePolicy::Toy,
                          const BuildOptions& opt = {});
BuildResult build_edegree_copy(const PhiTable& phi, const EnumerationSchedule& d, std::size_t stages,
                               PrimePolicy policy = PrimePolicy::Toy, const BuildOptions& opt = {});

struct ForkResult {
    BuildResult f, e;
    std::size_t prefix_facts = 0;  // facts recorded by the shared prefix
};

// Curve pair x1, y1 on curve i at stage 1, one new transcendental y<k> at
// every later stage k. E rationalizes x1 right after the prefix.
ForkResult build_fork(std::size_t curve, std::size_t prefix_stages, std::size_t total_stages,
                      PrimePolicy policy = PrimePolicy::Toy, const BuildOptions& opt = {});

enum class RecipeKind { Singleton, Upcone, UpconeCopy, Edegree, EdegreeCopy, Fork };

std::string_view to_string(RecipeKind kind);

struct BuildRecipe {
    RecipeKind kind = RecipeKind::Singleton;
    std::optional<EnumerationSchedule> c, d;
    std::optional<ChipSpec> chips;
    std::optional<PhiTable> phi;
    std::size_t stages = 0;
    PrimePolicy policy = PrimePolicy::Toy;
};

// Checks that the inputs the kind needs are present (InvalidRecipe otherwise)
// and dispatches. Fork recipes go through build_fork.
BuildResult build(const BuildRecipe& recipe, const BuildOptions& opt = {});

std::string x_label(std::size_t k);
std::string y_label(std::size_t k);
std::string generation_label(char coord, std::size_t k, std::size_t g);

}  // namespace spectra
