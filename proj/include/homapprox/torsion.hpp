#pragma once

#include <optional>
#include <random>
#include <string>

#include "homapprox/homology.hpp"

namespace homapprox {

struct Clause {
    std::string name;
    bool ok = false;
    std::string detail;
};

// Verdict of one of the torsionfree/semidualizing/spherical predicates: the
// result is the conjunction of the recorded clauses, one per definition
// clause, so a referee can re-check each independently.
struct PredicateVerdict {
    std::string predicate;
    int n = 0;
    bool result = false;
    std::vector<Clause> clauses;
};

// Ext^i(M, C) = 0 for 1 <= i <= n
PredicateVerdict is_n_c_spherical(const FPModule& m, const FPModule& c, int n);

// n = 1: lambda_R mono and Ext^1(C,C) = 0; n >= 2: lambda_R iso and
// Ext^i(C,C) = 0 for 1 <= i <= n
PredicateVerdict is_n_semidualizing(const FPModule& c, int n);

// n = 1: lambda_M mono; n >= 2: lambda_M iso and Ext^i(M^dual, C) = 0 for
// 1 <= i <= n-2
PredicateVerdict is_n_c_torsionfree(const FPModule& m, const FPModule& c, int n);

// computed both through the transpose (Ext^i(Tr M, R) = 0 for i <= n) and
// through rho (rho mono / iso + Ext^i(M*, R) = 0 for i <= n-2); disagreement
// raises TheoremViolation
PredicateVerdict is_n_torsionfree(const FPModule& m, int n);

// Hypotheses under which the approximation construction runs: full
// n-semidualizing, or the weakened variants for n in {1, 2}
// (n=1: Ext^1(C,C)=0; n=2: lambda_R mono and Ext^{1,2}(C,C)=0).
struct HypothesisRecord {
    std::string mode; // "n-semidualizing" | "weakened-ext1" | "weakened-ext12" | "failed"
    bool ok = false;
    std::vector<Clause> clauses;
};
HypothesisRecord approximation_hypotheses(const FPModule& c, int n);

struct LeftApproximation {
    ModuleMap map;                     // M -> X0 = (+)_l C(twists[l])
    FPModule target;                   // X0
    std::vector<std::int64_t> twists;  // add-C twist data of X0
    bool mono = false;
    bool coker_ext1_vanishes = false; // Ext^1(coker, C) = 0
    FPModule coker;
    ModuleMap coker_proj;
};

// Assembled from the minimal generators of Hom(M, C), sorted by (degree,
// matrix encoding) so the construction is deterministic. Hom(M,C) = 0 with
// M != 0 yields the zero map with mono = false (flagged, not fatal).
LeftApproximation left_addc_approximation(const FPModule& m, const FPModule& c);

struct RightApproximation {
    ModuleMap map; // (+)_l C(twists[l]) -> M
    FPModule source;
    std::vector<std::int64_t> twists;
    bool epi = false;
};
RightApproximation right_addc_approximation(const FPModule& m, const FPModule& c);

struct LeftResolutionResult {
    std::vector<LeftApproximation> steps;
    int failed_at = -1; // step index of the first non-injective approximation
    HypothesisRecord equivalence_hypotheses; // the assumptions the
                                             // resolution <-> torsionfree
                                             // equivalence needs at this n
    PredicateVerdict torsionfree;            // is_n_c_torsionfree(M, C, n)
    bool success() const { return failed_at < 0; }
};

// Iterates injective left approximations on successive cokernels. When the
// recorded hypotheses hold, success through length n must match
// is_n_c_torsionfree(M, C, n); a mismatch raises TheoremViolation.
LeftResolutionResult left_addc_resolution(const FPModule& m, const FPModule& c, int length);

struct AddCVerdict {
    enum class Kind { Yes, No, Undetermined };
    Kind kind = Kind::Undetermined;
    int count = 0;                     // Y = (+)_{i<count} C(twists[i])
    std::vector<std::int64_t> twists;
    std::optional<ModuleMap> iso; // explicit iso (+) C(a_i) -> Y when found
    std::string reason;
    bool yes() const { return kind == Kind::Yes; }
};

inline constexpr int kDefaultIsoTrials = 64;

// add-C membership for graded-local contexts with End(C) = R: Hilbert/twist
// matching plus a seeded random search for an explicit isomorphism.
AddCVerdict addc_membership(const FPModule& y, const FPModule& c, std::mt19937_64& rng,
                            int trials = kDefaultIsoTrials);

struct AddCLayer {
    ShortExactSequence ses; // 0 -> W_{i+1} -> D_i -> W_i -> 0
    FPModule layer;         // D_i, in add C
    AddCVerdict layer_cert;
};

// Chain of layers certifying Cdim(y0) <= layers.size(): splicing gives
// 0 -> final -> D_{s-1} -> ... -> D_0 -> y0 -> 0 with final in add C.
struct AddCFiltration {
    FPModule y0;
    std::vector<AddCLayer> layers;
    FPModule final_module;
    AddCVerdict final_cert;
    std::size_t certified_bound() const { return layers.size(); }
};

std::vector<Clause> verify_filtration(const AddCFiltration& f, const FPModule& c,
                                      std::mt19937_64& rng, int trials = kDefaultIsoTrials,
                                      std::int64_t window = kDefaultHilbertWindow);

struct CdimResult {
    enum class Kind { Finite, Exceeded, Infinite, Undetermined };
    Kind kind = Kind::Undetermined;
    int value = -1;    // meaningful for Finite
    int bound = 0;     // the bound that was used
    AddCFiltration filtration; // certificate when Finite
    std::vector<AddCVerdict> step_verdicts;
    std::string reason;
};

// Iterated right approximations, testing the kernel against add C at each
// depth. Undetermined membership verdicts are recorded and propagated, never
// silently treated as "no".
CdimResult c_dim(const FPModule& m, const FPModule& c, int bound, std::mt19937_64& rng,
                 int trials = kDefaultIsoTrials);

// depth C + 1 when lambda_R : R -> Hom(C,C) is an isomorphism (finite values
// cannot exceed depth C); nullopt otherwise.
std::optional<int> default_cdim_bound(const FPModule& c);

} // namespace homapprox
