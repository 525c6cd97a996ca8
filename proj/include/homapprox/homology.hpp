#pragma once

#include <optional>

#include "homapprox/fpmodule.hpp"

namespace homapprox {

// Free resolution ... -> P_1 -> P_0 -> M_min -> 0. diffs[k] holds the columns
// of d_{k+1} : P_{k+1} -> P_k, so length() counted in differentials. When
// `complete` the module has finite projective dimension length().
struct Resolution {
    FPModule module;     // the module that was resolved
    MinimizeResult min;  // witnesses between module and its minimal model
    std::vector<FreeModule> frees;            // P_0 .. P_L
    std::vector<std::vector<VecPoly>> diffs;  // d_1 .. d_L
    bool minimal = true;
    bool complete = false;

    std::size_t length() const { return diffs.size(); }
    std::size_t rank(std::size_t i) const { return i < frees.size() ? frees[i].rank() : 0; }
    // graded Betti numbers: (homological degree, internal degree) -> count
    std::vector<std::pair<std::int64_t, std::int64_t>> betti() const;
};

// Minimal resolutions are memoized per module and extended on demand;
// non-minimal resolutions use the presentation as given and keep every
// syzygy generator.
Resolution free_resolution(const FPModule& m, std::size_t length, bool minimal = true);

// Select a minimal homogeneous generating subset (graded Nakayama): no kept
// element lies in the submodule generated by the others. Deterministic.
std::vector<VecPoly> minimal_generators(const RingContext& ctx, const FreeModule& F,
                                        std::vector<VecPoly> gens);

// Omega^n via the minimal resolution (canonical representative); Omega^0 = M.
FPModule syzygy_module(const FPModule& m, std::size_t n);

// The short exact sequences 0 -> Omega^{i+1} -> P_i -> Omega^i -> 0 for
// 0 <= i < n, built once so the module identities stay consistent.
// omega[0] is the minimized module; aug carries it back onto M.
struct SyzygyChain {
    FPModule base;
    std::vector<FPModule> omega; // omega[0..n]
    std::vector<FPModule> pfree; // P_0..P_{n-1} as free FPModules
    std::vector<ModuleMap> incl; // Omega^{i+1} -> P_i
    std::vector<ModuleMap> proj; // P_i -> Omega^i
    ModuleMap from_min;          // omega[0] -> base (iso witness)
};
SyzygyChain make_syzygy_chain(const FPModule& m, std::size_t n);

// Tr M = coker of the R-dual of the first minimal differential.
FPModule transpose(const FPModule& m);

// free over R: the minimal presentation has no relations
bool is_free_module(const FPModule& m);

// Hom_R(M, N) as an FPModule together with the decoder between its elements
// and explicit module maps. Generators decode to maps M -> N whose shift is
// the generator degree; encode() is the inverse on genuine maps.
class HomModule {
public:
    const FPModule& module() const { return h_; }
    const FPModule& source() const { return m_; }
    const FPModule& target() const { return n_; }

    std::size_t generator_count() const { return h_.cover().rank(); }
    std::int64_t generator_degree(std::size_t l) const { return -h_.cover().twists[l]; }
    const ModuleMap& generator_map(std::size_t l) const { return gen_maps_[l]; }

    // element of the cover of H (homogeneous of degree = resulting shift)
    ModuleMap map_of(const VecPoly& h) const;
    VecPoly encode(const ModuleMap& f) const;

private:
    friend HomModule hom_module(const FPModule& m, const FPModule& n);
    FPModule m_, n_, h_;
    FPModule big_;                          // (+) N(-t_i), ambient of the kernel
    MinimizeResult mmin_;                   // between M and its minimal model
    MinimizeResult hmin_;                   // between kernel K0 and H
    std::vector<ModuleMap> gen_maps_;       // decoded generators (maps out of M)
    std::shared_ptr<const ModuleGB> lift_;  // [K0 gens | rel big] with cofactors
    std::vector<VecPoly> k0_gens_;
};

HomModule hom_module(const FPModule& m, const FPModule& n);

// Contravariant C-dual on objects and maps.
FPModule c_dual(const FPModule& m, const FPModule& c);
// f : M -> N induces Hom(N,C) -> Hom(M,C); the HomModules must be the ones
// the caller already holds so module identities line up.
ModuleMap dual_map(const ModuleMap& f, const HomModule& hom_n_c, const HomModule& hom_m_c);

struct NaturalMapRecord {
    enum class Verdict { Iso, Mono, Neither };
    ModuleMap map; // M -> Hom(Hom(M,C),C)
    Verdict verdict = Verdict::Neither;
    bool is_mono() const { return verdict != Verdict::Neither; }
    bool is_iso() const { return verdict == Verdict::Iso; }
};

// the natural evaluation map into the double C-dual, built on generator covers
NaturalMapRecord lambda_map(const FPModule& m, const FPModule& c);
// variant that reuses a dual pair (exposes the intermediate Hom modules)
NaturalMapRecord lambda_map_with(const FPModule& m, const HomModule& dual,
                                 const HomModule& double_dual);

// Ext^i(M, N) from the memoized minimal resolution of M.
FPModule ext_module(std::size_t i, const FPModule& m, const FPModule& n);
// same computation from an explicit resolution (resolution-independence tests)
FPModule ext_from_resolution(const Resolution& res, std::size_t i, const FPModule& n);
bool ext_is_zero(std::size_t i, const FPModule& m, const FPModule& n);

// 0 -> Ext^1(Tr M, R) -> M -> M** -> Ext^2(Tr M, R) -> 0
struct RhoSequenceReport {
    NaturalMapRecord rho;
    FPModule ext1_tr, ext2_tr;
    FPModule rho_kernel, rho_cokernel;
    bool kernel_match = false;   // H(ker rho) == H(Ext^1(Tr M, R)) on the window
    bool cokernel_match = false; // H(coker rho) == H(Ext^2(Tr M, R))
    bool four_term_identity = false;
    bool exact() const { return kernel_match && cokernel_match && four_term_identity; }
};
RhoSequenceReport rho_sequence(const FPModule& m, std::int64_t window = kDefaultHilbertWindow);

// grade(M, N) = inf { i : Ext^i(M,N) != 0 }, searched through dim R;
// nullopt encodes +infinity (everything vanished through the bound).
std::optional<int> grade(const FPModule& m, const FPModule& n);

FPModule ring_module(const RingContext& ctx);          // R as a module
FPModule residue_field_module(const RingContext& ctx); // k = R/m

// depth M = grade(k, M); throws on the zero module
int depth_module(const FPModule& m);

// graded canonical module omega = Ext_S^c(R, S)(-sum of weights); requires R
// Cohen-Macaulay. Validated: R -> Hom(omega, omega) must be an isomorphism.
FPModule canonical_module(const RingContext& ctx);

enum class InjDimVerdict { Finite, InfiniteUpToWindow, Undetermined };

struct InjDimReport {
    InjDimVerdict verdict = InjDimVerdict::Undetermined;
    std::vector<std::int64_t> bass; // mu_i = dim_k Ext^i(k, C), 0 <= i <= dim R + window
    int window = 2;
    int ring_depth = 0;
    std::string caveat; // the verdict is a Bass-number heuristic, recorded as such
};

InjDimReport injdim_surrogate(const FPModule& c, int window = 2);

// dim_k of a module annihilated by the irrelevant maximal ideal
std::int64_t finite_length_dim(const FPModule& m);

} // namespace homapprox
