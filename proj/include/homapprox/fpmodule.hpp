#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "homapprox/groebner.hpp"

namespace homapprox {

struct FPModuleData;

// Finitely presented graded module M = coker(A : F1 -> F0), stored as the
// relation matrix A (columns in the generator cover F0) plus cached
// machinery: the Groebner basis of im A + I*F0 and Hilbert values. Immutable
// after construction; caches fill idempotently under a lock.
class FPModule {
public:
    FPModule() = default;

    // relations given as columns in the cover; zero columns are dropped and
    // F1 twists are derived from column degrees.
    static FPModule make(RingContext ctx, std::vector<std::int64_t> cover_twists,
                         std::vector<VecPoly> relations);
    static FPModule free(RingContext ctx, std::vector<std::int64_t> twists);
    static FPModule zero(RingContext ctx);

    bool valid() const { return d_ != nullptr; }
    const RingContext& context() const;
    const FreeModule& cover() const;            // F0
    const FreeModule& relations_cover() const;  // F1
    const std::vector<VecPoly>& relations() const;
    const ModuleGB& gb() const; // of im A + I*F0, membership-only
    std::uint64_t id() const;

    bool is_free_presentation() const { return relations().empty(); }

    // dim_k M_d by counting standard monomials outside the lead-term module
    std::int64_t hilbert(std::int64_t degree) const;
    std::vector<std::int64_t> hilbert_table(std::int64_t lo, std::int64_t hi) const;
    // least degree of a cover generator (0 for the zero module)
    std::int64_t min_gen_degree() const;
    std::int64_t max_gen_degree() const;

    std::shared_ptr<const FPModuleData> data() const { return d_; }

private:
    std::shared_ptr<const FPModuleData> d_;
};

// Morphism of FPModules, stored on generator covers: column j is the image
// of the j-th cover generator of the source. `shift` is the degree of the
// map (entries of column j are homogeneous of degree tgt_twist + shift -
// src_twist). Construction verifies grading and that relations map to zero,
// so every ModuleMap value is a genuine morphism.
class ModuleMap {
public:
    ModuleMap() = default;

    static ModuleMap make(FPModule src, FPModule tgt, std::vector<VecPoly> cols,
                          std::int64_t shift = 0);
    static ModuleMap identity(const FPModule& m);
    static ModuleMap zero_map(FPModule src, FPModule tgt, std::int64_t shift = 0);

    bool valid() const { return src_.valid(); }
    const FPModule& source() const { return src_; }
    const FPModule& target() const { return tgt_; }
    const std::vector<VecPoly>& columns() const { return cols_; }
    std::int64_t shift() const { return shift_; }

    VecPoly apply(const VecPoly& v) const; // cover-level

    bool is_zero_map() const;

private:
    FPModule src_, tgt_;
    std::vector<VecPoly> cols_;
    std::int64_t shift_ = 0;
};

ModuleMap compose(const ModuleMap& g, const ModuleMap& f); // g after f
ModuleMap map_add(const ModuleMap& f, const ModuleMap& g);
ModuleMap map_sub(const ModuleMap& f, const ModuleMap& g);
ModuleMap map_scale(const ModuleMap& f, std::uint32_t c);
// equality as module maps: same covers/shift and difference kills every generator
bool equal_maps(const ModuleMap& f, const ModuleMap& g);

struct SubquotientResult {
    FPModule module;
    ModuleMap map; // K -> M inclusion, or M -> Q projection
};

// submodule of M generated by cover vectors (zero vectors skipped)
SubquotientResult submodule(const FPModule& m, const std::vector<VecPoly>& gens);

SubquotientResult kernel(const ModuleMap& f);   // mono K -> source
SubquotientResult cokernel(const ModuleMap& f); // epi target -> Q
SubquotientResult image(const ModuleMap& f);    // mono im -> target

struct PushoutResult {
    FPModule module;          // P = coker(A -> B (+) C)
    ModuleMap from_b, from_c; // the canonical maps B -> P, C -> P
};

// pushout of f : A -> B and g : A -> C (shift-0 maps with common source)
PushoutResult pushout(const ModuleMap& f, const ModuleMap& g);
// the induced map P -> T for a cone (u : B -> T, v : C -> T with uf = vg);
// throws if the cone condition fails
ModuleMap pushout_induced(const PushoutResult& po, const ModuleMap& u, const ModuleMap& v);

struct DirectSumResult {
    FPModule module;
    std::vector<ModuleMap> injections;
    std::vector<ModuleMap> projections;
};

DirectSumResult direct_sum(const std::vector<FPModule>& parts);
DirectSumResult direct_sum(const FPModule& a, const FPModule& b);

FPModule twist_module(const FPModule& m, std::int64_t a); // M(a): H_{M(a)}(d) = H_M(d+a)

struct MinimizeResult {
    FPModule module;  // Betti-minimal presentation
    ModuleMap to_min; // M -> M_min
    ModuleMap from_min;
};

// graded Nakayama pruning of unit entries; witnesses compose to identities
MinimizeResult minimize(const FPModule& m);

bool is_zero(const FPModule& m); // NF(e_j) == 0 for every cover generator
bool is_mono(const ModuleMap& f);
bool is_epi(const ModuleMap& f);
bool is_iso(const ModuleMap& f);

// dim_k M_d for 0 <= d <= bound
std::vector<std::int64_t> hilbert_function(const FPModule& m, std::int64_t bound);

inline constexpr std::int64_t kDefaultHilbertWindow = 12;

// Opaque per-module cache (used by the homology layer for memoized
// resolutions and related data). put() replaces; values must be immutable.
std::shared_ptr<const void> module_cache_get(const FPModule& m, const std::string& key);
void module_cache_put(const FPModule& m, const std::string& key,
                      std::shared_ptr<const void> value);

struct ShortExactSequence {
    ModuleMap i; // A -> B
    ModuleMap p; // B -> C
};

struct SESCheck {
    bool composite_zero = false;
    bool mono = false;
    bool epi = false;
    bool exact_mid = false;
    bool hilbert_additive = false;
    bool ok() const { return composite_zero && mono && epi && exact_mid && hilbert_additive; }
    std::string failing_clause() const;
};

// full verification: p i = 0, i mono, p epi, ker p = im i by mutual
// normal-form containment, and H_B = H_A + H_C on the window
SESCheck verify_ses(const ShortExactSequence& s,
                    std::int64_t hilbert_hi = kDefaultHilbertWindow);

} // namespace homapprox
