#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "homapprox/context.hpp"

namespace homapprox {

// Position of a module term: monomial in a fixed component. Ordered
// term-over-position: ring order on the monomial first, then lower component
// wins ties.
struct ModMono {
    Monomial mono;
    std::size_t comp = 0;
};

struct GBOptions {
    // Track cofactors over the input generators. Needed for lift() and
    // syzygies(); membership-only bases run faster without.
    bool with_cofactors = false;
};

// Groebner basis of the submodule of a free R-module F generated by `gens`,
// where R = S/I. The reduced Groebner basis of I acts on every component, so
// normal forms decide membership over R, not S. Deterministic: identical
// inputs give identical bases.
class ModuleGB {
public:
    ModuleGB(RingContext ctx, FreeModule F, std::vector<VecPoly> gens, GBOptions opt = {});

    const RingContext& context() const { return ctx_; }
    const FreeModule& ambient() const { return F_; }
    std::size_t input_count() const { return n_inputs_; }

    // Reduced monic basis, sorted descending by lead term.
    const std::vector<VecPoly>& basis() const { return basis_main_; }
    const std::vector<ModMono>& lead_terms() const { return leads_; }

    // Fully reduced normal form; NF(v) == 0 iff v lies in the submodule over
    // R. Idempotent and k-linear.
    VecPoly normal_form(const VecPoly& v) const;
    bool contains(const VecPoly& v) const;

    // When NF(v) == 0, returns q with v == sum_i q[i] * gens[i] modulo I*F
    // (coordinates over the original gens only). Requires cofactors.
    std::optional<std::vector<Polynomial>> lift(const VecPoly& v) const;

    // Generators of the syzygy module { c in R^m : sum c_i gens_i == 0 in F
    // over R }, one coordinate per input generator. Requires cofactors.
    const std::vector<std::vector<Polynomial>>& syzygies() const;

    // Buchberger certificate: every S-vector of the final basis reduces to 0.
    bool check_buchberger() const;

private:
    struct Elem {
        VecPoly main;                 // element of F
        std::vector<Polynomial> cof;  // coordinates over all inputs (incl. ideal rows)
        ModMono lead;
        std::uint32_t lead_coeff = 0;
    };

    int cmp_mm(const ModMono& a, const ModMono& b) const;
    void set_lead(Elem& e) const;
    // reduce e.main against basis (head + tail); returns false if main == 0
    bool reduce_full(Elem& e) const;
    void run(std::vector<VecPoly> gens);

    RingContext ctx_;
    FreeModule F_;
    GBOptions opt_;
    std::size_t n_gens_ = 0;   // original generators
    std::size_t n_inputs_ = 0; // gens + adjoined ideal multiples
    std::vector<Elem> basis_;
    std::vector<VecPoly> basis_main_;
    std::vector<ModMono> leads_;
    std::vector<std::vector<Polynomial>> syz_;
};

// Convenience wrappers matching the operation names.
ModuleGB module_groebner(const std::vector<VecPoly>& gens, const FreeModule& F,
                         GBOptions opt = {});

// Syzygies of nonzero generators: returns the Schreyer-twisted free module G
// (one generator per input, twist = -deg(gen)) and a generating set of the
// syzygy module as columns in G.
std::pair<FreeModule, std::vector<std::vector<Polynomial>>> syzygy_generators(
    const std::vector<VecPoly>& gens, const FreeModule& F);

} // namespace homapprox
