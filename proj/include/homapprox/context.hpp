#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "homapprox/polynomial.hpp"

namespace homapprox {

class RingContext;

// Graded free module over a RingContext: F = (+)_j R(twists[j]).
// The j-th generator e_j sits in degree -twists[j]; a homogeneous element of
// degree d has components of polynomial degree d + twists[j].
struct FreeModule {
    std::shared_ptr<const class RingContextData> ctx_data; // set via RingContext
    std::vector<std::int64_t> twists;

    std::size_t rank() const { return twists.size(); }
};

// Element of a free module: one polynomial per component.
using VecPoly = std::vector<Polynomial>;

struct RingContextData;

// The ring R = S/I: ambient polynomial ring, homogeneous ideal with its
// reduced Groebner basis, and the Krull dimension of R. Every module and
// morphism is scoped to one context; contexts compare by content.
class RingContext {
public:
    RingContext() = default;

    static RingContext make(std::vector<std::string> vars, std::vector<std::int64_t> weights,
                            std::uint32_t characteristic, OrderKind order,
                            const std::vector<std::string>& ideal_gens);
    static RingContext make(PolyRing ring, std::vector<Polynomial> ideal_gens);

    const PolyRing& ring() const;
    const std::vector<Polynomial>& ideal_gens() const;
    const std::vector<Polynomial>& ideal_gb() const; // reduced, monic, sorted
    int dimension() const;                           // Krull dimension of R

    bool valid() const { return data_ != nullptr; }
    bool same_context(const RingContext& o) const;

    // The ambient ring as a context with zero ideal (for Ext over S).
    RingContext ambient() const;

    FreeModule free_module(std::vector<std::int64_t> twists) const;

    std::shared_ptr<const RingContextData> data() const { return data_; }
    static RingContext from_data(std::shared_ptr<const RingContextData> d);

private:
    std::shared_ptr<const RingContextData> data_;
};

// Opaque per-context cache used by the functor layers (canonical module,
// memoized Ext tables). Thread-safe compute-then-publish.
std::shared_ptr<const void> context_cache_get(const RingContext& ctx, const std::string& key);
void context_cache_put(const RingContext& ctx, const std::string& key,
                       std::shared_ptr<const void> value);

// --- VecPoly helpers (componentwise arithmetic over a PolyRing) ---
VecPoly vp_zero(std::size_t rank);
bool vp_is_zero(const VecPoly& v);
VecPoly vp_add(const PolyRing& ring, const VecPoly& a, const VecPoly& b);
VecPoly vp_sub(const PolyRing& ring, const VecPoly& a, const VecPoly& b);
VecPoly vp_neg(const PolyRing& ring, const VecPoly& a);
VecPoly vp_scale(const PolyRing& ring, const VecPoly& a, std::uint32_t c);
VecPoly vp_term_mul(const PolyRing& ring, const VecPoly& a, const Monomial& m, std::uint32_t c);
VecPoly vp_poly_mul(const PolyRing& ring, const VecPoly& a, const Polynomial& p);

// Degree of a homogeneous vector in F (accounting for twists); nullopt for
// zero or inhomogeneous vectors.
std::optional<std::int64_t> vp_degree(const PolyRing& ring, const FreeModule& F, const VecPoly& v);

} // namespace homapprox
