#include "homapprox/context.hpp"

#include <map>
#include <mutex>

#include "homapprox/groebner.hpp"

namespace homapprox {

struct RingContextData {
    PolyRing ring;
    std::vector<Polynomial> ideal_gens;
    std::vector<Polynomial> ideal_gb;
    int dim = 0;

    // opaque per-context caches (canonical module, Ext tables, ...);
    // compute-then-publish under the mutex
    mutable std::mutex cache_mtx;
    mutable std::map<std::string, std::shared_ptr<const void>> cache;

    RingContextData(PolyRing r) : ring(std::move(r)) {}
};

namespace {

int lead_term_dimension(const PolyRing& ring, const std::vector<Polynomial>& gb) {
    // Krull dimension of S/in(I): the largest variable subset T such that no
    // lead monomial is supported inside T.
    std::size_t v = ring.nvars();
    std::vector<std::uint64_t> supports;
    for (const auto& g : gb) {
        std::uint64_t m = 0;
        for (std::size_t i = 0; i < v; ++i)
            if (g.lead().mono.exps[i] > 0) m |= (1ull << i);
        supports.push_back(m);
    }
    int best = 0;
    for (std::uint64_t t = 0; t < (1ull << v); ++t) {
        bool ok = true;
        for (auto s : supports)
            if ((s & ~t) == 0) { ok = false; break; }
        if (ok) best = std::max(best, __builtin_popcountll(t));
    }
    return best;
}

} // namespace

RingContext RingContext::from_data(std::shared_ptr<const RingContextData> d) {
    RingContext c;
    c.data_ = std::move(d);
    return c;
}

RingContext RingContext::make(std::vector<std::string> vars, std::vector<std::int64_t> weights,
                              std::uint32_t characteristic, OrderKind order,
                              const std::vector<std::string>& ideal_gens) {
    PolyRing ring(std::move(vars), std::move(weights), characteristic, order);
    std::vector<Polynomial> gens;
    for (const auto& s : ideal_gens) gens.push_back(ring.parse(s));
    return make(std::move(ring), std::move(gens));
}

RingContext RingContext::make(PolyRing ring, std::vector<Polynomial> ideal_gens) {
    for (const auto& g : ideal_gens) {
        if (g.is_zero()) continue;
        if (!ring.homogeneous_degree(g))
            throw PreconditionError("ideal generator not homogeneous: " + ring.to_string(g));
    }
    auto data = std::make_shared<RingContextData>(ring);

    // Bootstrap: the ideal's reduced basis is a rank-1 module computation
    // over the ambient ring (empty ideal context).
    auto ambient = std::make_shared<RingContextData>(ring);
    ambient->dim = int(ring.nvars());
    RingContext ambient_ctx = RingContext::from_data(ambient);

    std::vector<Polynomial> kept;
    for (auto& g : ideal_gens)
        if (!g.is_zero()) kept.push_back(g);
    data->ideal_gens = kept;

    if (!kept.empty()) {
        FreeModule F = ambient_ctx.free_module({0});
        std::vector<VecPoly> gen_vecs;
        for (const auto& g : kept) gen_vecs.push_back({g});
        ModuleGB gb(ambient_ctx, F, gen_vecs);
        for (const auto& b : gb.basis()) data->ideal_gb.push_back(b[0]);
        // reject the unit ideal: the quotient would be the zero ring
        for (const auto& b : data->ideal_gb)
            if (!b.is_zero() && b.lead().mono.is_one())
                throw PreconditionError("ideal contains a unit; quotient ring is zero");
    }
    data->dim = lead_term_dimension(ring, data->ideal_gb);
    return RingContext::from_data(std::move(data));
}

const PolyRing& RingContext::ring() const { return data_->ring; }
const std::vector<Polynomial>& RingContext::ideal_gens() const { return data_->ideal_gens; }
const std::vector<Polynomial>& RingContext::ideal_gb() const { return data_->ideal_gb; }
int RingContext::dimension() const { return data_->dim; }

bool RingContext::same_context(const RingContext& o) const {
    if (data_ == o.data_) return true;
    if (!data_ || !o.data_) return false;
    return data_->ring.same_ring(o.data_->ring) && data_->ideal_gb == o.data_->ideal_gb;
}

RingContext RingContext::ambient() const {
    if (data_->ideal_gens.empty()) return *this;
    return make(data_->ring, {});
}

FreeModule RingContext::free_module(std::vector<std::int64_t> twists) const {
    return FreeModule{data_, std::move(twists)};
}

// --- context cache access (shared by homology/torsion layers) ---
std::shared_ptr<const void> context_cache_get(const RingContext& ctx, const std::string& key) {
    auto d = ctx.data();
    std::lock_guard<std::mutex> lock(d->cache_mtx);
    auto it = d->cache.find(key);
    return it == d->cache.end() ? nullptr : it->second;
}

void context_cache_put(const RingContext& ctx, const std::string& key,
                       std::shared_ptr<const void> value) {
    auto d = ctx.data();
    std::lock_guard<std::mutex> lock(d->cache_mtx);
    d->cache.emplace(key, std::move(value));
}

// --- VecPoly helpers ---

VecPoly vp_zero(std::size_t rank) { return VecPoly(rank); }

bool vp_is_zero(const VecPoly& v) {
    for (const auto& p : v)
        if (!p.is_zero()) return false;
    return true;
}

VecPoly vp_add(const PolyRing& ring, const VecPoly& a, const VecPoly& b) {
    VecPoly r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = ring.add(a[i], b[i]);
    return r;
}

VecPoly vp_sub(const PolyRing& ring, const VecPoly& a, const VecPoly& b) {
    VecPoly r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = ring.sub(a[i], b[i]);
    return r;
}

VecPoly vp_neg(const PolyRing& ring, const VecPoly& a) {
    VecPoly r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = ring.neg(a[i]);
    return r;
}

VecPoly vp_scale(const PolyRing& ring, const VecPoly& a, std::uint32_t c) {
    VecPoly r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = ring.scale(a[i], c);
    return r;
}

VecPoly vp_term_mul(const PolyRing& ring, const VecPoly& a, const Monomial& m, std::uint32_t c) {
    VecPoly r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = ring.term_mul(a[i], m, c);
    return r;
}

VecPoly vp_poly_mul(const PolyRing& ring, const VecPoly& a, const Polynomial& p) {
    VecPoly r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = ring.mul(a[i], p);
    return r;
}

std::optional<std::int64_t> vp_degree(const PolyRing& ring, const FreeModule& F, const VecPoly& v) {
    std::optional<std::int64_t> d;
    for (std::size_t j = 0; j < v.size(); ++j) {
        if (v[j].is_zero()) continue;
        auto pd = ring.homogeneous_degree(v[j]);
        if (!pd) return std::nullopt;
        std::int64_t vd = *pd - F.twists[j];
        if (d && *d != vd) return std::nullopt;
        d = vd;
    }
    return d;
}

} // namespace homapprox
