#include "homapprox/fpmodule.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <mutex>

namespace homapprox {

namespace {
std::atomic<std::uint64_t> next_module_id{1};
}

struct FPModuleData {
    RingContext ctx;
    FreeModule f0, f1;
    std::vector<VecPoly> rel;
    std::uint64_t id = 0;

    mutable std::mutex mtx;
    mutable std::shared_ptr<const ModuleGB> gb;
    mutable std::map<std::int64_t, std::int64_t> hilbert;
    mutable std::map<std::string, std::shared_ptr<const void>> aux; // homology layer
};

std::shared_ptr<const void> module_cache_get(const FPModule& m, const std::string& key) {
    auto d = m.data();
    std::lock_guard<std::mutex> lock(d->mtx);
    auto it = d->aux.find(key);
    return it == d->aux.end() ? nullptr : it->second;
}

void module_cache_put(const FPModule& m, const std::string& key,
                      std::shared_ptr<const void> value) {
    auto d = m.data();
    std::lock_guard<std::mutex> lock(d->mtx);
    d->aux[key] = std::move(value);
}

FPModule FPModule::make(RingContext ctx, std::vector<std::int64_t> cover_twists,
                        std::vector<VecPoly> relations) {
    const PolyRing& ring = ctx.ring();
    auto d = std::make_shared<FPModuleData>();
    d->ctx = ctx;
    d->f0 = ctx.free_module(cover_twists);
    std::vector<std::int64_t> f1_twists;
    for (auto& col : relations) {
        if (col.size() != cover_twists.size())
            throw PreconditionError("relation column rank mismatch");
        if (vp_is_zero(col)) continue;
        auto deg = vp_degree(ring, d->f0, col);
        if (!deg) throw PreconditionError("relation column not homogeneous");
        f1_twists.push_back(-*deg);
        d->rel.push_back(std::move(col));
    }
    d->f1 = ctx.free_module(std::move(f1_twists));
    d->id = next_module_id.fetch_add(1);
    FPModule m;
    m.d_ = std::move(d);
    return m;
}

FPModule FPModule::free(RingContext ctx, std::vector<std::int64_t> twists) {
    return make(std::move(ctx), std::move(twists), {});
}

FPModule FPModule::zero(RingContext ctx) { return make(std::move(ctx), {}, {}); }

const RingContext& FPModule::context() const { return d_->ctx; }
const FreeModule& FPModule::cover() const { return d_->f0; }
const FreeModule& FPModule::relations_cover() const { return d_->f1; }
const std::vector<VecPoly>& FPModule::relations() const { return d_->rel; }
std::uint64_t FPModule::id() const { return d_->id; }

const ModuleGB& FPModule::gb() const {
    std::lock_guard<std::mutex> lock(d_->mtx);
    if (!d_->gb)
        d_->gb = std::make_shared<const ModuleGB>(d_->ctx, d_->f0, d_->rel, GBOptions{false});
    return *d_->gb;
}

std::int64_t FPModule::min_gen_degree() const {
    std::int64_t m = 0;
    for (auto t : d_->f0.twists) m = std::min(m, -t);
    return m;
}

std::int64_t FPModule::max_gen_degree() const {
    std::int64_t m = 0;
    for (auto t : d_->f0.twists) m = std::max(m, -t);
    return m;
}

std::int64_t FPModule::hilbert(std::int64_t degree) const {
    {
        std::lock_guard<std::mutex> lock(d_->mtx);
        auto it = d_->hilbert.find(degree);
        if (it != d_->hilbert.end()) return it->second;
    }
    const ModuleGB& basis = gb();
    const PolyRing& ring = d_->ctx.ring();
    std::int64_t count = 0;
    for (std::size_t j = 0; j < d_->f0.rank(); ++j) {
        std::int64_t polydeg = degree + d_->f0.twists[j];
        if (polydeg < 0) continue;
        for (const auto& m : ring.monomials_of_degree(polydeg)) {
            bool standard = true;
            for (const auto& lt : basis.lead_terms()) {
                if (lt.comp == j && lt.mono.divides(m)) { standard = false; break; }
            }
            if (standard) ++count;
        }
    }
    std::lock_guard<std::mutex> lock(d_->mtx);
    d_->hilbert.emplace(degree, count);
    return count;
}

std::vector<std::int64_t> FPModule::hilbert_table(std::int64_t lo, std::int64_t hi) const {
    std::vector<std::int64_t> out;
    for (std::int64_t d = lo; d <= hi; ++d) out.push_back(hilbert(d));
    return out;
}

std::vector<std::int64_t> hilbert_function(const FPModule& m, std::int64_t bound) {
    return m.hilbert_table(0, bound);
}

// --- ModuleMap ---

ModuleMap ModuleMap::make(FPModule src, FPModule tgt, std::vector<VecPoly> cols,
                          std::int64_t shift) {
    if (!src.context().same_context(tgt.context()))
        throw PreconditionError("map between modules over different contexts");
    const PolyRing& ring = src.context().ring();
    if (cols.size() != src.cover().rank())
        throw PreconditionError("map column count must equal source cover rank");
    for (std::size_t j = 0; j < cols.size(); ++j) {
        if (cols[j].size() != tgt.cover().rank())
            throw PreconditionError("map column rank must equal target cover rank");
        // grading: column j is homogeneous of degree deg(e_j) + shift
        auto deg = vp_degree(ring, tgt.cover(), cols[j]);
        if (deg && *deg != -src.cover().twists[j] + shift)
            throw PreconditionError("map entry degrees inconsistent with twists and shift");
        if (!deg && !vp_is_zero(cols[j]))
            throw PreconditionError("map column not homogeneous");
    }
    ModuleMap f;
    f.src_ = std::move(src);
    f.tgt_ = std::move(tgt);
    f.cols_ = std::move(cols);
    f.shift_ = shift;
    // compatibility: relations of the source must map into im(rel) + I
    for (const auto& a : f.src_.relations()) {
        VecPoly img = f.apply(a);
        if (!vp_is_zero(f.tgt_.gb().normal_form(img)))
            throw PreconditionError("matrix does not descend to a module map (relation image nonzero)");
    }
    return f;
}

ModuleMap ModuleMap::identity(const FPModule& m) {
    std::vector<VecPoly> cols;
    const PolyRing& ring = m.context().ring();
    for (std::size_t j = 0; j < m.cover().rank(); ++j) {
        VecPoly c = vp_zero(m.cover().rank());
        c[j] = ring.constant(1);
        cols.push_back(std::move(c));
    }
    return make(m, m, std::move(cols), 0);
}

ModuleMap ModuleMap::zero_map(FPModule src, FPModule tgt, std::int64_t shift) {
    std::vector<VecPoly> cols(src.cover().rank(), vp_zero(tgt.cover().rank()));
    return make(std::move(src), std::move(tgt), std::move(cols), shift);
}

VecPoly ModuleMap::apply(const VecPoly& v) const {
    const PolyRing& ring = src_.context().ring();
    VecPoly out = vp_zero(tgt_.cover().rank());
    for (std::size_t j = 0; j < cols_.size(); ++j) {
        if (v[j].is_zero()) continue;
        out = vp_add(ring, out, vp_poly_mul(ring, cols_[j], v[j]));
    }
    return out;
}

bool ModuleMap::is_zero_map() const {
    for (const auto& c : cols_)
        if (!vp_is_zero(tgt_.gb().normal_form(c))) return false;
    return true;
}

ModuleMap compose(const ModuleMap& g, const ModuleMap& f) {
    if (f.target().id() != g.source().id() &&
        f.target().cover().twists != g.source().cover().twists)
        throw PreconditionError("compose: inner modules do not match");
    std::vector<VecPoly> cols;
    for (const auto& c : f.columns()) cols.push_back(g.apply(c));
    return ModuleMap::make(f.source(), g.target(), std::move(cols), f.shift() + g.shift());
}

ModuleMap map_add(const ModuleMap& f, const ModuleMap& g) {
    const PolyRing& ring = f.source().context().ring();
    if (f.shift() != g.shift()) throw PreconditionError("map_add: shift mismatch");
    std::vector<VecPoly> cols;
    for (std::size_t j = 0; j < f.columns().size(); ++j)
        cols.push_back(vp_add(ring, f.columns()[j], g.columns()[j]));
    return ModuleMap::make(f.source(), f.target(), std::move(cols), f.shift());
}

ModuleMap map_sub(const ModuleMap& f, const ModuleMap& g) {
    return map_add(f, map_scale(g, f.source().context().ring().field().p() - 1));
}

ModuleMap map_scale(const ModuleMap& f, std::uint32_t c) {
    const PolyRing& ring = f.source().context().ring();
    std::vector<VecPoly> cols;
    for (const auto& col : f.columns()) cols.push_back(vp_scale(ring, col, c));
    return ModuleMap::make(f.source(), f.target(), std::move(cols), f.shift());
}

bool equal_maps(const ModuleMap& f, const ModuleMap& g) {
    if (f.shift() != g.shift()) return false;
    if (f.source().cover().twists != g.source().cover().twists) return false;
    if (f.target().cover().twists != g.target().cover().twists) return false;
    const PolyRing& ring = f.source().context().ring();
    for (std::size_t j = 0; j < f.columns().size(); ++j) {
        VecPoly diff = vp_sub(ring, f.columns()[j], g.columns()[j]);
        if (!vp_is_zero(f.target().gb().normal_form(diff))) return false;
    }
    return true;
}

// --- submodules, kernels, cokernels ---

SubquotientResult submodule(const FPModule& m, const std::vector<VecPoly>& gens) {
    std::vector<VecPoly> kept;
    for (const auto& g : gens) {
        if (!vp_is_zero(m.gb().normal_form(g))) kept.push_back(g);
    }
    // combined syzygies of [gens | relations]; project to the gens block
    std::vector<VecPoly> combined = kept;
    for (const auto& r : m.relations()) combined.push_back(r);
    std::vector<std::int64_t> twists;
    std::vector<VecPoly> rel_cols;
    if (!kept.empty()) {
        auto [g_free, syz] = syzygy_generators(combined, m.cover());
        for (std::size_t i = 0; i < kept.size(); ++i) twists.push_back(g_free.twists[i]);
        for (const auto& s : syz) {
            VecPoly c(s.begin(), s.begin() + kept.size());
            if (!vp_is_zero(c)) rel_cols.push_back(std::move(c));
        }
    }
    FPModule k = FPModule::make(m.context(), std::move(twists), std::move(rel_cols));
    ModuleMap incl = ModuleMap::make(k, m, kept, 0);
    return {k, incl};
}

SubquotientResult kernel(const ModuleMap& f) {
    const FPModule& m = f.source();
    const FPModule& n = f.target();
    const PolyRing& ring = m.context().ring();
    // syzygies of [f(e_1).. f(e_r) | relations of N] detect when a combination
    // of source generators maps into im(rel N) + I
    std::vector<VecPoly> combined;
    std::vector<std::size_t> phi_index; // position of each nonzero phi column
    std::vector<VecPoly> u_gens;
    for (std::size_t j = 0; j < f.columns().size(); ++j) {
        if (vp_is_zero(f.columns()[j])) {
            VecPoly u = vp_zero(m.cover().rank());
            u[j] = ring.constant(1);
            u_gens.push_back(std::move(u)); // generator maps to zero outright
        } else {
            phi_index.push_back(j);
            combined.push_back(f.columns()[j]);
        }
    }
    std::size_t nphi = combined.size();
    for (const auto& r : n.relations()) combined.push_back(r);
    if (!combined.empty()) {
        auto [g_free, syz] = syzygy_generators(combined, n.cover());
        (void)g_free;
        for (const auto& s : syz) {
            VecPoly u = vp_zero(m.cover().rank());
            bool nonzero = false;
            for (std::size_t t = 0; t < nphi; ++t) {
                if (s[t].is_zero()) continue;
                u[phi_index[t]] = s[t];
                nonzero = true;
            }
            if (nonzero) u_gens.push_back(std::move(u));
        }
    }
    return submodule(m, u_gens);
}

SubquotientResult cokernel(const ModuleMap& f) {
    std::vector<VecPoly> rel = f.columns();
    for (const auto& r : f.target().relations()) rel.push_back(r);
    FPModule q = FPModule::make(f.target().context(), f.target().cover().twists, std::move(rel));
    // canonical projection is the identity on covers
    std::vector<VecPoly> cols;
    const PolyRing& ring = f.target().context().ring();
    for (std::size_t j = 0; j < f.target().cover().rank(); ++j) {
        VecPoly c = vp_zero(q.cover().rank());
        c[j] = ring.constant(1);
        cols.push_back(std::move(c));
    }
    ModuleMap proj = ModuleMap::make(f.target(), q, std::move(cols), 0);
    return {q, proj};
}

SubquotientResult image(const ModuleMap& f) { return submodule(f.target(), f.columns()); }

// --- pushout ---

PushoutResult pushout(const ModuleMap& f, const ModuleMap& g) {
    if (f.source().id() != g.source().id())
        throw PreconditionError("pushout requires maps with a common source");
    if (f.shift() != 0 || g.shift() != 0)
        throw PreconditionError("pushout implemented for degree-zero maps");
    const FPModule& a = f.source();
    const FPModule& b = f.target();
    const FPModule& c = g.target();
    const PolyRing& ring = a.context().ring();
    std::size_t rb = b.cover().rank(), rc = c.cover().rank();
    std::vector<std::int64_t> twists = b.cover().twists;
    for (auto t : c.cover().twists) twists.push_back(t);
    std::vector<VecPoly> rel;
    for (std::size_t j = 0; j < a.cover().rank(); ++j) {
        VecPoly col = vp_zero(rb + rc);
        for (std::size_t i = 0; i < rb; ++i) col[i] = f.columns()[j][i];
        for (std::size_t i = 0; i < rc; ++i) col[rb + i] = ring.neg(g.columns()[j][i]);
        rel.push_back(std::move(col));
    }
    for (const auto& r : b.relations()) {
        VecPoly col = vp_zero(rb + rc);
        for (std::size_t i = 0; i < rb; ++i) col[i] = r[i];
        rel.push_back(std::move(col));
    }
    for (const auto& r : c.relations()) {
        VecPoly col = vp_zero(rb + rc);
        for (std::size_t i = 0; i < rc; ++i) col[rb + i] = r[i];
        rel.push_back(std::move(col));
    }
    FPModule p = FPModule::make(a.context(), std::move(twists), std::move(rel));
    std::vector<VecPoly> bcols, ccols;
    for (std::size_t j = 0; j < rb; ++j) {
        VecPoly col = vp_zero(p.cover().rank());
        col[j] = ring.constant(1);
        bcols.push_back(std::move(col));
    }
    for (std::size_t j = 0; j < rc; ++j) {
        VecPoly col = vp_zero(p.cover().rank());
        col[rb + j] = ring.constant(1);
        ccols.push_back(std::move(col));
    }
    ModuleMap from_b = ModuleMap::make(b, p, std::move(bcols), 0);
    ModuleMap from_c = ModuleMap::make(c, p, std::move(ccols), 0);
    return {p, from_b, from_c};
}

ModuleMap pushout_induced(const PushoutResult& po, const ModuleMap& u, const ModuleMap& v) {
    if (u.shift() != v.shift()) throw PreconditionError("cone maps must share a shift");
    if (u.target().id() != v.target().id())
        throw PreconditionError("cone maps must share a target");
    std::vector<VecPoly> cols = u.columns();
    for (const auto& c : v.columns()) cols.push_back(c);
    // make() verifies the cone condition: the pushout relations must die in T
    return ModuleMap::make(po.module, u.target(), std::move(cols), u.shift());
}

// --- direct sums, twists ---

DirectSumResult direct_sum(const std::vector<FPModule>& parts) {
    if (parts.empty()) throw PreconditionError("direct_sum of nothing");
    RingContext ctx = parts[0].context();
    const PolyRing& ring = ctx.ring();
    std::vector<std::int64_t> twists;
    std::vector<std::size_t> offset;
    for (const auto& m : parts) {
        if (!m.context().same_context(ctx)) throw PreconditionError("direct_sum context mismatch");
        offset.push_back(twists.size());
        for (auto t : m.cover().twists) twists.push_back(t);
    }
    std::size_t total = twists.size();
    std::vector<VecPoly> rel;
    for (std::size_t k = 0; k < parts.size(); ++k) {
        for (const auto& r : parts[k].relations()) {
            VecPoly col = vp_zero(total);
            for (std::size_t i = 0; i < r.size(); ++i) col[offset[k] + i] = r[i];
            rel.push_back(std::move(col));
        }
    }
    FPModule sum = FPModule::make(ctx, std::move(twists), std::move(rel));
    DirectSumResult out{sum, {}, {}};
    for (std::size_t k = 0; k < parts.size(); ++k) {
        std::vector<VecPoly> icols, pcols;
        for (std::size_t j = 0; j < parts[k].cover().rank(); ++j) {
            VecPoly col = vp_zero(total);
            col[offset[k] + j] = ring.constant(1);
            icols.push_back(std::move(col));
        }
        for (std::size_t j = 0; j < total; ++j) {
            VecPoly col = vp_zero(parts[k].cover().rank());
            if (j >= offset[k] && j < offset[k] + parts[k].cover().rank())
                col[j - offset[k]] = ring.constant(1);
            pcols.push_back(std::move(col));
        }
        out.injections.push_back(ModuleMap::make(parts[k], sum, std::move(icols), 0));
        out.projections.push_back(ModuleMap::make(sum, parts[k], std::move(pcols), 0));
    }
    return out;
}

DirectSumResult direct_sum(const FPModule& a, const FPModule& b) { return direct_sum({a, b}); }

FPModule twist_module(const FPModule& m, std::int64_t a) {
    std::vector<std::int64_t> twists = m.cover().twists;
    for (auto& t : twists) t += a;
    return FPModule::make(m.context(), std::move(twists), m.relations());
}

// --- minimization ---

MinimizeResult minimize(const FPModule& m) {
    const PolyRing& ring = m.context().ring();
    const PrimeField& k = ring.field();
    std::vector<VecPoly> rel = m.relations();
    std::vector<std::int64_t> twists = m.cover().twists;
    std::size_t orig_rank = twists.size();

    // pi: original cover -> current cover; iota: current -> original
    std::vector<VecPoly> pi_cols, iota_cols;
    for (std::size_t j = 0; j < orig_rank; ++j) {
        VecPoly c = vp_zero(orig_rank);
        c[j] = ring.constant(1);
        pi_cols.push_back(c);
        iota_cols.push_back(c);
    }

    while (true) {
        std::size_t pi_i = 0, pj = 0;
        std::uint32_t unit = 0;
        for (std::size_t j = 0; j < rel.size() && unit == 0; ++j) {
            for (std::size_t i = 0; i < rel[j].size() && unit == 0; ++i) {
                const Polynomial& e = rel[j][i];
                if (!e.is_zero() && e.lead().mono.is_one()) {
                    pi_i = i;
                    pj = j;
                    unit = e.lead().coeff;
                }
            }
        }
        if (unit == 0) break;
        std::uint32_t uinv = k.inv(unit);
        const VecPoly pivot = rel[pj];
        // clear row pi_i in the other columns
        for (std::size_t l = 0; l < rel.size(); ++l) {
            if (l == pj) continue;
            const Polynomial q = rel[l][pi_i];
            if (q.is_zero()) continue;
            Polynomial factor = ring.scale(q, uinv);
            for (std::size_t i = 0; i < rel[l].size(); ++i)
                rel[l][i] = ring.sub(rel[l][i], ring.mul(factor, pivot[i]));
        }
        // generator pi_i equals -u^{-1} * sum_{k != pi_i} pivot[k] e_k
        std::size_t cur_rank = twists.size();
        VecPoly subst = vp_zero(cur_rank);
        for (std::size_t i = 0; i < cur_rank; ++i)
            if (i != pi_i) subst[i] = ring.neg(ring.scale(pivot[i], uinv));
        // update pi: sigma(w) = (w_k + w_i * subst_k) with row pi_i removed
        for (auto& col : pi_cols) {
            Polynomial wi = col[pi_i];
            VecPoly next;
            for (std::size_t i = 0; i < cur_rank; ++i) {
                if (i == pi_i) continue;
                next.push_back(ring.add(col[i], ring.mul(wi, subst[i])));
            }
            col = std::move(next);
        }
        iota_cols.erase(iota_cols.begin() + std::ptrdiff_t(pi_i));
        // drop row pi_i and column pj
        rel.erase(rel.begin() + std::ptrdiff_t(pj));
        for (auto& col : rel) col.erase(col.begin() + std::ptrdiff_t(pi_i));
        twists.erase(twists.begin() + std::ptrdiff_t(pi_i));
    }

    FPModule mm = FPModule::make(m.context(), twists, rel);
    ModuleMap to_min = ModuleMap::make(m, mm, pi_cols, 0);
    ModuleMap from_min = ModuleMap::make(mm, m, iota_cols, 0);
    return {mm, to_min, from_min};
}

// --- verdicts ---

bool is_zero(const FPModule& m) {
    const PolyRing& ring = m.context().ring();
    for (std::size_t j = 0; j < m.cover().rank(); ++j) {
        VecPoly e = vp_zero(m.cover().rank());
        e[j] = ring.constant(1);
        if (!vp_is_zero(m.gb().normal_form(e))) return false;
    }
    return true;
}

bool is_mono(const ModuleMap& f) { return is_zero(kernel(f).module); }
bool is_epi(const ModuleMap& f) { return is_zero(cokernel(f).module); }
bool is_iso(const ModuleMap& f) { return is_mono(f) && is_epi(f); }

// --- short exact sequences ---

std::string SESCheck::failing_clause() const {
    if (!composite_zero) return "composite p*i nonzero";
    if (!mono) return "i not injective";
    if (!epi) return "p not surjective";
    if (!exact_mid) return "ker p != im i";
    if (!hilbert_additive) return "Hilbert additivity H_B = H_A + H_C fails";
    return "";
}

SESCheck verify_ses(const ShortExactSequence& s, std::int64_t hilbert_hi) {
    SESCheck out;
    const ModuleMap& i = s.i;
    const ModuleMap& p = s.p;
    const FPModule& a = i.source();
    const FPModule& b = i.target();
    const FPModule& c = p.target();
    out.composite_zero = compose(p, i).is_zero_map();
    out.mono = is_mono(i);
    out.epi = is_epi(p);

    // ker p generators inside cover(B)
    auto ker_u = kernel(p);
    const std::vector<VecPoly>& ker_gens = ker_u.map.columns();
    std::vector<VecPoly> im_rel = i.columns();
    for (const auto& r : b.relations()) im_rel.push_back(r);
    ModuleGB im_gb(b.context(), b.cover(), im_rel, GBOptions{false});
    bool ker_in_im = true;
    for (const auto& g : ker_gens)
        if (!vp_is_zero(im_gb.normal_form(g))) { ker_in_im = false; break; }
    std::vector<VecPoly> ker_rel = ker_gens;
    for (const auto& r : b.relations()) ker_rel.push_back(r);
    ModuleGB ker_gb(b.context(), b.cover(), ker_rel, GBOptions{false});
    bool im_in_ker = true;
    for (const auto& g : i.columns())
        if (!vp_is_zero(ker_gb.normal_form(g))) { im_in_ker = false; break; }
    out.exact_mid = ker_in_im && im_in_ker;

    std::int64_t lo = std::min({a.min_gen_degree(), b.min_gen_degree(), c.min_gen_degree()});
    out.hilbert_additive = true;
    for (std::int64_t d = lo; d <= hilbert_hi; ++d) {
        if (b.hilbert(d) != a.hilbert(d) + c.hilbert(d)) {
            out.hilbert_additive = false;
            break;
        }
    }
    return out;
}

} // namespace homapprox
