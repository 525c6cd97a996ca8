#include "homapprox/groebner.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <tuple>

namespace homapprox {

namespace {

// strip the lead term of v[comp] (which is the lead of the whole vector)
void strip_lead(VecPoly& v, std::size_t comp, VecPoly& out) {
    auto& terms = v[comp].terms();
    out[comp].terms().push_back(terms.front());
    terms.erase(terms.begin());
}

} // namespace

int ModuleGB::cmp_mm(const ModMono& a, const ModMono& b) const {
    int c = ctx_.ring().cmp(a.mono, b.mono);
    if (c != 0) return c;
    if (a.comp != b.comp) return a.comp < b.comp ? 1 : -1; // lower component wins
    return 0;
}

void ModuleGB::set_lead(Elem& e) const {
    bool found = false;
    for (std::size_t j = 0; j < e.main.size(); ++j) {
        if (e.main[j].is_zero()) continue;
        const Term& t = e.main[j].lead();
        if (!found || cmp_mm({t.mono, j}, e.lead) > 0) {
            e.lead = ModMono{t.mono, j};
            e.lead_coeff = t.coeff;
            found = true;
        }
    }
    if (!found) e.lead_coeff = 0;
}

bool ModuleGB::reduce_full(Elem& e) const {
    const PolyRing& ring = ctx_.ring();
    VecPoly result = vp_zero(F_.rank());
    Elem work;
    work.main = e.main;
    work.cof = e.cof;
    while (true) {
        set_lead(work);
        if (work.lead_coeff == 0) break;
        const Monomial& m = work.lead.mono;
        std::size_t comp = work.lead.comp;
        const Elem* red = nullptr;
        for (const auto& b : basis_) {
            if (b.lead.comp == comp && b.lead.mono.divides(m)) { red = &b; break; }
        }
        if (!red) {
            strip_lead(work.main, comp, result);
            continue;
        }
        Monomial q = ring.mono_div(m, red->lead.mono);
        std::uint32_t c = work.lead_coeff; // reducers are monic
        work.main = vp_sub(ring, work.main, vp_term_mul(ring, red->main, q, c));
        if (!work.cof.empty())
            work.cof = vp_sub(ring, work.cof, vp_term_mul(ring, red->cof, q, c));
    }
    e.main = std::move(result);
    e.cof = std::move(work.cof);
    set_lead(e);
    return e.lead_coeff != 0;
}

ModuleGB::ModuleGB(RingContext ctx, FreeModule F, std::vector<VecPoly> gens, GBOptions opt)
    : ctx_(std::move(ctx)), F_(std::move(F)), opt_(opt) {
    const PolyRing& ring = ctx_.ring();
    for (auto& g : gens) {
        if (g.size() != F_.rank())
            throw PreconditionError("generator rank mismatch with ambient free module");
        if (vp_is_zero(g)) {
            if (opt_.with_cofactors)
                throw PreconditionError("zero generator not allowed when tracking cofactors");
            continue;
        }
        bool homog = vp_degree(ring, F_, g).has_value();
        if (!homog) throw PreconditionError("inhomogeneous generator");
    }
    run(std::move(gens));
}

void ModuleGB::run(std::vector<VecPoly> gens) {
    const PolyRing& ring = ctx_.ring();
    std::vector<VecPoly> inputs;
    for (auto& g : gens)
        if (!vp_is_zero(g)) inputs.push_back(std::move(g));
    n_gens_ = inputs.size();
    // adjoin I * e_j so everything is computed over R = S/I
    for (std::size_t j = 0; j < F_.rank(); ++j) {
        for (const auto& f : ctx_.ideal_gb()) {
            VecPoly v = vp_zero(F_.rank());
            v[j] = f;
            inputs.push_back(std::move(v));
        }
    }
    n_inputs_ = inputs.size();

    // (degree, i, j) S-pair queue; i < j; normal strategy: lowest degree first
    std::set<std::tuple<std::int64_t, std::size_t, std::size_t>> pending;
    auto push_pairs = [&](std::size_t k) {
        for (std::size_t i = 0; i < k; ++i) {
            if (basis_[i].lead.comp != basis_[k].lead.comp) continue;
            Monomial lcm = ring.mono_lcm(basis_[i].lead.mono, basis_[k].lead.mono);
            std::int64_t deg = lcm.deg - F_.twists[basis_[k].lead.comp];
            pending.insert({deg, i, k});
        }
    };
    auto insert_elem = [&](Elem e) {
        std::uint32_t inv = ring.field().inv(e.lead_coeff);
        e.main = vp_scale(ring, e.main, inv);
        if (opt_.with_cofactors) {
            for (auto& p : e.cof) p = ring.scale(p, inv);
        }
        e.lead_coeff = 1;
        basis_.push_back(std::move(e));
        push_pairs(basis_.size() - 1);
    };

    std::vector<std::vector<Polynomial>> raw_syz;
    for (std::size_t i = 0; i < n_inputs_; ++i) {
        Elem e;
        e.main = inputs[i];
        if (opt_.with_cofactors) {
            e.cof.assign(n_inputs_, Polynomial());
            e.cof[i] = ring.constant(1);
        }
        if (reduce_full(e))
            insert_elem(std::move(e));
        else if (opt_.with_cofactors)
            raw_syz.push_back(e.cof); // input dependent on earlier ones
    }

    while (!pending.empty()) {
        auto [deg, i, j] = *pending.begin();
        (void)deg;
        pending.erase(pending.begin());
        const Elem& a = basis_[i];
        const Elem& b = basis_[j];
        Monomial lcm = ring.mono_lcm(a.lead.mono, b.lead.mono);
        Monomial u = ring.mono_div(lcm, a.lead.mono);
        Monomial w = ring.mono_div(lcm, b.lead.mono);
        Elem e;
        e.main = vp_sub(ring, vp_term_mul(ring, a.main, u, 1), vp_term_mul(ring, b.main, w, 1));
        if (opt_.with_cofactors)
            e.cof = vp_sub(ring, vp_term_mul(ring, a.cof, u, 1), vp_term_mul(ring, b.cof, w, 1));
        if (reduce_full(e))
            insert_elem(std::move(e));
        else if (opt_.with_cofactors && !vp_is_zero(e.cof))
            raw_syz.push_back(e.cof);
    }

    // Inter-reduce ascending by lead: a head can only be divided by a smaller
    // element and no later head can divide an earlier tail term, so one pass
    // yields the reduced basis.
    std::sort(basis_.begin(), basis_.end(),
              [this](const Elem& x, const Elem& y) { return cmp_mm(x.lead, y.lead) < 0; });
    std::vector<Elem> work = std::move(basis_);
    basis_.clear();
    for (auto& e : work) {
        if (reduce_full(e)) {
            std::uint32_t inv = ring.field().inv(e.lead_coeff);
            e.main = vp_scale(ring, e.main, inv);
            if (opt_.with_cofactors)
                for (auto& p : e.cof) p = ring.scale(p, inv);
            e.lead_coeff = 1;
            basis_.push_back(std::move(e));
        } else if (opt_.with_cofactors && !vp_is_zero(e.cof)) {
            raw_syz.push_back(e.cof);
        }
    }
    std::sort(basis_.begin(), basis_.end(),
              [this](const Elem& x, const Elem& y) { return cmp_mm(x.lead, y.lead) > 0; });
    for (const auto& e : basis_) {
        basis_main_.push_back(e.main);
        leads_.push_back(e.lead);
    }

    if (opt_.with_cofactors) {
        // tautological syzygies: each input re-expressed through the final basis
        for (std::size_t i = 0; i < n_inputs_; ++i) {
            Elem e;
            e.main = inputs[i];
            e.cof.assign(n_inputs_, Polynomial());
            if (reduce_full(e))
                throw Error("internal: input does not reduce to zero against its own basis");
            e.cof[i] = ring.add(e.cof[i], ring.constant(1));
            if (!vp_is_zero(e.cof)) raw_syz.push_back(std::move(e.cof));
        }
        // project away the ideal rows, make monic in the first nonzero
        // coefficient, canonicalize
        std::vector<std::pair<std::string, std::vector<Polynomial>>> keyed;
        for (auto& s : raw_syz) {
            std::vector<Polynomial> proj(s.begin(), s.begin() + n_gens_);
            if (vp_is_zero(proj)) continue;
            for (const auto& p : proj) {
                if (p.is_zero()) continue;
                std::uint32_t inv = ring.field().inv(p.lead().coeff);
                for (auto& q : proj) q = ring.scale(q, inv);
                break;
            }
            std::ostringstream key;
            for (const auto& p : proj) key << ring.to_string(p) << ";";
            keyed.emplace_back(key.str(), std::move(proj));
        }
        std::sort(keyed.begin(), keyed.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        keyed.erase(std::unique(keyed.begin(), keyed.end(),
                                [](const auto& a, const auto& b) { return a.first == b.first; }),
                    keyed.end());
        for (auto& [k, v] : keyed) syz_.push_back(std::move(v));
    }
}

VecPoly ModuleGB::normal_form(const VecPoly& v) const {
    if (v.size() != F_.rank()) throw PreconditionError("vector rank mismatch");
    Elem e;
    e.main = v; // empty cof: no tracking
    reduce_full(e);
    return e.main;
}

bool ModuleGB::contains(const VecPoly& v) const { return vp_is_zero(normal_form(v)); }

std::optional<std::vector<Polynomial>> ModuleGB::lift(const VecPoly& v) const {
    if (!opt_.with_cofactors) throw Error("lift requires a cofactor-tracking basis");
    Elem e;
    e.main = v;
    e.cof.assign(n_inputs_, Polynomial());
    if (reduce_full(e)) return std::nullopt;
    const PolyRing& ring = ctx_.ring();
    std::vector<Polynomial> out(n_gens_);
    for (std::size_t i = 0; i < n_gens_; ++i) out[i] = ring.neg(e.cof[i]);
    return out;
}

const std::vector<std::vector<Polynomial>>& ModuleGB::syzygies() const {
    if (!opt_.with_cofactors) throw Error("syzygies require a cofactor-tracking basis");
    return syz_;
}

bool ModuleGB::check_buchberger() const {
    const PolyRing& ring = ctx_.ring();
    for (std::size_t i = 0; i < basis_.size(); ++i) {
        for (std::size_t j = i + 1; j < basis_.size(); ++j) {
            if (basis_[i].lead.comp != basis_[j].lead.comp) continue;
            Monomial lcm = ring.mono_lcm(basis_[i].lead.mono, basis_[j].lead.mono);
            Monomial u = ring.mono_div(lcm, basis_[i].lead.mono);
            Monomial w = ring.mono_div(lcm, basis_[j].lead.mono);
            VecPoly s = vp_sub(ring, vp_term_mul(ring, basis_[i].main, u, 1),
                               vp_term_mul(ring, basis_[j].main, w, 1));
            if (!vp_is_zero(normal_form(s))) return false;
        }
    }
    return true;
}

ModuleGB module_groebner(const std::vector<VecPoly>& gens, const FreeModule& F, GBOptions opt) {
    return ModuleGB(RingContext::from_data(F.ctx_data), F, gens, opt);
}

std::pair<FreeModule, std::vector<std::vector<Polynomial>>> syzygy_generators(
    const std::vector<VecPoly>& gens, const FreeModule& F) {
    RingContext ctx = RingContext::from_data(F.ctx_data);
    const PolyRing& ring = ctx.ring();
    std::vector<std::int64_t> twists;
    for (const auto& g : gens) {
        auto d = vp_degree(ring, F, g);
        if (!d) throw PreconditionError("syzygy generators must be nonzero and homogeneous");
        twists.push_back(-*d);
    }
    ModuleGB gb(ctx, F, gens, GBOptions{true});
    return {ctx.free_module(std::move(twists)), gb.syzygies()};
}

} // namespace homapprox
