#include "homapprox/approx.hpp"

#include <sstream>
#include <thread>

namespace homapprox {

namespace {

std::string onoff(bool b) { return b ? "yes" : "no"; }

LadderSquare checked_square(const std::string& name, ModuleMap i, ModuleMap p,
                            std::int64_t window) {
    LadderSquare sq;
    sq.name = name;
    sq.ses = ShortExactSequence{std::move(i), std::move(p)};
    sq.check = verify_ses(sq.ses, window);
    if (!sq.check.ok())
        throw TheoremViolation("ladder square `" + name +
                               "` failed exactness: " + sq.check.failing_clause());
    return sq;
}

AddCVerdict by_construction_cert(const std::vector<std::int64_t>& twists) {
    AddCVerdict v;
    v.kind = AddCVerdict::Kind::Yes;
    v.count = int(twists.size());
    v.twists = twists;
    v.reason = "by construction: direct sum of twisted copies of C";
    return v;
}

} // namespace

bool ApproximationCertificate::ok() const {
    if (!hypotheses.ok || !syzygy_torsionfree.result) return false;
    if (!seq_check.ok()) return false;
    for (const auto& cl : x_spherical)
        if (!cl.ok) return false;
    for (const auto& step : ladder) {
        if (!step.square_commutes) return false;
        for (const auto& sq : step.squares)
            if (!sq.check.ok()) return false;
    }
    for (const auto& cl : extra_checks)
        if (!cl.ok) return false;
    return ext1_xy_zero;
}

ApproximationCertificate build_spherical_approximation(const FPModule& m, const FPModule& c,
                                                       int n, const BuildOptions& opt) {
    if (n < 1) throw PreconditionError("build_spherical_approximation: n >= 1 required");
    ApproximationCertificate cert;
    cert.kind = "spherical";
    cert.m = m;
    cert.c = c;
    cert.n = n;
    cert.seed = opt.seed;

    cert.hypotheses = approximation_hypotheses(c, n);
    if (!cert.hypotheses.ok)
        throw PreconditionError("dualizer hypotheses fail (mode " + cert.hypotheses.mode +
                                ") for n = " + std::to_string(n));

    SyzygyChain chain = make_syzygy_chain(m, std::size_t(n));
    cert.syzygy_torsionfree = is_n_c_torsionfree(chain.omega[std::size_t(n)], c, n);
    if (!cert.syzygy_torsionfree.result) {
        std::string clause = "Omega^n M n-C-torsionfree";
        for (const auto& cl : cert.syzygy_torsionfree.clauses)
            if (!cl.ok) clause = cl.name;
        throw PreconditionError("Omega^" + std::to_string(n) +
                                " M is not n-C-torsionfree (failing clause: " + clause + ")");
    }

    // ladder state: the column 0 -> Y_k -> X_k -> Omega^{n-k} M -> 0
    FPModule y_cur;
    ModuleMap y_incl;   // Y_k -> X_k
    ModuleMap to_omega; // X_k -> Omega^{n-k} M
    FPModule x_cur = chain.omega[std::size_t(n)];
    std::vector<ShortExactSequence> lchain; // 0 -> Y_k -> C_k -> Y_{k+1} -> 0
    std::vector<FPModule> lchain_layers;
    std::vector<std::vector<std::int64_t>> lchain_twists;
    FPModule c0_module;
    std::vector<std::int64_t> c0_twists;

    for (int k = 0; k < n; ++k) {
        LadderStep step;
        step.k = k;
        LeftApproximation ap = left_addc_approximation(x_cur, c);
        if (!ap.mono)
            throw TheoremViolation("left add-C approximation of X_" + std::to_string(k) +
                                   " is not injective despite the torsionfree hypothesis");
        if (!ap.coker_ext1_vanishes)
            throw TheoremViolation("Ext^1 of the approximation cokernel at step " +
                                   std::to_string(k) + " does not vanish");
        step.squares.push_back(
            checked_square("left-approximation", ap.map, ap.coker_proj, opt.hilbert_window));
        if (k == 0) {
            c0_module = ap.target;
            c0_twists = ap.twists;
            // pushout of X_0 -> C_0 along the inclusion X_0 -> P_{n-1}
            PushoutResult po = pushout(ap.map, chain.incl[std::size_t(n - 1)]);
            ModuleMap x_to_z = pushout_induced(
                po, ap.coker_proj, ModuleMap::zero_map(chain.pfree[std::size_t(n - 1)], ap.coker));
            ModuleMap x_to_om = pushout_induced(
                po, ModuleMap::zero_map(ap.target, chain.omega[std::size_t(n - 1)]),
                chain.proj[std::size_t(n - 1)]);
            step.square_commutes = equal_maps(compose(po.from_b, ap.map),
                                              compose(po.from_c, chain.incl[std::size_t(n - 1)]));
            if (!step.square_commutes)
                throw TheoremViolation("pushout square does not commute at step 0");
            step.squares.push_back(
                checked_square("pushout-row", po.from_c, x_to_z, opt.hilbert_window));
            step.squares.push_back(checked_square("column-left", chain.incl[std::size_t(n - 1)],
                                                  chain.proj[std::size_t(n - 1)],
                                                  opt.hilbert_window));
            step.squares.push_back(
                checked_square("column-middle", po.from_b, x_to_om, opt.hilbert_window));
            x_cur = po.module;
            y_cur = ap.target;
            y_incl = po.from_b;
            to_omega = x_to_om;
        } else {
            // pushout 1: along the epi X_k -> Omega^{n-k} M, producing Y_{k+1}
            PushoutResult po1 = pushout(ap.map, to_omega);
            ModuleMap y_to_z = pushout_induced(
                po1, ap.coker_proj,
                ModuleMap::zero_map(chain.omega[std::size_t(n - k)], ap.coker));
            step.square_commutes =
                equal_maps(compose(po1.from_b, ap.map), compose(po1.from_c, to_omega));
            if (!step.square_commutes)
                throw TheoremViolation("pushout square 1 does not commute at step " +
                                       std::to_string(k));
            step.squares.push_back(
                checked_square("pushout1-row", po1.from_c, y_to_z, opt.hilbert_window));
            // the filtration extension 0 -> Y_k -> C_k -> Y_{k+1} -> 0
            ModuleMap yk_to_ck = compose(ap.map, y_incl);
            step.squares.push_back(checked_square("filtration-extension", yk_to_ck, po1.from_b,
                                                  opt.hilbert_window));
            lchain.push_back(ShortExactSequence{yk_to_ck, po1.from_b});
            lchain_layers.push_back(ap.target);
            lchain_twists.push_back(ap.twists);

            // pushout 2: along Omega^{n-k} M -> P_{n-k-1}, producing X_{k+1}
            PushoutResult po2 = pushout(po1.from_c, chain.incl[std::size_t(n - k - 1)]);
            ModuleMap x_to_z = pushout_induced(
                po2, y_to_z, ModuleMap::zero_map(chain.pfree[std::size_t(n - k - 1)], ap.coker));
            ModuleMap x_to_om = pushout_induced(
                po2, ModuleMap::zero_map(po1.module, chain.omega[std::size_t(n - k - 1)]),
                chain.proj[std::size_t(n - k - 1)]);
            bool commutes2 = equal_maps(compose(po2.from_b, po1.from_c),
                                        compose(po2.from_c, chain.incl[std::size_t(n - k - 1)]));
            if (!commutes2)
                throw TheoremViolation("pushout square 2 does not commute at step " +
                                       std::to_string(k));
            step.square_commutes = step.square_commutes && commutes2;
            step.squares.push_back(
                checked_square("pushout2-row", po2.from_c, x_to_z, opt.hilbert_window));
            step.squares.push_back(checked_square("column-left",
                                                  chain.incl[std::size_t(n - k - 1)],
                                                  chain.proj[std::size_t(n - k - 1)],
                                                  opt.hilbert_window));
            step.squares.push_back(
                checked_square("column-middle", po2.from_b, x_to_om, opt.hilbert_window));
            x_cur = po2.module;
            y_cur = po1.module;
            y_incl = po2.from_b;
            to_omega = x_to_om;
        }
        cert.ladder.push_back(std::move(step));
    }

    // final sequence 0 -> Y_n -> X_n -> M -> 0 (through the minimization witness)
    cert.seq = ShortExactSequence{y_incl, compose(chain.from_min, to_omega)};
    cert.seq_check = verify_ses(cert.seq, opt.hilbert_window);
    if (!cert.seq_check.ok())
        throw TheoremViolation("final sequence failed exactness: " +
                               cert.seq_check.failing_clause());

    for (int i = 1; i <= n; ++i) {
        bool ok = ext_is_zero(std::size_t(i), x_cur, c);
        cert.x_spherical.push_back({"Ext^" + std::to_string(i) + "(X,C) = 0", ok, onoff(ok)});
        if (!ok)
            throw TheoremViolation("constructed X is not n-C-spherical at i = " +
                                   std::to_string(i));
    }

    // add-C filtration of Y_n, reversed into resolution shape
    cert.y_filtration.y0 = y_cur;
    for (std::size_t i = lchain.size(); i-- > 0;) {
        cert.y_filtration.layers.push_back(
            AddCLayer{lchain[i], lchain_layers[i], by_construction_cert(lchain_twists[i])});
    }
    cert.y_filtration.final_module = c0_module;
    cert.y_filtration.final_cert = by_construction_cert(c0_twists);

    cert.ext1_xy_zero = ext_is_zero(1, x_cur, y_cur);
    if (!cert.ext1_xy_zero)
        throw TheoremViolation("Ext^1(X, Y) != 0: the produced map is not a right approximation");
    return cert;
}

VerifyReport verify_approximation(const ShortExactSequence& seq, const FPModule& c, int n,
                                  const AddCFiltration* supplied_filtration,
                                  const BuildOptions& opt) {
    if (n < 1) throw PreconditionError("verify_approximation: n >= 1 required");
    VerifyReport rep;
    std::mt19937_64 rng(opt.seed);

    SESCheck chk = verify_ses(seq, opt.hilbert_window);
    rep.clauses.push_back({"sequence exact", chk.ok(), chk.ok() ? "yes" : chk.failing_clause()});

    const FPModule& x = seq.p.source();
    const FPModule& y = seq.i.source();
    const FPModule& m = seq.p.target();

    PredicateVerdict sph = is_n_c_spherical(x, c, n);
    for (const auto& cl : sph.clauses) rep.clauses.push_back(cl);

    bool cdim_ok = false;
    std::string cdim_detail;
    if (supplied_filtration) {
        auto clauses =
            verify_filtration(*supplied_filtration, c, rng, opt.iso_trials, opt.hilbert_window);
        bool all = true;
        for (const auto& cl : clauses) {
            all = all && cl.ok;
            rep.clauses.push_back(cl);
        }
        bool bound_ok = supplied_filtration->certified_bound() <= std::size_t(n - 1);
        bool same_y = supplied_filtration->y0.cover().twists == y.cover().twists;
        std::int64_t lo = std::min(supplied_filtration->y0.min_gen_degree(), y.min_gen_degree());
        for (std::int64_t d = lo; d <= opt.hilbert_window && same_y; ++d)
            same_y = supplied_filtration->y0.hilbert(d) == y.hilbert(d);
        cdim_ok = all && bound_ok && same_y;
        cdim_detail = !bound_ok ? "filtration longer than n-1"
                      : !same_y ? "filtration does not certify this Y"
                      : all     ? "supplied filtration verified"
                                : "filtration layer failed";
    } else {
        CdimResult cd = c_dim(y, c, n - 1, rng, opt.iso_trials);
        cdim_ok = cd.kind == CdimResult::Kind::Finite;
        cdim_detail = cdim_ok ? "Cdim Y = " + std::to_string(cd.value) : cd.reason;
    }
    rep.clauses.push_back({"Cdim Y < n", cdim_ok, cdim_detail});

    bool e1 = ext_is_zero(1, x, y);
    rep.clauses.push_back({"Ext^1(X,Y) = 0 (right approximation)", e1, onoff(e1)});

    rep.accepted = true;
    for (const auto& cl : rep.clauses) rep.accepted = rep.accepted && cl.ok;

    // converse direction: an accepted approximation forces the syzygy predicate
    PredicateVerdict tf = is_n_c_torsionfree(syzygy_module(m, std::size_t(n)), c, n);
    rep.clauses.push_back({"Omega^n M n-C-torsionfree (converse)", tf.result, onoff(tf.result)});
    if (rep.accepted && !tf.result) {
        rep.theorem_violation = true;
        rep.message = "sequence verifies as an n-C-spherical approximation but Omega^n M "
                      "is not n-C-torsionfree";
    }
    return rep;
}

ApproximationCertificate cm_approximation(const FPModule& m, const BuildOptions& opt) {
    RingContext ctx = m.context();
    int d = ctx.dimension();
    int dep = depth_module(ring_module(ctx));
    if (dep != d)
        throw PreconditionError("Cohen-Macaulay approximation requires a CM ring (depth " +
                                std::to_string(dep) + " != dim " + std::to_string(d) + ")");
    if (d == 0) {
        ApproximationCertificate cert;
        cert.kind = "cohen-macaulay";
        cert.m = m;
        cert.c = canonical_module(ctx);
        cert.n = 0;
        cert.seed = opt.seed;
        cert.hypotheses.mode = "dimension-zero-identity";
        cert.hypotheses.ok = true;
        cert.syzygy_torsionfree.predicate = "dimension-zero";
        cert.syzygy_torsionfree.result = true;
        FPModule zero = FPModule::zero(ctx);
        cert.seq = ShortExactSequence{ModuleMap::zero_map(zero, m), ModuleMap::identity(m)};
        cert.seq_check = verify_ses(cert.seq, opt.hilbert_window);
        cert.y_filtration.y0 = zero;
        cert.y_filtration.final_module = zero;
        cert.y_filtration.final_cert = by_construction_cert({});
        cert.ext1_xy_zero = true;
        if (!is_zero(m)) {
            bool depth_ok = depth_module(m) == d;
            cert.extra_checks.push_back({"depth X = dim R", depth_ok, onoff(depth_ok)});
        }
        return cert;
    }
    FPModule omega = canonical_module(ctx);
    ApproximationCertificate cert = build_spherical_approximation(m, omega, d, opt);
    cert.kind = "cohen-macaulay";
    const FPModule& x = cert.x_module();
    if (!is_zero(x)) {
        bool depth_ok = depth_module(x) == d;
        cert.extra_checks.push_back(
            {"depth X = dim R (X maximal Cohen-Macaulay)", depth_ok, onoff(depth_ok)});
    }
    // canonical filtration layers have finite injective dimension; record the
    // surrogate verdicts
    auto layer_clause = [&](const FPModule& layer, const std::string& label) {
        if (is_zero(layer)) return Clause{label, true, "zero layer"};
        InjDimReport rep = injdim_surrogate(layer);
        return Clause{label, rep.verdict == InjDimVerdict::Finite,
                      rep.verdict == InjDimVerdict::Finite ? "finite" : rep.caveat};
    };
    for (std::size_t i = 0; i < cert.y_filtration.layers.size(); ++i)
        cert.extra_checks.push_back(
            layer_clause(cert.y_filtration.layers[i].layer,
                         "injdim surrogate finite: filtration layer " + std::to_string(i)));
    cert.extra_checks.push_back(
        layer_clause(cert.y_filtration.final_module, "injdim surrogate finite: final layer"));
    return cert;
}

ApproximationCertificate ab_approximation(const FPModule& m, int n, const BuildOptions& opt) {
    RingContext ctx = m.context();
    PredicateVerdict tf = is_n_torsionfree(syzygy_module(m, std::size_t(n)), n);
    if (!tf.result)
        throw PreconditionError("Omega^" + std::to_string(n) + " M is not n-torsionfree");
    ApproximationCertificate cert = build_spherical_approximation(m, ring_module(ctx), n, opt);
    cert.kind = "auslander-bridger";
    bool all_free = true;
    for (const auto& layer : cert.y_filtration.layers)
        all_free = all_free && is_free_module(layer.layer);
    all_free = all_free && is_free_module(cert.y_filtration.final_module);
    cert.extra_checks.push_back(
        {"Y filtered by free modules (pd Y < n)", all_free, onoff(all_free)});
    return cert;
}

DescentVerdict check_descent(const FPModule& m, const FPModule& c, int n) {
    if (n < 1) throw PreconditionError("check_descent: n >= 1 required");
    PredicateVerdict sd = is_n_semidualizing(c, n);
    if (!sd.result)
        throw PreconditionError("check_descent requires an n-semidualizing dualizer");
    SyzygyChain chain = make_syzygy_chain(m, std::size_t(n));
    DescentVerdict out;
    out.all_lower = true;
    for (int i = 1; i <= n; ++i) {
        out.lower.push_back(is_n_c_torsionfree(chain.omega[std::size_t(i)], c, i));
        out.all_lower = out.all_lower && out.lower.back().result;
    }
    out.top = out.lower.back();
    out.consistent = !(out.top.result && !out.all_lower);
    if (!out.consistent)
        throw TheoremViolation("descent equivalence failed: Omega^n M is n-C-torsionfree but "
                               "a lower syzygy predicate fails");
    return out;
}

CorpusReport run_theorem_cond_corpus(const RingContext& ctx, const FPModule& c, int n,
                                     const std::vector<std::pair<std::string, FPModule>>& corpus,
                                     int jobs) {
    CorpusReport rep;
    rep.n = n;
    rep.standing = is_n_c_torsionfree(ring_module(ctx), c, n);
    if (!rep.standing.result)
        throw PreconditionError("standing hypothesis fails: R is not n-C-torsionfree");
    rep.surrogate = injdim_surrogate(c);
    rep.entries.resize(corpus.size());

    auto eval_range = [&](std::size_t lo, std::size_t hi, bool isolated) {
        RingContext local = ctx;
        FPModule local_c = c;
        if (isolated) {
            local = RingContext::make(ctx.ring(), ctx.ideal_gens());
            local_c = FPModule::make(local, c.cover().twists, c.relations());
        }
        for (std::size_t idx = lo; idx < hi; ++idx) {
            const auto& [name, mod] = corpus[idx];
            FPModule local_m =
                isolated ? FPModule::make(local, mod.cover().twists, mod.relations()) : mod;
            FPModule om = syzygy_module(local_m, std::size_t(n));
            rep.entries[idx] = {name, is_n_c_torsionfree(om, local_c, n).result};
        }
    };

    if (jobs <= 1 || corpus.size() <= 1) {
        eval_range(0, corpus.size(), false);
    } else {
        std::size_t workers = std::min<std::size_t>(std::size_t(jobs), corpus.size());
        std::vector<std::thread> pool;
        std::size_t chunk = (corpus.size() + workers - 1) / workers;
        for (std::size_t w = 0; w < workers; ++w) {
            std::size_t lo = w * chunk;
            std::size_t hi = std::min(corpus.size(), lo + chunk);
            if (lo >= hi) break;
            pool.emplace_back(eval_range, lo, hi, true);
        }
        for (auto& t : pool) t.join();
    }

    rep.all_torsionfree = true;
    for (const auto& e : rep.entries) rep.all_torsionfree = rep.all_torsionfree && e.torsionfree;
    bool finite = rep.surrogate.verdict == InjDimVerdict::Finite;
    bool undet = rep.surrogate.verdict == InjDimVerdict::Undetermined;
    // an infinite surrogate predicts a failing module somewhere; a sample
    // that does not exhibit one is inconclusive rather than wrong
    rep.conclusive = !undet && !(rep.surrogate.verdict == InjDimVerdict::InfiniteUpToWindow &&
                                 rep.all_torsionfree);
    rep.consistent = rep.conclusive && (rep.all_torsionfree == finite);
    return rep;
}

} // namespace homapprox
