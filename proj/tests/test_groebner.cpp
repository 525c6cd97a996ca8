#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <sstream>

#include "homapprox/groebner.hpp"
#include "support/oracle.hpp"

using namespace homapprox;

namespace {

RingContext quot(const std::vector<std::string>& vars, const std::vector<std::string>& ideal) {
    std::vector<std::int64_t> w(vars.size(), 1);
    return RingContext::make(vars, w, 32003, OrderKind::Grevlex, ideal);
}

VecPoly vec(const RingContext& ctx, std::size_t rank, std::size_t comp, const std::string& poly) {
    VecPoly v = vp_zero(rank);
    v[comp] = ctx.ring().parse(poly);
    return v;
}

std::string dump_basis(const ModuleGB& gb) {
    std::ostringstream os;
    for (const auto& b : gb.basis()) {
        for (const auto& p : b) os << gb.context().ring().to_string(p) << ",";
        os << "|";
    }
    return os.str();
}

VecPoly random_homog_vec(const RingContext& ctx, const FreeModule& F, std::int64_t deg,
                         std::mt19937_64& rng) {
    const PolyRing& ring = ctx.ring();
    std::uniform_int_distribution<std::uint32_t> cd(0, ring.field().p() - 1);
    VecPoly v = vp_zero(F.rank());
    for (std::size_t j = 0; j < F.rank(); ++j) {
        std::int64_t pd = deg + F.twists[j];
        if (pd < 0) continue;
        for (const auto& m : ring.monomials_of_degree(pd))
            v[j] = ring.add(v[j], ring.monomial(m, cd(rng)));
    }
    return v;
}

} // namespace

TEST_CASE("module_groebner: unit generator spans everything") {
    RingContext ctx = quot({"x", "y"}, {});
    FreeModule F = ctx.free_module({0});
    ModuleGB gb(ctx, F, {vec(ctx, 1, 0, "1")});
    CHECK(vp_is_zero(gb.normal_form(vec(ctx, 1, 0, "1"))));
    CHECK(vp_is_zero(gb.normal_form(vec(ctx, 1, 0, "x^3 + y"))));
}

TEST_CASE("module_groebner: principal over F_p[x]/(x^2)") {
    RingContext ctx = quot({"x"}, {"x^2"});
    FreeModule F = ctx.free_module({0});
    ModuleGB gb(ctx, F, {vec(ctx, 1, 0, "x")});
    CHECK(gb.basis().size() == 1);
    CHECK(vp_is_zero(gb.normal_form(vec(ctx, 1, 0, "x"))));
    CHECK(gb.normal_form(vec(ctx, 1, 0, "1")) == vec(ctx, 1, 0, "1"));
}

TEST_CASE("module_groebner: membership over R = F_p[x,y]/(xy)") {
    RingContext ctx = quot({"x", "y"}, {"x*y"});
    FreeModule F = ctx.free_module({0});
    ModuleGB gb(ctx, F, {vec(ctx, 1, 0, "x")});
    CHECK(vp_is_zero(gb.normal_form(vec(ctx, 1, 0, "x*y")))); // y*(x e1) reduces to 0
}

TEST_CASE("normal_form: idempotent, k-linear, zero fixed") {
    RingContext ctx = quot({"x", "y"}, {"x*y"});
    FreeModule F = ctx.free_module({0, -1});
    ModuleGB gb(ctx, F, {vec(ctx, 2, 0, "x + y")});
    CHECK(vp_is_zero(gb.normal_form(vp_zero(2))));
    // NF(x^2 e1) = 0 since x^2 = x(x+y) - xy
    CHECK(vp_is_zero(gb.normal_form(vec(ctx, 2, 0, "x^2"))));

    std::mt19937_64 rng(2024);
    const PolyRing& ring = ctx.ring();
    for (int i = 0; i < 100; ++i) {
        VecPoly v = random_homog_vec(ctx, F, 2 + (i % 3), rng);
        VecPoly nf = gb.normal_form(v);
        CHECK(gb.normal_form(nf) == nf);
        VecPoly w = random_homog_vec(ctx, F, 2 + (i % 3), rng);
        VecPoly lhs = gb.normal_form(vp_add(ring, v, w));
        VecPoly rhs = vp_add(ring, gb.normal_form(v), gb.normal_form(w));
        CHECK(lhs == rhs);
    }
}

TEST_CASE("Buchberger criterion holds for computed bases") {
    RingContext r4 = RingContext::make({"x", "y", "z"}, {3, 4, 5}, 32003, OrderKind::Grevlex,
                                       {"y^2 - x*z", "x^2*y - z^2", "x^3 - y*z"});
    CHECK(r4.dimension() == 1);
    FreeModule F = r4.free_module({0, -1});
    std::vector<VecPoly> gens = {vec(r4, 2, 0, "x"), vec(r4, 2, 1, "y"),
                                 [&] {
                                     VecPoly v = vp_zero(2);
                                     v[0] = r4.ring().parse("z");
                                     v[1] = r4.ring().parse("x"); // deg 5 in component of twist -1? 3+1=4 vs 5
                                     return v;
                                 }()};
    // fix the third vector: components must share vector degree
    gens.pop_back();
    ModuleGB gb(r4, F, gens);
    CHECK(gb.check_buchberger());

    RingContext r3 = quot({"x", "y"}, {"x^2", "x*y", "y^2"});
    FreeModule F3 = r3.free_module({0, 0, -1});
    ModuleGB gb3(r3, F3,
                 {vec(r3, 3, 0, "x"), vec(r3, 3, 1, "y"), vec(r3, 3, 2, "1"),
                  [&] {
                      VecPoly v = vp_zero(3);
                      v[0] = r3.ring().parse("y");
                      v[1] = r3.ring().parse("x");
                      return v;
                  }()});
    CHECK(gb3.check_buchberger());
}

TEST_CASE("ideal GB is reduced and auto-stable") {
    RingContext r4 = RingContext::make({"x", "y", "z"}, {3, 4, 5}, 32003, OrderKind::Grevlex,
                                       {"y^2 - x*z", "x^2*y - z^2", "x^3 - y*z"});
    RingContext again = RingContext::make(r4.ring(), r4.ideal_gb());
    CHECK(again.ideal_gb() == r4.ideal_gb());
}

TEST_CASE("syzygies: free columns over a polynomial ring have none") {
    RingContext ctx = quot({"x", "y"}, {});
    FreeModule F = ctx.free_module({0, 0});
    auto [g, syz] = syzygy_generators({vec(ctx, 2, 0, "1"), vec(ctx, 2, 1, "1")}, F);
    CHECK(g.rank() == 2);
    CHECK(syz.empty());
}

TEST_CASE("syzygies: periodic relation over F_p[x]/(x^2)") {
    RingContext ctx = quot({"x"}, {"x^2"});
    FreeModule F = ctx.free_module({0});
    auto [g, syz] = syzygy_generators({vec(ctx, 1, 0, "x")}, F);
    CHECK(g.twists == std::vector<std::int64_t>{-1});
    REQUIRE(syz.size() == 1);
    CHECK(syz[0][0] == ctx.ring().parse("x"));
}

TEST_CASE("syzygies: Koszul relation generates") {
    RingContext ctx = quot({"x", "y"}, {});
    FreeModule F = ctx.free_module({0});
    std::vector<VecPoly> gens = {vec(ctx, 1, 0, "x"), vec(ctx, 1, 0, "y")};
    auto [g, syz] = syzygy_generators(gens, F);
    REQUIRE(!syz.empty());
    // the Koszul relation (y, -x) lies in the computed syzygy module
    ModuleGB syzgb(ctx, g, syz);
    VecPoly koszul = {ctx.ring().parse("y"), ctx.ring().parse("-x")};
    CHECK(vp_is_zero(syzgb.normal_form(koszul)));
    // and the syzygy module slice dims match brute-force linear algebra, deg <= 4
    for (std::int64_t d = 0; d <= 4; ++d) {
        std::size_t engine = oracle::dim_submodule_slice(ctx, g, syz, d);
        std::size_t brute = oracle::dim_kernel_slice(ctx, g, F, gens, d);
        CHECK(engine == brute);
    }
}

TEST_CASE("syzygy columns compose to zero against the generators") {
    RingContext ctx = quot({"x", "y"}, {"x*y"});
    FreeModule F = ctx.free_module({0, -1});
    std::vector<VecPoly> gens = {vec(ctx, 2, 0, "x"),
                                 [&] {
                                     VecPoly v = vp_zero(2);
                                     v[0] = ctx.ring().parse("y^2");
                                     v[1] = ctx.ring().parse("x");
                                     return v;
                                 }(),
                                 vec(ctx, 2, 1, "y")};
    auto [g, syz] = syzygy_generators(gens, F);
    ModuleGB memb(ctx, F, gens);
    const PolyRing& ring = ctx.ring();
    for (const auto& s : syz) {
        VecPoly acc = vp_zero(2);
        for (std::size_t i = 0; i < gens.size(); ++i)
            acc = vp_add(ring, acc, vp_poly_mul(ring, gens[i], s[i]));
        ModuleGB trivial(ctx, F, {}); // membership in I*F alone
        CHECK(vp_is_zero(trivial.normal_form(acc)));
    }
    (void)memb;
}

TEST_CASE("syzygy exactness vs brute-force oracle on artinian and hypersurface fixtures") {
    std::vector<RingContext> fixtures = {
        quot({"x"}, {"x^2"}),
        quot({"x", "y"}, {"x*y"}),
        quot({"x", "y"}, {"x^2", "x*y", "y^2"}),
    };
    std::mt19937_64 rng(5);
    for (auto& ctx : fixtures) {
        FreeModule F = ctx.free_module({0, -1});
        // a deterministic batch of homogeneous generator sets
        for (int trial = 0; trial < 4; ++trial) {
            std::vector<VecPoly> gens;
            for (int k = 0; k < 2 + trial % 2; ++k) {
                VecPoly v = random_homog_vec(ctx, F, 1 + (trial + k) % 2, rng);
                if (!vp_is_zero(v)) gens.push_back(v);
            }
            if (gens.empty()) continue;
            auto [g, syz] = syzygy_generators(gens, F);
            for (std::int64_t d = 0; d <= 6; ++d) {
                std::size_t brute = oracle::dim_kernel_slice(ctx, g, F, gens, d);
                std::size_t engine = oracle::dim_submodule_slice(ctx, g, syz, d);
                CHECK_MESSAGE(engine == brute, "degree ", d, " trial ", trial);
            }
        }
    }
}

TEST_CASE("determinism: identical inputs give byte-identical bases") {
    RingContext ctx = quot({"x", "y"}, {"x^2", "x*y", "y^2"});
    FreeModule F = ctx.free_module({0, 0});
    std::vector<VecPoly> gens = {vec(ctx, 2, 0, "x"),
                                 [&] {
                                     VecPoly v = vp_zero(2);
                                     v[0] = ctx.ring().parse("y");
                                     v[1] = ctx.ring().parse("x");
                                     return v;
                                 }(),
                                 vec(ctx, 2, 1, "y")};
    ModuleGB a(ctx, F, gens);
    ModuleGB b(ctx, F, gens);
    CHECK(dump_basis(a) == dump_basis(b));

    auto [g1, s1] = syzygy_generators(gens, F);
    auto [g2, s2] = syzygy_generators(gens, F);
    CHECK(g1.twists == g2.twists);
    REQUIRE(s1.size() == s2.size());
    for (std::size_t i = 0; i < s1.size(); ++i)
        for (std::size_t j = 0; j < s1[i].size(); ++j) CHECK(s1[i][j] == s2[i][j]);
}

TEST_CASE("lift expresses members through the generators") {
    RingContext ctx = quot({"x", "y"}, {"x*y"});
    FreeModule F = ctx.free_module({0});
    std::vector<VecPoly> gens = {vec(ctx, 1, 0, "x"), vec(ctx, 1, 0, "y")};
    ModuleGB gb(ctx, F, gens, GBOptions{true});
    VecPoly v = vec(ctx, 1, 0, "x^2 + y^3");
    auto lift = gb.lift(v);
    REQUIRE(lift.has_value());
    const PolyRing& ring = ctx.ring();
    VecPoly acc = vp_zero(1);
    for (std::size_t i = 0; i < gens.size(); ++i)
        acc = vp_add(ring, acc, vp_poly_mul(ring, gens[i], (*lift)[i]));
    ModuleGB trivial(ctx, F, {});
    CHECK(vp_is_zero(trivial.normal_form(vp_sub(ring, v, acc))));
    CHECK(!gb.lift(vec(ctx, 1, 0, "1")).has_value());
}
