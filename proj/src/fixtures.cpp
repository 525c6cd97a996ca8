#include "homapprox/fixtures.hpp"

namespace homapprox {

const std::vector<Fixture>& standard_fixtures() {
    static const std::vector<Fixture> fixtures = [] {
        std::vector<Fixture> out;
        out.push_back({"R1", "F_p[x]/(x^2), artinian Gorenstein",
                       RingContext::make({"x"}, {1}, 32003, OrderKind::Grevlex, {"x^2"})});
        out.push_back({"R2", "F_p[x,y]/(xy), 1-dimensional hypersurface",
                       RingContext::make({"x", "y"}, {1, 1}, 32003, OrderKind::Grevlex, {"x*y"})});
        out.push_back({"R3", "F_p[x,y]/(x,y)^2, artinian non-Gorenstein",
                       RingContext::make({"x", "y"}, {1, 1}, 32003, OrderKind::Grevlex,
                                         {"x^2", "x*y", "y^2"})});
        out.push_back({"R4", "numerical semigroup <3,4,5>, 1-dimensional CM of type 2",
                       RingContext::make({"x", "y", "z"}, {3, 4, 5}, 32003, OrderKind::Grevlex,
                                         {"y^2 - x*z", "x^2*y - z^2", "x^3 - y*z"})});
        out.push_back({"R5", "F_p[x,y], regular of dimension 2",
                       RingContext::make({"x", "y"}, {1, 1}, 32003, OrderKind::Grevlex, {})});
        return out;
    }();
    return fixtures;
}

RingContext fixture_context(const std::string& name) {
    for (const auto& f : standard_fixtures())
        if (f.name == name) return f.ctx;
    throw PreconditionError("unknown fixture ring `" + name + "`");
}

std::vector<std::pair<std::string, FPModule>> default_corpus(const RingContext& ctx) {
    std::vector<std::pair<std::string, FPModule>> out;
    FPModule k = residue_field_module(ctx);
    out.emplace_back("k", k);
    out.emplace_back("R", ring_module(ctx));
    for (std::size_t t = 0; t < ctx.ring().nvars(); ++t) {
        FPModule q = FPModule::make(ctx, {0}, {{ctx.ring().var(t)}});
        out.emplace_back("R/(" + ctx.ring().vars()[t] + ")", q);
    }
    out.emplace_back("syz1(k)", syzygy_module(k, 1));
    out.emplace_back("Tr(k)", transpose(k));
    return out;
}

} // namespace homapprox
