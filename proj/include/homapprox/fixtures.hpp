#pragma once

#include <string>
#include <utility>
#include <vector>

#include "homapprox/homology.hpp"

namespace homapprox {

struct Fixture {
    std::string name;
    std::string description;
    RingContext ctx;
};

// The five desk-scale test rings, p = 32003, grevlex:
//   R1 = F_p[x]/(x^2)
//   R2 = F_p[x,y]/(xy)
//   R3 = F_p[x,y]/(x,y)^2
//   R4 = F_p[x,y,z]/(y^2-xz, x^2y-z^2, x^3-yz)   (weights 3,4,5)
//   R5 = F_p[x,y]
const std::vector<Fixture>& standard_fixtures();
RingContext fixture_context(const std::string& name);

// Default corpus per ring: k, R, R/(x_i) for each variable, Omega^1 k, Tr k.
std::vector<std::pair<std::string, FPModule>> default_corpus(const RingContext& ctx);

} // namespace homapprox
