#pragma once

#include <cstdint>
#include <vector>

namespace homapprox {

// Exponent vector with its weighted total degree cached. Monomials are
// created and combined through PolyRing so the cached degree stays in sync
// with the ring's weights.
struct Monomial {
    std::vector<std::int32_t> exps;
    std::int64_t deg = 0;

    bool operator==(const Monomial& o) const { return exps == o.exps; }
    bool operator!=(const Monomial& o) const { return exps != o.exps; }

    bool is_one() const {
        for (auto e : exps)
            if (e != 0) return false;
        return true;
    }

    bool divides(const Monomial& m) const {
        for (std::size_t i = 0; i < exps.size(); ++i)
            if (exps[i] > m.exps[i]) return false;
        return true;
    }
};

enum class OrderKind { Grevlex, Grlex };

} // namespace homapprox
