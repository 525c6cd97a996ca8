#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "homapprox/field.hpp"
#include "homapprox/monomial.hpp"

namespace homapprox {

struct Term {
    Monomial mono;
    std::uint32_t coeff = 0; // nonzero in stored polynomials
};

// Sparse multivariate polynomial: terms sorted strictly descending in the
// ring's term order, no zero coefficients. Two equal polynomials have
// identical term lists, so equality is memberwise.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<Term> terms) : terms_(std::move(terms)) {}

    const std::vector<Term>& terms() const { return terms_; }
    std::vector<Term>& terms() { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    const Term& lead() const { return terms_.front(); }
    std::size_t size() const { return terms_.size(); }

    bool operator==(const Polynomial& o) const {
        if (terms_.size() != o.terms_.size()) return false;
        for (std::size_t i = 0; i < terms_.size(); ++i)
            if (terms_[i].coeff != o.terms_[i].coeff || terms_[i].mono != o.terms_[i].mono)
                return false;
        return true;
    }
    bool operator!=(const Polynomial& o) const { return !(*this == o); }

private:
    std::vector<Term> terms_;
};

// The ambient polynomial ring S = F_p[x_1..x_v] with a positive weight
// vector and a graded term order. All polynomial arithmetic funnels through
// here; Polynomial values themselves carry no ring reference.
class PolyRing {
public:
    PolyRing(std::vector<std::string> vars, std::vector<std::int64_t> weights,
             std::uint32_t characteristic, OrderKind order);

    std::size_t nvars() const { return vars_.size(); }
    const std::vector<std::string>& vars() const { return vars_; }
    const std::vector<std::int64_t>& weights() const { return weights_; }
    const PrimeField& field() const { return field_; }
    OrderKind order() const { return order_; }
    std::int64_t total_weight() const;

    bool same_ring(const PolyRing& o) const;

    // --- monomials ---
    Monomial mono_one() const;
    Monomial mono(std::vector<std::int32_t> exps) const;
    Monomial mono_var(std::size_t i, std::int32_t e = 1) const;
    Monomial mono_mul(const Monomial& a, const Monomial& b) const;
    // requires b | a
    Monomial mono_div(const Monomial& a, const Monomial& b) const;
    Monomial mono_lcm(const Monomial& a, const Monomial& b) const;
    // -1 / 0 / +1 as a < b, a == b, a > b in the term order
    int cmp(const Monomial& a, const Monomial& b) const;

    // --- polynomials ---
    Polynomial zero() const { return Polynomial(); }
    Polynomial constant(std::uint32_t c) const;
    Polynomial monomial(const Monomial& m, std::uint32_t c = 1) const;
    Polynomial var(std::size_t i) const { return monomial(mono_var(i)); }

    Polynomial add(const Polynomial& a, const Polynomial& b) const;
    Polynomial sub(const Polynomial& a, const Polynomial& b) const;
    Polynomial neg(const Polynomial& a) const;
    Polynomial scale(const Polynomial& a, std::uint32_t c) const;
    // a * (c * m)
    Polynomial term_mul(const Polynomial& a, const Monomial& m, std::uint32_t c) const;
    Polynomial mul(const Polynomial& a, const Polynomial& b) const;

    // Degree of a homogeneous polynomial; nullopt for 0 or inhomogeneous.
    std::optional<std::int64_t> homogeneous_degree(const Polynomial& a) const;

    // Text form `3*x^2*y + 32002*z + 1`; coefficients are canonical residues.
    std::string to_string(const Polynomial& a) const;
    std::string to_string(const Monomial& m) const;
    // Parses the same syntax (signs allowed); throws PreconditionError with a
    // position message on malformed input or unknown variables.
    Polynomial parse(const std::string& text) const;

    // All monomials of the given weighted degree, in a fixed deterministic
    // order (used by Hilbert-function counting).
    std::vector<Monomial> monomials_of_degree(std::int64_t degree) const;

private:
    void check_arity(const Monomial& m) const;
    void normalize(std::vector<Term>& ts) const;

    std::vector<std::string> vars_;
    std::vector<std::int64_t> weights_;
    PrimeField field_;
    OrderKind order_;
};

} // namespace homapprox
