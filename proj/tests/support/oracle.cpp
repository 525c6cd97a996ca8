#include "support/oracle.hpp"

namespace homapprox::oracle {

std::size_t rank(Mat m, const PrimeField& f) {
    std::size_t r = 0;
    for (std::size_t col = 0; col < m.cols && r < m.rows; ++col) {
        std::size_t pivot = r;
        while (pivot < m.rows && m.at(pivot, col) == 0) ++pivot;
        if (pivot == m.rows) continue;
        for (std::size_t c = 0; c < m.cols; ++c) std::swap(m.at(r, c), m.at(pivot, c));
        std::uint32_t inv = f.inv(m.at(r, col));
        for (std::size_t c = col; c < m.cols; ++c) m.at(r, c) = f.mul(m.at(r, c), inv);
        for (std::size_t row = 0; row < m.rows; ++row) {
            if (row == r || m.at(row, col) == 0) continue;
            std::uint32_t q = m.at(row, col);
            for (std::size_t c = col; c < m.cols; ++c)
                m.at(row, c) = f.sub(m.at(row, c), f.mul(q, m.at(r, c)));
        }
        ++r;
    }
    return r;
}

std::vector<std::pair<Monomial, std::size_t>> slice_basis(const PolyRing& ring,
                                                          const FreeModule& F, std::int64_t d) {
    std::vector<std::pair<Monomial, std::size_t>> out;
    for (std::size_t j = 0; j < F.rank(); ++j) {
        std::int64_t pd = d + F.twists[j];
        if (pd < 0) continue;
        for (auto& m : ring.monomials_of_degree(pd)) out.emplace_back(m, j);
    }
    return out;
}

std::vector<std::uint32_t> expand(const PolyRing& ring, const FreeModule& F, const VecPoly& v,
                                  const std::vector<std::pair<Monomial, std::size_t>>& basis) {
    (void)ring;
    (void)F;
    std::vector<std::uint32_t> out(basis.size(), 0);
    for (std::size_t b = 0; b < basis.size(); ++b) {
        const auto& [mono, comp] = basis[b];
        for (const auto& t : v[comp].terms())
            if (t.mono == mono) out[b] = t.coeff;
    }
    return out;
}

namespace {

void append_multiples(const RingContext& ctx, const FreeModule& F, const VecPoly& g,
                      std::int64_t d, const std::vector<std::pair<Monomial, std::size_t>>& basis,
                      std::vector<std::vector<std::uint32_t>>& cols) {
    const PolyRing& ring = ctx.ring();
    auto gd = vp_degree(ring, F, g);
    if (!gd) return;
    std::int64_t mdeg = d - *gd;
    if (mdeg < 0) return;
    for (auto& m : ring.monomials_of_degree(mdeg)) {
        VecPoly shifted = vp_term_mul(ring, g, m, 1);
        cols.push_back(expand(ring, F, shifted, basis));
    }
}

Mat cols_to_mat(std::size_t rows, const std::vector<std::vector<std::uint32_t>>& cols) {
    Mat m;
    m.rows = rows;
    m.cols = cols.size();
    m.a.assign(m.rows * m.cols, 0);
    for (std::size_t c = 0; c < cols.size(); ++c)
        for (std::size_t r = 0; r < rows; ++r) m.at(r, c) = cols[c][r];
    return m;
}

} // namespace

Mat span_columns(const RingContext& ctx, const FreeModule& F, const std::vector<VecPoly>& gens,
                 std::int64_t d) {
    auto basis = slice_basis(ctx.ring(), F, d);
    std::vector<std::vector<std::uint32_t>> cols;
    for (const auto& g : gens) {
        if (vp_is_zero(g)) continue;
        append_multiples(ctx, F, g, d, basis, cols);
    }
    return cols_to_mat(basis.size(), cols);
}

Mat ideal_columns(const RingContext& ctx, const FreeModule& F, std::int64_t d) {
    const PolyRing& ring = ctx.ring();
    auto basis = slice_basis(ring, F, d);
    std::vector<std::vector<std::uint32_t>> cols;
    for (std::size_t j = 0; j < F.rank(); ++j) {
        for (const auto& f : ctx.ideal_gens()) {
            VecPoly v = vp_zero(F.rank());
            v[j] = f;
            append_multiples(ctx, F, v, d, basis, cols);
        }
    }
    return cols_to_mat(basis.size(), cols);
}

Mat hcat(const Mat& a, const Mat& b) {
    Mat m;
    m.rows = a.rows;
    m.cols = a.cols + b.cols;
    m.a.assign(m.rows * m.cols, 0);
    for (std::size_t r = 0; r < m.rows; ++r) {
        for (std::size_t c = 0; c < a.cols; ++c) m.at(r, c) = a.at(r, c);
        for (std::size_t c = 0; c < b.cols; ++c) m.at(r, a.cols + c) = b.at(r, c);
    }
    return m;
}

std::size_t dim_submodule_slice(const RingContext& ctx, const FreeModule& F,
                                const std::vector<VecPoly>& gens, std::int64_t d) {
    const PrimeField& f = ctx.ring().field();
    Mat w = span_columns(ctx, F, gens, d);
    Mat i = ideal_columns(ctx, F, d);
    return rank(hcat(w, i), f) - rank(i, f);
}

std::size_t dim_quotient_slice(const RingContext& ctx, const FreeModule& F,
                               const std::vector<VecPoly>& gens, std::int64_t d) {
    const PrimeField& f = ctx.ring().field();
    Mat w = span_columns(ctx, F, gens, d);
    Mat i = ideal_columns(ctx, F, d);
    return slice_basis(ctx.ring(), F, d).size() - rank(hcat(w, i), f);
}

std::size_t dim_kernel_slice(const RingContext& ctx, const FreeModule& G, const FreeModule& F,
                             const std::vector<VecPoly>& cols, std::int64_t d) {
    const PolyRing& ring = ctx.ring();
    const PrimeField& fld = ring.field();
    auto gbasis = slice_basis(ring, G, d);
    auto fbasis = slice_basis(ring, F, d);
    // A: (G_S)_d -> (F_S)_d induced by the columns
    Mat A;
    A.rows = fbasis.size();
    A.cols = gbasis.size();
    A.a.assign(A.rows * A.cols, 0);
    for (std::size_t c = 0; c < gbasis.size(); ++c) {
        const auto& [mono, comp] = gbasis[c];
        VecPoly img = vp_term_mul(ring, cols[comp], mono, 1);
        auto coords = expand(ring, F, img, fbasis);
        for (std::size_t r = 0; r < A.rows; ++r) A.at(r, c) = coords[r];
    }
    Mat B = ideal_columns(ctx, F, d);
    // { c : A c in col(B) } has dim nullity([A|B]) - nullity(B); subtract the
    // degree-d slice of I*G to land in G over R
    std::size_t pre = nullity(hcat(A, B), fld) - nullity(B, fld);
    Mat ig = ideal_columns(ctx, G, d);
    return pre - rank(ig, fld);
}

} // namespace homapprox::oracle
