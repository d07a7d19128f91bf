#pragma once

#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "rrmul/hyperelliptic.hpp"
#include "rrmul/matrix.hpp"

namespace rrmul {

/// Element of S^2 H^0(L): coefficients on unordered pairs {n, m} of basis
/// indices, 1-based, n <= m. The ambient dimension is k(k+1)/2.
struct SymTensor {
    int k = 0;
    std::map<std::pair<int, int>, u64> coeffs; // only nonzero entries

    u64 at(int n, int m) const {
        if (n > m) std::swap(n, m);
        auto it = coeffs.find({n, m});
        return it == coeffs.end() ? 0 : it->second;
    }

    bool operator==(const SymTensor& o) const { return k == o.k && coeffs == o.coeffs; }
};

/// The canonical ordering of unordered pairs: (1,1),(1,2),...,(1,k),(2,2),...,(k,k).
inline std::vector<std::pair<int, int>> sym_pair_order(int k) {
    std::vector<std::pair<int, int>> pairs;
    pairs.reserve(static_cast<size_t>(k) * (k + 1) / 2);
    for (int n = 1; n <= k; ++n)
        for (int m = n; m <= k; ++m) pairs.emplace_back(n, m);
    return pairs;
}

/// Rank/kernel verdict of the symmetric multiplication map
/// S^2 H^0(L) -> H^0(L^2).
struct MulMapReport {
    int k = 0;
    int dim_sym2 = 0;
    int rank = 0;
    int kernel_dim = 0;
    bool injective = false;
    std::vector<SymTensor> kernel_basis;
    int h0_2d = -1; // reported alongside; not part of the verdict
};

/// Product of two sections, reduced through y^2 = f:
/// (a1 + b1 y)(a2 + b2 y) = (a1 a2 + b1 b2 f) + (a1 b2 + a2 b1) y.
inline FuncRep multiply_sections(const FuncRep& phi, const FuncRep& psi, const HECurve& curve) {
    UniPoly pa = phi.a() * psi.a() + phi.b() * psi.b() * curve.f();
    UniPoly pb = phi.a() * psi.b() + psi.a() * phi.b();
    return FuncRep(std::move(pa), std::move(pb), phi.h() * psi.h());
}

namespace detail {

struct ProductColumns {
    int k = 0;
    std::vector<std::pair<int, int>> pairs;     // unordered index pairs, canonical order
    std::vector<UniPoly> prod_a, prod_b;        // product numerators over h^2
    size_t len_a = 0, len_b = 0;                // padded coefficient lengths

    std::vector<u64> column(size_t idx) const {
        std::vector<u64> col(len_a + len_b, 0);
        for (size_t i = 0; i < len_a; ++i) col[i] = prod_a[idx].coeff(i);
        for (size_t i = 0; i < len_b; ++i) col[len_a + i] = prod_b[idx].coeff(i);
        return col;
    }
};

/// All pairwise products of the basis sections, written over the common
/// denominator h^2 and padded to shared coefficient lengths.
inline ProductColumns build_product_columns(const HECurve& curve, const RRBasis& rrb) {
    ProductColumns pc;
    pc.k = rrb.dim;
    pc.pairs = sym_pair_order(rrb.dim);

    // bring every basis element to the shared ansatz denominator
    std::vector<UniPoly> A, B;
    for (const auto& phi : rrb.basis) {
        UniPoly mult = rrb.denominator.divexact(phi.h());
        A.push_back(phi.a() * mult);
        B.push_back(phi.b() * mult);
    }

    for (auto [n, m] : pc.pairs) {
        size_t i = static_cast<size_t>(n - 1), j = static_cast<size_t>(m - 1);
        UniPoly pa = A[i] * A[j] + B[i] * B[j] * curve.f();
        UniPoly pb = A[i] * B[j] + A[j] * B[i];
        if (!pa.is_zero()) pc.len_a = std::max(pc.len_a, static_cast<size_t>(pa.degree()) + 1);
        if (!pb.is_zero()) pc.len_b = std::max(pc.len_b, static_cast<size_t>(pb.degree()) + 1);
        pc.prod_a.push_back(std::move(pa));
        pc.prod_b.push_back(std::move(pb));
    }
    return pc;
}

} // namespace detail

/// Rank and kernel of S^2 H^0(L(D)) -> H^0(L(2D)).
///
/// Injectivity is decided from the rank of the product numerator vectors
/// in the ambient coefficient space (the products are sections of L(2D)
/// over the fixed denominator h^2, so linear dependence as vectors is
/// dependence as functions). Kernel elements are re-verified by
/// multiplying out symbolically. h0(2D) is computed for reporting only.
inline MulMapReport sym2_kernel_report(const HECurve& curve, const RRBasis& rrb) {
    if (rrb.dim < 1) throw std::invalid_argument("sym2_kernel_report: L(D) has no sections");
    const PrimeField& F = curve.field();

    auto pc = detail::build_product_columns(curve, rrb);
    const size_t rows = pc.len_a + pc.len_b;
    std::vector<std::vector<u64>> cols;
    for (size_t idx = 0; idx < pc.pairs.size(); ++idx) cols.push_back(pc.column(idx));
    FpMatrix m = FpMatrix::from_columns(F, rows, cols);
    auto rk = m.rank_and_kernel();

    MulMapReport rep;
    rep.k = rrb.dim;
    rep.dim_sym2 = rrb.dim * (rrb.dim + 1) / 2;
    rep.rank = static_cast<int>(rk.rank);
    rep.kernel_dim = static_cast<int>(rk.kernel.size());
    rep.injective = rep.kernel_dim == 0;
    for (const auto& v : rk.kernel) {
        SymTensor t;
        t.k = rrb.dim;
        for (size_t idx = 0; idx < pc.pairs.size(); ++idx)
            if (v[idx] != 0) t.coeffs[pc.pairs[idx]] = v[idx];
        rep.kernel_basis.push_back(std::move(t));
    }

    // independent re-verification: each kernel element multiplies out to
    // the exactly-zero function
    for (const auto& t : rep.kernel_basis) {
        FuncRep acc = FuncRep::zero(F);
        UniPoly sum_a(F), sum_b(F);
        for (size_t idx = 0; idx < pc.pairs.size(); ++idx) {
            u64 c = t.at(pc.pairs[idx].first, pc.pairs[idx].second);
            if (c == 0) continue;
            sum_a = sum_a + pc.prod_a[idx].scaled(c);
            sum_b = sum_b + pc.prod_b[idx].scaled(c);
        }
        if (!sum_a.is_zero() || !sum_b.is_zero())
            throw std::logic_error("sym2_kernel_report: kernel element does not multiply to zero");
        (void)acc;
    }

    rep.h0_2d = rr_space(curve, rrb.divisor.scaled(2)).dim;
    return rep;
}

inline MulMapReport sym2_kernel_report(const HECurve& curve, const Divisor& D) {
    return sym2_kernel_report(curve, rr_space(curve, D));
}

/// Kernel dimension of the full tensor map H^0 (x) H^0 -> H^0(L^2),
/// checked against kernel(S^2) + dim wedge^2 = kernel(S^2) + k(k-1)/2.
inline bool full_tensor_relation_check(const HECurve& curve, const Divisor& D) {
    RRBasis rrb = rr_space(curve, D);
    if (rrb.dim < 1) throw std::invalid_argument("full_tensor_relation_check: L(D) has no sections");
    const PrimeField& F = curve.field();
    const int k = rrb.dim;

    auto pc = detail::build_product_columns(curve, rrb);
    // index of the unordered pair column for (n, m)
    auto pair_index = [&](int n, int m) {
        if (n > m) std::swap(n, m);
        size_t idx = 0;
        for (auto [a, b] : pc.pairs) {
            if (a == n && b == m) return idx;
            ++idx;
        }
        throw std::logic_error("full_tensor_relation_check: pair not found");
    };

    const size_t rows = pc.len_a + pc.len_b;
    std::vector<std::vector<u64>> cols;
    for (int n = 1; n <= k; ++n)
        for (int m = 1; m <= k; ++m) cols.push_back(pc.column(pair_index(n, m)));
    FpMatrix full = FpMatrix::from_columns(F, rows, cols);
    auto rk_full = full.rank_and_kernel();

    MulMapReport sym = sym2_kernel_report(curve, D);
    return static_cast<int>(rk_full.kernel.size()) == sym.kernel_dim + k * (k - 1) / 2;
}

} // namespace rrmul
