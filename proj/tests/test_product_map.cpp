#include <catch2/catch_amalgamated.hpp>

#include "rrmul/product_map.hpp"

using namespace rrmul;

namespace {

SymTensor make_tensor(int k, std::initializer_list<std::tuple<int, int, u64>> entries) {
    SymTensor t;
    t.k = k;
    for (auto [n, m, c] : entries)
        if (c != 0) t.coeffs[{n, m}] = c;
    return t;
}

} // namespace

TEST_CASE("multiply_sections") {
    auto curve = random_curve(10007, 2, 1);
    const PrimeField& F = curve.field();
    SeededRng rng(2);

    FuncRep one = FuncRep::one(F);
    FuncRep y = FuncRep::from_numerator(UniPoly(F), UniPoly::constant(F, 1));
    FuncRep psi(UniPoly(F, {3, 1}), UniPoly(F, {0, 2}), UniPoly(F, {5, 1}));

    CHECK(multiply_sections(one, psi, curve) == psi);
    // y * y = f, the defining relation
    FuncRep ysq = multiply_sections(y, y, curve);
    CHECK(ysq.a() == curve.f());
    CHECK(ysq.b().is_zero());

    // valuation additivity at a random point and at infinity
    CurvePoint pt = random_affine_point(curve, rng);
    FuncRep prod = multiply_sections(psi, psi, curve);
    for (const auto& q : {pt, CurvePoint::at_infinity()}) {
        CHECK(valuation(prod, q, curve) == 2 * valuation(psi, q, curve));
    }
}

TEST_CASE("genus 2, d = g + 1 = 3 at infinity: injective") {
    auto curve = random_curve(10007, 2, 5);
    auto rep = sym2_kernel_report(curve, Divisor::at_infinity(3));
    CHECK(rep.k == 2);
    CHECK(rep.dim_sym2 == 3);
    CHECK(rep.rank == 3);
    CHECK(rep.kernel_dim == 0);
    CHECK(rep.injective);
    CHECK(rep.rank + rep.kernel_dim == rep.dim_sym2);
    // h0(6 inf) = 6 - 2 + 1 = 5
    CHECK(rep.h0_2d == 5);
}

TEST_CASE("genus 3 hyperelliptic, d = 4: the 1 (.) x^2 - x (.) x kernel") {
    auto curve = random_curve(10007, 3, 5);
    auto rep = sym2_kernel_report(curve, Divisor::at_infinity(4));
    CHECK(rep.k == 3);
    CHECK(rep.dim_sym2 == 6);
    CHECK(rep.rank == 5);
    CHECK(rep.kernel_dim == 1);
    CHECK_FALSE(rep.injective);
    REQUIRE(rep.kernel_basis.size() == 1);
    // basis is {1, x, x^2}; the kernel element is 1 (.) x^2 - x (.) x,
    // normalized so its first coefficient in pair order is 1
    u64 minus_one = curve.field().neg(1);
    CHECK(rep.kernel_basis[0] == make_tensor(3, {{1, 3, 1}, {2, 2, minus_one}}));
    // the kernel is strictly larger than the dimension count forces
    CHECK(rep.dim_sym2 - rep.h0_2d <= 0);
}

TEST_CASE("same kernel shape for genus 4..6 with d = 4") {
    for (int g : {4, 5, 6}) {
        auto curve = random_curve(10007, g, 100 + static_cast<u64>(g));
        auto rep = sym2_kernel_report(curve, Divisor::at_infinity(4));
        CHECK(rep.k == 3);
        CHECK(rep.kernel_dim == 1);
        u64 minus_one = curve.field().neg(1);
        CHECK(rep.kernel_basis[0] == make_tensor(3, {{1, 3, 1}, {2, 2, minus_one}}));
    }
}

TEST_CASE("genus 2 random degree-3 divisors are injective") {
    SeededRng rng(7);
    for (int t = 0; t < 25; ++t) {
        auto curve = random_curve(10007, 2, 1000 + static_cast<u64>(t));
        Divisor d = random_simple_divisor(curve, 3, rng);
        auto rep = sym2_kernel_report(curve, d);
        CHECK(rep.k == 2);
        CHECK(rep.kernel_dim == 0);
        CHECK(rep.rank + rep.kernel_dim == rep.dim_sym2);
        CHECK(rep.kernel_dim >= std::max(0, rep.dim_sym2 - rep.h0_2d));
    }
}

TEST_CASE("full tensor map kernel equals S^2 kernel plus wedge") {
    // k = 2: dim wedge = 1
    auto g2 = random_curve(10007, 2, 5);
    CHECK(full_tensor_relation_check(g2, Divisor::at_infinity(3)));
    // k = 3 with one-dimensional S^2 kernel: dim ker = 1 + 3 = 4
    auto g3 = random_curve(10007, 3, 5);
    CHECK(full_tensor_relation_check(g3, Divisor::at_infinity(4)));
    // k = 1: wedge of a line is zero
    CHECK(full_tensor_relation_check(g2, Divisor::at_infinity(1)));
    // random instances
    SeededRng rng(11);
    for (int t = 0; t < 5; ++t) {
        Divisor d = random_simple_divisor(g2, 3, rng);
        CHECK(full_tensor_relation_check(g2, d));
    }
}

TEST_CASE("kernel dimension is invariant under change of basis") {
    auto curve = random_curve(10007, 3, 5);
    const PrimeField& F = curve.field();
    SeededRng rng(13);
    auto rrb = rr_space(curve, Divisor::at_infinity(4));
    auto baseline = sym2_kernel_report(curve, rrb);

    for (int t = 0; t < 5; ++t) {
        const int k = rrb.dim;
        // random invertible change of basis
        FpMatrix mat(F, static_cast<size_t>(k), static_cast<size_t>(k));
        do {
            for (int i = 0; i < k; ++i)
                for (int j = 0; j < k; ++j)
                    mat.at(static_cast<size_t>(i), static_cast<size_t>(j)) = rng.below(F.p());
        } while (mat.rank() != static_cast<size_t>(k));

        RRBasis transformed(F);
        transformed.divisor = rrb.divisor;
        transformed.denominator = rrb.denominator;
        transformed.dim = k;
        for (int i = 0; i < k; ++i) {
            UniPoly a(F), b(F);
            for (int j = 0; j < k; ++j) {
                u64 c = mat.at(static_cast<size_t>(i), static_cast<size_t>(j));
                UniPoly mult = rrb.denominator.divexact(rrb.basis[static_cast<size_t>(j)].h());
                a = a + (rrb.basis[static_cast<size_t>(j)].a() * mult).scaled(c);
                b = b + (rrb.basis[static_cast<size_t>(j)].b() * mult).scaled(c);
            }
            transformed.basis.emplace_back(a, b, rrb.denominator);
        }

        auto rep = sym2_kernel_report(curve, transformed);
        CHECK(rep.rank == baseline.rank);
        CHECK(rep.kernel_dim == baseline.kernel_dim);
    }
}
