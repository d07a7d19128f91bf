#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <vector>

#include "rrmul/hyperelliptic.hpp"

using namespace rrmul;

namespace {

// y^2 = x(x-1)(x-2)(x-3)(x-4): genus 2, fully split, so every
// Weierstrass point is rational — handy for divisor bookkeeping.
HECurve split_genus2(u64 p = 10007) {
    PrimeField F(p);
    return HECurve(F, UniPoly(F, {0, 24, -50, 35, -10, 1}));
}

const std::vector<u64> kSplitRoots{0, 1, 2, 3, 4};

bool basis_contains(const RRBasis& rrb, const FuncRep& f) {
    for (auto& g : rrb.basis)
        if (g == f) return true;
    return false;
}

} // namespace

TEST_CASE("random_curve shape") {
    auto c = random_curve(10007, 2, 1);
    CHECK(c.f().degree() == 5);
    CHECK(c.genus() == 2);
    CHECK(c.f().is_squarefree());

    auto c3 = random_curve(10007, 3, 42);
    CHECK(c3.genus() == 3);
    CHECK((c3.f().degree() - 1) / 2 == 3);

    // deterministic under seed
    auto c_again = random_curve(10007, 2, 1);
    CHECK(c.f() == c_again.f());
}

TEST_CASE("valuation at local parameters") {
    auto curve = split_genus2();
    const PrimeField& F = curve.field();
    SeededRng rng(2);

    // phi = (x - x0) at an ordinary point (x0, y0) has order 1
    CurvePoint pt = random_affine_point(curve, rng);
    FuncRep lin = FuncRep::from_numerator(UniPoly(F, {static_cast<long long>(F.neg(pt.x)), 1}), UniPoly(F));
    CHECK(valuation(lin, pt, curve) == 1);
    // ... and order 2 at a Weierstrass point
    CurvePoint w = CurvePoint::affine(1, 0);
    REQUIRE(curve.contains(w));
    FuncRep lin_w = FuncRep::from_numerator(UniPoly(F, {-1, 1}), UniPoly(F));
    CHECK(valuation(lin_w, w, curve) == 2);

    // phi = y at a Weierstrass point is the local parameter
    FuncRep y = FuncRep::from_numerator(UniPoly(F), UniPoly::constant(F, 1));
    CHECK(valuation(y, w, curve) == 1);

    // poles at infinity: val(x) = -2, val(y) = -(2g+1) = -5
    FuncRep x = FuncRep::from_numerator(UniPoly(F, {0, 1}), UniPoly(F));
    CHECK(valuation(x, CurvePoint::at_infinity(), curve) == -2);
    CHECK(valuation(y, CurvePoint::at_infinity(), curve) == -5);

    // deg div0(x) = deg divinf(x): x vanishes only above x = 0, here the
    // Weierstrass point (0,0), with order 2
    CHECK(valuation(x, CurvePoint::affine(0, 0), curve) == 2);

    // errors: zero function and off-curve points are rejected
    CHECK_THROWS(valuation(FuncRep::zero(F), pt, curve));
    CHECK_THROWS(valuation(x, CurvePoint::affine(pt.x, F.add(pt.y, 1)), curve));
}

TEST_CASE("principal divisors have degree zero") {
    auto curve = split_genus2();
    const PrimeField& F = curve.field();
    SeededRng rng(3);

    for (int trial = 0; trial < 50; ++trial) {
        // phi = product of elementary functions with known rational
        // divisors: (x - x0), (x - r) for Weierstrass r, and y itself
        std::map<CurvePoint, long long> expected;
        UniPoly A = UniPoly::constant(F, 1);
        UniPoly B(F);
        UniPoly H = UniPoly::constant(F, 1);
        long long inf_ord = 0;

        auto mul_by_linear = [&](u64 x0, long long e) {
            UniPoly lin(F, {static_cast<long long>(F.neg(x0)), 1});
            for (long long i = 0; i < e; ++i) {
                A = A * lin;
                B = B * lin;
            }
            for (long long i = 0; i < -e; ++i) H = H * lin;
        };
        auto mul_by_y = [&]() {
            UniPoly newA = B * curve.f();
            B = A;
            A = newA;
        };

        int n_factors = 1 + static_cast<int>(rng.below(4));
        for (int i = 0; i < n_factors; ++i) {
            long long e = rng.range(-2, 2);
            if (e == 0) continue;
            if (rng.coin()) {
                u64 r = kSplitRoots[rng.below(kSplitRoots.size())];
                mul_by_linear(r, e);
                expected[CurvePoint::affine(r, 0)] += 2 * e;
                inf_ord -= 2 * e;
            } else {
                CurvePoint pt = random_affine_point(curve, rng);
                mul_by_linear(pt.x, e);
                expected[pt] += e;
                expected[curve.conjugate(pt)] += e;
                inf_ord -= 2 * e;
            }
        }
        if (rng.coin()) {
            // multiply by y: all five Weierstrass points, pole 5 at infinity
            mul_by_y();
            for (u64 r : kSplitRoots) expected[CurvePoint::affine(r, 0)] += 1;
            inf_ord -= 5;
        }

        FuncRep phi(A, B, H);
        if (phi.is_zero()) continue;

        long long total = 0;
        for (auto& [pt, m] : expected) {
            long long v = valuation(phi, pt, curve);
            CHECK(v == m);
            total += v;
        }
        long long vinf = valuation(phi, CurvePoint::at_infinity(), curve);
        CHECK(vinf == inf_ord);
        total += vinf;
        CHECK(total == 0);
    }
}

TEST_CASE("valuation is additive") {
    auto curve = split_genus2();
    const PrimeField& F = curve.field();
    SeededRng rng(5);

    auto random_funcrep = [&](int max_deg) {
        while (true) {
            std::vector<u64> ca(1 + rng.below(static_cast<u64>(max_deg)));
            std::vector<u64> cb(1 + rng.below(static_cast<u64>(max_deg)));
            for (auto& v : ca) v = rng.below(F.p());
            for (auto& v : cb) v = rng.below(F.p());
            FuncRep f(UniPoly(F, ca), UniPoly(F, cb), UniPoly::constant(F, 1));
            if (!f.is_zero()) return f;
        }
    };

    for (int trial = 0; trial < 30; ++trial) {
        FuncRep phi = random_funcrep(5);
        FuncRep psi = random_funcrep(5);
        // product with the curve relation y^2 = f
        UniPoly pa = phi.a() * psi.a() + phi.b() * psi.b() * curve.f();
        UniPoly pb = phi.a() * psi.b() + psi.a() * phi.b();
        FuncRep prod(pa, pb, phi.h() * psi.h());

        std::vector<CurvePoint> pts{CurvePoint::at_infinity(), CurvePoint::affine(1, 0),
                                    random_affine_point(curve, rng)};
        for (auto& pt : pts) {
            CHECK(valuation(prod, pt, curve) == valuation(phi, pt, curve) + valuation(psi, pt, curve));
        }
    }
}

TEST_CASE("rr_space basic examples") {
    PrimeField F(10007);
    auto curve = random_curve(10007, 2, 7);

    // L(0) = constants
    auto rr0 = rr_space(curve, Divisor());
    CHECK(rr0.dim == 1);
    CHECK(basis_contains(rr0, FuncRep::one(F)));

    // genus 2, D = 5*infinity: {1, x, x^2, y}
    auto rr5 = rr_space(curve, Divisor::at_infinity(5));
    CHECK(rr5.dim == 4);
    CHECK(basis_contains(rr5, FuncRep::one(F)));
    CHECK(basis_contains(rr5, FuncRep::from_numerator(UniPoly(F, {0, 1}), UniPoly(F))));
    CHECK(basis_contains(rr5, FuncRep::from_numerator(UniPoly(F, {0, 0, 1}), UniPoly(F))));
    CHECK(basis_contains(rr5, FuncRep::from_numerator(UniPoly(F), UniPoly::constant(F, 1))));
    // Riemann-Roch: 5 - 2 + 1 = 4
    CHECK(rr5.dim == 5 - 2 + 1);

    // generic degree-2 divisor on genus 2 is non-special: h0 = 1
    SeededRng rng(11);
    for (int t = 0; t < 10; ++t) {
        Divisor d = random_simple_divisor(curve, 2, rng);
        CHECK(rr_space(curve, d).dim == 1);
        CHECK(riemann_roch_check(curve, d));
    }
}

TEST_CASE("rr_space with affine support and poles") {
    auto curve = split_genus2();
    SeededRng rng(13);

    // D = 3P: deg 3 >= 2g - 1, so h0 = 2
    CurvePoint pt = random_affine_point(curve, rng);
    Divisor d3;
    d3.add(pt, 3);
    auto rr = rr_space(curve, d3);
    CHECK(rr.dim == 3 - 2 + 1);
    for (auto& phi : rr.basis) {
        CHECK(valuation(phi, pt, curve) >= -3);
        CHECK(valuation(phi, CurvePoint::at_infinity(), curve) >= 0);
    }

    // divisor with a required zero: D = 3*inf - P forces vanishing at P
    Divisor dz = Divisor::at_infinity(3);
    dz.add(pt, -1);
    auto rrz = rr_space(curve, dz);
    CHECK(rrz.dim == 1);
    for (auto& phi : rrz.basis) CHECK(valuation(phi, pt, curve) >= 1);

    // Weierstrass support
    Divisor dw;
    dw.add(CurvePoint::affine(0, 0), 2);
    dw.add(CurvePoint::at_infinity(), 1);
    auto rrw = rr_space(curve, dw);
    CHECK(rrw.dim == 3 - 2 + 1);
    for (auto& phi : rrw.basis) CHECK(valuation(phi, CurvePoint::affine(0, 0), curve) >= -2);

    // both conjugates in the support, with different multiplicities
    Divisor dc;
    dc.add(pt, 2);
    dc.add(curve.conjugate(pt), 1);
    auto rrc = rr_space(curve, dc);
    CHECK(rrc.dim == 3 - 2 + 1);
    for (auto& phi : rrc.basis) {
        CHECK(valuation(phi, pt, curve) >= -2);
        CHECK(valuation(phi, curve.conjugate(pt), curve) >= -1);
    }
}

TEST_CASE("canonical divisor") {
    {
        auto curve = random_curve(10007, 2, 3);
        auto K = canonical_divisor(curve);
        CHECK(K.degree() == 2);
        auto rr = rr_space(curve, K);
        CHECK(rr.dim == 2); // {1, x}
        CHECK(basis_contains(rr, FuncRep::one(curve.field())));
        CHECK(basis_contains(rr, FuncRep::from_numerator(UniPoly(curve.field(), {0, 1}), UniPoly(curve.field()))));
    }
    {
        auto curve = random_curve(10007, 3, 3);
        auto rr = rr_space(curve, canonical_divisor(curve));
        CHECK(rr.dim == 3); // {1, x, x^2}
    }
    {
        auto curve = random_curve(10007, 1, 3);
        auto K = canonical_divisor(curve);
        CHECK(K.degree() == 0);
        CHECK(rr_space(curve, K).dim == 1);
    }
}

TEST_CASE("riemann_roch_check on random divisors") {
    SeededRng rng(17);
    for (int g : {2, 3}) {
        auto curve = random_curve(10007, g, 19 + static_cast<u64>(g));
        CHECK(riemann_roch_check(curve, Divisor()));
        CHECK(riemann_roch_check(curve, canonical_divisor(curve)));
        for (int t = 0; t < 25; ++t) {
            Divisor d = random_mixed_divisor(curve, rng);
            CHECK(riemann_roch_check(curve, d));
        }
    }
}

TEST_CASE("non-special range dimension formula") {
    SeededRng rng(23);
    for (int g : {2, 3}) {
        auto curve = random_curve(10007, g, 29 + static_cast<u64>(g));
        for (int t = 0; t < 10; ++t) {
            int deg = 2 * g - 1 + static_cast<int>(rng.below(4));
            int n_affine = static_cast<int>(rng.below(static_cast<u64>(deg) + 1));
            Divisor d = Divisor::at_infinity(deg - n_affine);
            if (n_affine > 0) d = d.plus(random_simple_divisor(curve, n_affine, rng));
            CHECK(rr_space(curve, d).dim == deg - g + 1);
        }
    }
}
