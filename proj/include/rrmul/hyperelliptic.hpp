#pragma once

#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "rrmul/field.hpp"
#include "rrmul/matrix.hpp"
#include "rrmul/poly.hpp"
#include "rrmul/rng.hpp"

namespace rrmul {

/// Point on an odd-model hyperelliptic curve: affine (x, y) or the single
/// point at infinity. Affine points with y = 0 are the Weierstrass points.
struct CurvePoint {
    bool infinity = false;
    u64 x = 0;
    u64 y = 0;

    static CurvePoint at_infinity() { return CurvePoint{true, 0, 0}; }
    static CurvePoint affine(u64 x, u64 y) { return CurvePoint{false, x, y}; }

    bool is_weierstrass() const { return !infinity && y == 0; }

    bool operator==(const CurvePoint& o) const {
        return infinity == o.infinity && (infinity || (x == o.x && y == o.y));
    }
    bool operator<(const CurvePoint& o) const {
        return std::tuple(infinity, x, y) < std::tuple(o.infinity, o.x, o.y);
    }
};

/// Hyperelliptic curve y^2 = f(x) over F_p in the odd model:
/// deg f = 2g + 1, f squarefree, exactly one rational point at infinity.
class HECurve {
public:
    HECurve(const PrimeField& field, UniPoly f) : field_(field), f_(std::move(f)) {
        if (f_.field().p() != field_.p()) throw std::invalid_argument("HECurve: field mismatch");
        int d = f_.degree();
        if (d < 3 || d % 2 == 0) throw std::invalid_argument("HECurve: deg f must be odd and >= 3");
        if (!f_.is_squarefree()) throw std::invalid_argument("HECurve: f must be squarefree");
        genus_ = (d - 1) / 2;
    }

    const PrimeField& field() const { return field_; }
    const UniPoly& f() const { return f_; }
    int genus() const { return genus_; }
    u64 p() const { return field_.p(); }

    bool contains(const CurvePoint& pt) const {
        if (pt.infinity) return true;
        return field_.mul(pt.y, pt.y) == f_.eval(pt.x);
    }

    CurvePoint conjugate(const CurvePoint& pt) const {
        if (pt.infinity) return pt;
        return CurvePoint::affine(pt.x, field_.neg(pt.y));
    }

private:
    PrimeField field_;
    UniPoly f_;
    int genus_;
};

/// Random curve of the requested genus: f monic squarefree of degree
/// 2g + 1, deterministic under the seed.
inline HECurve random_curve(u64 p, int genus, u64 seed) {
    if (genus < 1) throw std::invalid_argument("random_curve: genus must be >= 1");
    PrimeField F(p);
    SeededRng rng(seed);
    const int deg = 2 * genus + 1;
    for (int attempt = 0; attempt < 1000; ++attempt) {
        std::vector<u64> c(static_cast<size_t>(deg) + 1);
        for (int i = 0; i < deg; ++i) c[static_cast<size_t>(i)] = rng.below(p);
        c[static_cast<size_t>(deg)] = 1;
        UniPoly f(F, std::move(c));
        if (f.is_squarefree()) return HECurve(F, std::move(f));
    }
    throw std::runtime_error("random_curve: no squarefree polynomial found (modulus too small?)");
}

/// Formal finite sum of points with integer multiplicities.
class Divisor {
public:
    Divisor() = default;

    static Divisor at_infinity(long long mult) {
        Divisor d;
        d.add(CurvePoint::at_infinity(), mult);
        return d;
    }

    void add(const CurvePoint& pt, long long mult) {
        if (mult == 0) return;
        auto it = support_.find(pt);
        if (it == support_.end()) {
            support_.emplace(pt, mult);
        } else {
            it->second += mult;
            if (it->second == 0) support_.erase(it);
        }
    }

    long long at(const CurvePoint& pt) const {
        auto it = support_.find(pt);
        return it == support_.end() ? 0 : it->second;
    }

    const std::map<CurvePoint, long long>& support() const { return support_; }

    long long degree() const {
        long long d = 0;
        for (auto& [pt, m] : support_) d += m;
        return d;
    }

    Divisor plus(const Divisor& o) const {
        Divisor r = *this;
        for (auto& [pt, m] : o.support_) r.add(pt, m);
        return r;
    }

    Divisor scaled(long long k) const {
        Divisor r;
        for (auto& [pt, m] : support_) r.add(pt, m * k);
        return r;
    }

    Divisor minus(const Divisor& o) const { return plus(o.scaled(-1)); }

    bool operator==(const Divisor& o) const { return support_ == o.support_; }

private:
    std::map<CurvePoint, long long> support_;
};

/// Function (a(x) + b(x) y) / h(x) on a hyperelliptic curve, stored in
/// reduced form: h monic, gcd(a, b, h) constant. The zero function has
/// a = b = 0 (and h = 1).
class FuncRep {
public:
    FuncRep(UniPoly a, UniPoly b, UniPoly h) : a_(std::move(a)), b_(std::move(b)), h_(std::move(h)) {
        if (h_.is_zero()) throw std::invalid_argument("FuncRep: zero denominator");
        if (a_.is_zero() && b_.is_zero()) {
            h_ = UniPoly::constant(h_.field(), 1);
            return;
        }
        UniPoly g = UniPoly::gcd(UniPoly::gcd(a_, b_), h_);
        if (g.degree() > 0) {
            a_ = a_.divexact(g);
            b_ = b_.divexact(g);
            h_ = h_.divexact(g);
        }
        u64 lc = h_.leading();
        if (lc != 1) {
            u64 inv = h_.field().inv(lc);
            a_ = a_.scaled(inv);
            b_ = b_.scaled(inv);
            h_ = h_.monic();
        }
    }

    static FuncRep zero(const PrimeField& F) { return FuncRep(UniPoly(F), UniPoly(F), UniPoly::constant(F, 1)); }
    static FuncRep one(const PrimeField& F) {
        return FuncRep(UniPoly::constant(F, 1), UniPoly(F), UniPoly::constant(F, 1));
    }
    static FuncRep from_numerator(UniPoly a, UniPoly b) {
        const PrimeField F = a.field();
        return FuncRep(std::move(a), std::move(b), UniPoly::constant(F, 1));
    }

    const UniPoly& a() const { return a_; }
    const UniPoly& b() const { return b_; }
    const UniPoly& h() const { return h_; }
    bool is_zero() const { return a_.is_zero() && b_.is_zero(); }

    bool operator==(const FuncRep& o) const { return a_ == o.a_ && b_ == o.b_ && h_ == o.h_; }

private:
    UniPoly a_, b_, h_;
};

/// Order of vanishing of phi at pt (negative for poles).
///
/// At infinity and at Weierstrass points the parities of the two numerator
/// parts differ, so the valuation is a minimum with no cancellation. At an
/// ordinary affine point the curve branch y(x) is expanded as a power
/// series in x - x0 and the order read off the series, with precision
/// doubling up to an analytic cap: a nonzero numerator cannot vanish to
/// order >= its total pole degree, so hitting the cap means the function
/// is zero along the curve.
inline long long valuation(const FuncRep& phi, const CurvePoint& pt, const HECurve& curve) {
    if (phi.is_zero()) throw std::invalid_argument("valuation: zero function");
    if (!curve.contains(pt)) throw std::invalid_argument("valuation: point not on curve");
    const PrimeField& F = curve.field();
    const UniPoly &a = phi.a(), &b = phi.b(), &h = phi.h();
    const int g = curve.genus();

    if (pt.infinity) {
        long long v = std::numeric_limits<long long>::max();
        if (!a.is_zero()) v = std::min(v, -2LL * a.degree());
        if (!b.is_zero()) v = std::min(v, -2LL * b.degree() - (2 * g + 1));
        return v + 2LL * h.degree();
    }

    if (pt.is_weierstrass()) {
        // local parameter is y: ord(x - r) = 2, ord(y) = 1
        long long v = std::numeric_limits<long long>::max();
        if (!a.is_zero()) v = std::min(v, 2LL * a.root_multiplicity(pt.x));
        if (!b.is_zero()) v = std::min(v, 2LL * b.root_multiplicity(pt.x) + 1);
        return v - 2LL * h.root_multiplicity(pt.x);
    }

    // ordinary affine point: expand along the branch through (x0, y0)
    long long pole_bound = 0;
    if (!a.is_zero()) pole_bound = std::max(pole_bound, 2LL * a.degree());
    if (!b.is_zero()) pole_bound = std::max(pole_bound, 2LL * b.degree() + (2 * g + 1));
    const size_t cap = static_cast<size_t>(pole_bound + 2LL * h.degree() + 1);

    size_t prec = std::min<size_t>(16, cap);
    while (true) {
        TruncSeries fs = TruncSeries::from_poly(curve.f().shifted(pt.x), prec);
        TruncSeries ys = series_sqrt(fs, pt.y);
        TruncSeries num(F, prec);
        if (!a.is_zero()) num = num.add(TruncSeries::from_poly(a.shifted(pt.x), prec));
        if (!b.is_zero()) num = num.add(TruncSeries::from_poly(b.shifted(pt.x), prec).mul(ys));
        if (auto ord = num.order()) {
            return static_cast<long long>(*ord) - h.root_multiplicity(pt.x);
        }
        if (prec >= cap)
            throw std::logic_error("valuation: numerator vanishes beyond the analytic cap (zero function)");
        prec = std::min(2 * prec, cap);
    }
}

/// Basis of the Riemann-Roch space L(D) = { phi : div(phi) + D >= 0 }.
struct RRBasis {
    Divisor divisor;
    std::vector<FuncRep> basis;
    int dim = 0;
    UniPoly denominator; // the shared ansatz denominator h

    RRBasis(const PrimeField& F) : denominator(UniPoly::constant(F, 1)) {}
};

namespace detail {

struct XGroup {
    u64 x0 = 0;
    bool weierstrass = false;
    u64 y_plus = 0;          // representative y with "plus" orientation (non-W only)
    long long mult_plus = 0; // multiplicity of (x0, y_plus)
    long long mult_minus = 0;
};

} // namespace detail

/// Compute L(D) by an explicit ansatz.
///
/// The denominator collects the positive part of the affine support; the
/// numerator a(x) + b(x) y gets degree bounds from the allowed pole order
/// at infinity, and the remaining membership constraints become linear
/// vanishing conditions on truncated local expansions. The kernel of the
/// constraint matrix is the space, and each basis element is re-checked
/// pointwise through `valuation`.
inline RRBasis rr_space(const HECurve& curve, const Divisor& D) {
    const PrimeField& F = curve.field();
    const int g = curve.genus();

    long long n_inf = 0;
    std::map<u64, detail::XGroup> groups;
    for (auto& [pt, m] : D.support()) {
        if (pt.infinity) {
            n_inf = m;
            continue;
        }
        if (!curve.contains(pt)) throw std::invalid_argument("rr_space: support point not on curve");
        auto& grp = groups[pt.x];
        grp.x0 = pt.x;
        if (pt.is_weierstrass()) {
            grp.weierstrass = true;
            grp.mult_plus = m;
        } else if (grp.y_plus == 0 && grp.mult_plus == 0 && grp.mult_minus == 0) {
            grp.y_plus = pt.y;
            grp.mult_plus = m;
        } else {
            if (pt.y == grp.y_plus)
                grp.mult_plus += m;
            else
                grp.mult_minus += m;
        }
    }

    UniPoly h = UniPoly::constant(F, 1);
    for (auto& [x0, grp] : groups) {
        long long e = std::max(grp.mult_plus, 0LL) + (grp.weierstrass ? 0 : std::max(grp.mult_minus, 0LL));
        if (e > 0) {
            UniPoly lin(F, {static_cast<long long>(F.neg(x0)), 1});
            for (long long i = 0; i < e; ++i) h = h * lin;
        }
    }

    RRBasis out(F);
    out.divisor = D;
    out.denominator = h;

    // numerator degree bounds from the pole allowance at infinity
    const long long allowance = n_inf + 2LL * h.degree();
    const long long da = allowance >= 0 ? allowance / 2 : -1;
    const long long db = allowance >= 2 * g + 1 ? (allowance - (2 * g + 1)) / 2 : -1;
    const size_t na = da >= 0 ? static_cast<size_t>(da) + 1 : 0;
    const size_t nb = db >= 0 ? static_cast<size_t>(db) + 1 : 0;
    const size_t unknowns = na + nb;
    if (unknowns == 0) return out;

    // local expansion of each ansatz monomial at x0 (a-part: x^i, b-part: x^i y)
    struct Row {
        std::vector<u64> coeffs;
    };
    std::vector<Row> rows;

    auto add_series_conditions = [&](u64 x0, u64 y0, size_t count) {
        if (count == 0) return;
        const size_t prec = count;
        TruncSeries ys = series_sqrt(TruncSeries::from_poly(curve.f().shifted(x0), prec), y0);
        std::vector<TruncSeries> col_series;
        col_series.reserve(unknowns);
        UniPoly xpow = UniPoly::constant(F, 1);
        std::vector<TruncSeries> xpow_shift;
        for (size_t i = 0; i < std::max(na, nb); ++i) {
            xpow_shift.push_back(TruncSeries::from_poly(xpow.shifted(x0), prec));
            xpow = xpow * UniPoly::monomial(F, 1);
        }
        for (size_t i = 0; i < na; ++i) col_series.push_back(xpow_shift[i]);
        for (size_t i = 0; i < nb; ++i) col_series.push_back(xpow_shift[i].mul(ys));
        for (size_t j = 0; j < count; ++j) {
            Row r;
            r.coeffs.resize(unknowns);
            for (size_t u = 0; u < unknowns; ++u) r.coeffs[u] = col_series[u].coeff(j);
            rows.push_back(std::move(r));
        }
    };

    auto add_poly_order_conditions = [&](u64 x0, bool a_part, size_t count) {
        // Taylor coefficients of x^i at x0 must vanish up to `count`
        if (count == 0) return;
        const size_t n = a_part ? na : nb;
        const size_t offset = a_part ? 0 : na;
        std::vector<std::vector<u64>> shifted;
        UniPoly xpow = UniPoly::constant(F, 1);
        for (size_t i = 0; i < n; ++i) {
            shifted.push_back(xpow.shifted(x0).coeffs());
            xpow = xpow * UniPoly::monomial(F, 1);
        }
        for (size_t j = 0; j < count; ++j) {
            Row r;
            r.coeffs.assign(unknowns, 0);
            for (size_t i = 0; i < n; ++i) r.coeffs[offset + i] = j < shifted[i].size() ? shifted[i][j] : 0;
            rows.push_back(std::move(r));
        }
    };

    for (auto& [x0, grp] : groups) {
        if (grp.weierstrass) {
            // ord(a-part) = 2 ord_x0(a), ord(b y) = 2 ord_x0(b) + 1
            long long c = 2 * std::max(grp.mult_plus, 0LL) - grp.mult_plus;
            if (c > 0) {
                add_poly_order_conditions(x0, true, static_cast<size_t>((c + 1) / 2));
                add_poly_order_conditions(x0, false, static_cast<size_t>(c / 2));
            }
        } else {
            long long m = std::max(grp.mult_plus, 0LL) + std::max(grp.mult_minus, 0LL);
            long long c_plus = m - grp.mult_plus;
            long long c_minus = m - grp.mult_minus;
            if (c_plus > 0) add_series_conditions(x0, grp.y_plus, static_cast<size_t>(c_plus));
            if (c_minus > 0) add_series_conditions(x0, F.neg(grp.y_plus), static_cast<size_t>(c_minus));
        }
    }

    FpMatrix m(F, rows.size(), unknowns);
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = 0; j < unknowns; ++j) m.at(i, j) = rows[i].coeffs[j];
    auto rk = m.rank_and_kernel();

    for (auto& v : rk.kernel) {
        UniPoly a(F, std::vector<u64>(v.begin(), v.begin() + static_cast<long long>(na)));
        UniPoly b(F, std::vector<u64>(v.begin() + static_cast<long long>(na), v.end()));
        out.basis.emplace_back(std::move(a), std::move(b), h);
    }
    out.dim = static_cast<int>(out.basis.size());

    // re-verify membership of every basis element at every relevant point
    std::vector<CurvePoint> check_pts{CurvePoint::at_infinity()};
    for (auto& [x0, grp] : groups) {
        if (grp.weierstrass) {
            check_pts.push_back(CurvePoint::affine(x0, 0));
        } else {
            check_pts.push_back(CurvePoint::affine(x0, grp.y_plus));
            check_pts.push_back(CurvePoint::affine(x0, F.neg(grp.y_plus)));
        }
    }
    for (const auto& phi : out.basis) {
        for (const auto& pt : check_pts) {
            if (valuation(phi, pt, curve) + D.at(pt) < 0)
                throw std::logic_error("rr_space: basis element fails div(phi) + D >= 0");
        }
    }
    return out;
}

inline int h0(const HECurve& curve, const Divisor& D) { return rr_space(curve, D).dim; }

/// K = (2g - 2) * infinity in the odd model.
inline Divisor canonical_divisor(const HECurve& curve) {
    return Divisor::at_infinity(2LL * curve.genus() - 2);
}

/// Exactness of h0(D) - h0(K - D) = deg D - g + 1.
inline bool riemann_roch_check(const HECurve& curve, const Divisor& D) {
    Divisor K = canonical_divisor(curve);
    long long lhs = h0(curve, D) - h0(curve, K.minus(D));
    return lhs == D.degree() - curve.genus() + 1;
}

/// Random affine point; rejects Weierstrass points unless allowed.
inline CurvePoint random_affine_point(const HECurve& curve, SeededRng& rng, bool allow_weierstrass = false) {
    const PrimeField& F = curve.field();
    for (int attempt = 0; attempt < 100000; ++attempt) {
        u64 x0 = rng.below(F.p());
        u64 fx = curve.f().eval(x0);
        if (fx == 0) {
            if (allow_weierstrass) return CurvePoint::affine(x0, 0);
            continue;
        }
        if (!F.is_square(fx)) continue;
        u64 y0 = F.sqrt(fx);
        if (rng.coin()) y0 = F.neg(y0);
        return CurvePoint::affine(x0, y0);
    }
    throw std::runtime_error("random_affine_point: sampling failed");
}

/// Degree-`deg` divisor of distinct non-Weierstrass affine points with
/// multiplicity 1 and pairwise distinct x-coordinates (the generic shape
/// the experiments use).
inline Divisor random_simple_divisor(const HECurve& curve, int deg, SeededRng& rng) {
    Divisor d;
    std::map<u64, bool> used_x;
    int found = 0;
    int attempts = 0;
    while (found < deg) {
        if (++attempts > 100000) throw std::runtime_error("random_simple_divisor: sampling failed");
        CurvePoint pt = random_affine_point(curve, rng);
        if (used_x.count(pt.x)) continue;
        used_x[pt.x] = true;
        d.add(pt, 1);
        ++found;
    }
    return d;
}

/// Random divisor with mixed signs and an infinity component, for the
/// Riemann-Roch identity campaigns.
inline Divisor random_mixed_divisor(const HECurve& curve, SeededRng& rng) {
    Divisor d;
    int n_pts = static_cast<int>(rng.below(4));
    for (int i = 0; i < n_pts; ++i) {
        CurvePoint pt = random_affine_point(curve, rng, rng.below(4) == 0);
        long long m = rng.range(-2, 2);
        d.add(pt, m);
    }
    d.add(CurvePoint::at_infinity(), rng.range(-2, 2 * curve.genus() + 2));
    return d;
}

} // namespace rrmul
