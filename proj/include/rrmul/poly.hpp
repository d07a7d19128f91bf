#pragma once

#include <algorithm>
#include <initializer_list>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

#include "rrmul/field.hpp"

namespace rrmul {

/// Dense univariate polynomial over F_p, coefficients lowest-degree first,
/// always trimmed (leading coefficient nonzero unless zero polynomial).
class UniPoly {
public:
    /// Degree of the zero polynomial. A genuine "minus infinity" marker:
    /// it absorbs addition in degree bounds instead of behaving like -1.
    static constexpr int kNegInf = std::numeric_limits<int>::min();

    explicit UniPoly(const PrimeField& f) : field_(f) {}

    UniPoly(const PrimeField& f, std::vector<u64> coeffs) : field_(f), c_(std::move(coeffs)) {
        for (auto& x : c_) x %= field_.p();
        trim();
    }

    UniPoly(const PrimeField& f, std::initializer_list<long long> coeffs) : field_(f) {
        c_.reserve(coeffs.size());
        for (long long v : coeffs) c_.push_back(f.from_int(v));
        trim();
    }

    static UniPoly zero(const PrimeField& f) { return UniPoly(f); }
    static UniPoly constant(const PrimeField& f, u64 c) { return UniPoly(f, std::vector<u64>{c % f.p()}); }

    static UniPoly monomial(const PrimeField& f, int deg, u64 c = 1) {
        std::vector<u64> v(static_cast<size_t>(deg) + 1, 0);
        v.back() = c % f.p();
        return UniPoly(f, std::move(v));
    }

    const PrimeField& field() const { return field_; }
    const std::vector<u64>& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    int degree() const { return c_.empty() ? kNegInf : static_cast<int>(c_.size()) - 1; }

    u64 coeff(size_t i) const { return i < c_.size() ? c_[i] : 0; }
    u64 leading() const {
        if (c_.empty()) throw std::domain_error("UniPoly::leading: zero polynomial");
        return c_.back();
    }

    UniPoly operator+(const UniPoly& g) const {
        check_field(g);
        std::vector<u64> r(std::max(c_.size(), g.c_.size()), 0);
        for (size_t i = 0; i < r.size(); ++i) r[i] = field_.add(coeff(i), g.coeff(i));
        return UniPoly(field_, std::move(r));
    }

    UniPoly operator-(const UniPoly& g) const {
        check_field(g);
        std::vector<u64> r(std::max(c_.size(), g.c_.size()), 0);
        for (size_t i = 0; i < r.size(); ++i) r[i] = field_.sub(coeff(i), g.coeff(i));
        return UniPoly(field_, std::move(r));
    }

    UniPoly operator*(const UniPoly& g) const {
        check_field(g);
        if (is_zero() || g.is_zero()) return UniPoly(field_);
        std::vector<u64> r(c_.size() + g.c_.size() - 1, 0);
        for (size_t i = 0; i < c_.size(); ++i) {
            if (c_[i] == 0) continue;
            for (size_t j = 0; j < g.c_.size(); ++j)
                r[i + j] = field_.add(r[i + j], field_.mul(c_[i], g.c_[j]));
        }
        return UniPoly(field_, std::move(r));
    }

    UniPoly scaled(u64 k) const {
        std::vector<u64> r(c_.size());
        for (size_t i = 0; i < c_.size(); ++i) r[i] = field_.mul(c_[i], k % field_.p());
        return UniPoly(field_, std::move(r));
    }

    bool operator==(const UniPoly& g) const { return field_.p() == g.field_.p() && c_ == g.c_; }
    bool operator!=(const UniPoly& g) const { return !(*this == g); }

    u64 eval(u64 x) const {
        u64 acc = 0;
        for (size_t i = c_.size(); i-- > 0;) acc = field_.add(field_.mul(acc, x), c_[i]);
        return acc;
    }

    UniPoly derivative() const {
        if (c_.size() <= 1) return UniPoly(field_);
        std::vector<u64> r(c_.size() - 1);
        for (size_t i = 1; i < c_.size(); ++i) r[i - 1] = field_.mul(c_[i], field_.from_u64(i));
        return UniPoly(field_, std::move(r));
    }

    std::pair<UniPoly, UniPoly> divrem(const UniPoly& d) const {
        check_field(d);
        if (d.is_zero()) throw std::domain_error("UniPoly::divrem: division by zero polynomial");
        if (is_zero() || degree() < d.degree()) return {UniPoly(field_), *this};
        std::vector<u64> rem = c_;
        std::vector<u64> quo(c_.size() - d.c_.size() + 1, 0);
        const u64 lc_inv = field_.inv(d.leading());
        for (size_t k = quo.size(); k-- > 0;) {
            u64 lead = rem[k + d.c_.size() - 1];
            if (lead == 0) continue;
            u64 q = field_.mul(lead, lc_inv);
            quo[k] = q;
            for (size_t i = 0; i < d.c_.size(); ++i)
                rem[k + i] = field_.sub(rem[k + i], field_.mul(q, d.c_[i]));
        }
        return {UniPoly(field_, std::move(quo)), UniPoly(field_, std::move(rem))};
    }

    UniPoly mod(const UniPoly& d) const { return divrem(d).second; }

    /// Exact division; throws if the remainder is nonzero.
    UniPoly divexact(const UniPoly& d) const {
        auto [q, r] = divrem(d);
        if (!r.is_zero()) throw std::domain_error("UniPoly::divexact: not divisible");
        return q;
    }

    UniPoly monic() const {
        if (is_zero()) return *this;
        return scaled(field_.inv(leading()));
    }

    static UniPoly gcd(const UniPoly& a, const UniPoly& b) {
        UniPoly x = a, y = b;
        while (!y.is_zero()) {
            UniPoly r = x.mod(y);
            x = std::move(y);
            y = std::move(r);
        }
        return x.monic();
    }

    bool is_squarefree() const {
        if (is_zero()) return false;
        if (degree() == 0) return true;
        return UniPoly::gcd(*this, derivative()).degree() == 0;
    }

    /// Multiplicity of x0 as a root (0 if not a root).
    int root_multiplicity(u64 x0) const {
        if (is_zero()) throw std::domain_error("UniPoly::root_multiplicity: zero polynomial");
        UniPoly lin(field_, {static_cast<long long>(field_.neg(x0 % field_.p())), 1});
        UniPoly cur = *this;
        int m = 0;
        while (!cur.is_zero() && cur.eval(x0) == 0) {
            cur = cur.divexact(lin);
            ++m;
        }
        return m;
    }

    /// Taylor shift: the polynomial t -> this(x0 + t).
    UniPoly shifted(u64 x0) const {
        UniPoly lin(field_, {static_cast<long long>(x0 % field_.p()), 1}); // x0 + t
        UniPoly acc(field_);
        for (size_t i = c_.size(); i-- > 0;) {
            acc = acc * lin + UniPoly::constant(field_, c_[i]);
        }
        return acc;
    }

    /// this^e modulo m, by repeated squaring.
    UniPoly powmod(u64 e, const UniPoly& m) const {
        UniPoly base = mod(m);
        UniPoly acc = UniPoly::constant(field_, 1).mod(m);
        while (e) {
            if (e & 1) acc = (acc * base).mod(m);
            base = (base * base).mod(m);
            e >>= 1;
        }
        return acc;
    }

private:
    void check_field(const UniPoly& g) const {
        if (field_.p() != g.field_.p()) throw std::invalid_argument("UniPoly: modulus mismatch");
    }

    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

    PrimeField field_;
    std::vector<u64> c_;
};

/// Truncated power series over F_p: exactly `precision` retained
/// coefficients; no operation ever reports a coefficient at or beyond the
/// precision bound.
class TruncSeries {
public:
    TruncSeries(const PrimeField& f, size_t precision) : field_(f), c_(precision, 0) {
        if (precision == 0) throw std::invalid_argument("TruncSeries: precision must be positive");
    }

    TruncSeries(const PrimeField& f, std::vector<u64> coeffs, size_t precision) : TruncSeries(f, precision) {
        for (size_t i = 0; i < std::min(coeffs.size(), precision); ++i) c_[i] = coeffs[i] % f.p();
    }

    static TruncSeries from_poly(const UniPoly& a, size_t precision) {
        TruncSeries s(a.field(), precision);
        for (size_t i = 0; i < precision; ++i) s.c_[i] = a.coeff(i);
        return s;
    }

    const PrimeField& field() const { return field_; }
    size_t precision() const { return c_.size(); }
    u64 coeff(size_t i) const {
        if (i >= c_.size()) throw std::out_of_range("TruncSeries::coeff: beyond precision");
        return c_[i];
    }
    const std::vector<u64>& coeffs() const { return c_; }

    /// Index of the first nonzero coefficient, or nullopt when the series
    /// is zero to full precision.
    std::optional<size_t> order() const {
        for (size_t i = 0; i < c_.size(); ++i)
            if (c_[i] != 0) return i;
        return std::nullopt;
    }

    TruncSeries truncated(size_t precision) const {
        TruncSeries r(field_, precision);
        for (size_t i = 0; i < std::min(precision, c_.size()); ++i) r.c_[i] = c_[i];
        return r;
    }

    TruncSeries add(const TruncSeries& g) const {
        size_t n = std::min(precision(), g.precision());
        TruncSeries r(field_, n);
        for (size_t i = 0; i < n; ++i) r.c_[i] = field_.add(c_[i], g.c_[i]);
        return r;
    }

    TruncSeries sub(const TruncSeries& g) const {
        size_t n = std::min(precision(), g.precision());
        TruncSeries r(field_, n);
        for (size_t i = 0; i < n; ++i) r.c_[i] = field_.sub(c_[i], g.c_[i]);
        return r;
    }

    TruncSeries mul(const TruncSeries& g) const {
        size_t n = std::min(precision(), g.precision());
        TruncSeries r(field_, n);
        for (size_t i = 0; i < n; ++i) {
            if (c_[i] == 0) continue;
            for (size_t j = 0; i + j < n; ++j)
                r.c_[i + j] = field_.add(r.c_[i + j], field_.mul(c_[i], g.c_[j]));
        }
        return r;
    }

    TruncSeries scaled(u64 k) const {
        TruncSeries r(field_, precision());
        for (size_t i = 0; i < c_.size(); ++i) r.c_[i] = field_.mul(c_[i], k % field_.p());
        return r;
    }

    /// Multiplicative inverse by Newton iteration (constant term must be
    /// nonzero); precision doubles each step.
    TruncSeries inverse() const {
        if (c_[0] == 0) throw std::domain_error("TruncSeries::inverse: constant term is zero");
        size_t target = precision();
        TruncSeries g(field_, std::vector<u64>{field_.inv(c_[0])}, 1);
        size_t cur = 1;
        while (cur < target) {
            size_t nxt = std::min(2 * cur, target);
            TruncSeries f_tr = truncated(nxt);
            TruncSeries g_tr = g.truncated(nxt);
            // g <- g(2 - f g)
            TruncSeries t = f_tr.mul(g_tr);
            TruncSeries two_minus(field_, nxt);
            two_minus.c_[0] = field_.from_u64(2);
            g = g_tr.mul(two_minus.sub(t));
            cur = nxt;
        }
        return g;
    }

private:
    PrimeField field_;
    std::vector<u64> c_;
};

/// Square root of a truncated series with prescribed constant term y0,
/// by Newton iteration s <- (s + f/s)/2 with per-step precision doubling.
/// Requires y0 != 0 and y0^2 = f(0); p odd is a field invariant already.
inline TruncSeries series_sqrt(const TruncSeries& f, u64 y0) {
    const PrimeField& F = f.field();
    y0 %= F.p();
    if (y0 == 0)
        throw std::domain_error("series_sqrt: y0 = 0 (ramified point needs a different local parameter)");
    if (F.mul(y0, y0) != f.coeff(0)) throw std::domain_error("series_sqrt: y0^2 does not match f(0)");

    const u64 half = F.inv(2);
    size_t target = f.precision();
    TruncSeries s(F, std::vector<u64>{y0}, 1);
    size_t cur = 1;
    while (cur < target) {
        size_t nxt = std::min(2 * cur, target);
        TruncSeries s_tr = s.truncated(nxt);
        TruncSeries f_tr = f.truncated(nxt);
        s = s_tr.add(f_tr.mul(s_tr.inverse())).scaled(half);
        cur = nxt;
    }
    return s;
}

struct PolyRoot {
    u64 value = 0;
    int multiplicity = 1;
    bool operator==(const PolyRoot& o) const { return value == o.value && multiplicity == o.multiplicity; }
};

namespace detail {

/// Roots of a squarefree product of linear factors (deg <= 3), by
/// Cantor-Zassenhaus splitting with a deterministic shift scan.
inline void split_linear_factors(const UniPoly& g, std::vector<u64>& out) {
    const PrimeField& F = g.field();
    if (g.degree() <= 0) return;
    if (g.degree() == 1) {
        out.push_back(F.mul(F.neg(g.coeff(0)), F.inv(g.coeff(1))));
        return;
    }
    for (u64 shift = 0;; ++shift) {
        if (shift >= F.p()) throw std::logic_error("split_linear_factors: exhausted shifts");
        UniPoly base(F, {static_cast<long long>(shift), 1});
        UniPoly w = base.powmod((F.p() - 1) / 2, g);
        UniPoly d = UniPoly::gcd(g, w - UniPoly::constant(F, 1));
        if (d.degree() > 0 && d.degree() < g.degree()) {
            split_linear_factors(d, out);
            split_linear_factors(g.divexact(d).monic(), out);
            return;
        }
    }
}

} // namespace detail

/// All roots in F_p of a nonzero polynomial of degree <= 3, with
/// multiplicities, sorted by value. Exhaustive scan at desk-scale moduli,
/// Frobenius gcd (x^p - x) above that.
inline std::vector<PolyRoot> cubic_roots(const UniPoly& f) {
    if (f.is_zero()) throw std::invalid_argument("cubic_roots: zero polynomial");
    if (f.degree() > 3) throw std::invalid_argument("cubic_roots: degree must be <= 3");
    const PrimeField& F = f.field();
    constexpr u64 kScanLimit = 100000;

    std::vector<u64> roots;
    if (F.p() <= kScanLimit) {
        for (u64 r = 0; r < F.p(); ++r)
            if (f.eval(r) == 0) roots.push_back(r);
    } else {
        // distinct-root part: gcd(f, x^p - x)
        UniPoly x = UniPoly::monomial(F, 1);
        UniPoly xp = x.powmod(F.p(), f);
        UniPoly g = UniPoly::gcd(f, xp - x);
        detail::split_linear_factors(g, roots);
        std::sort(roots.begin(), roots.end());
    }

    std::vector<PolyRoot> out;
    out.reserve(roots.size());
    for (u64 r : roots) out.push_back({r, f.root_multiplicity(r)});
    return out;
}

} // namespace rrmul
