#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace rrmul {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

/// Default working prime for experiments: large enough to make random
/// collisions negligible at desk scale, small enough to eyeball.
inline constexpr u64 kDefaultPrime = 10007;

namespace detail {

inline u64 mulmod_u64(u64 a, u64 b, u64 m) { return static_cast<u64>(u128(a) * b % m); }

inline u64 powmod_u64(u64 a, u64 e, u64 m) {
    u64 r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod_u64(r, a, m);
        a = mulmod_u64(a, a, m);
        e >>= 1;
    }
    return r;
}

// Deterministic Miller-Rabin, valid for all 64-bit inputs.
inline bool is_prime_u64(u64 n) {
    if (n < 2) return false;
    for (u64 q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n == q) return true;
        if (n % q == 0) return false;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        u64 x = powmod_u64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod_u64(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

} // namespace detail

/// Prime field F_p for an odd prime p < 2^62. Elements are canonical
/// residues in [0, p) stored as u64; all products go through 128-bit
/// intermediates, so no modulus-dependent reduction tricks are needed.
class PrimeField {
public:
    using Elem = u64;

    static constexpr u64 kMaxModulus = u64(1) << 62;

    explicit PrimeField(u64 p) : p_(p) {
        if (p < 3 || p % 2 == 0) throw std::invalid_argument("PrimeField: modulus must be an odd prime >= 3");
        if (p >= kMaxModulus) throw std::invalid_argument("PrimeField: modulus must be < 2^62");
        if (!detail::is_prime_u64(p)) throw std::invalid_argument("PrimeField: " + std::to_string(p) + " is not prime");
    }

    u64 p() const { return p_; }

    Elem zero() const { return 0; }
    Elem one() const { return 1; }
    bool is_zero(Elem a) const { return a == 0; }
    bool eq(Elem a, Elem b) const { return a == b; }

    Elem from_int(long long v) const {
        long long r = v % static_cast<long long>(p_);
        if (r < 0) r += static_cast<long long>(p_);
        return static_cast<Elem>(r);
    }
    Elem from_u64(u64 v) const { return v % p_; }

    Elem add(Elem a, Elem b) const {
        u64 s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    Elem sub(Elem a, Elem b) const { return a >= b ? a - b : a + p_ - b; }
    Elem neg(Elem a) const { return a == 0 ? 0 : p_ - a; }
    Elem mul(Elem a, Elem b) const { return detail::mulmod_u64(a, b, p_); }
    Elem pow(Elem a, u64 e) const { return detail::powmod_u64(a, e, p_); }

    Elem inv(Elem a) const {
        if (a == 0) throw std::domain_error("PrimeField::inv: zero has no inverse");
        // extended Euclid on signed 64-bit; safe because p < 2^62
        long long t = 0, nt = 1;
        long long r = static_cast<long long>(p_), nr = static_cast<long long>(a);
        while (nr != 0) {
            long long q = r / nr;
            long long tmp = t - q * nt;
            t = nt;
            nt = tmp;
            tmp = r - q * nr;
            r = nr;
            nr = tmp;
        }
        if (t < 0) t += static_cast<long long>(p_);
        return static_cast<Elem>(t);
    }
    Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }

    /// Euler criterion; 0 counts as a square.
    bool is_square(Elem a) const {
        if (a == 0) return true;
        return pow(a, (p_ - 1) / 2) == 1;
    }

    /// Tonelli-Shanks. Returns the root r with r <= p - r (the smaller of
    /// the pair), so the choice is deterministic.
    Elem sqrt(Elem a) const {
        if (a == 0) return 0;
        if (!is_square(a)) throw std::domain_error("PrimeField::sqrt: not a quadratic residue");
        u64 r;
        if (p_ % 4 == 3) {
            r = pow(a, (p_ + 1) / 4);
        } else {
            u64 q = p_ - 1;
            int s = 0;
            while ((q & 1) == 0) {
                q >>= 1;
                ++s;
            }
            u64 z = non_residue();
            u64 m = s;
            u64 c = pow(z, q);
            u64 t = pow(a, q);
            r = pow(a, (q + 1) / 2);
            while (t != 1) {
                u64 t2 = t;
                u64 i = 0;
                while (t2 != 1) {
                    t2 = mul(t2, t2);
                    ++i;
                }
                u64 b = c;
                for (u64 j = 0; j + i + 1 < m; ++j) b = mul(b, b);
                m = i;
                c = mul(b, b);
                t = mul(t, c);
                r = mul(r, b);
            }
        }
        return r <= p_ - r ? r : p_ - r;
    }

    /// Smallest quadratic non-residue (scan from 2; deterministic).
    Elem non_residue() const {
        for (u64 z = 2; z < p_; ++z)
            if (!is_square(z)) return z;
        throw std::logic_error("PrimeField::non_residue: unreachable for p >= 3");
    }

    bool operator==(const PrimeField& o) const { return p_ == o.p_; }
    bool operator!=(const PrimeField& o) const { return p_ != o.p_; }

private:
    u64 p_;
};

/// Quadratic extension F_{p^2} = F_p[s]/(s^2 - n) with n the smallest
/// non-residue. Used when sampling points whose v-coordinate lives in a
/// quadratic extension; only the field operations a generic rank
/// computation needs are provided.
class QuadExt {
public:
    struct Elem {
        u64 a = 0; // constant part
        u64 b = 0; // coefficient of s
        bool operator==(const Elem& o) const { return a == o.a && b == o.b; }
    };

    explicit QuadExt(const PrimeField& base) : base_(base), n_(base.non_residue()) {}

    const PrimeField& base() const { return base_; }
    u64 residue_generator_square() const { return n_; }

    Elem zero() const { return {0, 0}; }
    Elem one() const { return {1, 0}; }
    bool is_zero(Elem x) const { return x.a == 0 && x.b == 0; }
    bool eq(Elem x, Elem y) const { return x == y; }

    Elem embed(u64 a) const { return {base_.from_u64(a), 0}; }

    Elem add(Elem x, Elem y) const { return {base_.add(x.a, y.a), base_.add(x.b, y.b)}; }
    Elem sub(Elem x, Elem y) const { return {base_.sub(x.a, y.a), base_.sub(x.b, y.b)}; }
    Elem neg(Elem x) const { return {base_.neg(x.a), base_.neg(x.b)}; }

    Elem mul(Elem x, Elem y) const {
        // (a + bs)(c + ds) = (ac + n bd) + (ad + bc) s
        u64 ac = base_.mul(x.a, y.a);
        u64 bd = base_.mul(x.b, y.b);
        u64 ad = base_.mul(x.a, y.b);
        u64 bc = base_.mul(x.b, y.a);
        return {base_.add(ac, base_.mul(n_, bd)), base_.add(ad, bc)};
    }

    Elem inv(Elem x) const {
        // norm = a^2 - n b^2, nonzero for x != 0 since n is a non-residue
        u64 norm = base_.sub(base_.mul(x.a, x.a), base_.mul(n_, base_.mul(x.b, x.b)));
        if (norm == 0) throw std::domain_error("QuadExt::inv: zero element");
        u64 ninv = base_.inv(norm);
        return {base_.mul(x.a, ninv), base_.mul(base_.neg(x.b), ninv)};
    }

    /// Square root of a base-field element d, as an extension element.
    /// If d is a residue the root stays in the base field; otherwise
    /// d/n is a residue and sqrt(d) = sqrt(d/n) * s.
    Elem sqrt_of_base(u64 d) const {
        if (base_.is_square(d)) return {base_.sqrt(d), 0};
        u64 q = base_.div(d, n_);
        return {0, base_.sqrt(q)};
    }

private:
    PrimeField base_;
    u64 n_;
};

} // namespace rrmul
