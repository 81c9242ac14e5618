#pragma once

// Univariate polynomial arithmetic and factoring over F_p, as needed by the
// module-decomposition search (minimal polynomials and their distinct
// irreducible factors). Coefficients are stored least-degree first.

#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include <boost/multiprecision/gmp.hpp>

#include "qpa/scalars.hpp"

namespace qpa {

struct FpPoly {
    std::int64_t p = 0;
    std::vector<std::int64_t> c;  // c[i] is the coefficient of x^i

    int degree() const { return static_cast<int>(c.size()) - 1; }
    bool is_zero() const { return c.empty(); }
    bool is_one() const { return c.size() == 1 && c[0] == 1; }

    void normalize() {
        while (!c.empty() && c.back() % p == 0) c.pop_back();
        for (auto& x : c) {
            x %= p;
            if (x < 0) x += p;
        }
    }
};

namespace fppoly {

inline FpPoly make(std::int64_t p, std::vector<std::int64_t> coeffs) {
    FpPoly f{p, std::move(coeffs)};
    f.normalize();
    return f;
}

inline FpPoly zero(std::int64_t p) { return FpPoly{p, {}}; }
inline FpPoly one(std::int64_t p) { return make(p, {1}); }
inline FpPoly x(std::int64_t p) { return make(p, {0, 1}); }

inline std::int64_t inv_mod(std::int64_t a, std::int64_t p) {
    return Fp(a, p).inverse().value();
}

inline FpPoly add(const FpPoly& a, const FpPoly& b) {
    FpPoly r{a.p, {}};
    r.c.resize(std::max(a.c.size(), b.c.size()), 0);
    for (std::size_t i = 0; i < a.c.size(); ++i) r.c[i] += a.c[i];
    for (std::size_t i = 0; i < b.c.size(); ++i) r.c[i] += b.c[i];
    r.normalize();
    return r;
}

inline FpPoly sub(const FpPoly& a, const FpPoly& b) {
    FpPoly r{a.p, {}};
    r.c.resize(std::max(a.c.size(), b.c.size()), 0);
    for (std::size_t i = 0; i < a.c.size(); ++i) r.c[i] += a.c[i];
    for (std::size_t i = 0; i < b.c.size(); ++i) r.c[i] -= b.c[i];
    r.normalize();
    return r;
}

inline FpPoly mul(const FpPoly& a, const FpPoly& b) {
    if (a.is_zero() || b.is_zero()) return zero(a.p);
    FpPoly r{a.p, std::vector<std::int64_t>(a.c.size() + b.c.size() - 1, 0)};
    for (std::size_t i = 0; i < a.c.size(); ++i) {
        if (a.c[i] == 0) continue;
        for (std::size_t j = 0; j < b.c.size(); ++j)
            r.c[i + j] = (r.c[i + j] +
                          static_cast<__int128>(a.c[i]) * b.c[j] % a.p) %
                         a.p;
    }
    r.normalize();
    return r;
}

inline std::pair<FpPoly, FpPoly> divmod(const FpPoly& a, const FpPoly& b) {
    if (b.is_zero()) throw std::domain_error("fppoly: division by zero");
    FpPoly rem = a;
    rem.normalize();
    FpPoly quo{a.p, {}};
    if (rem.degree() >= b.degree())
        quo.c.resize(rem.degree() - b.degree() + 1, 0);
    std::int64_t lead_inv = inv_mod(b.c.back(), b.p);
    while (!rem.is_zero() && rem.degree() >= b.degree()) {
        int shift = rem.degree() - b.degree();
        std::int64_t f =
            static_cast<__int128>(rem.c.back()) * lead_inv % a.p;
        quo.c[shift] = (quo.c[shift] + f) % a.p;
        for (std::size_t i = 0; i < b.c.size(); ++i) {
            auto& t = rem.c[shift + i];
            t = (t - static_cast<__int128>(f) * b.c[i]) % a.p;
            if (t < 0) t += a.p;
        }
        rem.normalize();
    }
    quo.normalize();
    return {quo, rem};
}

inline FpPoly mod(const FpPoly& a, const FpPoly& b) { return divmod(a, b).second; }
inline FpPoly div(const FpPoly& a, const FpPoly& b) { return divmod(a, b).first; }

inline FpPoly monic(const FpPoly& a) {
    if (a.is_zero()) return a;
    FpPoly r = a;
    std::int64_t inv = inv_mod(a.c.back(), a.p);
    for (auto& x : r.c) x = static_cast<__int128>(x) * inv % a.p;
    return r;
}

inline FpPoly gcd(FpPoly a, FpPoly b) {
    while (!b.is_zero()) {
        FpPoly r = mod(a, b);
        a = b;
        b = r;
    }
    return monic(a);
}

inline FpPoly derivative(const FpPoly& a) {
    FpPoly r{a.p, {}};
    for (std::size_t i = 1; i < a.c.size(); ++i)
        r.c.push_back(static_cast<__int128>(a.c[i]) * i % a.p);
    r.normalize();
    return r;
}

inline FpPoly mulmod(const FpPoly& a, const FpPoly& b, const FpPoly& m) {
    return mod(mul(a, b), m);
}

/// base^e mod m, e given as a GMP integer (degrees like p^d overflow int64).
inline FpPoly powmod(FpPoly base, boost::multiprecision::mpz_int e,
                     const FpPoly& m) {
    FpPoly r = one(base.p);
    base = mod(base, m);
    while (e > 0) {
        if ((e & 1) != 0) r = mulmod(r, base, m);
        base = mulmod(base, base, m);
        e >>= 1;
    }
    return r;
}

inline bool equal(const FpPoly& a, const FpPoly& b) {
    return a.c == b.c;
}

// equal-degree factorization (Cantor–Zassenhaus; trace map for p = 2)
inline void edf(const FpPoly& f, int d, std::mt19937_64& rng,
                std::vector<FpPoly>& out) {
    if (f.degree() == d) {
        out.push_back(monic(f));
        return;
    }
    const std::int64_t p = f.p;
    while (true) {
        FpPoly r{p, {}};
        r.c.resize(f.degree(), 0);
        for (auto& x : r.c) x = static_cast<std::int64_t>(rng() % p);
        r.normalize();
        if (r.degree() < 1) continue;
        FpPoly u;
        if (p == 2) {
            // trace map sum_{i<d} r^(2^i)
            FpPoly t = mod(r, f);
            FpPoly acc = t;
            for (int i = 1; i < d; ++i) {
                t = mulmod(t, t, f);
                acc = add(acc, t);
            }
            u = gcd(acc, f);
        } else {
            boost::multiprecision::mpz_int e =
                (boost::multiprecision::pow(
                     boost::multiprecision::mpz_int(p), d) -
                 1) /
                2;
            FpPoly s = powmod(r, e, f);
            u = gcd(sub(s, one(p)), f);
        }
        if (u.degree() > 0 && u.degree() < f.degree()) {
            edf(u, d, rng, out);
            edf(div(f, u), d, rng, out);
            return;
        }
    }
}

// distinct-degree factorization of a squarefree monic polynomial
inline void ddf(FpPoly f, std::mt19937_64& rng, std::vector<FpPoly>& out) {
    const std::int64_t p = f.p;
    FpPoly h = mod(x(p), f);
    int d = 0;
    while (f.degree() > 0 && 2 * (d + 1) <= f.degree()) {
        ++d;
        h = powmod(h, p, f);  // h = x^(p^d) mod f
        FpPoly g = gcd(sub(h, x(p)), f);
        if (g.degree() > 0) {
            edf(g, d, rng, out);
            f = div(f, g);
            h = mod(h, f);
        }
    }
    if (f.degree() > 0) out.push_back(monic(f));
}

inline FpPoly pth_root(const FpPoly& f) {
    // In F_p[x], a polynomial with zero derivative is g(x^p); its coefficients
    // are fixed by Frobenius, so the root just reindexes them.
    FpPoly r{f.p, {}};
    for (std::size_t i = 0; i < f.c.size(); i += static_cast<std::size_t>(f.p))
        r.c.push_back(f.c[i]);
    r.normalize();
    return r;
}

/// The set of distinct monic irreducible factors of f.
inline std::vector<FpPoly> distinct_irreducible_factors(FpPoly f,
                                                        std::mt19937_64& rng) {
    std::vector<FpPoly> out;
    f = monic(f);
    if (f.degree() <= 0) return out;
    FpPoly fp = derivative(f);
    if (fp.is_zero()) return distinct_irreducible_factors(pth_root(f), rng);
    FpPoly g = gcd(f, fp);
    FpPoly w = div(f, g);
    ddf(w, rng, out);
    if (g.degree() > 0) {
        for (const FpPoly& q : distinct_irreducible_factors(g, rng)) {
            bool seen = false;
            for (const FpPoly& have : out)
                if (equal(have, q)) seen = true;
            if (!seen) out.push_back(q);
        }
    }
    return out;
}

}  // namespace fppoly
}  // namespace qpa
