#include "zetadef/padic.hpp"

#include <algorithm>

namespace zetadef {

namespace {

// polynomial helpers over Z/m, dense low-to-high coefficient vectors
using Poly = std::vector<BigInt>;

Poly poly_trim(Poly v) {
    while (v.size() > 1 && v.back() == 0) v.pop_back();
    return v;
}

Poly poly_mulmod_m(const Poly& x, const Poly& y, const BigInt& m) {
    Poly r(x.size() + y.size() - 1, BigInt(0));
    for (size_t i = 0; i < x.size(); ++i) {
        if (x[i] == 0) continue;
        for (size_t j = 0; j < y.size(); ++j) {
            if (y[j] == 0) continue;
            r[i + j] += x[i] * y[j];
        }
    }
    for (auto& c : r) {
        c %= m;
        if (c < 0) c += m;
    }
    return r;
}

// reduce x mod monic g, coefficients mod m
Poly poly_redmod_m(Poly x, const Poly& g, const BigInt& m) {
    const size_t dg = g.size() - 1;
    while (x.size() > dg) {
        BigInt c = x.back();
        size_t off = x.size() - 1 - dg;
        if (c != 0) {
            for (size_t j = 0; j < dg; ++j) {
                x[off + j] -= c * g[j];
                x[off + j] %= m;
                if (x[off + j] < 0) x[off + j] += m;
            }
        }
        x.pop_back();
    }
    x.resize(dg, BigInt(0));
    return x;
}

Poly poly_powmod_m(Poly base, BigInt e, const Poly& g, const BigInt& m) {
    Poly r{BigInt(1)};
    base = poly_redmod_m(std::move(base), g, m);
    while (e > 0) {
        if ((e & 1) != 0) r = poly_redmod_m(poly_mulmod_m(r, base, m), g, m);
        base = poly_redmod_m(poly_mulmod_m(base, base, m), g, m);
        e >>= 1;
    }
    r.resize(g.size() - 1, BigInt(0));
    return r;
}

// gcd over F_p
Poly poly_gcd_p(Poly x, Poly y, const BigInt& p) {
    x = poly_trim(std::move(x));
    y = poly_trim(std::move(y));
    while (!(y.size() == 1 && y[0] == 0)) {
        // x mod y
        BigInt lead_inv;
        mpz_invert(lead_inv.backend().data(), y.back().backend().data(), p.backend().data());
        Poly r = x;
        while (r.size() >= y.size() && !(r.size() == 1 && r[0] == 0)) {
            if (r.back() == 0) {
                r.pop_back();
                if (r.empty()) r.push_back(BigInt(0));
                continue;
            }
            BigInt c = (r.back() * lead_inv) % p;
            size_t off = r.size() - y.size();
            for (size_t j = 0; j < y.size(); ++j) {
                r[off + j] -= c * y[j];
                r[off + j] %= p;
                if (r[off + j] < 0) r[off + j] += p;
            }
            r = poly_trim(std::move(r));
            if (r.size() < y.size()) break;
        }
        x = y;
        y = poly_trim(std::move(r));
    }
    return x;
}

// extended gcd over F_p: returns s with s*x = gcd mod g, assuming gcd(x, g) = 1
Poly poly_invmod_p(const Poly& x, const Poly& g, const BigInt& p) {
    // extended Euclid on (g, x)
    Poly r0 = g, r1 = poly_trim(x);
    Poly s0{BigInt(0)}, s1{BigInt(1)};
    while (!(r1.size() == 1 && r1[0] == 0)) {
        // q, rem of r0 / r1
        Poly q(std::max<size_t>(1, r0.size() >= r1.size() ? r0.size() - r1.size() + 1 : 1), BigInt(0));
        Poly rem = r0;
        BigInt lead_inv;
        mpz_invert(lead_inv.backend().data(), r1.back().backend().data(), p.backend().data());
        while (rem.size() >= r1.size() && !(rem.size() == 1 && rem[0] == 0)) {
            if (rem.back() == 0) {
                rem.pop_back();
                if (rem.empty()) rem.push_back(BigInt(0));
                continue;
            }
            BigInt c = (rem.back() * lead_inv) % p;
            size_t off = rem.size() - r1.size();
            q[off] = c;
            for (size_t j = 0; j < r1.size(); ++j) {
                rem[off + j] -= c * r1[j];
                rem[off + j] %= p;
                if (rem[off + j] < 0) rem[off + j] += p;
            }
            rem = poly_trim(std::move(rem));
            if (rem.size() < r1.size()) break;
        }
        // s_new = s0 - q*s1
        Poly qs = poly_mulmod_m(q, s1, p);
        Poly sn(std::max(s0.size(), qs.size()), BigInt(0));
        for (size_t i = 0; i < sn.size(); ++i) {
            BigInt v = (i < s0.size() ? s0[i] : BigInt(0)) - (i < qs.size() ? qs[i] : BigInt(0));
            v %= p;
            if (v < 0) v += p;
            sn[i] = v;
        }
        r0 = r1;
        r1 = poly_trim(std::move(rem));
        s0 = s1;
        s1 = poly_trim(std::move(sn));
    }
    // r0 = gcd (degree 0 expected); scale s1 by inverse of r0[0]
    if (r0.size() != 1 || r0[0] == 0) throw NotAUnit("element not invertible mod p");
    BigInt ci;
    mpz_invert(ci.backend().data(), r0[0].backend().data(), p.backend().data());
    for (auto& cc : s1) cc = (cc * ci) % p;
    return s1;
}

bool poly_irreducible_mod_p(const Poly& f, const BigInt& p) {
    const size_t m = f.size() - 1;
    if (m == 1) return true;
    // x^(p^m) == x mod (f, p), and gcd(x^(p^(m/l)) - x, f) = 1 for prime l | m
    Poly x{BigInt(0), BigInt(1)};
    BigInt pm = 1;
    for (size_t i = 0; i < m; ++i) pm *= p;
    Poly xq = poly_powmod_m(x, pm, f, p);
    Poly diff = xq;
    diff.resize(std::max<size_t>(diff.size(), 2), BigInt(0));
    diff[1] = (diff[1] - 1) % p;
    if (diff[1] < 0) diff[1] += p;
    if (!(poly_trim(diff).size() == 1 && poly_trim(diff)[0] == 0)) return false;
    for (size_t l = 2; l <= m; ++l) {
        if (m % l != 0) continue;
        bool lprime = true;
        for (size_t t = 2; t * t <= l; ++t)
            if (l % t == 0) lprime = false;
        if (!lprime) continue;
        BigInt e = 1;
        for (size_t i = 0; i < m / l; ++i) e *= p;
        Poly xe = poly_powmod_m(x, e, f, p);
        xe.resize(std::max<size_t>(xe.size(), 2), BigInt(0));
        xe[1] = (xe[1] - 1) % p;
        if (xe[1] < 0) xe[1] += p;
        Poly g = poly_gcd_p(poly_trim(xe), f, p);
        if (!(g.size() == 1)) return false;
    }
    return true;
}

}  // namespace

Zq PadicContext::from_coords(std::vector<BigInt> v) const {
    if ((int)v.size() != a) throw ValidationError("coordinate vector has wrong length");
    for (auto& x : v) x = mod(x);
    return Zq{std::move(v)};
}

Zq PadicContext::add(const Zq& x, const Zq& y) const {
    Zq z = x;
    for (int i = 0; i < a; ++i) {
        z.c[i] += y.c[i];
        if (z.c[i] >= pN) z.c[i] -= pN;
    }
    return z;
}

Zq PadicContext::sub(const Zq& x, const Zq& y) const {
    Zq z = x;
    for (int i = 0; i < a; ++i) {
        z.c[i] -= y.c[i];
        if (z.c[i] < 0) z.c[i] += pN;
    }
    return z;
}

Zq PadicContext::neg(const Zq& x) const {
    Zq z = zero();
    for (int i = 0; i < a; ++i)
        if (x.c[i] != 0) z.c[i] = pN - x.c[i];
    return z;
}

Zq PadicContext::mul(const Zq& x, const Zq& y) const {
    if (a == 1) return Zq{{mod(x.c[0] * y.c[0])}};
    std::vector<BigInt> conv(2 * a - 1, BigInt(0));
    for (int i = 0; i < a; ++i) {
        if (x.c[i] == 0) continue;
        for (int j = 0; j < a; ++j) {
            if (y.c[j] == 0) continue;
            conv[i + j] += x.c[i] * y.c[j];
        }
    }
    // fold y^(a+k) via precomputed reduction rows
    std::vector<BigInt> out(conv.begin(), conv.begin() + a);
    for (int k = 0; k < a - 1; ++k) {
        const BigInt& hi = conv[a + k];
        if (hi == 0) continue;
        for (int j = 0; j < a; ++j) out[j] += hi * red_[k][j];
    }
    for (auto& v : out) v = mod(v);
    return Zq{std::move(out)};
}

Zq PadicContext::mul_int(const Zq& x, const BigInt& k) const {
    Zq z = zero();
    for (int i = 0; i < a; ++i) z.c[i] = mod(x.c[i] * k);
    return z;
}

Zq PadicContext::pow(Zq x, BigInt e) const {
    Zq r = one();
    while (e > 0) {
        if ((e & 1) != 0) r = mul(r, x);
        x = mul(x, x);
        e >>= 1;
    }
    return r;
}

long PadicContext::ord(const Zq& x) const {
    long m = N;
    for (int i = 0; i < a; ++i) {
        long o = ord_int(x.c[i], p, N);
        m = std::min(m, o);
        if (m == 0) break;
    }
    return m;
}

bool PadicContext::is_zero(const Zq& x) const {
    for (int i = 0; i < a; ++i)
        if (x.c[i] != 0) return false;
    return true;
}

Zq PadicContext::inv(const Zq& x) const {
    if (ord(x) != 0) throw NotAUnit("inv: argument has positive valuation");
    // inverse mod p by polynomial extended gcd, then Newton z <- z(2 - xz)
    BigInt bp(p);
    Poly xr(a);
    for (int i = 0; i < a; ++i) xr[i] = x.c[i] % bp;
    Poly z0 = poly_invmod_p(xr, f, bp);
    Zq z = zero();
    for (size_t i = 0; i < z0.size() && (int)i < a; ++i) z.c[i] = z0[i];
    Zq two = from_int(2);
    // each step doubles correct digits
    int digits = 1;
    while (digits < N) {
        z = mul(z, sub(two, mul(x, z)));
        digits *= 2;
    }
    return z;
}

Zq PadicContext::sigma(const Zq& x) const {
    if (a == 1) return x;
    // sigma fixes Z_p coordinates: sigma(sum c_i y^i) = sum c_i sigma(y)^i
    Zq r = zero();
    for (int i = 0; i < a; ++i) {
        if (x.c[i] == 0) continue;
        r = add(r, mul_int(sigma_gen_pows_[i], x.c[i]));
    }
    return r;
}

Zq PadicContext::sigma_iter(Zq x, int times) const {
    for (int i = 0; i < times % a; ++i) x = sigma(x);
    return x;
}

Zq PadicContext::divexact_p(const Zq& x, long e) const {
    if (e == 0) return x;
    Zq z = zero();
    BigInt pe = pow_ui(p, (unsigned long)e);
    for (int i = 0; i < a; ++i) {
        if (x.c[i] % pe != 0) throw PrecisionExhausted("divexact_p: not divisible");
        z.c[i] = x.c[i] / pe;
    }
    return z;
}

Zq PadicContext::mul_pow_p(const Zq& x, long e) const {
    if (e == 0) return x;
    BigInt pe = pow_ui(p, (unsigned long)e);
    Zq z = zero();
    for (int i = 0; i < a; ++i) z.c[i] = mod(x.c[i] * pe);
    return z;
}

void PadicContext::precompute() {
    // reduction rows: y^(a+k) mod f, coefficients mod p^N
    red_.assign(std::max(0, a - 1), std::vector<BigInt>(a, BigInt(0)));
    if (a > 1) {
        Poly cur(a + 1, BigInt(0));
        cur[a] = 1;  // y^a
        for (int k = 0; k < a - 1; ++k) {
            Poly r = poly_redmod_m(cur, f, pN);
            for (int j = 0; j < a; ++j) red_[k][j] = r[j];
            // multiply by y
            cur.assign(a + k + 2, BigInt(0));
            cur[a + k + 1] = 1;
        }
    }
    // powers of sigma_image
    sigma_gen_pows_.assign(a, one());
    for (int i = 1; i < a; ++i) sigma_gen_pows_[i] = mul(sigma_gen_pows_[i - 1], sigma_image);
}

PadicContext PadicContext::make(std::int64_t p, int a, int N, std::vector<BigInt> fin) {
    if (p < 3 || !is_probable_prime(BigInt(p))) throw NotPrime("p must be an odd prime >= 3");
    if (a < 1 || N < 1) throw ValidationError("need a >= 1 and N >= 1");
    if ((int)fin.size() != a + 1 || fin[a] != 1) throw ValidationError("f must be monic of degree a");
    PadicContext ctx;
    ctx.p = p;
    ctx.a = a;
    ctx.N = N;
    ctx.pN = pow_ui(p, (unsigned long)N);
    ctx.f.resize(a + 1);
    for (int i = 0; i <= a; ++i) ctx.f[i] = ctx.mod(fin[i]);
    BigInt bp(p);
    Poly fp(a + 1);
    for (int i = 0; i <= a; ++i) fp[i] = ctx.f[i] % bp;
    if (!poly_irreducible_mod_p(fp, bp)) throw NotIrreducible("f is reducible mod p");

    if (a == 1) {
        ctx.sigma_image = Zq{{ctx.mod(-ctx.f[0])}};  // the root of f; sigma = id on Z_p
        ctx.precompute();
        return ctx;
    }
    // sigma image: Hensel-lift the root generator^p of f from precision 1 to N
    Poly y{BigInt(0), BigInt(1)};
    Poly s0 = poly_powmod_m(y, bp, fp, bp);
    ctx.sigma_image = ctx.zero();
    for (int i = 0; i < a && i < (int)s0.size(); ++i) ctx.sigma_image.c[i] = s0[i];
    ctx.precompute();
    // Newton: s <- s - f(s)/f'(s) in Z_q; f'(s) is a unit since f separable mod p
    auto eval_f = [&](const Zq& s) {
        Zq acc = ctx.zero();
        for (int i = a; i >= 0; --i) acc = ctx.add(ctx.mul(acc, s), ctx.from_int(ctx.f[i]));
        return acc;
    };
    auto eval_fp = [&](const Zq& s) {
        Zq acc = ctx.zero();
        for (int i = a; i >= 1; --i)
            acc = ctx.add(ctx.mul(acc, s), ctx.from_int(ctx.f[i] * i));
        return acc;
    };
    int digits = 1;
    while (digits < N) {
        Zq fs = eval_f(ctx.sigma_image);
        Zq dfs = eval_fp(ctx.sigma_image);
        ctx.sigma_image = ctx.sub(ctx.sigma_image, ctx.mul(fs, ctx.inv(dfs)));
        ctx.precompute();  // refresh powers as sigma_image improves
        digits *= 2;
    }
    if (!ctx.is_zero(eval_f(ctx.sigma_image)))
        throw ValidationError("Hensel lift failed: f(sigma_image) != 0 mod p^N");
    ctx.precompute();
    return ctx;
}

PadicContext PadicContext::with_precision(int N2) const {
    std::vector<BigInt> f2 = f;
    // coefficients of f are defined mod p^N; keep the same integer lifts
    return PadicContext::make(p, a, N2, std::move(f2));
}

PadicContext make_context(std::int64_t p, int a, int N, std::vector<BigInt> f) {
    return PadicContext::make(p, a, N, std::move(f));
}

}  // namespace zetadef
