#pragma once

#include "zetadef/ring.hpp"

namespace zetadef {

/// Dense polynomials over one of the coefficient rings, stored as plain
/// coefficient vectors, low-to-high order. Multiplication switches from
/// schoolbook to Kronecker substitution (packing into one big integer so
/// GMP's subquadratic multiplication applies) when the ring supports it and
/// the operands are long enough.

template <class R>
int rp_deg(const R& ring, const std::vector<typename R::Elem>& f) {
    for (int i = (int)f.size() - 1; i >= 0; --i)
        if (!ring.is_zero(f[i])) return i;
    return -1;
}

template <class R>
void rp_trim(const R& ring, std::vector<typename R::Elem>& f) {
    int d = rp_deg(ring, f);
    f.resize(d + 1 < 1 ? 1 : d + 1, ring.zero());
    if (d < 0) {
        f.clear();
        f.push_back(ring.zero());
    }
}

template <class R>
std::vector<typename R::Elem> rp_mul_school(const R& ring,
                                            const std::vector<typename R::Elem>& x,
                                            const std::vector<typename R::Elem>& y) {
    std::vector<typename R::Elem> r(x.size() + y.size() - 1, ring.zero());
    for (size_t i = 0; i < x.size(); ++i) {
        if (ring.is_zero(x[i])) continue;
        for (size_t j = 0; j < y.size(); ++j) {
            if (ring.is_zero(y[j])) continue;
            r[i + j] = ring.add(r[i + j], ring.mul(x[i], y[j]));
        }
    }
    return r;
}

// ---- Kronecker substitution over Z/p^N ----

inline BigInt kron_pack(const std::vector<BigInt>& v, unsigned long stride) {
    // divide and conquer so packing is softly linear in the output size
    struct Rec {
        const std::vector<BigInt>& v;
        unsigned long stride;
        BigInt run(size_t lo, size_t hi) {
            if (hi - lo == 1) return v[lo];
            size_t mid = lo + (hi - lo) / 2;
            BigInt left = run(lo, mid);
            BigInt right = run(mid, hi);
            return left + (right << (stride * (mid - lo)));
        }
    } rec{v, stride};
    if (v.empty()) return BigInt(0);
    return rec.run(0, v.size());
}

inline void kron_unpack(const BigInt& packed, unsigned long stride, size_t count,
                        std::vector<BigInt>& out) {
    struct Rec {
        unsigned long stride;
        std::vector<BigInt>& out;
        void run(const BigInt& x, size_t lo, size_t hi) {
            if (hi - lo == 1) {
                out[lo] = x;
                return;
            }
            size_t mid = lo + (hi - lo) / 2;
            BigInt mask = (BigInt(1) << (stride * (mid - lo))) - 1;
            BigInt left = x & mask;
            BigInt right = x >> (stride * (mid - lo));
            run(left, lo, mid);
            run(right, mid, hi);
        }
    } rec{stride, out};
    out.assign(count, BigInt(0));
    if (count) rec.run(packed, 0, count);
}

inline std::vector<BigInt> rp_mul_kronecker(const ZpRing& ring, const std::vector<BigInt>& x,
                                            const std::vector<BigInt>& y) {
    size_t n = x.size() + y.size() - 1;
    unsigned long eb = (unsigned long)ring.elem_bits();
    unsigned long lenb = 1;
    while ((1ull << lenb) < std::min(x.size(), y.size())) ++lenb;
    unsigned long stride = 2 * eb + lenb + 1;
    BigInt px = kron_pack(x, stride);
    BigInt py = kron_pack(y, stride);
    BigInt pz = px * py;
    std::vector<BigInt> out;
    kron_unpack(pz, stride, n, out);
    for (auto& v : out) v %= ring.mod;
    return out;
}

template <class R>
std::vector<typename R::Elem> rp_mul(const R& ring, const std::vector<typename R::Elem>& x,
                                     const std::vector<typename R::Elem>& y) {
    if constexpr (R::has_kronecker) {
        if (std::min(x.size(), y.size()) >= 16) return rp_mul_kronecker(ring, x, y);
    }
    return rp_mul_school(ring, x, y);
}

template <class R>
std::vector<typename R::Elem> rp_add(const R& ring, std::vector<typename R::Elem> x,
                                     const std::vector<typename R::Elem>& y) {
    if (x.size() < y.size()) x.resize(y.size(), ring.zero());
    for (size_t i = 0; i < y.size(); ++i) x[i] = ring.add(x[i], y[i]);
    return x;
}

/// Truncated product mod x^k.
template <class R>
std::vector<typename R::Elem> rp_mul_trunc(const R& ring, std::vector<typename R::Elem> x,
                                           std::vector<typename R::Elem> y, size_t k) {
    if (x.size() > k) x.resize(k);
    if (y.size() > k) y.resize(k);
    auto r = rp_mul(ring, x, y);
    if (r.size() > k) r.resize(k);
    return r;
}

/// Newton inverse of f with f(0) a unit, mod x^k.
template <class R>
std::vector<typename R::Elem> rp_inv_series(const R& ring, const std::vector<typename R::Elem>& f,
                                            size_t k) {
    std::vector<typename R::Elem> g{ring.inv(f[0])};
    size_t have = 1;
    while (have < k) {
        have = std::min(2 * have, k);
        // g <- g(2 - f g) mod x^have
        auto fg = rp_mul_trunc(ring, f, g, have);
        for (auto& v : fg) v = ring.neg(v);
        fg[0] = ring.add(fg[0], ring.from_int(2));
        g = rp_mul_trunc(ring, g, fg, have);
    }
    g.resize(k, ring.zero());
    return g;
}

/// Division with remainder by a monic divisor (Newton when large).
template <class R>
void rp_divrem_monic(const R& ring, const std::vector<typename R::Elem>& f,
                     const std::vector<typename R::Elem>& m,
                     std::vector<typename R::Elem>& q, std::vector<typename R::Elem>& r) {
    int df = rp_deg(ring, f), dm = rp_deg(ring, m);
    if (df < dm) {
        q = {ring.zero()};
        r = f;
        rp_trim(ring, r);
        return;
    }
    size_t qlen = df - dm + 1;
    if (qlen < 32) {
        // schoolbook long division
        auto rr = f;
        rr.resize(df + 1);
        q.assign(qlen, ring.zero());
        for (int i = df; i >= dm; --i) {
            auto c = rr[i];
            if (ring.is_zero(c)) continue;
            q[i - dm] = c;
            for (int j = 0; j <= dm; ++j) rr[i - dm + j] = ring.sub(rr[i - dm + j], ring.mul(c, m[j]));
        }
        rr.resize(dm < 1 ? 1 : dm, ring.zero());
        r = rr;
        rp_trim(ring, r);
        return;
    }
    // Newton: q = rev(f) * inv(rev(m)) mod x^qlen, reversed
    std::vector<typename R::Elem> fr(df + 1), mr(dm + 1);
    for (int i = 0; i <= df; ++i) fr[i] = f[df - i];
    for (int i = 0; i <= dm; ++i) mr[i] = m[dm - i];
    auto mi = rp_inv_series(ring, mr, qlen);
    auto qr = rp_mul_trunc(ring, fr, mi, qlen);
    q.assign(qlen, ring.zero());
    for (size_t i = 0; i < qlen; ++i) q[i] = qr[qlen - 1 - i];
    auto qm = rp_mul(ring, q, m);
    r.assign(dm < 1 ? 1 : dm, ring.zero());
    for (int i = 0; i < dm; ++i) r[i] = ring.sub(i <= df ? f[i] : ring.zero(), qm[i]);
    rp_trim(ring, r);
}

/// Subproduct tree of monic linear factors (x - pts[i]); tree[0] holds leaves.
template <class R>
std::vector<std::vector<std::vector<typename R::Elem>>> rp_subproduct_tree(
    const R& ring, const std::vector<typename R::Elem>& pts) {
    std::vector<std::vector<std::vector<typename R::Elem>>> tree;
    auto& leaves = tree.emplace_back();
    for (const auto& t : pts) leaves.push_back({ring.neg(t), ring.one()});
    while (tree.back().size() > 1) {
        auto& prev = tree.back();
        std::vector<std::vector<typename R::Elem>> next;
        for (size_t i = 0; i + 1 < prev.size(); i += 2) next.push_back(rp_mul(ring, prev[i], prev[i + 1]));
        if (prev.size() % 2) next.push_back(prev.back());
        tree.push_back(std::move(next));
    }
    return tree;
}

/// Multipoint evaluation by remainder tree over the subproduct tree.
template <class R>
std::vector<typename R::Elem> rp_eval_multi(const R& ring,
                                            const std::vector<typename R::Elem>& f,
                                            const std::vector<typename R::Elem>& pts) {
    if (pts.empty()) return {};
    if (pts.size() < 8) {
        std::vector<typename R::Elem> out;
        for (const auto& t : pts) {
            auto acc = ring.zero();
            for (int i = rp_deg(ring, f); i >= 0; --i) acc = ring.add(ring.mul(acc, t), f[i]);
            out.push_back(acc);
        }
        return out;
    }
    auto tree = rp_subproduct_tree(ring, pts);
    // descend with remainders
    std::vector<std::vector<typename R::Elem>> level{f};
    {
        std::vector<typename R::Elem> q, r;
        rp_divrem_monic(ring, f, tree.back()[0], q, r);
        level[0] = r;
    }
    for (int li = (int)tree.size() - 2; li >= 0; --li) {
        std::vector<std::vector<typename R::Elem>> next(tree[li].size());
        for (size_t i = 0; i < tree[li].size(); ++i) {
            const auto& par = level[i / 2];
            std::vector<typename R::Elem> q, r;
            rp_divrem_monic(ring, par, tree[li][i], q, r);
            next[i] = std::move(r);
        }
        level = std::move(next);
    }
    std::vector<typename R::Elem> out(pts.size(), ring.zero());
    for (size_t i = 0; i < pts.size(); ++i) out[i] = level[i].empty() ? ring.zero() : level[i][0];
    return out;
}

}  // namespace zetadef
