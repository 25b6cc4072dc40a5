#include "zetadef/gfq.hpp"

namespace zetadef {

namespace {

using Pol = std::vector<std::int64_t>;

Pol trim(Pol v) {
    while (v.size() > 1 && v.back() == 0) v.pop_back();
    return v;
}

std::int64_t inv_mod_p(std::int64_t x, std::int64_t p) {
    std::int64_t a = ((x % p) + p) % p, b = p, u = 1, v = 0;
    while (b) {
        std::int64_t t = a / b;
        a -= t * b;
        std::swap(a, b);
        u -= t * v;
        std::swap(u, v);
    }
    return ((u % p) + p) % p;
}

Pol pmulmod(const Pol& x, const Pol& y, const Pol& g, std::int64_t p) {
    Pol r(x.size() + y.size() - 1, 0);
    for (size_t i = 0; i < x.size(); ++i) {
        if (!x[i]) continue;
        for (size_t j = 0; j < y.size(); ++j) r[i + j] = (r[i + j] + x[i] * y[j]) % p;
    }
    const size_t dg = g.size() - 1;
    for (size_t i = r.size(); i-- > dg;) {
        std::int64_t c = r[i];
        if (!c) continue;
        for (size_t j = 0; j < dg; ++j) {
            r[i - dg + j] = (r[i - dg + j] - c * g[j]) % p;
            if (r[i - dg + j] < 0) r[i - dg + j] += p;
        }
        r[i] = 0;
    }
    r.resize(dg, 0);
    return r;
}

Pol ppowmod(Pol x, BigInt e, const Pol& g, std::int64_t p) {
    Pol r{1};
    r.resize(g.size() - 1, 0);
    while (e > 0) {
        if ((e & 1) != 0) r = pmulmod(r, x, g, p);
        x = pmulmod(x, x, g, p);
        e >>= 1;
    }
    return r;
}

Pol pgcd(Pol a, Pol b, std::int64_t p) {
    a = trim(std::move(a));
    b = trim(std::move(b));
    while (!(b.size() == 1 && b[0] == 0)) {
        // a mod b
        Pol r = a;
        std::int64_t li = inv_mod_p(b.back(), p);
        while (true) {
            r = trim(std::move(r));
            if (r.size() < b.size() || (r.size() == 1 && r[0] == 0)) break;
            std::int64_t c = (r.back() * li) % p;
            size_t off = r.size() - b.size();
            for (size_t j = 0; j < b.size(); ++j) {
                r[off + j] = (r[off + j] - c * b[j]) % p;
                if (r[off + j] < 0) r[off + j] += p;
            }
        }
        a = b;
        b = trim(std::move(r));
    }
    return a;
}

}  // namespace

GFq::GFq(std::int64_t p_, std::vector<std::int64_t> g_) : p(p_), m((int)g_.size() - 1), g(std::move(g_)) {}

bool GFq::is_irreducible(const std::vector<std::int64_t>& cand) const {
    int deg = (int)cand.size() - 1;
    if (deg == 1) return true;
    Pol x{0, 1};
    BigInt pm = pow_ui(p, deg);
    Pol xq = ppowmod(x, pm, cand, p);
    Pol d = xq;
    if ((int)d.size() < 2) d.resize(2, 0);
    d[1] = (d[1] - 1 + p) % p;
    if (!(trim(d).size() == 1 && trim(d)[0] == 0)) return false;
    for (int l = 2; l <= deg; ++l) {
        if (deg % l) continue;
        bool pr = true;
        for (int t = 2; t * t <= l; ++t)
            if (l % t == 0) pr = false;
        if (!pr) continue;
        Pol xe = ppowmod(x, pow_ui(p, deg / l), cand, p);
        if ((int)xe.size() < 2) xe.resize(2, 0);
        xe[1] = (xe[1] - 1 + p) % p;
        Pol gg = pgcd(trim(xe), cand, p);
        if (gg.size() != 1) return false;
    }
    return true;
}

GFq GFq::make(std::int64_t p, int m, std::uint64_t seed) {
    if (m == 1) return GFq(p, {0, 1});
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
    GFq probe(p, std::vector<std::int64_t>(m + 1, 0));
    while (true) {
        std::vector<std::int64_t> cand(m + 1, 0);
        cand[m] = 1;
        for (int i = 0; i < m; ++i) cand[i] = (std::int64_t)(rng() % (std::uint64_t)p);
        if (cand[0] == 0) cand[0] = 1;
        if (probe.is_irreducible(cand)) return GFq(p, cand);
    }
}

std::uint64_t GFq::size_q() const {
    std::uint64_t q = 1;
    for (int i = 0; i < m; ++i) q *= (std::uint64_t)p;
    return q;
}

GFq::El GFq::mul(const El& x, const El& y) const {
    if (m == 1) return {(x[0] * y[0]) % p};
    return pmulmod(x, y, g, p);
}

GFq::El GFq::pow(El x, std::uint64_t e) const {
    El r = one();
    while (e) {
        if (e & 1) r = mul(r, x);
        x = mul(x, x);
        e >>= 1;
    }
    return r;
}

GFq::El GFq::inv(const El& x) const {
    // x^(q-2)
    std::uint64_t q = size_q();
    if (is_zero(x)) throw NotAUnit("GFq::inv(0)");
    return pow(x, q - 2);
}

}  // namespace zetadef
