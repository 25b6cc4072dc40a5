#include "zetadef/diagfrob.hpp"

#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace zetadef {

namespace {

BigInt inv_mod(const BigInt& x, const BigInt& m) {
    BigInt r;
    if (mpz_invert(r.backend().data(), x.backend().data(), m.backend().data()) == 0)
        throw NotAUnit("inverse does not exist");
    return r;
}

void scaled_add(const ZpRing& ring, ScaledZp& acc, ScaledZp t) {
    if (t.shift > acc.shift) {
        acc.val = ring.mul(acc.val, ring.from_int(pow_ui(ring.p, (unsigned long)(t.shift - acc.shift))));
        acc.shift = t.shift;
    } else if (t.shift < acc.shift) {
        t.val = ring.mul(t.val, ring.from_int(pow_ui(ring.p, (unsigned long)(acc.shift - t.shift))));
    }
    acc.val = ring.add(acc.val, t.val);
}

}  // namespace

FactorialTable factorial_table(std::int64_t c, std::int64_t M, const ZpRing& ring) {
    FactorialTable tab;
    tab.c = c;
    tab.M = M;
    if (c > M) return tab;
    // head value c! directly (c < p)
    BigInt cur = 1;
    for (std::int64_t k = 2; k <= c; ++k) cur = ring.mul(cur, ring.from_int(k));
    tab.values.push_back(cur);
    for (std::int64_t k = c; k + ring.p <= M; k += ring.p) {
        auto [blk, o] = scalar_rising_block(ring, BigInt(k), (std::uint64_t)ring.p);
        (void)o;
        cur = ring.mul(cur, blk);
        tab.values.push_back(cur);
    }
    return tab;
}

BigInt rising_factorial(const BigInt& l, std::int64_t r, const ZpRing& ring) {
    BigInt acc = 1;
    for (std::int64_t j = 0; j < r; ++j) acc = ring.mul(acc, ring.add(l, ring.from_int(j)));
    return acc;
}

Expo frobenius_partner(const Expo& u, std::int64_t p, int d) {
    Expo v(u.size());
    for (size_t i = 0; i < u.size(); ++i) {
        std::int64_t w = (p * (std::int64_t)(u[i] + 1) - 1) % d;  // v_i+1 = w+1 in [1, d-1]... w in [0, d-1)
        v[i] = (int)w;
    }
    return v;
}

AlphaFactor alpha_factor(std::int64_t p, int d, std::int64_t a_i, int u_i, int v_i, int Nprime,
                         bool use_tables) {
    const std::int64_t num = p * (std::int64_t)(u_i + 1) - (std::int64_t)(v_i + 1);
    if (num % d != 0 || num < 0) throw ValidationError("alpha: congruence p(u+1)=v+1 mod d fails");
    const std::int64_t c = num / d;
    // ord of the r-th outer term grows roughly like r(1 - 2/p)
    std::int64_t R = std::max<std::int64_t>(8, Nprime * p / std::max<std::int64_t>(1, p - 2) + 8);
    const std::int64_t band = std::max<std::int64_t>(1, (Nprime + p - 2) / (p - 1));
    for (int attempt = 0;; ++attempt) {
        if (attempt > 12) throw TruncationInsufficient("alpha truncation did not stabilize");
        const std::int64_t M = c + p * R;
        const int Npp = Nprime + (int)(ord_factorial(M, p) + ord_factorial(R, p)) + 4;
        ZpRing ring(p, Npp);
        std::vector<BigInt> klass_fact;  // (c + p s)! for s = 0..R
        std::vector<BigInt> small_fact(R + 1);
        if (use_tables) {
            klass_fact = factorial_table(c, M, ring).values;
        } else {
            // reference path: k! by one direct running product, snapshots at the
            // residue class k = c, c+p, c+2p, ...
            klass_fact.reserve((size_t)R + 1);
            BigInt cur = 1;
            if (c == 0) klass_fact.push_back(cur);
            for (std::int64_t k = 1; k <= M; ++k) {
                cur = ring.mul(cur, ring.from_int(k));
                if (k >= c && (k - c) % p == 0) klass_fact.push_back(cur);
            }
        }
        small_fact[0] = 1;
        for (std::int64_t j = 1; j <= R; ++j) small_fact[j] = ring.mul(small_fact[j - 1], ring.from_int(j));
        auto fact_at = [&](std::int64_t k) -> BigInt {
            return klass_fact.at((size_t)((k - c) / p));
        };
        const BigInt l = ring.mul(ring.from_int(u_i + 1), ring.inv(ring.from_int(d)));
        const BigInt apm = [&] {
            BigInt base = ring.from_int(a_i);
            BigInt r = 1, e = p - 1;
            while (e > 0) {
                if ((e & 1) != 0) r = ring.mul(r, base);
                base = ring.mul(base, base);
                e >>= 1;
            }
            return r;
        }();
        // powers of p*a^(p-1) and inverse unit-parts of the class factorials
        std::vector<BigInt> papm_pow((size_t)R + 1);
        papm_pow[0] = 1;
        {
            BigInt papm = ring.mul(ring.from_int(p), apm);
            for (std::int64_t s = 1; s <= R; ++s) papm_pow[(size_t)s] = ring.mul(papm_pow[(size_t)s - 1], papm);
        }
        std::vector<BigInt> inv_klass((size_t)R + 1), inv_small((size_t)R + 1);
        std::vector<long> ord_klass((size_t)R + 1), ord_small((size_t)R + 1);
        for (std::int64_t s = 0; s <= R; ++s) {
            const std::int64_t karg = c + p * s;
            ord_klass[(size_t)s] = ord_factorial(karg, p);
            BigInt pa = pow_ui(p, (unsigned long)ord_klass[(size_t)s]);
            BigInt fa = fact_at(karg);
            if (fa % pa != 0) throw TruncationInsufficient("factorial unit split failed");
            inv_klass[(size_t)s] = inv_mod(fa / pa, ring.mod);
            ord_small[(size_t)s] = ord_factorial(s, p);
            BigInt pb = pow_ui(p, (unsigned long)ord_small[(size_t)s]);
            if (small_fact[(size_t)s] % pb != 0) throw TruncationInsufficient("factorial unit split failed");
            inv_small[(size_t)s] = inv_mod(small_fact[(size_t)s] / pb, ring.mod);
        }
        // rising factorial tracked alongside; saturation of a factor's ord only
        // ever widens the truncation
        std::vector<ScaledZp> terms;
        std::vector<long> ords;
        BigInt rise = 1;
        bool ord_saturated = false;
        for (std::int64_t r = 0; r <= R; ++r) {
            if (r > 0) {
                BigInt fct = ring.add(l, ring.from_int(r - 1));
                if (ring.ord(fct) >= ring.N) ord_saturated = true;
                rise = ring.mul(rise, fct);
            }
            ScaledZp inner{BigInt(0), 0};
            for (std::int64_t j = 0; j <= r; ++j) {
                const std::int64_t s = r - j;
                ScaledZp term{ring.mul(papm_pow[(size_t)s],
                                       ring.mul(inv_klass[(size_t)s], inv_small[(size_t)j])),
                              ord_klass[(size_t)s] + ord_small[(size_t)j]};
                scaled_add(ring, inner, term);
            }
            ScaledZp T{ring.mul(inner.val, rise), inner.shift};
            long to = ring.ord(T.val);
            long tord = (to >= ring.N ? ring.N : to) - T.shift;
            terms.push_back(T);
            ords.push_back(tord);
        }
        bool tail_ok = true;
        for (std::int64_t r = std::max<std::int64_t>(0, R + 1 - band); r <= R; ++r)
            if (ords[(size_t)r] < Nprime) tail_ok = false;
        if (!tail_ok || ord_saturated) {
            R += std::max<std::int64_t>(band, R / 2);
            continue;
        }
        ScaledZp sum{BigInt(0), 0};
        for (auto& t : terms) scaled_add(ring, sum, t);
        // multiply by a_i^c
        BigInt ac = 1;
        {
            BigInt base = ring.from_int(a_i), e = c;
            while (e > 0) {
                if ((e & 1) != 0) ac = ring.mul(ac, base);
                base = ring.mul(base, base);
                e >>= 1;
            }
        }
        sum.val = ring.mul(sum.val, ac);
        long o = ring.ord(sum.val);
        if (o >= ring.N) throw TruncationInsufficient("alpha factor vanished at working precision");
        AlphaFactor out;
        out.unit = sum.val / pow_ui(p, (unsigned long)o);
        out.ord = o - sum.shift;
        out.eff = ring.N - (int)o;
        out.params = AlphaParams{c, R, M};
        if (out.eff < Nprime) {
            R += band;
            continue;
        }
        return out;
    }
}

ScaledZp alpha(std::int64_t p, int d, const std::vector<std::int64_t>& avec, const Expo& u,
               const Expo& v, int Nprime, bool use_tables, int* eff_out) {
    BigInt unit = 1;
    long ord = 0;
    int eff = 1 << 30;
    for (size_t i = 0; i < u.size(); ++i) {
        AlphaFactor f = alpha_factor(p, d, avec[i], u[i], v[i], Nprime, use_tables);
        eff = std::min(eff, f.eff);
        ord += f.ord;
        BigInt m = pow_ui(p, (unsigned long)eff);
        unit = (unit * f.unit) % m;
    }
    if (eff_out) *eff_out = eff;
    // value = unit * p^{ord}; as a scaled value the shift is -ord
    return ScaledZp{unit, -ord};
}


namespace {

FrobeniusMatrix phi0_impl(const MonomialBasis& basis, const std::vector<std::int64_t>& avec,
                          const PadicContext& ctx, int Nprime, bool use_tables) {
    const int b = basis.b;
    const int n = basis.n;
    const std::int64_t p = ctx.p;
    struct Entry {
        int row;
        BigInt unit;
        long ord;  // value = unit * p^{ord}
        int eff;
    };
    std::vector<Entry> ents(b);
    // effective precision needed inside alpha: the inverse keeps eff digits
    const int Na = Nprime + n + 2;
    // the factors of alpha depend only on (a_i, u_i); precompute the distinct ones
    std::map<std::pair<std::int64_t, int>, AlphaFactor> factors;
    for (int ci = 0; ci < b; ++ci) {
        const Expo& u = basis.expo[ci];
        for (int i = 0; i <= n; ++i) factors.emplace(std::make_pair(avec[i], u[i]), AlphaFactor{});
    }
    {
        std::vector<std::pair<std::int64_t, int>> keys;
        for (auto& kv : factors) keys.push_back(kv.first);
#pragma omp parallel for schedule(dynamic)
        for (int ki = 0; ki < (int)keys.size(); ++ki) {
            auto [ai, ui] = keys[ki];
            Expo uv{ui};
            Expo vv = frobenius_partner(uv, p, basis.d);
            AlphaFactor f = alpha_factor(p, basis.d, ai, ui, vv[0], Na, use_tables);
#pragma omp critical(phi0_factor_store)
            factors[keys[ki]] = std::move(f);
        }
    }
#pragma omp parallel for schedule(dynamic)
    for (int ci = 0; ci < b; ++ci) {
        const Expo& u = basis.expo[ci];
        Expo v = frobenius_partner(u, p, basis.d);
        int ri = basis.index_of(v);
        if (ri < 0) throw ValidationError("phi0: partner not in basis");
        int ku = basis.k[ci], kv = basis.k[ri];
        // alpha = product of the cached factors
        int eff = 1 << 30;
        BigInt aunit = 1;
        long al_ord = 0;
        for (int i = 0; i <= n; ++i) {
            const AlphaFactor& f = factors.at({avec[i], u[i]});
            eff = std::min(eff, f.eff);
            al_ord += f.ord;
            aunit *= f.unit;
        }
        // entry = (-1)^kv (kv-1)!/(ku-1)! p^(n-ku) alpha^{-1}
        BigInt mod = pow_ui(p, (unsigned long)eff);
        BigInt inv_unit = inv_mod(aunit % mod, mod);
        // factorial ratio: split p parts to stay exact for small p
        BigInt fn = 1, fd = 1;
        for (int t = 2; t <= kv - 1; ++t) fn *= t;
        for (int t = 2; t <= ku - 1; ++t) fd *= t;
        long en = ord_int(fn, p, 64), ed = ord_int(fd, p, 64);
        BigInt un = fn / pow_ui(p, (unsigned long)en), ud = fd / pow_ui(p, (unsigned long)ed);
        BigInt val = (inv_unit * un) % mod;
        val = (val * inv_mod(ud, mod)) % mod;
        if (kv % 2 == 1) val = mod - val;
        long tot_ord = (n - ku) - al_ord + en - ed;
        ents[ci] = Entry{ri, val, tot_ord, eff};
    }
    long nu = 0;
    int effmin = 1 << 30;
    for (auto& e : ents) {
        nu = std::max(nu, -e.ord);
        effmin = std::min(effmin, e.eff);
    }
    if (nu > n - 1) throw PrecisionExhausted("phi0: denominator exponent exceeds n-1");
    FrobeniusMatrix fm;
    fm.shift = nu;
    fm.unit = Mat<Zq>(b, b, ctx.zero());
    fm.eff = std::min<int>(ctx.N, effmin);
    if (fm.eff < Nprime + nu)
        throw TruncationInsufficient("phi0: effective precision below N_Phi0'");
    for (int ci = 0; ci < b; ++ci) {
        const auto& e = ents[ci];
        long sh = e.ord + nu;  // >= 0
        BigInt stored = e.unit % ctx.pN;
        fm.unit.at(e.row, ci) = ctx.mul_pow_p(ctx.from_int(stored), sh);
    }
    return fm;
}

}  // namespace

FrobeniusMatrix phi0(const MonomialBasis& basis, const std::vector<std::int64_t>& avec,
                     const PadicContext& ctx, int Nprime) {
    return phi0_impl(basis, avec, ctx, Nprime, true);
}

FrobeniusMatrix phi0_naive(const MonomialBasis& basis, const std::vector<std::int64_t>& avec,
                           const PadicContext& ctx, int Nprime) {
    return phi0_impl(basis, avec, ctx, Nprime, false);
}

FrobeniusMatrix frob_canonical(const FrobeniusMatrix& fm, const PadicContext& ctx,
                               long target_shift) {
    if (fm.shift == target_shift) return fm;
    FrobeniusMatrix out;
    out.shift = target_shift;
    out.unit = fm.unit;
    if (target_shift > fm.shift) {
        long e = target_shift - fm.shift;
        for (auto& v : out.unit.a) v = ctx.mul_pow_p(v, e);
        out.eff = fm.eff + (int)e > ctx.N ? ctx.N : fm.eff + (int)e;
    } else {
        long e = fm.shift - target_shift;
        for (auto& v : out.unit.a) v = ctx.divexact_p(v, e);
        out.eff = fm.eff - (int)e;
    }
    return out;
}

bool frob_equal_mod(const FrobeniusMatrix& x, const FrobeniusMatrix& y, const PadicContext& ctx,
                    int digits) {
    // compare p^(max shift) * value on both sides mod p^(digits + max shift)
    long sh = std::max(x.shift, y.shift);
    BigInt m = pow_ui(ctx.p, (unsigned long)(digits + sh));
    if (x.unit.rows != y.unit.rows || x.unit.cols != y.unit.cols) return false;
    for (int i = 0; i < x.unit.rows; ++i)
        for (int j = 0; j < x.unit.cols; ++j) {
            for (int co = 0; co < ctx.a; ++co) {
                BigInt xv = x.unit.at(i, j).c[co] * pow_ui(ctx.p, (unsigned long)(sh - x.shift));
                BigInt yv = y.unit.at(i, j).c[co] * pow_ui(ctx.p, (unsigned long)(sh - y.shift));
                if ((xv - yv) % m != 0) return false;
            }
        }
    return true;
}

std::string frob_to_json(const FrobeniusMatrix& fm) {
    std::ostringstream os;
    os << "{\"shift\":" << fm.shift << ",\"eff\":" << fm.eff << ",\"entries\":[";
    for (int i = 0; i < fm.unit.rows; ++i)
        for (int j = 0; j < fm.unit.cols; ++j) {
            if (i || j) os << ",";
            os << "[";
            for (size_t co = 0; co < fm.unit.at(i, j).c.size(); ++co)
                os << (co ? "," : "") << "\"" << fm.unit.at(i, j).c[co] << "\"";
            os << "]";
        }
    os << "]}";
    return os.str();
}

}  // namespace zetadef
