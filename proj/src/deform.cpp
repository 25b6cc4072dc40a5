#include "zetadef/deform.hpp"

#include <deque>
#include <iostream>

namespace zetadef {

int twist_h(std::int64_t p, int n, int N_phi) {
    const long base = ord_factorial(n - 1, p);
    int last_ok = -1;
    for (int i = 0;; ++i) {
        const std::int64_t val = p * (std::int64_t)(n + i) - n;
        const std::int64_t lg = floor_log(p, val);
        const long lhs = i + (n - 1) + base - (long)n * lg;
        if (lhs < N_phi) last_ok = i;
        if (lhs >= N_phi + n + 2 && i > N_phi + n)  // expression grows ~ i - n log_p(i)
            break;
    }
    if (last_ok < 0) throw PrecisionTooLow("no admissible twist exponent h");
    return last_ok;
}

PrecisionPlan precision_plan(std::int64_t p, int a, int d, int n, int b, int N_target, int deg_r,
                             int deg_G, int K_scale) {
    PrecisionPlan pl;
    pl.p = p;
    pl.a = a;
    pl.d = d;
    pl.n = n;
    pl.b = b;
    pl.N_target = N_target;
    pl.deg_r = deg_r;
    pl.deg_G = deg_G;
    // char-poly divisions by 1..b plus the symmetric-range lift margin
    pl.N_phi = N_target + (int)ord_factorial(b, p) + 3;
    pl.h = twist_h(p, n, pl.N_phi);
    pl.theta = p * (std::int64_t)(n + pl.h);
    pl.deg_H = deg_r > 0 ? std::max(deg_G, deg_r - 1) : deg_G;
    pl.kappa = std::max(pl.deg_H + 1, deg_r) + 1;
    // K per the twist bound, with the runtime deg(r) standing in for the
    // companion-degree data; validated downstream by the K-doubling check
    long K = pl.theta * (long)deg_r + 1 + deg_r + std::max<long>(0, pl.theta - n) * deg_r +
             p * (long)pl.h;
    pl.K = std::max<long>(1, K) * K_scale;
    long nC = (pl.K + p - 1) / p;
    pl.delta = ord_factorial(pl.K - 1, p) + ord_factorial(nC, p) + (n - 1) + 4;
    pl.W = pl.N_phi + (int)pl.delta;
    pl.N_phi0 = pl.W;  // Phi_0 feeds every accumulation term; full working level
    return pl;
}

ZqConnection reduce_connection(const ConnectionData& cd, const PadicContext& ctx) {
    ZqConnection zc;
    zc.b = cd.b;
    zc.deg_r = cd.deg_r;
    zc.deg_G = cd.deg_G;
    auto lift = [&](const ConnectionData::ZCoef& co) {
        Zq z = ctx.zero();
        for (size_t i = 0; i < co.size() && (int)i < ctx.a; ++i) z.c[i] = ctx.mod(co[i]);
        return z;
    };
    for (const auto& co : cd.r) zc.r.push_back(lift(co));
    zc.G.assign(cd.deg_G + 1, Mat<Zq>(cd.b, cd.b, ctx.zero()));
    for (int i = 0; i < cd.b; ++i)
        for (int j = 0; j < cd.b; ++j) {
            const auto& e = cd.g_at(i, j);
            for (size_t l = 0; l < e.size(); ++l)
                if (l <= (size_t)cd.deg_G) zc.G[l].at(i, j) = lift(e[l]);
        }
    return zc;
}

namespace {

/// r X' + C(t) X = 0, X_0 = init: X_{i+1} = -1/(r0 (i+1)) (sum C_{i-j} X_j
/// + sum r_{i-j+1} j X_j). Coefficients kept at one running shift; dividing by
/// p^e multiplies the whole history by p^e.
ScaledMatSeries series_from_recurrence(const std::vector<Mat<Zq>>& C, const std::vector<Zq>& r,
                                       const Mat<Zq>& init, long count, const PadicContext& ctx) {
    const int b = init.rows;
    const int degC = (int)C.size() - 1;
    const int degr = (int)r.size() - 1;
    const Zq r0inv = ctx.inv(r[0]);
    ScaledMatSeries S;
    S.coeff.push_back(init);
    S.shift = 0;
    ZqRing ring(ctx);
    for (long i = 0; i + 1 < count; ++i) {
        Mat<Zq> acc(b, b, ctx.zero());
        for (long j = std::max<long>(0, i - degC); j <= i; ++j) {
            const auto& Cl = C[(size_t)(i - j)];
            if (mat_is_zero(ring, Cl)) continue;
            acc = mat_add(ring, acc, mat_mul(ring, Cl, S.coeff[(size_t)j]));
        }
        for (long j = std::max<long>(1, i - degr + 1); j <= i; ++j) {
            const Zq& rl = r[(size_t)(i - j + 1)];
            if (ctx.is_zero(rl)) continue;
            acc = mat_add(ring, acc, mat_scale(ring, S.coeff[(size_t)j], ctx.mul_int(rl, BigInt(j))));
        }
        long e = ord_int(BigInt(i + 1), ctx.p, 63);
        BigInt unit = BigInt(i + 1) / pow_ui(ctx.p, (unsigned long)e);
        Zq mult = ctx.neg(ctx.mul(r0inv, ctx.inv(ctx.from_int(unit))));
        Mat<Zq> next = mat_scale(ring, acc, mult);
        if (e) {
            for (auto& M : S.coeff)
                for (auto& v : M.a) v = ctx.mul_pow_p(v, e);
            S.shift += e;
        }
        S.coeff.push_back(std::move(next));
    }
    return S;
}

}  // namespace

ScaledMatSeries cminus_series(const ZqConnection& zc, long count, const PadicContext& ctx) {
    if (!ctx.is_unit(zc.r[0])) throw GenericityFailure("r(0) is not a unit");
    // dual equation: (d/dt - G^t/r)(C^-1)^t = 0; solve with C-slot = -G^t and
    // transpose the coefficients back
    std::vector<Mat<Zq>> mGt;
    ZqRing ring(ctx);
    for (const auto& Gl : zc.G) {
        Mat<Zq> t = mat_transpose(Gl);
        for (auto& v : t.a) v = ctx.neg(v);
        mGt.push_back(std::move(t));
    }
    ScaledMatSeries S = series_from_recurrence(mGt, zc.r, mat_identity(ring, zc.b), count, ctx);
    for (auto& M : S.coeff) M = mat_transpose(M);
    return S;
}

ScaledMatSeries c_series(const ZqConnection& zc, long count, const PadicContext& ctx) {
    if (!ctx.is_unit(zc.r[0])) throw GenericityFailure("r(0) is not a unit");
    ZqRing ring(ctx);
    return series_from_recurrence(zc.G, zc.r, mat_identity(ring, zc.b), count, ctx);
}

CompanionBlock build_companion(const ZqConnection& zc, long theta, const PadicContext& ctx) {
    const int b = zc.b;
    const int degr = zc.deg_r;
    // H = G - theta r' I
    std::vector<Mat<Zq>> H = zc.G;
    int degH = std::max((int)H.size() - 1, degr > 0 ? degr - 1 : 0);
    H.resize(degH + 1, Mat<Zq>(b, b, ctx.zero()));
    for (int l = 1; l <= degr; ++l) {
        Zq t = ctx.mul_int(zc.r[l], BigInt(-theta * (long)l));
        for (int i = 0; i < b; ++i) H[l - 1].at(i, i) = ctx.add(H[l - 1].at(i, i), t);
    }
    const int kappa = std::max(degH + 1, degr) + 1;
    CompanionBlock cb;
    cb.kappa = kappa;
    cb.b = b;
    const Zq r0inv = ctx.inv(zc.r[0]);
    auto Hl = [&](int l) -> Mat<Zq> {
        if (l < 0 || l > degH) return Mat<Zq>(b, b, ctx.zero());
        return H[l];
    };
    auto rl = [&](int l) -> Zq {
        if (l < 0 || l > degr) return ctx.zero();
        return zc.r[(size_t)l];
    };
    ZqRing ring(ctx);
    cb.top_const.assign(kappa, Mat<Zq>(b, b, ctx.zero()));
    cb.top_scalar.assign(kappa, {ctx.zero(), ctx.zero()});
    for (int c = 0; c < kappa; ++c) {
        // coefficient of E_{i-c} in (i+1) E_{i+1}, as x = i+1:
        //   delta_{c0} x I - (1/r0)(H_c + r_{c+1}(x-c-1)) + (1/r0)(H_{c-1} + r_c(x-c))
        Mat<Zq> mc = mat_sub(ring, Hl(c - 1), Hl(c));
        for (auto& v : mc.a) v = ctx.mul(v, r0inv);
        cb.top_const[c] = std::move(mc);
        Zq s0 = ctx.mul(r0inv, ctx.sub(ctx.mul_int(rl(c + 1), BigInt(c + 1)),
                                       ctx.mul_int(rl(c), BigInt(c))));
        Zq s1 = ctx.mul(r0inv, ctx.sub(rl(c), rl(c + 1)));
        if (c == 0) s1 = ctx.add(s1, ctx.one());
        cb.top_scalar[c] = {std::move(s0), std::move(s1)};
    }
    const int kb = kappa * b;
    cb.A0 = Mat<Zq>(kb, kb, ctx.zero());
    cb.A1 = Mat<Zq>(kb, kb, ctx.zero());
    for (int c = 0; c < kappa; ++c)
        for (int i = 0; i < b; ++i)
            for (int j = 0; j < b; ++j) {
                Zq v0 = cb.top_const[c].at(i, j);
                Zq v1 = ctx.zero();
                if (i == j) {
                    v0 = ctx.add(v0, cb.top_scalar[c].first);
                    v1 = cb.top_scalar[c].second;
                }
                cb.A0.at(i, c * b + j) = std::move(v0);
                cb.A1.at(i, c * b + j) = std::move(v1);
            }
    for (int k = 1; k < kappa; ++k)
        for (int i = 0; i < b; ++i) cb.A1.at(k * b + i, (k - 1) * b + i) = ctx.one();
    return cb;
}

namespace {

/// Shared state for both Step-3 paths: the scalar E-recurrence stepper and the
/// Phi_1 accumulator (term j pairs E_{K-1-pj} with sigma((C^{-1})_j)).
struct Phi1Accum {
    const PadicContext& ctx;
    const FrobeniusMatrix& phi0m;
    const ScaledMatSeries& cinv;
    const PrecisionPlan& plan;
    Mat<Zq> sum;
    long shift = -1;
    long terms = 0;

    Phi1Accum(const PadicContext& c, const FrobeniusMatrix& p0, const ScaledMatSeries& ci,
              const PrecisionPlan& pl)
        : ctx(c), phi0m(p0), cinv(ci), plan(pl), sum(pl.b, pl.b, c.zero()) {}

    void add(long idx, const Mat<Zq>& E, long e_shift) {
        long rem = plan.K - 1 - idx;
        if (rem < 0 || rem % plan.p) return;
        long j = rem / plan.p;
        if (j >= (long)cinv.coeff.size()) return;
        ZqRing ring(ctx);
        // sigma acts coefficientwise on (C^-1)_j; the t -> t^p substitution is
        // the index pairing itself
        Mat<Zq> Cj = cinv.coeff[(size_t)j];
        for (auto& v : Cj.a) v = ctx.sigma(v);
        Mat<Zq> T = mat_mul(ring, mat_mul(ring, E, phi0m.unit), Cj);
        long tsh = e_shift + phi0m.shift + cinv.shift;
        if (shift < 0) shift = tsh;
        if (tsh > shift) {
            for (auto& v : sum.a) v = ctx.mul_pow_p(v, tsh - shift);
            shift = tsh;
        } else if (tsh < shift) {
            for (auto& v : T.a) v = ctx.mul_pow_p(v, shift - tsh);
        }
        sum = mat_add(ring, sum, T);
        ++terms;
    }

    FrobeniusMatrix finish() const {
        FrobeniusMatrix fm;
        fm.unit = sum;
        fm.shift = shift < 0 ? 0 : shift;
        fm.eff = std::min(ctx.N, phi0m.eff);
        if (fm.eff - fm.shift < plan.N_phi)
            throw PrecisionExhausted("precision ledger overdrawn in Step 3");
        return fm;
    }
};

/// One step of the scalar E-recurrence:
/// E_{i+1} = E_i - 1/(r0(i+1)) sum_l [H_l + r_{l+1}(i-l)] (E_{i-l} - E_{i-l-1}).
/// The window holds E_i ... E_{i-kappa} at a single running shift.
struct EStepper {
    const PadicContext& ctx;
    const ZqConnection& zc;
    std::vector<Mat<Zq>> H;
    int degH = 0, degr = 0, b = 0;
    Zq r0inv;
    std::deque<Mat<Zq>> win;  // front = E_i, back = oldest
    long i = 0;
    long shift = 0;

    EStepper(const PadicContext& c, const ZqConnection& z, long theta, const Mat<Zq>& E0)
        : ctx(c), zc(z) {
        b = zc.b;
        degr = zc.deg_r;
        H = zc.G;
        degH = std::max((int)H.size() - 1, degr > 0 ? degr - 1 : 0);
        H.resize(degH + 1, Mat<Zq>(b, b, ctx.zero()));
        for (int l = 1; l <= degr; ++l) {
            Zq t = ctx.mul_int(zc.r[l], BigInt(-theta * (long)l));
            for (int q = 0; q < b; ++q) H[l - 1].at(q, q) = ctx.add(H[l - 1].at(q, q), t);
        }
        r0inv = ctx.inv(zc.r[0]);
        win.push_front(E0);
        zero_ = Mat<Zq>(b, b, ctx.zero());
    }

    Mat<Zq> zero_;

    const Mat<Zq>& E_at(long idx) const {
        long off = i - idx;
        if (idx < 0 || off < 0 || off >= (long)win.size()) return zero_;
        return win[(size_t)off];
    }

    void step() {
        ZqRing ring(ctx);
        if (zero_.rows != b) zero_ = Mat<Zq>(b, b, ctx.zero());
        Mat<Zq> acc(b, b, ctx.zero());
        int lmax = std::max(degH, degr - 1);
        for (int l = 0; l <= lmax; ++l) {
            long jj = i - l;
            if (jj < -1) break;
            const Mat<Zq>& Ej = E_at(jj);
            const Mat<Zq>& Ejm = E_at(jj - 1);
            Mat<Zq> D = Ej.rows ? (Ejm.rows ? mat_sub(ring, Ej, Ejm) : Ej) : zero_;
            if (!D.rows || mat_is_zero(ring, D)) continue;
            if (l <= degH && !mat_is_zero(ring, H[l])) acc = mat_add(ring, acc, mat_mul(ring, H[l], D));
            if (l + 1 <= degr && !ctx.is_zero(zc.r[l + 1])) {
                Zq s = ctx.mul_int(zc.r[l + 1], BigInt(jj));
                acc = mat_add(ring, acc, mat_scale(ring, D, s));
            }
        }
        long e = ord_int(BigInt(i + 1), ctx.p, 63);
        BigInt unit = BigInt(i + 1) / pow_ui(ctx.p, (unsigned long)e);
        Zq mult = ctx.mul(r0inv, ctx.inv(ctx.from_int(unit)));
        if (e) {
            for (auto& M : win)
                for (auto& v : M.a) v = ctx.mul_pow_p(v, e);
            shift += e;
        }
        Mat<Zq> next = mat_sub(ring, win.front(), mat_scale(ring, acc, mult));
        win.push_front(std::move(next));
        while ((long)win.size() > std::max(degH, degr - 1) + 3) win.pop_back();
        ++i;
    }
};

}  // namespace

FrobeniusMatrix phi1_linear(const ZqConnection& zc, const FrobeniusMatrix& phi0m,
                            const ScaledMatSeries& cinv, const PrecisionPlan& plan,
                            const PadicContext& ctx, const Phi1Options& opt) {
    if (!ctx.is_unit(zc.r[0])) throw GenericityFailure("r(0) is not a unit");
    Zq r1 = ctx.zero();
    for (const auto& rl : zc.r) r1 = ctx.add(r1, rl);
    if (!ctx.is_unit(r1)) throw GenericityFailure("r(1) is not a unit");
    // E_0 = (r(0)/r(1))^theta I
    Zq e0 = ctx.mul(ctx.pow(zc.r[0], BigInt(plan.theta)), ctx.inv(ctx.pow(r1, BigInt(plan.theta))));
    ZqRing ring(ctx);
    Mat<Zq> E0 = mat_scale(ring, mat_identity(ring, zc.b), e0);
    EStepper st(ctx, zc, plan.theta, E0);
    Phi1Accum acc(ctx, phi0m, cinv, plan);
    acc.add(0, st.win.front(), st.shift);
    for (long i = 0; i + 1 < plan.K; ++i) {
        st.step();
        acc.add(st.i, st.win.front(), st.shift);
        if (opt.verbose && (st.i % std::max<long>(1, plan.K / 8)) == 0)
            std::cerr << "[phi1-linear] i=" << st.i << " shift=" << st.shift << "\n";
    }
    return acc.finish();
}

FrobeniusMatrix phi1_sqrt_p(const CompanionBlock& cb, const ZqConnection& zc,
                            const FrobeniusMatrix& phi0m, const ScaledMatSeries& cinv,
                            const PrecisionPlan& plan, const PadicContext& ctx,
                            const Phi1Options& opt) {
    const std::int64_t p = plan.p;
    if (p <= plan.n)
        throw InvertibilityViolation("sqrt-p path requires p > n for integral companion blocks");
    if (!ctx.is_unit(zc.r[0])) throw GenericityFailure("r(0) is not a unit");
    Zq r1 = ctx.zero();
    for (const auto& rl : zc.r) r1 = ctx.add(r1, rl);
    if (!ctx.is_unit(r1)) throw GenericityFailure("r(1) is not a unit");
    const int b = zc.b, kappa = cb.kappa, kb = kappa * b;
    const long nC = (long)cinv.coeff.size();
    const long i0 = plan.K - 1 - p * (nC - 1);
    if (i0 < 0) throw ValidationError("plan inconsistency: K too small for the series length");
    Zq e0 = ctx.mul(ctx.pow(zc.r[0], BigInt(plan.theta)), ctx.inv(ctx.pow(r1, BigInt(plan.theta))));
    ZqRing ring(ctx);
    Mat<Zq> E0 = mat_scale(ring, mat_identity(ring, zc.b), e0);
    EStepper st(ctx, zc, plan.theta, E0);
    Phi1Accum acc(ctx, phi0m, cinv, plan);
    acc.add(0, st.win.front(), st.shift);
    for (long i = 0; i < i0; ++i) {
        st.step();
        acc.add(st.i, st.win.front(), st.shift);
    }
    // stack the companion column at index i0
    Mat<Zq> EE(kb, b, ctx.zero());
    for (int k = 0; k < kappa; ++k) {
        long idx = i0 - k;
        if (idx < 0) break;
        long off = st.i - idx;
        if (off >= (long)st.win.size()) break;
        const Mat<Zq>& src = st.win[(size_t)off];
        for (int q = 0; q < b; ++q)
            for (int j = 0; j < b; ++j) EE.at(k * b + q, j) = src.at(q, j);
    }
    long e_shift = st.shift;
    // transposed factors realize the decreasing-order product A(i+p)...A(i+1)
    LinearMatrixPoly<ZqRing> At;
    At.A0 = mat_transpose(cb.A0);
    At.A1 = mat_transpose(cb.A1);
    ZpRing zp(ctx.p, ctx.N);
    const bool form_products =
        (opt.matrix_path == ProdMethod::GiantStep) ||
        (opt.matrix_path == ProdMethod::Auto && kb <= 128) ||
        ((std::uint64_t)p >= kGiantStepThreshold && giant_step_invertibility_ok(p, (std::uint64_t)p));
    long i = i0;
    for (long s = 0; s + 1 < nC; ++s) {
        if (form_products) {
            Mat<Zq> P = mat_transpose(interval_product(ring, At, BigInt(i), (std::uint64_t)p,
                                                       opt.matrix_path));
            EE = mat_mul(ring, P, EE);
        } else {
            // fold the factors directly into the block column (same bracket,
            // cheaper than materializing the kb x kb product at this size)
            for (long x0 = i + 1; x0 <= i + p; ++x0) {
                Mat<Zq> out(kb, b, ctx.zero());
                Zq x = ctx.from_int(BigInt(x0));
                for (int k = 1; k < kappa; ++k)
                    for (int q = 0; q < b; ++q)
                        for (int j = 0; j < b; ++j)
                            out.at(k * b + q, j) = ctx.mul(x, EE.at((k - 1) * b + q, j));
                for (int c = 0; c < kappa; ++c) {
                    Zq sc = ctx.add(cb.top_scalar[c].first, ctx.mul(cb.top_scalar[c].second, x));
                    bool cz = mat_is_zero(ring, cb.top_const[c]);
                    bool sz = ctx.is_zero(sc);
                    if (cz && sz) continue;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (b >= 16)
#endif
                    for (int q = 0; q < b; ++q)
                        for (int j = 0; j < b; ++j) {
                            Zq v = out.at(q, j);
                            if (!cz)
                                for (int t = 0; t < b; ++t)
                                    v = ctx.add(v, ctx.mul(cb.top_const[c].at(q, t),
                                                           EE.at(c * b + t, j)));
                            if (!sz) v = ctx.add(v, ctx.mul(sc, EE.at(c * b + q, j)));
                            out.at(q, j) = v;
                        }
                }
                EE = std::move(out);
            }
        }
        auto [scal, so] = scalar_rising_block(zp, BigInt(i), (std::uint64_t)p, opt.matrix_path);
        long e = so;
        BigInt unit = scal / pow_ui(p, (unsigned long)e);
        Zq uinv = ctx.inv(ctx.from_int(unit));
        for (auto& v : EE.a) v = ctx.mul(v, uinv);
        e_shift += e;
        i += p;
        if (opt.verbose && (s % std::max<long>(1, nC / 8)) == 0)
            std::cerr << "[phi1-sqrtp] giant step " << s << "/" << nC - 1 << " debit=" << e
                      << " shift=" << e_shift << "\n";
        Mat<Zq> Etop(b, b, ctx.zero());
        for (int q = 0; q < b; ++q)
            for (int j = 0; j < b; ++j) Etop.at(q, j) = EE.at(q, j);
        acc.add(i, Etop, e_shift);
    }
    if (i != plan.K - 1) throw ValidationError("giant stepping did not land on K-1");
    return acc.finish();
}

}  // namespace zetadef
