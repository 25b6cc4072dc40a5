#pragma once

#include "zetadef/diagfrob.hpp"
#include "zetadef/gaussmanin.hpp"

namespace zetadef {

/// Every truncation and precision parameter of Steps 2-4.
///   N_target  digits of chi that come out certified
///   N_phi     digits Phi_1 must carry (N_target + char-poly division budget)
///   N_phi0    digits Phi_0 is computed to (working level, shift included)
///   h, theta  twist exponent data, s = r^theta, theta = p(n+h)
///   K         t-adic truncation;  kappa = max(deg H + 1, deg r) + 1
///   delta     working-precision buffer consumed by the scalar divisions
///   W         working precision N_phi + delta
struct PrecisionPlan {
    std::int64_t p = 0;
    int a = 1, d = 0, n = 0, b = 0;
    int N_target = 0;
    int N_phi = 0;
    int N_phi0 = 0;
    int h = 0;
    long theta = 0;
    int kappa = 0;
    long K = 0;
    long delta = 0;
    int W = 0;
    int deg_r = 0, deg_G = 0, deg_H = 0;
};

/// h = max{ i : i + (n-1) + ord_p((n-1)!) - n*floor(log_p(p(n+i)-n)) < N_phi }.
int twist_h(std::int64_t p, int n, int N_phi);

PrecisionPlan precision_plan(std::int64_t p, int a, int d, int n, int b, int N_target, int deg_r,
                             int deg_G, int K_scale = 1);

/// Connection reduced into Z_q at the working precision.
struct ZqConnection {
    int b = 0;
    int deg_r = 0, deg_G = 0;
    std::vector<Zq> r;        // r[l]
    std::vector<Mat<Zq>> G;   // G[l], b x b
};

ZqConnection reduce_connection(const ConnectionData& cd, const PadicContext& ctx);

/// Series coefficients at one common power-of-p shift (grows with the index).
struct ScaledMatSeries {
    std::vector<Mat<Zq>> coeff;
    long shift = 0;
};

/// (C^{-1})_j for j < count, from the dual recurrence with G -> -G^t.
ScaledMatSeries cminus_series(const ZqConnection& zc, long count, const PadicContext& ctx);

/// Primal horizontal-section series C (used by consistency tests).
ScaledMatSeries c_series(const ZqConnection& zc, long count, const PadicContext& ctx);

/// Companion form of the order-kappa E-recurrence:
/// EE_{i+1} = (i+1)^{-1} A(i+1) EE_i on stacked blocks E_i, ..., E_{i-kappa+1}.
struct CompanionBlock {
    int kappa = 0, b = 0;
    Mat<Zq> A0, A1;  // kappa*b square, degree <= 1
    // structured top row: block column c contributes (const_c + scalar_c(x) I) E_{i-c}
    std::vector<Mat<Zq>> top_const;
    std::vector<std::pair<Zq, Zq>> top_scalar;  // (s0, s1): s0 + s1 x
};

CompanionBlock build_companion(const ZqConnection& zc, long theta, const PadicContext& ctx);

struct Phi1Options {
    ProdMethod matrix_path = ProdMethod::Auto;
    bool verbose = false;
};

/// Step 3, direct path: iterate the E-recurrence with a kappa-window and
/// accumulate Phi_1 = sum_j E_{K-1-pj} Phi_0 sigma((C^{-1})_j).
FrobeniusMatrix phi1_linear(const ZqConnection& zc, const FrobeniusMatrix& phi0m,
                            const ScaledMatSeries& cinv, const PrecisionPlan& plan,
                            const PadicContext& ctx, const Phi1Options& opt = {});

/// Step 3, sqrt(p) path: advance the companion block p indices at a time,
/// dividing once per step by the window scalar (i+1)...(i+p) from bgsprod.
FrobeniusMatrix phi1_sqrt_p(const CompanionBlock& cb, const ZqConnection& zc,
                            const FrobeniusMatrix& phi0m, const ScaledMatSeries& cinv,
                            const PrecisionPlan& plan, const PadicContext& ctx,
                            const Phi1Options& opt = {});

}  // namespace zetadef
