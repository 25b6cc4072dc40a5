#include "zetadef/zeta.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>

namespace zetadef {

FrobeniusMatrix frobenius_q(const FrobeniusMatrix& phi1, const PadicContext& ctx) {
    ZqRing ring(ctx);
    FrobeniusMatrix acc = phi1;
    Mat<Zq> twisted = phi1.unit;
    for (int t = 1; t < ctx.a; ++t) {
        for (auto& v : twisted.a) v = ctx.sigma(v);
        acc.unit = mat_mul(ring, acc.unit, twisted);
        acc.shift += phi1.shift;
        acc.eff = std::min(acc.eff, phi1.eff);
    }
    return acc;
}

namespace {

/// Faddeev-LeVerrier over Z_q mod p^N: coefficients of det(xI - M) as
/// [1, c1, ..., cb]; divisions by k are split into unit and p-part (budgeted
/// by the caller's precision); the scaled matrix's p-shift is cleared per
/// coefficient degree.
std::vector<Zq> charpoly_fl(const Mat<Zq>& M, const PadicContext& ctx, long* div_ord_used) {
    const int b = M.rows;
    ZqRing ring(ctx);
    Mat<Zq> Mk = mat_identity(ring, b);
    std::vector<Zq> cs{ctx.one()};
    long used = 0;
    for (int k = 1; k <= b; ++k) {
        Mk = mat_mul(ring, M, Mk);
        Zq tr = ctx.zero();
        for (int i = 0; i < b; ++i) tr = ctx.add(tr, Mk.at(i, i));
        long e = ord_int(BigInt(k), ctx.p, 63);
        BigInt unit = BigInt(k) / pow_ui(ctx.p, (unsigned long)e);
        Zq ck = ctx.neg(ctx.mul(tr, ctx.inv(ctx.from_int(unit))));
        if (e) {
            ck = ctx.divexact_p(ck, e);  // c_k integral: the division is exact
            used += e;
        }
        cs.push_back(ck);
        for (int i = 0; i < b; ++i) Mk.at(i, i) = ctx.add(Mk.at(i, i), ck);
    }
    if (div_ord_used) *div_ord_used = used;
    return cs;
}

}  // namespace

std::vector<BigInt> char_poly_lift(const FrobeniusMatrix& phiq, const PadicContext& ctx,
                                   const BigInt& q, int n, int b, int N_target) {
    // coefficient bound: p^{N_target} > 2 max_i C(b,i) q^{i(n-1)/2}
    {
        BigInt pN = pow_ui(ctx.p, (unsigned long)N_target);
        BigInt binom = 1;
        for (int i = 1; i <= b; ++i) {
            binom = binom * (b - i + 1) / i;
            // compare squared to avoid the half-integer exponent
            BigInt lhs = pN * pN;
            BigInt rhs = 4 * binom * binom * pow_bi(q, (unsigned long)(i * (n - 1)));
            if (lhs <= rhs)
                throw PrecisionTooLow("N_target too small for the chi coefficient bound");
        }
    }
    // canonicalize the scaled matrix: clear as much of the shift as divides out
    FrobeniusMatrix fm = phiq;
    long mo = fm.shift;
    for (const auto& v : fm.unit.a) mo = std::min(mo, ctx.ord(v));
    long clear = std::min(fm.shift, mo);
    if (clear > 0) fm = frob_canonical(fm, ctx, fm.shift - clear);
    const long nu = fm.shift;  // residual denominator exponent
    long div_used = 0;
    std::vector<Zq> cs = charpoly_fl(fm.unit, ctx, &div_used);
    // chi_k = c_k / p^(k nu); effective digits: eff - k nu - division budget
    std::vector<BigInt> out;
    for (int k = 0; k <= b; ++k) {
        Zq ck = cs[(size_t)k];
        if (nu) ck = ctx.divexact_p(ck, nu * k);
        long known = fm.eff - nu * k - div_used;
        if (known < N_target)
            throw PrecisionTooLow("Phi matrix precision cannot certify chi at N_target");
        // chi has entries in Z_p: higher coordinates must vanish mod p^{N_target}
        BigInt pNt = pow_ui(ctx.p, (unsigned long)N_target);
        for (int co = 1; co < ctx.a; ++co)
            if (ck.c[co] % pNt != 0)
                throw PrecisionExhausted("chi coefficient not rational at target precision");
        BigInt v = ck.c[0] % pNt;
        if (v < 0) v += pNt;
        if (v > pNt / 2) v -= pNt;
        out.push_back(v);
    }
    return out;
}

ZetaFunction assemble_zeta(const std::vector<BigInt>& chi, const BigInt& q, int n) {
    ZetaFunction Z;
    std::vector<BigInt> denom{BigInt(1)};
    for (int j = 0; j < n; ++j) {
        // multiply by (1 - q^j T)
        BigInt qj = pow_bi(q, (unsigned long)j);
        std::vector<BigInt> nx(denom.size() + 1, BigInt(0));
        for (size_t i = 0; i < denom.size(); ++i) {
            nx[i] += denom[i];
            nx[i + 1] -= denom[i] * qj;
        }
        denom = std::move(nx);
    }
    if (n % 2 == 0) {
        Z.numerator = chi;
        Z.denominator = denom;
    } else {
        Z.numerator = {BigInt(1)};
        // denominator chi * prod
        std::vector<BigInt> nx(chi.size() + denom.size() - 1, BigInt(0));
        for (size_t i = 0; i < chi.size(); ++i)
            for (size_t j = 0; j < denom.size(); ++j) nx[i + j] += chi[i] * denom[j];
        Z.denominator = std::move(nx);
    }
    return Z;
}

namespace {

/// Power sums of the reciprocal roots of f (constant term 1) by Newton:
/// s_k = -k f_k - sum_{i<k} f_i s_{k-i}.
std::vector<BigInt> recip_power_sums(const std::vector<BigInt>& f, int imax) {
    std::vector<BigInt> s(imax + 1, BigInt(0));
    for (int k = 1; k <= imax; ++k) {
        BigInt acc = 0;
        if (k < (int)f.size()) acc = -BigInt(k) * f[(size_t)k];
        for (int i = 1; i < k; ++i)
            if (i < (int)f.size()) acc -= f[(size_t)i] * s[(size_t)(k - i)];
        s[(size_t)k] = acc;
    }
    return s;
}

}  // namespace

std::vector<BigInt> counts_from_zeta(const ZetaFunction& Z, int imax) {
    auto sd = recip_power_sums(Z.denominator, imax);
    auto sn = recip_power_sums(Z.numerator, imax);
    std::vector<BigInt> out;
    for (int i = 1; i <= imax; ++i) out.push_back(sd[(size_t)i] - sn[(size_t)i]);
    return out;
}

namespace {

std::vector<std::complex<double>> poly_roots(const std::vector<BigInt>& f) {
    // Durand-Kerner on the monic reversal; coefficients fit double at desk scale
    int d = (int)f.size() - 1;
    while (d > 0 && f[(size_t)d] == 0) --d;
    if (d <= 0) return {};
    std::vector<std::complex<double>> c(d + 1);
    double lead = (double)f[(size_t)d];
    for (int i = 0; i <= d; ++i) c[(size_t)i] = (double)f[(size_t)i] / lead;
    std::vector<std::complex<double>> x(d);
    std::complex<double> seed(0.4, 0.9);
    std::complex<double> cur(1.0, 0.0);
    for (int i = 0; i < d; ++i) {
        cur *= seed;
        x[(size_t)i] = cur;
    }
    for (int it = 0; it < 500; ++it) {
        double delta = 0;
        for (int i = 0; i < d; ++i) {
            std::complex<double> num = c[(size_t)d];
            for (int k = d - 1; k >= 0; --k) num = num * x[(size_t)i] + c[(size_t)k];
            std::complex<double> den(1, 0);
            for (int j = 0; j < d; ++j)
                if (j != i) den *= (x[(size_t)i] - x[(size_t)j]);
            std::complex<double> corr = num / den;
            x[(size_t)i] -= corr;
            delta = std::max(delta, std::abs(corr));
        }
        if (delta < 1e-13) break;
    }
    return x;
}

}  // namespace

WeilReport weil_checks(const ZetaFunction& Z, const std::vector<BigInt>& chi, const BigInt& q,
                       int n, const std::vector<BigInt>* oracle_counts, int imax) {
    WeilReport rep;
    const int b = (int)chi.size() - 1;
    int checkn = std::max({imax, b, 2 * n});
    rep.counts = counts_from_zeta(Z, checkn);
    for (int i = 0; i < checkn; ++i)
        if (rep.counts[(size_t)i] < 0) {
            rep.ok = false;
            rep.failures.push_back("negative point count at i=" + std::to_string(i + 1));
        }
    // (b) reciprocal roots: |alpha| = q^{(n-1)/2}, pairing alpha -> q^{n-1}/alpha
    if (b > 0) {
        auto roots = poly_roots(chi);  // roots of chi(T): T = 1/alpha
        double qd = (double)q;
        double target = std::pow(qd, (n - 1) / 2.0);
        std::vector<std::complex<double>> recip;
        for (auto& r : roots) {
            if (std::abs(r) < 1e-12) {
                rep.ok = false;
                rep.failures.push_back("chi has a vanishing root");
                continue;
            }
            recip.push_back(1.0 / r);
        }
        for (auto& al : recip) {
            if (std::abs(std::abs(al) - target) > 1e-6 * target) {
                rep.ok = false;
                rep.failures.push_back("reciprocal root off the Weil circle");
                break;
            }
        }
        double qn1 = std::pow(qd, n - 1);
        std::vector<bool> taken(recip.size(), false);
        for (size_t i = 0; i < recip.size(); ++i) {
            std::complex<double> want = qn1 / recip[i];
            bool found = false;
            for (size_t j = 0; j < recip.size(); ++j) {
                if (taken[j]) continue;
                if (std::abs(recip[j] - want) <= 1e-6 * std::abs(want) + 1e-9) {
                    taken[j] = true;
                    found = true;
                    break;
                }
            }
            if (!found) {
                rep.ok = false;
                rep.failures.push_back("functional-equation pairing failed");
                break;
            }
        }
    }
    if (oracle_counts) {
        for (size_t i = 0; i < oracle_counts->size() && i < rep.counts.size(); ++i)
            if ((*oracle_counts)[i] != rep.counts[i]) {
                rep.ok = false;
                rep.failures.push_back("oracle count mismatch at i=" + std::to_string(i + 1));
            }
    }
    return rep;
}

}  // namespace zetadef
