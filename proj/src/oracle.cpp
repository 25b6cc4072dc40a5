#include "zetadef/oracle.hpp"

#include <cmath>
#include <complex>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace zetadef {

BigInt count_points(const HomogPoly& P, std::int64_t p, int a,
                    const std::vector<std::int64_t>& fmodp, int i, std::uint64_t max_size,
                    std::uint64_t seed) {
    const int n = P.n;
    const int m = a * i;
    // guard q^{i n} = p^{m n}
    {
        long double sz = 1;
        for (int t = 0; t < m * n; ++t) {
            sz *= (long double)p;
            if (sz > (long double)max_size) throw TooLarge("oracle: q^(i n) exceeds the size guard");
        }
    }
    GFq F = (a == 1 && i == 1) ? GFq(p, {0, 1}) : GFq::make(p, m, seed + (std::uint64_t)i);
    // embed F_q = F_p[y]/(fmodp) into F: find a root of fmodp in F
    GFq::El rho = F.zero();
    if (a > 1) {
        bool found = false;
        std::uint64_t qm = F.size_q();
        for (std::uint64_t r = 0; r < qm && !found; ++r) {
            GFq::El cand = F.unrank(r);
            // evaluate fmodp at cand
            GFq::El acc = F.zero();
            for (int t = (int)fmodp.size() - 1; t >= 0; --t)
                acc = F.add(F.mul(acc, cand), F.from_int(fmodp[(size_t)t]));
            if (F.is_zero(acc)) {
                rho = cand;
                found = true;
            }
        }
        if (!found) throw Inconsistent("oracle: base field does not embed");
    }
    // coefficients as F-elements
    std::vector<GFq::El> coeffs;
    for (const auto& t : P.terms) {
        GFq::El c = F.zero();
        GFq::El rp = F.one();
        for (size_t j = 0; j < t.coeff.size(); ++j) {
            BigInt re = t.coeff[j] % p;
            if (re < 0) re += p;
            c = F.add(c, F.smul(rp, (std::int64_t)re));
            rp = F.mul(rp, rho);
        }
        coeffs.push_back(c);
    }
    const std::uint64_t q = F.size_q();
    BigInt total = 0;
    for (int lead = 0; lead <= n; ++lead) {
        // x_0..x_{lead-1} = 0, x_lead = 1, the rest free: q^(n-lead) points
        const int nfree = n - lead;
        std::uint64_t reps = 1;
        for (int t = 0; t < nfree; ++t) reps *= q;
        std::int64_t stratum = 0;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) reduction(+ : stratum)
#endif
        for (std::int64_t r = 0; r < (std::int64_t)reps; ++r) {
            std::vector<GFq::El> pt(n + 1, F.zero());
            pt[(size_t)lead] = F.one();
            std::uint64_t rr = (std::uint64_t)r;
            for (int t = 0; t < nfree; ++t) {
                pt[(size_t)(lead + 1 + t)] = F.unrank(rr % q);
                rr /= q;
            }
            // evaluate P
            GFq::El s = F.zero();
            for (size_t ti = 0; ti < P.terms.size(); ++ti) {
                const auto& e = P.terms[ti].expo;
                GFq::El mo = coeffs[ti];
                bool zero = false;
                for (int v = lead; v <= n && !zero; ++v) {
                    if (e[(size_t)v] == 0) continue;
                    if (F.is_zero(pt[(size_t)v])) {
                        zero = true;
                        break;
                    }
                    if (v == lead) continue;  // x_lead = 1
                    mo = F.mul(mo, F.pow(pt[(size_t)v], (std::uint64_t)e[(size_t)v]));
                }
                for (int v = 0; v < lead; ++v)
                    if (e[(size_t)v] != 0) zero = true;
                if (!zero) s = F.add(s, mo);
            }
            if (F.is_zero(s)) ++stratum;
        }
        total += stratum;
    }
    return total;
}

namespace {

std::vector<std::complex<double>> chi_roots(const std::vector<BigInt>& f) {
    int d = (int)f.size() - 1;
    while (d > 0 && f[(size_t)d] == 0) --d;
    std::vector<std::complex<double>> c(d + 1), x(d);
    if (d <= 0) return {};
    double lead = (double)f[(size_t)d];
    for (int i = 0; i <= d; ++i) c[(size_t)i] = (double)f[(size_t)i] / lead;
    std::complex<double> seed(0.4, 0.9), cur(1, 0);
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
            auto corr = num / den;
            x[(size_t)i] -= corr;
            delta = std::max(delta, std::abs(corr));
        }
        if (delta < 1e-13) break;
    }
    return x;
}

bool weil_circle_ok(const std::vector<BigInt>& chi, const BigInt& q, int n) {
    auto roots = chi_roots(chi);
    double target = std::pow((double)q, (n - 1) / 2.0);
    for (auto& r : roots) {
        if (std::abs(r) < 1e-12) return false;
        double mod = 1.0 / std::abs(r);
        if (std::abs(mod - target) > 1e-6 * target) return false;
    }
    return true;
}

/// Newton: chi coefficients from power sums of its reciprocal roots.
/// Returns false if a coefficient is non-integral.
bool chi_from_power_sums(const std::vector<BigRat>& s, int upto, std::vector<BigInt>& out) {
    std::vector<BigRat> c(upto + 1, BigRat(0));
    c[0] = 1;
    for (int k = 1; k <= upto; ++k) {
        BigRat acc = s[(size_t)k];
        for (int i = 1; i < k; ++i) acc += c[(size_t)i] * s[(size_t)(k - i)];
        c[(size_t)k] = -acc / k;
    }
    out.clear();
    for (int k = 0; k <= upto; ++k) {
        if (denominator(c[(size_t)k]) != 1) return false;
        out.push_back(numerator(c[(size_t)k]));
    }
    return true;
}

}  // namespace

std::vector<BigInt> chi_from_counts(const std::vector<BigInt>& counts, int b, const BigInt& q,
                                    int n) {
    const int have = (int)counts.size();
    // s_i = (-1)^(n+1) (N_i - sum_{j<n} q^{ji})
    std::vector<BigRat> s(std::max(have, b) + 1, BigRat(0));
    for (int i = 1; i <= have; ++i) {
        BigInt proj = 0;
        for (int j = 0; j < n; ++j) proj += pow_bi(q, (unsigned long)(j * i));
        BigInt v = counts[(size_t)(i - 1)] - proj;
        s[(size_t)i] = BigRat((n % 2 == 0) ? -v : v);
    }
    if (have >= b) {
        std::vector<BigInt> chi;
        if (!chi_from_power_sums(s, b, chi)) throw Inconsistent("no integral chi fits the counts");
        return chi;
    }
    if (2 * have < b) throw Inconsistent("not enough counts to determine chi");
    // partial chi from the available power sums, then functional-equation
    // completion chi_{b-k} = eps q^((n-1)(b-2k)/2) chi_k, trying both signs
    std::vector<BigInt> half;
    if (!chi_from_power_sums(s, have, half)) throw Inconsistent("no integral chi fits the counts");
    std::vector<std::vector<BigInt>> cands;
    for (int eps = +1; eps >= -1; eps -= 2) {
        std::vector<BigRat> chi(b + 1, BigRat(0));
        bool ok = true;
        for (int k = 0; k <= have; ++k) chi[(size_t)k] = BigRat(half[(size_t)k]);
        auto scale = [&](int k) -> BigRat {
            // eps * q^{((n-1)(b-2k))/2}; half-integral exponents need q a square
            long ee = (long)(n - 1) * (b - 2 * k);
            if (ee % 2 == 0) return BigRat(eps) * BigRat(pow_bi(q, (unsigned long)(ee / 2)));
            BigInt rt;
            mpz_sqrt(rt.backend().data(), q.backend().data());
            if (rt * rt != q) return BigRat(0);
            return BigRat(eps) * BigRat(pow_bi(rt, (unsigned long)ee));
        };
        for (int k = 0; 2 * k < b && ok; ++k) {
            BigRat sc = scale(k);
            if (sc == 0) {
                ok = false;
                break;
            }
            chi[(size_t)(b - k)] = sc * chi[(size_t)k];
        }
        if (ok && b % 2 == 0) {
            // middle coefficient must satisfy chi_{b/2} = eps chi_{b/2}
            if (eps == -1 && chi[(size_t)(b / 2)] != 0) ok = false;
        }
        if (!ok) continue;
        std::vector<BigInt> cand;
        bool integral = true;
        for (auto& c : chi) {
            if (denominator(c) != 1) {
                integral = false;
                break;
            }
            cand.push_back(numerator(c));
        }
        if (!integral || cand[0] != 1) continue;
        if (!weil_circle_ok(cand, q, n)) continue;
        // counts regenerated from the candidate must match the given ones
        ZetaFunction Z = assemble_zeta(cand, q, n);
        auto regen = counts_from_zeta(Z, have);
        bool match = true;
        for (int i = 0; i < have; ++i)
            if (regen[(size_t)i] != counts[(size_t)i]) match = false;
        if (match) cands.push_back(cand);
    }
    if (cands.empty()) throw Inconsistent("functional-equation completion failed both signs");
    if (cands.size() == 2 && cands[0] != cands[1])
        throw Inconsistent("ambiguous functional-equation sign; supply one more count");
    return cands[0];
}

ZetaFunction zeta_from_counts(const std::vector<BigInt>& counts, int b, const BigInt& q, int n) {
    return assemble_zeta(chi_from_counts(counts, b, q, n), q, n);
}

}  // namespace zetadef
