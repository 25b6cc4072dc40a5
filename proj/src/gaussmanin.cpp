#include "zetadef/gaussmanin.hpp"

#include <functional>
#include <map>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace zetadef {

namespace {

using El = NumField::El;

// sparse homogeneous polynomial over K
using KHomog = std::map<Expo, El>;

KHomog p1_minus_p0(const Pencil& pc) {
    const auto& K = pc.K;
    KHomog out;
    for (const auto& t : pc.P1.terms) {
        El c = K.zero();
        for (size_t i = 0; i < t.coeff.size() && (int)i < K.deg; ++i) c[i] = BigRat(t.coeff[i]);
        if (!K.is_zero(c)) out[t.expo] = c;
    }
    for (int i = 0; i <= pc.n; ++i) {
        Expo e(pc.n + 1, 0);
        e[i] = pc.d;
        El c = out.count(e) ? out[e] : K.zero();
        c[0] -= pc.avec[i];
        if (K.is_zero(c))
            out.erase(e);
        else
            out[e] = c;
    }
    return out;
}

/// One pole level: the square subsystem (diag + t*S) x = Q over K[[t]].
/// Rows are monomials of degree k*d-(n+1); the designated column of a row w is
/// the Jacobian column (i, w - (d-1)e_i) when some w_i >= d-1 (its t^0 entry is
/// d*a_i from the diagonal part of P), and the basis column c_w otherwise.
struct Level {
    int k = 0, D = 0;
    std::vector<Expo> rows;
    std::map<Expo, int> rowidx;
    // column descriptors: jac_i >= 0 means Jacobian column (var index + multiplier
    // monomial), jac_i < 0 means basis column for the row monomial itself.
    std::vector<int> jac_i;
    std::vector<Expo> jac_m;
    std::vector<El> diag_inv;
    // t^1 part: per column, (row, coeff) contributions from m * d(P1-P0)/dx_i
    std::vector<std::vector<std::pair<int, El>>> colterms;

    Level() = default;
    Level(const Pencil& pc, int k_, const KHomog& dP1m0) {
        const auto& K = pc.K;
        const int n = pc.n, d = pc.d;
        k = k_;
        D = k * d - (n + 1);
        rows = monomials_of_degree(n, D);
        for (int i = 0; i < (int)rows.size(); ++i) rowidx[rows[i]] = i;
        jac_i.resize(rows.size());
        jac_m.resize(rows.size());
        diag_inv.resize(rows.size());
        colterms.resize(rows.size());
        for (int c = 0; c < (int)rows.size(); ++c) {
            const Expo& w = rows[c];
            int iv = -1;
            for (int i = 0; i <= n; ++i)
                if (w[i] >= d - 1) {
                    iv = i;
                    break;
                }
            jac_i[c] = iv;
            if (iv < 0) {
                // basis column (all exponents <= d-2 at this degree)
                diag_inv[c] = K.one();
                continue;
            }
            Expo m = w;
            m[iv] -= d - 1;
            jac_m[c] = m;
            diag_inv[c] = K.inv(K.from_rat(BigRat(d * pc.avec[iv])));
            // t-part: columns carry coefficients of m * d/dx_iv (P1 - P0)
            for (const auto& [e, cf] : dP1m0) {
                if (e[iv] == 0) continue;
                Expo de = e;
                de[iv] -= 1;
                Expo w2(n + 1);
                for (int j = 0; j <= n; ++j) w2[j] = m[j] + de[j];
                El v = K.smul(cf, BigRat(e[iv]));
                colterms[c].push_back({rowidx.at(w2), v});
            }
        }
    }

    /// x_j = D^{-1} (Q_j - S x_{j-1}); returns per-t-power solution vectors.
    std::vector<std::vector<El>> solve_series(const NumField& K,
                                              const std::vector<std::map<int, El>>& Q,
                                              int L) const {
        const int nr = (int)rows.size();
        std::vector<std::vector<El>> x;
        x.reserve(L);
        for (int j = 0; j < L; ++j) {
            std::vector<El> rhs(nr, K.zero());
            if (j < (int)Q.size())
                for (const auto& [ri, cf] : Q[j]) rhs[ri] = K.add(rhs[ri], cf);
            if (j >= 1) {
                const auto& xm = x[j - 1];
                for (int c = 0; c < nr; ++c) {
                    if (K.is_zero(xm[c])) continue;
                    for (const auto& [ri, cf] : colterms[c])
                        rhs[ri] = K.sub(rhs[ri], K.mul(cf, xm[c]));
                }
            }
            for (int c = 0; c < nr; ++c)
                if (!K.is_zero(rhs[c])) rhs[c] = K.mul(rhs[c], diag_inv[c]);
            x.push_back(std::move(rhs));
        }
        return x;
    }
};

struct Engine {
    const Pencil& pc;
    const MonomialBasis& basis;
    KHomog dP;  // P1 - P0
    std::vector<Level> levels;  // index k = 2..n+1 at levels[k]
    std::map<Expo, int> bidx;

    Engine(const Pencil& pc_, const MonomialBasis& basis_) : pc(pc_), basis(basis_) {
        dP = p1_minus_p0(pc);
        levels.resize(pc.n + 2);
        for (int k = 2; k <= pc.n + 1; ++k) levels[k] = Level(pc, k, dP);
        for (int i = 0; i < basis.b; ++i) bidx[basis.expo[i]] = i;
    }

    /// Cascade a numerator at pole order k0 down to basis coordinates, all as
    /// series in t of length L. Numerator given per t-power as sparse monomial
    /// vectors (already of degree k0*d-(n+1)).
    std::vector<std::vector<El>> reduce_series(std::vector<std::map<Expo, El>> cur, int k0,
                                               int L) const {
        const auto& K = pc.K;
        const int n = pc.n, d = pc.d;
        std::vector<std::vector<El>> coords(basis.b, std::vector<El>(L, K.zero()));
        cur.resize(L);
        for (int k = k0; k >= 1; --k) {
            if (k == 1) {
                // degree d-(n+1) monomials are all basis elements
                for (int j = 0; j < L; ++j)
                    for (const auto& [mo, cf] : cur[j]) {
                        if (K.is_zero(cf)) continue;
                        auto it = bidx.find(mo);
                        if (it == bidx.end()) throw NotInJacobianIdeal("stray monomial at pole order 1");
                        coords[it->second][j] = K.add(coords[it->second][j], cf);
                    }
                break;
            }
            const Level& lv = levels[k];
            // RHS in row-index form
            std::vector<std::map<int, El>> Q(L);
            for (int j = 0; j < L; ++j)
                for (const auto& [mo, cf] : cur[j]) {
                    auto it = lv.rowidx.find(mo);
                    if (it == lv.rowidx.end()) throw NotInJacobianIdeal("degree mismatch in reduction");
                    Q[j][it->second] = cf;
                }
            auto x = lv.solve_series(K, Q, L);
            // collect basis residues; next numerator = 1/(k-1) * sum_i dA_i/dx_i
            std::vector<std::map<Expo, El>> nxt(L);
            El kinv = K.inv(K.from_rat(BigRat(k - 1)));
            for (int c = 0; c < (int)lv.rows.size(); ++c) {
                if (lv.jac_i[c] < 0) {
                    const Expo& mo = lv.rows[c];
                    int bi = bidx.at(mo);
                    for (int j = 0; j < L; ++j)
                        if (!K.is_zero(x[j][c])) coords[bi][j] = K.add(coords[bi][j], x[j][c]);
                    continue;
                }
                int iv = lv.jac_i[c];
                const Expo& m = lv.jac_m[c];
                if (m[iv] == 0) continue;
                Expo dm = m;
                dm[iv] -= 1;
                El fac = K.smul(kinv, BigRat(m[iv]));
                for (int j = 0; j < L; ++j) {
                    if (K.is_zero(x[j][c])) continue;
                    El add = K.mul(fac, x[j][c]);
                    auto it = nxt[j].find(dm);
                    if (it == nxt[j].end())
                        nxt[j][dm] = add;
                    else
                        it->second = K.add(it->second, add);
                }
            }
            cur = std::move(nxt);
        }
        return coords;
    }
};

/// Reconstruct all entries against a common denominator; grows L on failure.
bool reconstruct(const NumField& K, const std::vector<std::vector<std::vector<El>>>& cols, int b,
                 int L, std::vector<std::vector<KPoly>>& G, KPoly& r) {
    const int margin = 12;
    const int dmax = L / 2 - margin / 2;
    r = {K.one()};
    auto series_times_poly_is_poly = [&](const std::vector<El>& s, const KPoly& pl, KPoly& out) {
        std::vector<El> prod(L, K.zero());
        for (int i = 0; i < (int)pl.size(); ++i) {
            if (K.is_zero(pl[i])) continue;
            for (int j = 0; j + i < L; ++j)
                if (!K.is_zero(s[j])) prod[i + j] = K.add(prod[i + j], K.mul(pl[i], s[j]));
        }
        int dg = -1;
        for (int i = L - 1; i >= 0; --i)
            if (!K.is_zero(prod[i])) {
                dg = i;
                break;
            }
        if (dg >= L - margin) return false;
        prod.resize(std::max(dg + 1, 1));
        out = kp_trim(K, prod);
        return true;
    };
    for (int ci = 0; ci < b; ++ci)
        for (int ri = 0; ri < b; ++ri) {
            const auto& s = cols[ci][ri];
            KPoly dummy;
            if (series_times_poly_is_poly(s, r, dummy)) continue;
            KPoly num, den;
            if (!kp_pade(K, s, L, dmax, num, den)) return false;
            if (kp_deg(K, num) + kp_deg(K, den) + margin > L) return false;
            // verify the approximant against the whole series
            KPoly chk;
            if (!series_times_poly_is_poly(s, den, chk)) return false;
            r = kp_lcm(K, r, den);
            if (kp_deg(K, r) > dmax) return false;
        }
    G.assign(b, std::vector<KPoly>(b));
    for (int ci = 0; ci < b; ++ci)
        for (int ri = 0; ri < b; ++ri)
            if (!series_times_poly_is_poly(cols[ci][ri], r, G[ri][ci])) return false;
    return true;
}

ConnectionData normalize_integer(const NumField& K, const std::vector<std::vector<KPoly>>& G,
                                 const KPoly& r, int b) {
    // joint scaling: clear all rational denominators, then divide by the gcd of
    // all integer coordinates
    BigInt den = 1;
    auto fold_den = [&](const KPoly& pl) {
        for (const auto& e : pl)
            for (const auto& c : e) {
                BigInt d = denominator(c);
                den = den / gcd(den, d) * d;
            }
    };
    fold_den(r);
    for (int i = 0; i < b; ++i)
        for (int j = 0; j < b; ++j) fold_den(G[i][j]);
    BigInt cont = 0;
    auto fold_cont = [&](const KPoly& pl) {
        for (const auto& e : pl)
            for (const auto& c : e) {
                BigRat v = c * den;
                cont = gcd(cont, BigInt(numerator(v)));
            }
    };
    fold_cont(r);
    for (int i = 0; i < b; ++i)
        for (int j = 0; j < b; ++j) fold_cont(G[i][j]);
    if (cont == 0) cont = 1;
    if (cont < 0) cont = -cont;
    ConnectionData cd;
    cd.b = b;
    auto to_z = [&](const KPoly& pl) {
        ConnectionData::ZPolyT out;
        for (const auto& e : pl) {
            ConnectionData::ZCoef co(K.deg);
            for (int i = 0; i < K.deg; ++i) {
                BigRat v = e[i] * den;
                BigInt nv = numerator(v);
                if (denominator(v) != 1) throw std::runtime_error("denominator clearing failed");
                co[i] = nv / cont;
            }
            out.push_back(std::move(co));
        }
        while (out.size() > 1) {
            bool z = true;
            for (const auto& c : out.back())
                if (c != 0) z = false;
            if (!z) break;
            out.pop_back();
        }
        return out;
    };
    cd.r = to_z(r);
    cd.deg_r = (int)cd.r.size() - 1;
    cd.G.resize((size_t)b * b);
    cd.deg_G = 0;
    for (int i = 0; i < b; ++i)
        for (int j = 0; j < b; ++j) {
            cd.G[(size_t)i * b + j] = to_z(G[i][j]);
            bool allz = true;
            for (const auto& co : cd.G[(size_t)i * b + j])
                for (const auto& c : co)
                    if (c != 0) allz = false;
            if (!allz) cd.deg_G = std::max(cd.deg_G, (int)cd.G[(size_t)i * b + j].size() - 1);
        }
    return cd;
}

}  // namespace

ReducedForm griffiths_dwork_reduce(const std::vector<std::vector<Term>>& numerator_tcoeffs, int k,
                                   const Pencil& pencil, const MonomialBasis& basis) {
    const auto& K = pencil.K;
    Engine eng(pencil, basis);
    int L = 64;
    while (true) {
        std::vector<std::map<Expo, El>> cur(numerator_tcoeffs.size());
        for (size_t j = 0; j < numerator_tcoeffs.size(); ++j)
            for (const auto& t : numerator_tcoeffs[j]) {
                El c = K.zero();
                for (size_t i = 0; i < t.coeff.size() && (int)i < K.deg; ++i) c[i] = BigRat(t.coeff[i]);
                if (!K.is_zero(c)) cur[j][t.expo] = K.add(cur[j].count(t.expo) ? cur[j][t.expo] : K.zero(), c);
            }
        auto coords = eng.reduce_series(std::move(cur), k, L);
        std::vector<std::vector<std::vector<El>>> wrap{coords};
        std::vector<std::vector<KPoly>> G1;
        KPoly r1;
        // single column: reuse the matrix reconstruction with b columns x 1
        bool ok = true;
        ReducedForm rf;
        rf.den = {K.one()};
        rf.num.assign(basis.b, KPoly{K.zero()});
        const int margin = 12;
        for (int bi = 0; bi < basis.b && ok; ++bi) {
            KPoly num, den;
            if (!kp_pade(K, coords[bi], L, L / 2 - margin / 2, num, den)) {
                ok = false;
                break;
            }
            if (kp_deg(K, num) + kp_deg(K, den) + margin > L) {
                ok = false;
                break;
            }
            rf.den = kp_lcm(K, rf.den, den);
        }
        if (ok) {
            for (int bi = 0; bi < basis.b; ++bi) {
                // num_i = s_i * den, must truncate to a polynomial
                std::vector<El> prod(L, K.zero());
                for (int i = 0; i < (int)rf.den.size(); ++i) {
                    if (K.is_zero(rf.den[i])) continue;
                    for (int j = 0; j + i < L; ++j)
                        if (!K.is_zero(coords[bi][j]))
                            prod[i + j] = K.add(prod[i + j], K.mul(rf.den[i], coords[bi][j]));
                }
                int dg = -1;
                for (int i = L - 1; i >= 0; --i)
                    if (!K.is_zero(prod[i])) {
                        dg = i;
                        break;
                    }
                if (dg >= L - margin) {
                    ok = false;
                    break;
                }
                prod.resize(std::max(dg + 1, 1));
                rf.num[bi] = kp_trim(K, prod);
            }
        }
        if (ok) return rf;
        L *= 2;
        if (L > 4096)
            throw NotInJacobianIdeal(
                "reduction did not stabilize; pencil appears non-generic (re-randomize P0)");
    }
}

ConnectionData gauss_manin(const Pencil& pencil, const MonomialBasis& basis) {
    const auto& K = pencil.K;
    Engine eng(pencil, basis);
    const int b = basis.b;
    int L = 64;
    while (true) {
        std::vector<std::vector<std::vector<El>>> cols(b);
        bool fail = false;
#pragma omp parallel for schedule(dynamic)
        for (int j = 0; j < b; ++j) {
            // d/dt omega_j = -k(u) x^u (P1-P0) Omega / P^(k(u)+1)
            const Expo& u = basis.expo[j];
            int ku = basis.k[j];
            std::vector<std::map<Expo, El>> cur(1);
            for (const auto& [e, cf] : eng.dP) {
                Expo w(pencil.n + 1);
                for (int i = 0; i <= pencil.n; ++i) w[i] = u[i] + e[i];
                El v = K.smul(cf, BigRat(-ku));
                auto it = cur[0].find(w);
                if (it == cur[0].end())
                    cur[0][w] = v;
                else
                    it->second = K.add(it->second, v);
            }
            cols[j] = eng.reduce_series(std::move(cur), ku + 1, L);
        }
        std::vector<std::vector<KPoly>> G;
        KPoly r;
        if (!fail && reconstruct(K, cols, b, L, G, r)) {
            // scale so that r(0) != 0 is visible: r should not vanish at t=0
            // (the diagonal fibre is in the good locus by construction)
            if (K.is_zero(r[0])) throw GenericityFailure("connection denominator vanishes at t=0");
            return normalize_integer(K, G, r, b);
        }
        L *= 2;
        if (L > 4096)
            throw NotInJacobianIdeal(
                "connection reconstruction did not stabilize (re-randomize P0)");
    }
}

std::string connection_to_json(const ConnectionData& cd) {
    std::ostringstream os;
    auto poly = [&](const ConnectionData::ZPolyT& pl) {
        os << "[";
        for (size_t l = 0; l < pl.size(); ++l) {
            os << (l ? "," : "") << "[";
            for (size_t i = 0; i < pl[l].size(); ++i) os << (i ? "," : "") << pl[l][i];
            os << "]";
        }
        os << "]";
    };
    os << "{\"b\":" << cd.b << ",\"r\":";
    poly(cd.r);
    os << ",\"G\":[";
    for (int i = 0; i < cd.b; ++i)
        for (int j = 0; j < cd.b; ++j) {
            if (i || j) os << ",";
            poly(cd.g_at(i, j));
        }
    os << "]}";
    return os.str();
}

}  // namespace zetadef
