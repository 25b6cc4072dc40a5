#include "zetadef/polyhyp.hpp"

#include <algorithm>
#include <map>

namespace zetadef {

std::vector<Expo> monomials_of_degree(int n, int D) {
    std::vector<Expo> out;
    if (D < 0) return out;
    Expo cur(n + 1, 0);
    // iterate all compositions of D into n+1 parts, lexicographic
    std::function<void(int, int)> rec = [&](int pos, int left) {
        if (pos == n) {
            cur[pos] = left;
            out.push_back(cur);
            return;
        }
        for (int v = 0; v <= left; ++v) {
            cur[pos] = v;
            rec(pos + 1, left - v);
        }
    };
    rec(0, D);
    return out;
}

long b_closed_form(int n, int d) {
    long s = 1;
    for (int i = 0; i <= n; ++i) s *= (d - 1);
    s += ((n + 1) % 2 == 0 ? 1 : -1) * (d - 1);
    return s / d;
}

MonomialBasis monomial_basis(int n, int d) {
    if (d < 2 || n < 1) throw ValidationError("monomial_basis requires d >= 2, n >= 1");
    MonomialBasis B;
    B.n = n;
    B.d = d;
    for (int k = 1; k <= n; ++k) {
        int deg = k * d - (n + 1);
        if (deg < 0) continue;
        std::vector<Expo> all = monomials_of_degree(n, deg);
        std::sort(all.begin(), all.end());
        for (auto& u : all) {
            bool ok = true;
            for (int v : u)
                if (v > d - 2) ok = false;
            if (!ok) continue;
            B.expo.push_back(u);
            B.k.push_back(k);
        }
    }
    B.b = (int)B.expo.size();
    if (B.b != b_closed_form(n, d))
        throw ValidationError("basis count disagrees with the closed form");
    return B;
}

int MonomialBasis::index_of(const Expo& u) const {
    for (int i = 0; i < b; ++i)
        if (expo[i] == u) return i;
    return -1;
}

bool check_smooth(const HomogPoly& P, const GFq& F) {
    const int n = P.n, d = P.d;
    // target degree (n+1)(d-1) - n; columns: monomial multiples of the partials
    const int D = (n + 1) * (d - 1) - n;
    auto rows = monomials_of_degree(n, D);
    std::map<Expo, int> rowidx;
    for (int i = 0; i < (int)rows.size(); ++i) rowidx[rows[i]] = i;
    auto mults = monomials_of_degree(n, D - (d - 1));
    const int R = (int)rows.size();
    const int C = (int)mults.size() * (n + 1);
    // dense matrix over F_q
    std::vector<std::vector<GFq::El>> M(R, std::vector<GFq::El>(C, F.zero()));
    int col = 0;
    for (int i = 0; i <= n; ++i) {
        for (auto& m : mults) {
            for (auto& t : P.terms) {
                if (t.expo[i] == 0) continue;
                Expo e = t.expo;
                e[i] -= 1;
                Expo w(n + 1);
                for (int j = 0; j <= n; ++j) w[j] = e[j] + m[j];
                // coefficient t.coeff * t.expo[i] as an F_q element
                GFq::El cf = F.zero();
                for (int j = 0; j < (int)t.coeff.size() && j < F.m; ++j) {
                    BigInt re = t.coeff[j] % F.p;
                    if (re < 0) re += F.p;
                    cf[j] = (std::int64_t)re;
                }
                cf = F.smul(cf, t.expo[i]);
                M[rowidx[w]][col] = F.add(M[rowidx[w]][col], cf);
            }
            ++col;
        }
    }
    // row rank over F_q must equal R
    int rank = 0;
    std::vector<bool> used(R, false);
    for (int c = 0; c < C && rank < R; ++c) {
        int pivot = -1;
        for (int r = 0; r < R; ++r)
            if (!used[r] && !F.is_zero(M[r][c])) {
                pivot = r;
                break;
            }
        if (pivot < 0) continue;
        used[pivot] = true;
        ++rank;
        GFq::El pi = F.inv(M[pivot][c]);
        for (int cc = c; cc < C; ++cc) M[pivot][cc] = F.mul(M[pivot][cc], pi);
        for (int r = 0; r < R; ++r) {
            if (r == pivot || F.is_zero(M[r][c])) continue;
            GFq::El f = M[r][c];
            for (int cc = c; cc < C; ++cc)
                M[r][cc] = F.sub(M[r][cc], F.mul(f, M[pivot][cc]));
        }
    }
    return rank == R;
}

bool check_generic_pencil(const std::vector<Zq>& r, const PadicContext& ctx) {
    if (r.empty()) return false;
    auto eval_mod_p = [&](bool at_one) {
        // r(t) mod p at t=0 or t=1; nonzero in F_q?
        Zq acc = ctx.zero();
        if (at_one) {
            for (const auto& c : r) acc = ctx.add(acc, c);
        } else {
            acc = r[0];
        }
        for (const auto& co : acc.c)
            if (co % ctx.p != 0) return true;
        return false;
    };
    return eval_mod_p(false) && eval_mod_p(true);
}

}  // namespace zetadef
