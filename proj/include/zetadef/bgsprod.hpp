#pragma once

#include "zetadef/matrix.hpp"
#include "zetadef/rpoly.hpp"

namespace zetadef {

/// A(x) = A0 + A1*x, an m x m matrix of degree-<=1 polynomials.
template <class R>
struct LinearMatrixPoly {
    Mat<typename R::Elem> A0, A1;

    int dim() const { return A0.rows; }
};

enum class ProdMethod { Auto, Naive, GiantStep };

struct IntervalProductInfo {
    ProdMethod used = ProdMethod::Naive;
};

/// Invertibility condition of the underlying theorem:
/// 2, 3, ..., 2^s + 1 must be units, s = floor(log4 L); for Z/p^N and Z_q/p^N
/// this is p > 2^s + 1.
inline bool giant_step_invertibility_ok(std::int64_t p, std::uint64_t L) {
    std::uint64_t s = 0, q = 1;
    while (q * 4 <= L) {
        q *= 4;
        ++s;
    }
    return p > (std::int64_t)((1ull << s) + 1);
}

constexpr std::uint64_t kGiantStepThreshold = 256;

namespace detail {

template <class R>
Mat<typename R::Elem> eval_linmat(const R& ring, const LinearMatrixPoly<R>& A, const BigInt& x) {
    auto xr = ring.from_int(x);
    Mat<typename R::Elem> m = A.A0;
    for (size_t i = 0; i < m.a.size(); ++i)
        m.a[i] = ring.add(m.a[i], ring.mul(A.A1.a[i], xr));
    return m;
}

/// Matrix polynomial: vector of coefficient matrices, low-to-high.
/// Product preserves factor order (matrix coefficients do not commute).
template <class R>
std::vector<Mat<typename R::Elem>> matpoly_mul(const R& ring,
                                               const std::vector<Mat<typename R::Elem>>& X,
                                               const std::vector<Mat<typename R::Elem>>& Y) {
    const int m = X[0].rows;
    std::vector<Mat<typename R::Elem>> Z(X.size() + Y.size() - 1, Mat<typename R::Elem>(m, m, ring.zero()));
    // entrywise: Z_ij(t) = sum_k X_ik(t) Y_kj(t); each scalar product can use Kronecker
    std::vector<typename R::Elem> xe, ye;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            for (int k = 0; k < m; ++k) {
                xe.clear();
                ye.clear();
                for (const auto& Xc : X) xe.push_back(Xc.at(i, k));
                for (const auto& Yc : Y) ye.push_back(Yc.at(k, j));
                auto ze = rp_mul(ring, xe, ye);
                for (size_t l = 0; l < ze.size(); ++l) Z[l].at(i, j) = ring.add(Z[l].at(i, j), ze[l]);
            }
    return Z;
}

/// Ordered product tree of the linear factors A(off+1), ..., A(off+len) as a
/// matrix polynomial in the step variable.
template <class R>
std::vector<Mat<typename R::Elem>> matpoly_factor_tree(const R& ring, const LinearMatrixPoly<R>& A,
                                                       const BigInt& off, std::uint64_t len) {
    std::vector<std::vector<Mat<typename R::Elem>>> cur;
    for (std::uint64_t i = 1; i <= len; ++i) {
        // factor A(x + off + i) = (A0 + (off+i) A1) + x*A1
        std::vector<Mat<typename R::Elem>> f{eval_linmat(ring, A, off + (long)i), A.A1};
        cur.push_back(std::move(f));
    }
    while (cur.size() > 1) {
        std::vector<std::vector<Mat<typename R::Elem>>> next;
        for (size_t i = 0; i + 1 < cur.size(); i += 2)
            next.push_back(matpoly_mul(ring, cur[i], cur[i + 1]));
        if (cur.size() % 2) next.push_back(std::move(cur.back()));
        cur = std::move(next);
    }
    return std::move(cur[0]);
}

/// Evaluate a matrix polynomial at many points: per-entry multipoint evaluation.
template <class R>
std::vector<Mat<typename R::Elem>> matpoly_eval_multi(const R& ring,
                                                      const std::vector<Mat<typename R::Elem>>& B,
                                                      const std::vector<typename R::Elem>& pts) {
    const int m = B[0].rows;
    std::vector<Mat<typename R::Elem>> out(pts.size(), Mat<typename R::Elem>(m, m, ring.zero()));
    std::vector<typename R::Elem> entry;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            entry.clear();
            for (const auto& Bc : B) entry.push_back(Bc.at(i, j));
            auto vals = rp_eval_multi(ring, entry, pts);
            for (size_t k = 0; k < pts.size(); ++k) out[k].at(i, j) = vals[k];
        }
    return out;
}

}  // namespace detail

/// prod_{i=1}^{L} A(s+i), multiplied left to right in increasing index order
/// (callers needing the decreasing-order product transpose around this).
///
/// Giant-step path: B(x) = A(x+1)...A(x+beta) by an ordered product tree,
/// multipoint-evaluated at s, s+beta, ..., then the evaluated blocks and the
/// tail factors are multiplied in order. Falls back to the naive scan for
/// short intervals or when the invertibility gate fails.
template <class R>
Mat<typename R::Elem> interval_product(const R& ring, const LinearMatrixPoly<R>& A, const BigInt& s,
                                       std::uint64_t L, ProdMethod method = ProdMethod::Auto,
                                       IntervalProductInfo* info = nullptr) {
    const int m = A.dim();
    std::int64_t p = 0;
    if constexpr (std::is_same_v<R, ZpRing>)
        p = ring.p;
    else
        p = ring.p();
    bool giant = false;
    switch (method) {
        case ProdMethod::Naive:
            giant = false;
            break;
        case ProdMethod::GiantStep:
            if (!giant_step_invertibility_ok(p, L))
                throw InvertibilityViolation("giant step forced but 2..2^s+1 not all units");
            giant = true;
            break;
        case ProdMethod::Auto:
            giant = L >= kGiantStepThreshold && giant_step_invertibility_ok(p, L);
            break;
    }
    if (info) info->used = giant ? ProdMethod::GiantStep : ProdMethod::Naive;
    if (!giant) {
        auto acc = mat_identity(ring, m);
        for (std::uint64_t i = 1; i <= L; ++i)
            acc = mat_mul(ring, acc, detail::eval_linmat(ring, A, s + (long)i));
        return acc;
    }
    std::uint64_t beta = 1;
    while ((beta + 1) * (beta + 1) <= L) ++beta;
    std::uint64_t gamma = L / beta;
    auto B = detail::matpoly_factor_tree(ring, A, BigInt(0), beta);
    std::vector<typename R::Elem> pts;
    for (std::uint64_t g = 0; g < gamma; ++g) pts.push_back(ring.from_int(s + BigInt(g * beta)));
    auto blocks = detail::matpoly_eval_multi(ring, B, pts);
    auto acc = mat_identity(ring, m);
    for (auto& blk : blocks) acc = mat_mul(ring, acc, blk);
    for (std::uint64_t i = gamma * beta + 1; i <= L; ++i)
        acc = mat_mul(ring, acc, detail::eval_linmat(ring, A, s + (long)i));
    return acc;
}

/// (i+1)(i+2)...(i+p) through the m=1 interval product, plus its valuation.
template <class R>
std::pair<typename R::Elem, long> scalar_rising_block(const R& ring, const BigInt& i,
                                                      std::uint64_t wlen,
                                                      ProdMethod method = ProdMethod::Auto) {
    LinearMatrixPoly<R> A;
    A.A0 = Mat<typename R::Elem>(1, 1, ring.zero());
    A.A1 = Mat<typename R::Elem>(1, 1, ring.one());
    auto v = interval_product(ring, A, i, wlen, method);
    return {v.at(0, 0), ring.ord(v.at(0, 0))};
}

}  // namespace zetadef
