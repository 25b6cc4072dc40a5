#pragma once

#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "zetadef/common.hpp"

namespace zetadef {

template <class E>
struct Mat {
    int rows = 0, cols = 0;
    std::vector<E> a;

    Mat() = default;
    Mat(int r, int c, const E& fill) : rows(r), cols(c), a((size_t)r * c, fill) {}
    E& at(int i, int j) { return a[(size_t)i * cols + j]; }
    const E& at(int i, int j) const { return a[(size_t)i * cols + j]; }

    bool operator==(const Mat&) const = default;
};

template <class R>
Mat<typename R::Elem> mat_identity(const R& ring, int n) {
    Mat<typename R::Elem> m(n, n, ring.zero());
    for (int i = 0; i < n; ++i) m.at(i, i) = ring.one();
    return m;
}

template <class R>
Mat<typename R::Elem> mat_mul(const R& ring, const Mat<typename R::Elem>& x,
                              const Mat<typename R::Elem>& y) {
    Mat<typename R::Elem> z(x.rows, y.cols, ring.zero());
    const bool big = (long long)x.rows * y.cols * x.cols > 20000;
#pragma omp parallel for schedule(static) if (big)
    for (int i = 0; i < x.rows; ++i) {
        for (int k = 0; k < x.cols; ++k) {
            const auto& v = x.at(i, k);
            if (ring.is_zero(v)) continue;
            for (int j = 0; j < y.cols; ++j) {
                if (ring.is_zero(y.at(k, j))) continue;
                z.at(i, j) = ring.add(z.at(i, j), ring.mul(v, y.at(k, j)));
            }
        }
    }
    return z;
}

template <class R>
Mat<typename R::Elem> mat_add(const R& ring, const Mat<typename R::Elem>& x,
                              const Mat<typename R::Elem>& y) {
    Mat<typename R::Elem> z = x;
    for (size_t i = 0; i < z.a.size(); ++i) z.a[i] = ring.add(z.a[i], y.a[i]);
    return z;
}

template <class R>
Mat<typename R::Elem> mat_sub(const R& ring, const Mat<typename R::Elem>& x,
                              const Mat<typename R::Elem>& y) {
    Mat<typename R::Elem> z = x;
    for (size_t i = 0; i < z.a.size(); ++i) z.a[i] = ring.sub(z.a[i], y.a[i]);
    return z;
}

template <class R>
Mat<typename R::Elem> mat_scale(const R& ring, const Mat<typename R::Elem>& x,
                                const typename R::Elem& s) {
    Mat<typename R::Elem> z = x;
    for (auto& v : z.a) v = ring.mul(v, s);
    return z;
}

template <class E>
Mat<E> mat_transpose(const Mat<E>& x) {
    Mat<E> z;
    z.rows = x.cols;
    z.cols = x.rows;
    z.a.resize(x.a.size(), x.a.empty() ? E{} : x.a[0]);
    for (int i = 0; i < x.rows; ++i)
        for (int j = 0; j < x.cols; ++j) z.at(j, i) = x.at(i, j);
    return z;
}

template <class R>
bool mat_is_zero(const R& ring, const Mat<typename R::Elem>& x) {
    for (const auto& v : x.a)
        if (!ring.is_zero(v)) return false;
    return true;
}

}  // namespace zetadef
