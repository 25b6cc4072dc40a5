#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "zetadef/common.hpp"

namespace zetadef {

/// F_{p^m} = F_p[y]/(g) with machine-word coordinate arithmetic.
/// Elements are coefficient vectors of length m (low-to-high).
class GFq {
  public:
    std::int64_t p = 0;
    int m = 1;
    std::vector<std::int64_t> g;  // monic modulus, length m+1

    using El = std::vector<std::int64_t>;

    GFq() = default;
    GFq(std::int64_t p_, std::vector<std::int64_t> g_);

    /// Fresh irreducible modulus of degree m found by seeded random search.
    static GFq make(std::int64_t p, int m, std::uint64_t seed = 1);

    std::uint64_t size_q() const;  // p^m as uint64 (guarded by callers)

    El zero() const { return El(m, 0); }
    El one() const {
        El e(m, 0);
        e[0] = 1;
        return e;
    }
    El from_int(std::int64_t v) const {
        El e(m, 0);
        e[0] = ((v % p) + p) % p;
        return e;
    }
    bool is_zero(const El& x) const {
        for (auto v : x)
            if (v) return false;
        return true;
    }
    El add(const El& x, const El& y) const {
        El z(m);
        for (int i = 0; i < m; ++i) {
            z[i] = x[i] + y[i];
            if (z[i] >= p) z[i] -= p;
        }
        return z;
    }
    El sub(const El& x, const El& y) const {
        El z(m);
        for (int i = 0; i < m; ++i) {
            z[i] = x[i] - y[i];
            if (z[i] < 0) z[i] += p;
        }
        return z;
    }
    El smul(const El& x, std::int64_t c) const {
        c = ((c % p) + p) % p;
        El z(m);
        for (int i = 0; i < m; ++i) z[i] = (x[i] * c) % p;
        return z;
    }
    El mul(const El& x, const El& y) const;
    El pow(El x, std::uint64_t e) const;
    El inv(const El& x) const;  // x != 0

    /// index <-> element (coordinates base p), for enumeration loops
    El unrank(std::uint64_t r) const {
        El e(m);
        for (int i = 0; i < m; ++i) {
            e[i] = (std::int64_t)(r % (std::uint64_t)p);
            r /= (std::uint64_t)p;
        }
        return e;
    }

    bool is_irreducible(const std::vector<std::int64_t>& cand) const;
};

}  // namespace zetadef
