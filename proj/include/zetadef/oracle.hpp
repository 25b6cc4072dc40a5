#pragma once

#include "zetadef/gfq.hpp"
#include "zetadef/polyhyp.hpp"
#include "zetadef/zeta.hpp"

namespace zetadef {

/// |X(F_{q^i})| for i = 1..imax.
struct CountSeries {
    std::vector<BigInt> counts;
};

/// Exact projective point count of V(P) over F_{q^i}, q = p^a, by enumeration
/// of normalized representatives. The base field is F_p[y]/(f mod p); P's
/// coefficients are coordinate vectors over that field. Guard: q^{i n} must
/// not exceed max_size.
BigInt count_points(const HomogPoly& P, std::int64_t p, int a,
                    const std::vector<std::int64_t>& fmodp, int i, std::uint64_t max_size,
                    std::uint64_t seed = 1);

/// chi (degree b) from counts; uses all given counts, completing by the
/// functional equation when fewer than b are supplied (sign resolved by
/// integrality, the Weil circle, and count consistency).
std::vector<BigInt> chi_from_counts(const std::vector<BigInt>& counts, int b, const BigInt& q,
                                    int n);

ZetaFunction zeta_from_counts(const std::vector<BigInt>& counts, int b, const BigInt& q, int n);

}  // namespace zetadef
