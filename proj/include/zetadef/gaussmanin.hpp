#pragma once

#include "zetadef/numfield.hpp"
#include "zetadef/polyhyp.hpp"

namespace zetadef {

/// The pencil P = (1-t) P0 + t P1 with diagonal P0 = sum a_i x_i^d.
struct Pencil {
    int n = 0, d = 0;
    std::vector<std::int64_t> avec;  // diagonal coefficients, p-adic units
    HomogPoly P1;                    // coefficients as integer coordinate vectors
    NumField K;                      // exact coefficient field Q[y]/(f~)
};

/// A cohomology class in the monomial basis, as rational functions of t
/// over K with a common denominator.
struct ReducedForm {
    std::vector<KPoly> num;  // length b
    KPoly den;
};

/// Integer-normalized connection data: M = G / r with (G, r) jointly
/// primitive over Z[y], r(0) != 0.
struct ConnectionData {
    int b = 0;
    int deg_r = 0, deg_G = 0;
    using ZCoef = std::vector<BigInt>;   // coordinates in the power basis
    using ZPolyT = std::vector<ZCoef>;   // polynomial in t
    ZPolyT r;
    std::vector<ZPolyT> G;  // row-major b*b

    const ZPolyT& g_at(int i, int j) const { return G[(size_t)i * b + j]; }
};

/// Pole-order reduction of numerator * Omega / P^k to the basis, exact in t.
/// The numerator is a polynomial in t with homogeneous-coefficient terms of
/// degree k*d-(n+1).
ReducedForm griffiths_dwork_reduce(const std::vector<std::vector<Term>>& numerator_tcoeffs,
                                   int k, const Pencil& pencil, const MonomialBasis& basis);

/// Step 1: the full connection matrix M = G/r.
ConnectionData gauss_manin(const Pencil& pencil, const MonomialBasis& basis);

/// Optional debug dump of (G, r) as JSON text.
std::string connection_to_json(const ConnectionData& cd);

}  // namespace zetadef
