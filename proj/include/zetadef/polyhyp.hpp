#pragma once

#include "zetadef/gfq.hpp"
#include "zetadef/padic.hpp"

namespace zetadef {

/// Exponent vector of a monomial in x_0..x_n.
using Expo = std::vector<int>;

/// One term of a homogeneous polynomial: coefficient given as integer
/// coordinates in the power basis of the field generator (length a; plain
/// integers when a = 1).
struct Term {
    Expo expo;
    std::vector<BigInt> coeff;
};

/// Homogeneous polynomial model of the hypersurface input.
struct HomogPoly {
    int n = 0;  // ambient projective dimension
    int d = 0;  // degree
    std::vector<Term> terms;
};

/// The cohomology monomial basis B = B_1 u ... u B_n with pole labels k(u):
/// |u| = k d - (n+1), u_i <= d-2, sorted by k then lexicographically.
struct MonomialBasis {
    int n = 0, d = 0, b = 0;
    std::vector<Expo> expo;
    std::vector<int> k;

    int index_of(const Expo& u) const;
};

MonomialBasis monomial_basis(int n, int d);

/// Closed form (1/d)((d-1)^(n+1) + (-1)^(n+1) (d-1)).
long b_closed_form(int n, int d);

/// Smoothness of V(P) over the algebraic closure, decided by Macaulay-type
/// linear algebra over F_q: every monomial of degree (n+1)(d-1)-n must lie in
/// the ideal of the partial derivatives.
bool check_smooth(const HomogPoly& P, const GFq& F);

/// Genericity of the pencil: the connection denominator r must be a unit at
/// both fibres t=0 and t=1 after reduction mod p.
bool check_generic_pencil(const std::vector<Zq>& r, const PadicContext& ctx);

/// All exponent vectors of total degree D in n+1 variables (lex order).
std::vector<Expo> monomials_of_degree(int n, int D);

}  // namespace zetadef
