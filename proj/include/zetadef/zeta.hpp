#pragma once

#include "zetadef/diagfrob.hpp"

namespace zetadef {

/// Z(X,T) as numerator/denominator integer polynomials (ascending, constant 1).
struct ZetaFunction {
    std::vector<BigInt> numerator;
    std::vector<BigInt> denominator;
};

/// The sigma-semilinear a-fold composite Phi_1 sigma(Phi_1) ... sigma^{a-1}(Phi_1).
FrobeniusMatrix frobenius_q(const FrobeniusMatrix& phi1, const PadicContext& ctx);

/// Reverse characteristic polynomial chi(T) = det(1 - T Phi^(a)) lifted to
/// integers in the symmetric range. Throws PrecisionTooLow when p^{N_target}
/// cannot separate the coefficients (bound 2 max_i C(b,i) q^{i(n-1)/2}).
std::vector<BigInt> char_poly_lift(const FrobeniusMatrix& phiq, const PadicContext& ctx,
                                   const BigInt& q, int n, int b, int N_target);

/// chi placement per parity: numerator for n even, denominator for n odd.
ZetaFunction assemble_zeta(const std::vector<BigInt>& chi, const BigInt& q, int n);

/// Point counts N_i from the log-derivative of Z, exact integer arithmetic.
std::vector<BigInt> counts_from_zeta(const ZetaFunction& Z, int imax);

struct WeilReport {
    bool ok = true;
    std::vector<std::string> failures;
    std::vector<BigInt> counts;
};

/// (a) log-derivative coefficients are non-negative integers, (b) reciprocal
/// roots of chi have modulus q^((n-1)/2) and pair under a -> q^(n-1)/a within
/// 1e-6 (validation aid only), (c) optional oracle counts match exactly.
WeilReport weil_checks(const ZetaFunction& Z, const std::vector<BigInt>& chi, const BigInt& q,
                       int n, const std::vector<BigInt>* oracle_counts = nullptr, int imax = 0);

}  // namespace zetadef
