#pragma once

#include "zetadef/bgsprod.hpp"
#include "zetadef/polyhyp.hpp"

namespace zetadef {

/// b x b matrix of p^{-1}Frob_p with a uniform power-of-p denominator:
/// value = unit * p^{-shift}. `eff` is the number of p-adic digits the scaled
/// matrix (unit) is good for; the underlying value is known mod p^(eff-shift).
struct FrobeniusMatrix {
    Mat<Zq> unit;
    long shift = 0;
    int eff = 0;
};

/// k! mod p^{N''} for k = c, c+p, c+2p, ... <= M (one residue class).
struct FactorialTable {
    std::int64_t c = 0;
    std::int64_t M = 0;
    std::vector<BigInt> values;
};

/// Builds the table by stepping with length-p interval products (m = 1).
FactorialTable factorial_table(std::int64_t c, std::int64_t M, const ZpRing& ring);

/// Rising factorial (l)_r = l(l+1)...(l+r-1) in Z/p^N.
BigInt rising_factorial(const BigInt& l, std::int64_t r, const ZpRing& ring);

/// Scaled Z_p value: val * p^(-shift), val canonical mod the ring modulus.
struct ScaledZp {
    BigInt val;
    long shift = 0;
};

/// Truncation data for one alpha factor (diagnostics; R chosen adaptively).
struct AlphaParams {
    std::int64_t c = 0;   // (p(u_i+1)-(v_i+1))/d
    std::int64_t R = 0;   // outer truncation actually used
    std::int64_t M = 0;   // c + p R
};

/// One factor a_i^{c_i} * S_i of alpha_{u,v}, summed adaptively until a whole
/// band of outer terms has ord >= Nprime. Returns (unit, net_ord, eff_digits).
struct AlphaFactor {
    BigInt unit;
    long ord = 0;
    int eff = 0;
    AlphaParams params;
};

AlphaFactor alpha_factor(std::int64_t p, int d, std::int64_t a_i, int u_i, int v_i, int Nprime,
                         bool use_tables);

/// alpha_{u,v} as a scaled unit (product over i of the factors).
ScaledZp alpha(std::int64_t p, int d, const std::vector<std::int64_t>& avec, const Expo& u,
               const Expo& v, int Nprime, bool use_tables, int* eff_out = nullptr);

/// The unique partner v of u with p(u_i+1) = v_i+1 mod d.
Expo frobenius_partner(const Expo& u, std::int64_t p, int d);

/// Step 2: Phi0 on the diagonal fibre, entries (-1)^k(v) (k(v)-1)!/(k(u)-1)!
/// p^(n-k(u)) alpha^{-1}. Stored at the precision of ctx with a uniform shift.
/// `Nprime` is the guaranteed precision N_Phi0'; throws TruncationInsufficient
/// when the adaptive truncation cannot reach it.
FrobeniusMatrix phi0(const MonomialBasis& basis, const std::vector<std::int64_t>& avec,
                     const PadicContext& ctx, int Nprime);

/// Reference path: identical contract, factorials by direct multiplication.
FrobeniusMatrix phi0_naive(const MonomialBasis& basis, const std::vector<std::int64_t>& avec,
                           const PadicContext& ctx, int Nprime);

/// Canonicalize to a target shift; entries must be divisible when lowering.
FrobeniusMatrix frob_canonical(const FrobeniusMatrix& fm, const PadicContext& ctx,
                               long target_shift);

/// Exact equality of the underlying values mod p^digits.
bool frob_equal_mod(const FrobeniusMatrix& x, const FrobeniusMatrix& y, const PadicContext& ctx,
                    int digits);

std::string frob_to_json(const FrobeniusMatrix& fm);

}  // namespace zetadef
