#pragma once

#include <memory>

#include "zetadef/common.hpp"

namespace zetadef {

/// Element of Z_q = Z_p[y]/(f) at the context's fixed precision p^N.
/// Coordinates in the power basis of f, each canonical in [0, p^N).
struct Zq {
    std::vector<BigInt> c;

    bool operator==(const Zq&) const = default;
};

/// Fixed-modulus arithmetic in Z_q/p^N with the Frobenius lift sigma.
///
/// Contexts are immutable after construction; every operation is a pure
/// function of (context, inputs) and safe to call concurrently.
class PadicContext {
  public:
    std::int64_t p = 0;
    int a = 1;
    int N = 1;
    BigInt pN;                    // p^N
    std::vector<BigInt> f;        // monic, length a+1, coefficients mod p^N
    Zq sigma_image;               // sigma(generator), cached

    /// Validates p prime (probabilistic, 30 rounds), f monic irreducible mod p,
    /// then Hensel-lifts generator^p to the sigma image mod p^N.
    static PadicContext make(std::int64_t p, int a, int N, std::vector<BigInt> f);

    /// Same field, different working precision (sigma re-lifted).
    PadicContext with_precision(int N2) const;

    // -- element constructors --
    Zq zero() const { return Zq{std::vector<BigInt>(a, BigInt(0))}; }
    Zq one() const {
        Zq z = zero();
        z.c[0] = 1;
        return z;
    }
    Zq from_int(const BigInt& v) const {
        Zq z = zero();
        z.c[0] = mod(v);
        return z;
    }
    Zq from_coords(std::vector<BigInt> v) const;
    Zq generator() const {
        Zq z = zero();
        if (a > 1)
            z.c[1] = 1;
        return z;
    }

    // -- ring operations --
    BigInt mod(const BigInt& v) const {
        BigInt r = v % pN;
        if (r < 0) r += pN;
        return r;
    }
    Zq add(const Zq& x, const Zq& y) const;
    Zq sub(const Zq& x, const Zq& y) const;
    Zq neg(const Zq& x) const;
    Zq mul(const Zq& x, const Zq& y) const;
    Zq mul_int(const Zq& x, const BigInt& k) const;
    Zq pow(Zq x, BigInt e) const;  // e >= 0

    /// Newton inversion from the inverse mod p. Throws NotAUnit when ord > 0.
    Zq inv(const Zq& x) const;

    /// min over coordinates of the p-valuation; values >= N collapse to N
    /// (the "saturated" marker: valuation only known to be >= N).
    long ord(const Zq& x) const;
    bool is_zero(const Zq& x) const;
    bool is_unit(const Zq& x) const { return ord(x) == 0; }

    /// The Frobenius lift: ring homomorphism with sigma^a = id, fixing Z_p.
    Zq sigma(const Zq& x) const;
    Zq sigma_iter(Zq x, int times) const;

    /// Exact division by p^e; requires every coordinate divisible by p^e.
    /// The result is only determined mod p^(N-e).
    Zq divexact_p(const Zq& x, long e) const;

    Zq mul_pow_p(const Zq& x, long e) const;  // multiply by p^e (e >= 0)

  private:
    std::vector<Zq> sigma_gen_pows_;  // sigma_image^i for i < a
    std::vector<std::vector<BigInt>> red_;  // y^(a+k) reduced mod f, k < a-1
    void precompute();
    friend PadicContext make_context_unchecked(std::int64_t, int, int, std::vector<BigInt>);
};

/// Element of Q_q with an explicit power-of-p denominator: unit_part * p^(-shift).
/// shift >= 0 for everything stored by this artifact.
struct ScaledZq {
    Zq unit_part;
    long shift = 0;
};

/// ord of a scaled element (saturates like Zq ord, minus shift).
inline long ord_scaled(const PadicContext& ctx, const ScaledZq& x) {
    return ctx.ord(x.unit_part) - x.shift;
}

// convenience for spec-level API naming
PadicContext make_context(std::int64_t p, int a, int N, std::vector<BigInt> f);

}  // namespace zetadef
