#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace zetadef {

using BigInt = boost::multiprecision::mpz_int;
using BigRat = boost::multiprecision::mpq_rational;

// ---- error taxonomy (names follow the module contracts) ----

struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NotPrime : ValidationError {
    using ValidationError::ValidationError;
};
struct NotIrreducible : ValidationError {
    using ValidationError::ValidationError;
};
struct NotAUnit : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NotInJacobianIdeal : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct GenericityFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct TruncationInsufficient : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InvertibilityViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct PrecisionExhausted : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct PrecisionTooLow : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct TooLarge : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct Inconsistent : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ChecksFailed : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---- small integer helpers ----

inline BigInt pow_bi(const BigInt& x, unsigned long e) {
    BigInt r;
    mpz_pow_ui(r.backend().data(), x.backend().data(), e);
    return r;
}

inline BigInt pow_ui(std::int64_t x, unsigned long e) {
    return pow_bi(BigInt(x), e);
}

/// p-adic valuation of a nonzero integer; returns `cap` for x == 0.
inline long ord_int(const BigInt& x, std::int64_t p, long cap) {
    if (x == 0) return cap;
    BigInt t = x, q, r;
    long v = 0;
    BigInt bp(p);
    while (true) {
        mpz_tdiv_qr(q.backend().data(), r.backend().data(), t.backend().data(), bp.backend().data());
        if (r != 0) break;
        t = q;
        ++v;
        if (v >= cap) return cap;
    }
    return v;
}

/// ord_p(k!) by Legendre's formula.
inline long ord_factorial(std::int64_t k, std::int64_t p) {
    long s = 0;
    for (std::int64_t q = p; q <= k; q *= p) {
        s += k / q;
        if (q > k / p) break;
    }
    return s;
}

inline bool is_probable_prime(const BigInt& n) {
    return mpz_probab_prime_p(n.backend().data(), 30) != 0;
}

inline std::int64_t floor_log(std::int64_t base, std::int64_t x) {
    // largest e with base^e <= x (x >= 1)
    std::int64_t e = 0, q = base;
    while (q <= x) {
        ++e;
        if (q > x / base) break;
        q *= base;
    }
    return e;
}

}  // namespace zetadef
