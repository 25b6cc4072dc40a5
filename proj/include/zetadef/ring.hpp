#pragma once

#include <atomic>

#include "zetadef/padic.hpp"

namespace zetadef {

/// Both coefficient rings used by the kernels (Z/p^N and Z_q/p^N) expose the
/// same surface: add/sub/mul/neg, inv of units, zero/one, and a multiplication
/// counter so tests can assert operation-count scaling.

struct ZpRing {
    using Elem = BigInt;
    std::int64_t p;
    int N;
    BigInt mod;
    mutable std::atomic<std::uint64_t>* mul_count = nullptr;

    ZpRing(std::int64_t p_, int N_) : p(p_), N(N_), mod(pow_ui(p_, N_)) {}

    Elem zero() const { return BigInt(0); }
    Elem one() const { return BigInt(1); }
    Elem from_int(const BigInt& v) const {
        BigInt r = v % mod;
        if (r < 0) r += mod;
        return r;
    }
    Elem add(const Elem& x, const Elem& y) const {
        BigInt r = x + y;
        if (r >= mod) r -= mod;
        return r;
    }
    Elem sub(const Elem& x, const Elem& y) const {
        BigInt r = x - y;
        if (r < 0) r += mod;
        return r;
    }
    Elem neg(const Elem& x) const { return x == 0 ? x : BigInt(mod - x); }
    Elem mul(const Elem& x, const Elem& y) const {
        if (mul_count) mul_count->fetch_add(1, std::memory_order_relaxed);
        return (x * y) % mod;
    }
    bool is_zero(const Elem& x) const { return x == 0; }
    bool is_unit(const Elem& x) const { return x % p != 0; }
    Elem inv(const Elem& x) const {
        BigInt r;
        if (mpz_invert(r.backend().data(), x.backend().data(), mod.backend().data()) == 0)
            throw NotAUnit("ZpRing::inv");
        return r;
    }
    long ord(const Elem& x) const { return ord_int(x, p, N); }

    static constexpr bool has_kronecker = true;
    size_t elem_bits() const { return mpz_sizeinbase(mod.backend().data(), 2); }
};

struct ZqRing {
    using Elem = Zq;
    const PadicContext* ctx;
    mutable std::atomic<std::uint64_t>* mul_count = nullptr;

    explicit ZqRing(const PadicContext& c) : ctx(&c) {}

    Elem zero() const { return ctx->zero(); }
    Elem one() const { return ctx->one(); }
    Elem from_int(const BigInt& v) const { return ctx->from_int(v); }
    Elem add(const Elem& x, const Elem& y) const { return ctx->add(x, y); }
    Elem sub(const Elem& x, const Elem& y) const { return ctx->sub(x, y); }
    Elem neg(const Elem& x) const { return ctx->neg(x); }
    Elem mul(const Elem& x, const Elem& y) const {
        if (mul_count) mul_count->fetch_add(1, std::memory_order_relaxed);
        return ctx->mul(x, y);
    }
    bool is_zero(const Elem& x) const { return ctx->is_zero(x); }
    bool is_unit(const Elem& x) const { return ctx->ord(x) == 0; }
    Elem inv(const Elem& x) const { return ctx->inv(x); }
    long ord(const Elem& x) const { return ctx->ord(x); }

    static constexpr bool has_kronecker = false;
    std::int64_t p() const { return ctx->p; }
};

}  // namespace zetadef
