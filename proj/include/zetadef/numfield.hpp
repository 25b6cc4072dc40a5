#pragma once

#include "zetadef/common.hpp"

namespace zetadef {

/// Exact arithmetic in K = Q[y]/(f~) where f~ is the integer lift of the
/// context modulus (K = Q when a = 1). Step 1 of the pipeline runs here.
class NumField {
  public:
    int deg = 1;
    std::vector<BigRat> f;  // monic, length deg+1

    using El = std::vector<BigRat>;  // length deg

    NumField() : f{BigRat(0), BigRat(1)} {}
    explicit NumField(std::vector<BigRat> fmonic) : deg((int)fmonic.size() - 1), f(std::move(fmonic)) {}

    El zero() const { return El(deg, BigRat(0)); }
    El one() const {
        El e = zero();
        e[0] = 1;
        return e;
    }
    El from_rat(const BigRat& v) const {
        El e = zero();
        e[0] = v;
        return e;
    }
    bool is_zero(const El& x) const {
        for (const auto& v : x)
            if (v != 0) return false;
        return true;
    }
    El add(const El& x, const El& y) const {
        El z = x;
        for (int i = 0; i < deg; ++i) z[i] += y[i];
        return z;
    }
    El sub(const El& x, const El& y) const {
        El z = x;
        for (int i = 0; i < deg; ++i) z[i] -= y[i];
        return z;
    }
    El neg(const El& x) const {
        El z = x;
        for (auto& v : z) v = -v;
        return z;
    }
    El smul(const El& x, const BigRat& c) const {
        El z = x;
        for (auto& v : z) v *= c;
        return z;
    }
    El mul(const El& x, const El& y) const;
    El inv(const El& x) const;  // extended Euclid mod f

    bool eq(const El& x, const El& y) const {
        for (int i = 0; i < deg; ++i)
            if (x[i] != y[i]) return false;
        return true;
    }
};

/// Polynomials in t over K, low-to-high.
using KPoly = std::vector<NumField::El>;

int kp_deg(const NumField& K, const KPoly& f);
KPoly kp_trim(const NumField& K, KPoly f);
KPoly kp_mul(const NumField& K, const KPoly& x, const KPoly& y);
KPoly kp_add(const NumField& K, KPoly x, const KPoly& y);
void kp_divrem(const NumField& K, const KPoly& a, const KPoly& b, KPoly& q, KPoly& r);
KPoly kp_gcd(const NumField& K, KPoly a, KPoly b);  // monic
KPoly kp_lcm(const NumField& K, const KPoly& a, const KPoly& b);

/// Series in t over K with fixed truncation length.
using KSeries = std::vector<NumField::El>;

/// Cauchy/Pade reconstruction: (num, den) with series*den == num mod t^L and
/// deg den <= dmax; returns false when no admissible approximant exists.
bool kp_pade(const NumField& K, const KSeries& s, int L, int dmax, KPoly& num, KPoly& den);

}  // namespace zetadef
