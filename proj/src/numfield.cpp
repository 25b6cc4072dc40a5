#include "zetadef/numfield.hpp"

namespace zetadef {

NumField::El NumField::mul(const El& x, const El& y) const {
    if (deg == 1) return {x[0] * y[0]};
    std::vector<BigRat> conv(2 * deg - 1, BigRat(0));
    for (int i = 0; i < deg; ++i) {
        if (x[i] == 0) continue;
        for (int j = 0; j < deg; ++j) {
            if (y[j] == 0) continue;
            conv[i + j] += x[i] * y[j];
        }
    }
    // reduce mod monic f
    for (int i = 2 * deg - 2; i >= deg; --i) {
        BigRat c = conv[i];
        if (c == 0) continue;
        for (int j = 0; j < deg; ++j) conv[i - deg + j] -= c * f[j];
        conv[i] = 0;
    }
    conv.resize(deg);
    return conv;
}

NumField::El NumField::inv(const El& x) const {
    if (deg == 1) {
        if (x[0] == 0) throw NotAUnit("NumField::inv(0)");
        return {BigRat(1) / x[0]};
    }
    // extended Euclid on (f, x) over Q[y]
    using P = std::vector<BigRat>;
    auto trim = [](P v) {
        while (v.size() > 1 && v.back() == 0) v.pop_back();
        return v;
    };
    P r0 = f, r1(x.begin(), x.end());
    r1 = trim(r1);
    P s0{BigRat(0)}, s1{BigRat(1)};
    while (!(r1.size() == 1 && r1[0] == 0)) {
        P q(std::max<size_t>(1, r0.size() >= r1.size() ? r0.size() - r1.size() + 1 : 1), BigRat(0));
        P rem = r0;
        while (rem.size() >= r1.size() && !(rem.size() == 1 && rem[0] == 0)) {
            if (rem.back() == 0) {
                rem.pop_back();
                if (rem.empty()) rem.push_back(BigRat(0));
                continue;
            }
            BigRat c = rem.back() / r1.back();
            size_t off = rem.size() - r1.size();
            q[off] += c;
            for (size_t j = 0; j < r1.size(); ++j) rem[off + j] -= c * r1[j];
            rem = trim(std::move(rem));
            if (rem.size() < r1.size()) break;
        }
        // s_new = s0 - q*s1
        P qs(q.size() + s1.size() - 1, BigRat(0));
        for (size_t i = 0; i < q.size(); ++i)
            for (size_t j = 0; j < s1.size(); ++j) qs[i + j] += q[i] * s1[j];
        P sn(std::max(s0.size(), qs.size()), BigRat(0));
        for (size_t i = 0; i < sn.size(); ++i)
            sn[i] = (i < s0.size() ? s0[i] : BigRat(0)) - (i < qs.size() ? qs[i] : BigRat(0));
        r0 = std::move(r1);
        r1 = trim(std::move(rem));
        s0 = std::move(s1);
        s1 = trim(std::move(sn));
    }
    if (r0.size() != 1 || r0[0] == 0) throw NotAUnit("NumField::inv: not invertible");
    El out = zero();
    for (size_t i = 0; i < s0.size() && (int)i < deg; ++i) out[i] = s0[i] / r0[0];
    return out;
}

int kp_deg(const NumField& K, const KPoly& f) {
    for (int i = (int)f.size() - 1; i >= 0; --i)
        if (!K.is_zero(f[i])) return i;
    return -1;
}

KPoly kp_trim(const NumField& K, KPoly f) {
    int d = kp_deg(K, f);
    if (d < 0) return {K.zero()};
    f.resize(d + 1);
    return f;
}

KPoly kp_mul(const NumField& K, const KPoly& x, const KPoly& y) {
    KPoly r(x.size() + y.size() - 1, K.zero());
    for (size_t i = 0; i < x.size(); ++i) {
        if (K.is_zero(x[i])) continue;
        for (size_t j = 0; j < y.size(); ++j) {
            if (K.is_zero(y[j])) continue;
            r[i + j] = K.add(r[i + j], K.mul(x[i], y[j]));
        }
    }
    return r;
}

KPoly kp_add(const NumField& K, KPoly x, const KPoly& y) {
    if (x.size() < y.size()) x.resize(y.size(), K.zero());
    for (size_t i = 0; i < y.size(); ++i) x[i] = K.add(x[i], y[i]);
    return x;
}

void kp_divrem(const NumField& K, const KPoly& a, const KPoly& b, KPoly& q, KPoly& r) {
    int da = kp_deg(K, a), db = kp_deg(K, b);
    if (db < 0) throw std::runtime_error("kp_divrem by zero");
    if (da < db) {
        q = {K.zero()};
        r = kp_trim(K, a);
        return;
    }
    auto binv = K.inv(b[db]);
    KPoly rr(a.begin(), a.begin() + da + 1);
    q.assign(da - db + 1, K.zero());
    for (int i = da; i >= db; --i) {
        if (K.is_zero(rr[i])) continue;
        auto c = K.mul(rr[i], binv);
        q[i - db] = c;
        for (int j = 0; j <= db; ++j) rr[i - db + j] = K.sub(rr[i - db + j], K.mul(c, b[j]));
    }
    rr.resize(std::max(db, 1), K.zero());
    r = kp_trim(K, rr);
}

KPoly kp_gcd(const NumField& K, KPoly a, KPoly b) {
    a = kp_trim(K, std::move(a));
    b = kp_trim(K, std::move(b));
    while (kp_deg(K, b) >= 0) {
        KPoly q, r;
        kp_divrem(K, a, b, q, r);
        a = std::move(b);
        b = std::move(r);
    }
    int da = kp_deg(K, a);
    if (da >= 0) {
        auto li = K.inv(a[da]);
        for (auto& c : a) c = K.mul(c, li);
    }
    return a;
}

KPoly kp_lcm(const NumField& K, const KPoly& a, const KPoly& b) {
    auto g = kp_gcd(K, a, b);
    KPoly q, r;
    kp_divrem(K, kp_mul(K, a, b), g, q, r);
    if (kp_deg(K, r) >= 0) throw std::runtime_error("kp_lcm inexact");
    return kp_trim(K, q);
}

bool kp_pade(const NumField& K, const KSeries& s, int L, int dmax, KPoly& num, KPoly& den) {
    // extended Euclid on (t^L, s mod t^L), stopping when the remainder degree
    // drops below L - dmax while the cofactor degree stays <= dmax
    KPoly r0(L + 1, K.zero());
    r0[L] = K.one();
    KPoly r1(s.begin(), s.begin() + std::min<size_t>(L, s.size()));
    r1 = kp_trim(K, r1);
    KPoly v0{K.zero()}, v1{K.one()};
    while (true) {
        int d1 = kp_deg(K, r1);
        if (d1 < 0) {
            // series is a polynomial times v1
            if (kp_deg(K, v1) <= dmax) {
                num = kp_trim(K, r1);
                den = v1;
                return true;
            }
            return false;
        }
        if (d1 < L - dmax && kp_deg(K, v1) <= dmax) {
            num = kp_trim(K, r1);
            den = v1;
            return true;
        }
        KPoly q, r;
        kp_divrem(K, r0, r1, q, r);
        KPoly qv = kp_mul(K, q, v1);
        KPoly vn(std::max(v0.size(), qv.size()), K.zero());
        for (size_t i = 0; i < vn.size(); ++i)
            vn[i] = K.sub(i < v0.size() ? v0[i] : K.zero(), i < qv.size() ? qv[i] : K.zero());
        r0 = std::move(r1);
        r1 = std::move(r);
        v0 = std::move(v1);
        v1 = kp_trim(K, vn);
        if (kp_deg(K, v1) > L) return false;
    }
}

}  // namespace zetadef
