#pragma once

#include <gmpxx.h>

#include <map>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "tkos/errors.hpp"

namespace tkos {

namespace detail {

// Dense univariate rational polynomial, index = degree.
using QV = std::vector<mpq_class>;

inline void qv_trim(QV& v) {
    while (!v.empty() && v.back() == 0) v.pop_back();
}

inline bool qv_is_zero(const QV& v) { return v.empty(); }

// r -= s * x^shift * b
inline void qv_sub_scaled(QV& r, const QV& b, const mpq_class& s, std::size_t shift) {
    if (r.size() < b.size() + shift) r.resize(b.size() + shift, 0);
    for (std::size_t i = 0; i < b.size(); ++i) r[i + shift] -= s * b[i];
    qv_trim(r);
}

inline QV qv_mul(const QV& a, const QV& b) {
    if (qv_is_zero(a) || qv_is_zero(b)) return {};
    QV r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    qv_trim(r);
    return r;
}

// Division with remainder; the divisor's leading coefficient must be nonzero.
inline std::pair<QV, QV> qv_divmod(QV num, const QV& den) {
    QV q;
    if (den.empty()) throw Error("polynomial division by zero");
    if (num.size() >= den.size()) q.resize(num.size() - den.size() + 1, 0);
    const mpq_class& lead = den.back();
    while (num.size() >= den.size()) {
        mpq_class s = num.back() / lead;
        std::size_t shift = num.size() - den.size();
        q[shift] = s;
        qv_sub_scaled(num, den, s, shift);
        if (num.size() > shift + den.size() - 1) num.resize(shift + den.size() - 1);
        qv_trim(num);
        if (num.size() < den.size()) break;
    }
    qv_trim(q);
    return {q, num};
}

inline unsigned euler_phi(unsigned m) {
    unsigned result = m, k = m;
    for (unsigned p = 2; p * p <= k; ++p) {
        if (k % p == 0) {
            result -= result / p;
            while (k % p == 0) k /= p;
        }
    }
    if (k > 1) result -= result / k;
    return result;
}

// m-th cyclotomic polynomial: (x^m - 1) / prod of the proper-divisor ones.
inline const QV& cyclotomic_poly(unsigned m) {
    static std::map<unsigned, QV> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(m);
    if (it != cache.end()) return it->second;
    // Compute iteratively so the recursion never re-enters the lock.
    for (unsigned k = 1; k <= m; ++k) {
        if (m % k != 0 || cache.count(k)) continue;
        QV num(k + 1, 0);
        num[0] = -1;
        num[k] = 1;
        for (unsigned d = 1; d < k; ++d) {
            if (k % d != 0) continue;
            auto [q, r] = qv_divmod(num, cache.at(d));
            if (!qv_is_zero(r)) throw Error("cyclotomic polynomial division not exact");
            num = std::move(q);
        }
        cache.emplace(k, std::move(num));
    }
    return cache.at(m);
}

}  // namespace detail

/// Element of the cyclotomic field Q(zeta_m), stored reduced modulo the m-th
/// cyclotomic polynomial: a vector of phi(m) rationals, component k the
/// coefficient of zeta^k. For m in {1,2} the field is plain Q (zeta folded
/// into the rational part). Values over different m combine only when one
/// side is rational-valued; it is lifted to the other order.
class Cyc {
public:
    Cyc() : m_(1), c_(1, mpq_class(0)) {}
    Cyc(long v) : m_(1), c_(1, mpq_class(v)) {}  // NOLINT: implicit by design
    // rationals built as num/den pairs are not reduced by GMP itself
    Cyc(const mpq_class& v) : m_(1), c_(1, v) { c_[0].canonicalize(); }  // NOLINT

    static Cyc of(unsigned m, const mpq_class& v) {
        Cyc r;
        r.m_ = check_order(m);
        r.c_.assign(detail::euler_phi(r.m_), mpq_class(0));
        r.c_[0] = v;
        r.c_[0].canonicalize();
        return r;
    }

    static Cyc zero(unsigned m) { return of(m, 0); }
    static Cyc one(unsigned m) { return of(m, 1); }

    /// zeta_m^k (k may be negative).
    static Cyc zeta(unsigned m, long k = 1) {
        check_order(m);
        long mm = static_cast<long>(m);
        long e = ((k % mm) + mm) % mm;
        detail::QV p(static_cast<std::size_t>(e) + 1, 0);
        p.back() = 1;
        Cyc r;
        r.m_ = m;
        r.c_ = reduce(std::move(p), m);
        r.c_.resize(detail::euler_phi(m), mpq_class(0));
        return r;
    }

    unsigned order() const { return m_; }

    bool is_zero() const {
        for (const auto& q : c_)
            if (q != 0) return false;
        return true;
    }

    /// True when the value lies in Q (no zeta component in reduced form).
    bool is_rational() const {
        for (std::size_t i = 1; i < c_.size(); ++i)
            if (c_[i] != 0) return false;
        return true;
    }

    const mpq_class& rational_part() const { return c_[0]; }

    mpq_class as_rational() const {
        if (!is_rational()) throw Error("value is not rational: " + str());
        return c_[0];
    }

    Cyc& operator+=(const Cyc& o) {
        Cyc b = o;
        align(*this, b);
        for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += b.c_[i];
        return *this;
    }
    Cyc& operator-=(const Cyc& o) {
        Cyc b = o;
        align(*this, b);
        for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= b.c_[i];
        return *this;
    }
    Cyc& operator*=(const Cyc& o) {
        Cyc b = o;
        align(*this, b);
        detail::QV prod = detail::qv_mul(to_qv(), b.to_qv());
        c_ = reduce(std::move(prod), m_);
        c_.resize(detail::euler_phi(m_), mpq_class(0));
        return *this;
    }
    Cyc& operator/=(const Cyc& o) { return *this *= o.inverse(); }

    friend Cyc operator+(Cyc a, const Cyc& b) { return a += b; }
    friend Cyc operator-(Cyc a, const Cyc& b) { return a -= b; }
    friend Cyc operator*(Cyc a, const Cyc& b) { return a *= b; }
    friend Cyc operator/(Cyc a, const Cyc& b) { return a /= b; }
    Cyc operator-() const {
        Cyc r = *this;
        for (auto& q : r.c_) q = -q;
        return r;
    }

    friend bool operator==(const Cyc& a, const Cyc& b) {
        Cyc x = a, y = b;
        align(x, y);
        return x.c_ == y.c_;
    }
    friend bool operator!=(const Cyc& a, const Cyc& b) { return !(a == b); }

    Cyc inverse() const {
        if (is_zero()) throw Error("division by zero");
        if (is_rational()) return of(m_, mpq_class(1) / c_[0]);
        // Extended Euclid in Q[x] against the cyclotomic polynomial, which is
        // irreducible, so the gcd is a nonzero constant.
        detail::QV r0 = detail::cyclotomic_poly(m_), r1 = to_qv();
        detail::QV u0, u1{mpq_class(1)};  // coefficients of this element
        while (!detail::qv_is_zero(r1)) {
            auto [q, r2] = detail::qv_divmod(r0, r1);
            detail::QV u2 = u0;
            detail::qv_sub_scaled(u2, detail::qv_mul(q, u1), mpq_class(1), 0);
            r0 = std::move(r1);
            r1 = std::move(r2);
            u0 = std::move(u1);
            u1 = std::move(u2);
        }
        if (r0.size() != 1) throw Error("cyclotomic inverse: gcd not constant");
        for (auto& q : u0) q /= r0[0];
        Cyc res;
        res.m_ = m_;
        res.c_ = reduce(std::move(u0), m_);
        res.c_.resize(detail::euler_phi(m_), mpq_class(0));
        return res;
    }

    /// Canonical text: rational part first, then ascending zeta powers,
    /// e.g. "0", "-1/2", "z", "2*z^2", "1-z".
    std::string str() const {
        std::string out;
        for (std::size_t k = 0; k < c_.size(); ++k) {
            if (c_[k] == 0) continue;
            std::string mag = mpq_class(abs(c_[k])).get_str();
            std::string term;
            if (k == 0) {
                term = mag;
            } else {
                std::string zp = (k == 1) ? "z" : "z^" + std::to_string(k);
                term = (mag == "1") ? zp : mag + "*" + zp;
            }
            if (out.empty())
                out = (sgn(c_[k]) < 0 ? "-" : "") + term;
            else
                out += (sgn(c_[k]) < 0 ? "-" : "+") + term;
        }
        return out.empty() ? "0" : out;
    }

    /// Number of '+'/'-'-joined pieces in str(); 1 for a monomial-like value.
    int term_count() const {
        int n = 0;
        for (const auto& q : c_)
            if (q != 0) ++n;
        return n == 0 ? 1 : n;
    }

    /// Sign of the rational multiplier when the value is a single basis
    /// component; 0 for mixed values (callers then treat it as positive).
    int lead_sign() const {
        if (term_count() > 1) return 0;
        for (const auto& q : c_)
            if (q != 0) return sgn(q);
        return 1;
    }

private:
    unsigned m_;
    std::vector<mpq_class> c_;  // size phi(m_)

    static unsigned check_order(unsigned m) {
        if (m == 0) throw Error("cyclotomic order must be positive");
        return m;
    }

    detail::QV to_qv() const {
        detail::QV v = c_;
        detail::qv_trim(v);
        return v;
    }

    static detail::QV reduce(detail::QV v, unsigned m) {
        auto [q, r] = detail::qv_divmod(std::move(v), detail::cyclotomic_poly(m));
        (void)q;
        return r;
    }

    // Bring two values over a common order, lifting rational-valued sides.
    static void align(Cyc& a, Cyc& b) {
        if (a.m_ == b.m_) return;
        if (a.is_rational()) {
            a = of(b.m_, a.c_[0]);
        } else if (b.is_rational()) {
            b = of(a.m_, b.c_[0]);
        } else {
            throw MixedOrders("cannot combine zeta_" + std::to_string(a.m_) +
                              " with zeta_" + std::to_string(b.m_) + " values");
        }
    }
};

}  // namespace tkos
