#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "tkos/cyclotomic.hpp"
#include "tkos/errors.hpp"

namespace tkos {

/// Exponent vector over the 2n variables x1..xn, y1..yn (x block first).
struct Mono {
    std::vector<int> e;

    int total() const { return std::accumulate(e.begin(), e.end(), 0); }
    bool is_one() const {
        return std::all_of(e.begin(), e.end(), [](int k) { return k == 0; });
    }
    friend bool operator==(const Mono& a, const Mono& b) { return a.e == b.e; }
};

/// Graded lexicographic order with x1 > ... > xn > y1 > ... > yn, arranged so
/// that map iteration visits the leading monomial first.
struct MonoGreater {
    bool operator()(const Mono& a, const Mono& b) const {
        int da = a.total(), db = b.total();
        if (da != db) return da > db;
        // Lex tie-break on the earliest differing variable.
        for (std::size_t k = 0; k < a.e.size(); ++k)
            if (a.e[k] != b.e[k]) return a.e[k] > b.e[k];
        return false;
    }
};

class Poly;

/// Exact division failed; carries the nonzero remainder.
struct NotDivisible : Error {
    explicit NotDivisible(const std::string& msg) : Error(msg) {}
};

/// Sparse multivariate polynomial over Q(zeta_m) in x1..xn, y1..yn.
/// Invariant: no stored zero coefficients; all monomials have length 2n.
class Poly {
public:
    using TermMap = std::map<Mono, Cyc, MonoGreater>;

    Poly() : n_(0) {}
    explicit Poly(int n) : n_(n) {}

    static Poly constant(int n, const Cyc& c) {
        Poly p(n);
        p.add_term(Mono{std::vector<int>(2 * static_cast<std::size_t>(n), 0)}, c);
        return p;
    }
    /// Variable by flat index: 0..n-1 are x1..xn, n..2n-1 are y1..yn.
    static Poly var(int n, int v) {
        Poly p(n);
        std::vector<int> e(2 * static_cast<std::size_t>(n), 0);
        e.at(static_cast<std::size_t>(v)) = 1;
        p.add_term(Mono{std::move(e)}, Cyc(1));
        return p;
    }
    static Poly x(int n, int i) { return var(n, i - 1); }       // 1-based
    static Poly y(int n, int i) { return var(n, n + i - 1); }   // 1-based

    int nvars() const { return n_; }
    const TermMap& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }

    bool is_constant() const {
        return t_.empty() || (t_.size() == 1 && t_.begin()->first.is_one());
    }
    Cyc constant_value() const {
        if (t_.empty()) return Cyc(0);
        if (!is_constant()) throw Error("polynomial is not constant: " + str());
        return t_.begin()->second;
    }

    int total_degree() const {  // -1 for the zero polynomial
        int d = -1;
        for (const auto& [m, c] : t_) d = std::max(d, m.total());
        return d;
    }

    bool is_homogeneous() const {
        if (t_.empty()) return true;
        int d = t_.begin()->first.total();
        for (const auto& [m, c] : t_)
            if (m.total() != d) return false;
        return true;
    }

    bool uses_var(int v) const {
        for (const auto& [m, c] : t_)
            if (m.e[static_cast<std::size_t>(v)] != 0) return true;
        return false;
    }
    bool uses_y() const {
        for (int v = n_; v < 2 * n_; ++v)
            if (uses_var(v)) return true;
        return false;
    }

    void add_term(const Mono& m, const Cyc& c) {
        if (c.is_zero()) return;
        auto it = t_.find(m);
        if (it == t_.end()) {
            t_.emplace(m, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) t_.erase(it);
        }
    }

    Poly& operator+=(const Poly& o) {
        check_same(o);
        for (const auto& [m, c] : o.t_) add_term(m, c);
        return *this;
    }
    Poly& operator-=(const Poly& o) {
        check_same(o);
        for (const auto& [m, c] : o.t_) add_term(m, -c);
        return *this;
    }
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    Poly operator-() const {
        Poly r(n_);
        for (const auto& [m, c] : t_) r.t_.emplace(m, -c);
        return r;
    }

    friend Poly operator*(const Poly& a, const Poly& b) {
        a.check_same(b);
        Poly r(a.n_);
        for (const auto& [ma, ca] : a.t_) {
            for (const auto& [mb, cb] : b.t_) {
                Mono m = ma;
                for (std::size_t k = 0; k < m.e.size(); ++k) m.e[k] += mb.e[k];
                r.add_term(m, ca * cb);
            }
        }
        return r;
    }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }

    Poly scaled(const Cyc& c) const {
        Poly r(n_);
        if (c.is_zero()) return r;
        for (const auto& [m, co] : t_) r.add_term(m, co * c);
        return r;
    }

    Poly pow(int k) const {
        if (k < 0) throw Error("negative power of a polynomial");
        Poly r = constant(n_, Cyc(1));
        for (int i = 0; i < k; ++i) r *= *this;
        return r;
    }

    /// Simultaneous substitution; images[v] replaces variable v, for all 2n
    /// flat indices. Images must share this polynomial's variable count.
    Poly substitute(const std::vector<Poly>& images) const {
        if (images.size() != static_cast<std::size_t>(2 * n_))
            throw Error("substitute: expected one image per variable");
        // Memoized powers per variable.
        std::vector<std::vector<Poly>> pows(images.size());
        auto power = [&](std::size_t v, int k) -> const Poly& {
            auto& tab = pows[v];
            if (tab.empty()) tab.push_back(constant(n_, Cyc(1)));
            while (static_cast<int>(tab.size()) <= k) tab.push_back(tab.back() * images[v]);
            return tab[static_cast<std::size_t>(k)];
        };
        Poly r(n_);
        for (const auto& [m, c] : t_) {
            Poly term = constant(n_, c);
            for (std::size_t v = 0; v < m.e.size(); ++v)
                if (m.e[v] != 0) term *= power(v, m.e[v]);
            r += term;
        }
        return r;
    }

    /// Fast path for diagonal substitutions v -> s[v]*v.
    Poly diag_scale(const std::vector<Cyc>& s) const {
        if (s.size() != static_cast<std::size_t>(2 * n_))
            throw Error("diag_scale: expected one scalar per variable");
        Poly r(n_);
        for (const auto& [m, c] : t_) {
            Cyc f = c;
            for (std::size_t v = 0; v < m.e.size(); ++v)
                for (int k = 0; k < m.e[v]; ++k) f *= s[v];
            r.add_term(m, f);
        }
        return r;
    }

    Poly partial(int v) const {
        Poly r(n_);
        for (const auto& [m, c] : t_) {
            int e = m.e[static_cast<std::size_t>(v)];
            if (e == 0) continue;
            Mono d = m;
            d.e[static_cast<std::size_t>(v)] = e - 1;
            r.add_term(d, c * Cyc(static_cast<long>(e)));
        }
        return r;
    }

    /// Exact quotient; throws NotDivisible when *this is not a multiple of d.
    /// Leading-term division is complete for exact divisibility because the
    /// monomial order is multiplicative.
    Poly exact_div(const Poly& d) const {
        check_same(d);
        if (d.is_zero()) throw Error("division by the zero polynomial");
        Poly q(n_), r = *this;
        const auto& [dm, dc] = *d.t_.begin();
        while (!r.is_zero()) {
            const auto& [rm, rc] = *r.t_.begin();
            Mono qm = rm;
            bool ok = true;
            for (std::size_t k = 0; k < qm.e.size(); ++k) {
                qm.e[k] -= dm.e[k];
                if (qm.e[k] < 0) { ok = false; break; }
            }
            if (!ok)
                throw NotDivisible("not divisible; remainder " + r.str());
            Poly t(n_);
            t.add_term(qm, rc / dc);
            q += t;
            r -= t * d;
        }
        return q;
    }

    friend bool operator==(const Poly& a, const Poly& b) {
        return a.n_ == b.n_ && a.t_ == b.t_;
    }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    /// Canonical text, leading term first, explicit '*' and '^'.
    std::string str() const {
        if (t_.empty()) return "0";
        std::string out;
        for (const auto& [m, c] : t_) {
            std::string mono = mono_str(m);
            std::string term;
            if (mono.empty()) {
                std::string cs = c.str();
                term = (c.term_count() > 1 && !out.empty()) ? "(" + cs + ")" : cs;
            } else if (c.term_count() > 1) {
                term = "(" + c.str() + ")*" + mono;
            } else if (c == Cyc(1)) {
                term = mono;
            } else if (c == Cyc(-1)) {
                term = "-" + mono;
            } else {
                term = c.str() + "*" + mono;
            }
            if (out.empty())
                out = term;
            else
                out += (term[0] == '-' ? "" : "+") + term;
        }
        return out;
    }

    /// Number of monomials (printing helper).
    std::size_t term_count() const { return t_.size(); }

private:
    int n_;
    TermMap t_;

    void check_same(const Poly& o) const {
        if (n_ != o.n_)
            throw DimensionMismatch("polynomials over different variable counts");
    }

    std::string mono_str(const Mono& m) const {
        std::string out;
        for (std::size_t v = 0; v < m.e.size(); ++v) {
            if (m.e[v] == 0) continue;
            std::string name =
                (static_cast<int>(v) < n_)
                    ? "x" + std::to_string(v + 1)
                    : "y" + std::to_string(v + 1 - static_cast<std::size_t>(n_));
            if (!out.empty()) out += "*";
            out += name;
            if (m.e[v] > 1) out += "^" + std::to_string(m.e[v]);
        }
        return out;
    }
};

}  // namespace tkos
