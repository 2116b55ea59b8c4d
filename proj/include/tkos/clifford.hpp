#pragma once

#include <map>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "tkos/errors.hpp"
#include "tkos/group.hpp"
#include "tkos/indexset.hpp"
#include "tkos/poly.hpp"

namespace tkos {

/// Normal-ordered Clifford word: theta block, then contraction block.
struct CKey {
    Mask th = 0, pa = 0;
    friend bool operator==(const CKey& a, const CKey& b) {
        return a.th == b.th && a.pa == b.pa;
    }
};

/// Grade (|I|+|J|) first, then the index sets lexicographically.
struct CKeyLess {
    bool operator()(const CKey& a, const CKey& b) const {
        int ga = set_size(a.th) + set_size(a.pa);
        int gb = set_size(b.th) + set_size(b.pa);
        if (ga != gb) return ga < gb;
        if (a.th != b.th) return indexset_less(a.th, b.th);
        return indexset_less(a.pa, b.pa);
    }
};

/// Element of the Clifford algebra on theta_1..theta_n, partial_1..partial_n
/// over the polynomial ring, kept in normal order; relations
/// theta_i theta_j = -theta_j theta_i, partial_i partial_j = -partial_j partial_i,
/// partial_i theta_j = -theta_j partial_i + delta_ij.
class CliffordElt {
public:
    using TermMap = std::map<CKey, Poly, CKeyLess>;

    CliffordElt() : n_(0) {}
    explicit CliffordElt(int n) : n_(n) {}

    static CliffordElt scalar(int n, const Poly& p) {
        CliffordElt r(n);
        r.add_term(CKey{0, 0}, p);
        return r;
    }
    static CliffordElt one(int n) { return scalar(n, Poly::constant(n, Cyc(1))); }
    static CliffordElt term(int n, Mask th, Mask pa, const Poly& p) {
        CliffordElt r(n);
        r.add_term(CKey{th, pa}, p);
        return r;
    }
    static CliffordElt theta(int n, int i) {
        return term(n, bit_of(i), 0, Poly::constant(n, Cyc(1)));
    }
    static CliffordElt partial_op(int n, int i) {
        return term(n, 0, bit_of(i), Poly::constant(n, Cyc(1)));
    }

    int nvars() const { return n_; }
    const TermMap& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }

    void add_term(const CKey& k, const Poly& p) {
        if (p.is_zero()) return;
        auto it = t_.find(k);
        if (it == t_.end()) {
            t_.emplace(k, p);
        } else {
            it->second += p;
            if (it->second.is_zero()) t_.erase(it);
        }
    }

    CliffordElt& operator+=(const CliffordElt& o) {
        check_same(o);
        for (const auto& [k, p] : o.t_) add_term(k, p);
        return *this;
    }
    CliffordElt& operator-=(const CliffordElt& o) {
        check_same(o);
        for (const auto& [k, p] : o.t_) add_term(k, -p);
        return *this;
    }
    friend CliffordElt operator+(CliffordElt a, const CliffordElt& b) { return a += b; }
    friend CliffordElt operator-(CliffordElt a, const CliffordElt& b) { return a -= b; }
    CliffordElt operator-() const {
        CliffordElt r(n_);
        for (const auto& [k, p] : t_) r.t_.emplace(k, -p);
        return r;
    }

    CliffordElt scaled(const Poly& f) const {
        CliffordElt r(n_);
        for (const auto& [k, p] : t_) r.add_term(k, p * f);
        return r;
    }
    CliffordElt scaled(const Cyc& c) const {
        CliffordElt r(n_);
        for (const auto& [k, p] : t_) r.add_term(k, p.scaled(c));
        return r;
    }

    friend bool operator==(const CliffordElt& a, const CliffordElt& b) {
        return a.n_ == b.n_ && a.t_ == b.t_;
    }
    friend bool operator!=(const CliffordElt& a, const CliffordElt& b) { return !(a == b); }

    /// Z/2 degree of a word.
    static int term_parity(const CKey& k) { return (set_size(k.th) + set_size(k.pa)) & 1; }

    std::pair<CliffordElt, CliffordElt> split_parity() const {
        CliffordElt ev(n_), od(n_);
        for (const auto& [k, p] : t_) (term_parity(k) ? od : ev).add_term(k, p);
        return {ev, od};
    }
    bool is_homogeneous() const {
        if (t_.empty()) return true;
        int par = term_parity(t_.begin()->first);
        for (const auto& [k, p] : t_)
            if (term_parity(k) != par) return false;
        return true;
    }
    /// Z/2 degree of a homogeneous element (0 for the zero element).
    int parity() const {
        if (t_.empty()) return 0;
        if (!is_homogeneous()) throw Error("element has mixed Z/2 degree");
        return term_parity(t_.begin()->first);
    }

    /// Canonical text: words as `t1 t2 d1`, terms in the key order, coefficient
    /// prefixes with multi-term polynomials parenthesized.
    std::string str() const {
        if (t_.empty()) return "0";
        // a coefficient must be wrapped when its printed form carries a
        // top-level sign past the first character, e.g. a cyclotomic constant
        // like -2-2*z, or it would rebind as a separate summand
        auto loose = [](const std::string& s) {
            int depth = 0;
            for (std::size_t i = 0; i < s.size(); ++i) {
                if (s[i] == '(') ++depth;
                if (s[i] == ')') --depth;
                if ((s[i] == '+' || s[i] == '-') && depth == 0 && i > 0) return true;
            }
            return false;
        };
        std::string out;
        for (const auto& [k, p] : t_) {
            std::string word = word_str(k);
            std::string term;
            std::string ps = p.str();
            if (word.empty()) {
                term = ps;  // a summand, never a factor: no parentheses
            } else if (p == Poly::constant(n_, Cyc(1))) {
                term = word;
            } else if (p == Poly::constant(n_, Cyc(-1))) {
                term = "-" + word;
            } else if (loose(ps)) {
                term = "(" + ps + ")*" + word;
            } else {
                term = ps + "*" + word;
            }
            if (out.empty())
                out = term;
            else
                out += (term[0] == '-' ? "" : "+") + term;
        }
        return out;
    }

private:
    int n_;
    TermMap t_;

    void check_same(const CliffordElt& o) const {
        if (n_ != o.n_)
            throw DimensionMismatch("Clifford elements over different variable counts");
    }

    static std::string word_str(const CKey& k) {
        std::string out;
        for (int i : bits(k.th)) {
            if (!out.empty()) out += " ";
            out += "t" + std::to_string(i);
        }
        for (int j : bits(k.pa)) {
            if (!out.empty()) out += " ";
            out += "d" + std::to_string(j);
        }
        return out;
    }
};

namespace detail {

/// Normal-orders partial_B * theta_C: emits (T, P, sign) triples standing for
/// sign * theta_T partial_P. Recursion peels the largest contraction index.
inline void mul_db_rec(Mask B, Mask C, Mask P, int sign,
                       std::vector<std::tuple<Mask, Mask, int>>& out) {
    if (B == 0) {
        out.emplace_back(C, P, sign);
        return;
    }
    int b = 0;
    for (Mask t = B; t != 0; t >>= 1) ++b;  // highest set index (1-based)
    Mask rest = B & ~bit_of(b);
    if (has_index(C, b)) {
        int s = (position_in(C, b) % 2 == 1) ? 1 : -1;  // (-1)^{pos-1}
        mul_db_rec(rest, C & ~bit_of(b), P, sign * s, out);
    }
    int pass = (set_size(C) % 2 == 0) ? 1 : -1;  // carry partial_b across theta_C
    mul_db_rec(rest, C, P | bit_of(b), sign * pass, out);
}

}  // namespace detail

inline CliffordElt cliff_mul(const CliffordElt& a, const CliffordElt& b) {
    if (a.nvars() != b.nvars())
        throw DimensionMismatch("Clifford product over different variable counts");
    CliffordElt r(a.nvars());
    for (const auto& [ka, pa] : a.terms()) {
        for (const auto& [kb, pb] : b.terms()) {
            std::vector<std::tuple<Mask, Mask, int>> mid;
            detail::mul_db_rec(ka.pa, kb.th, 0, 1, mid);
            Poly coeff = pa * pb;
            for (const auto& [T, P, s] : mid) {
                if ((ka.th & T) != 0 || (P & kb.pa) != 0) continue;
                int sign = s * sign_merge(ka.th, T) * sign_merge(P, kb.pa);
                r.add_term(CKey{ka.th | T, P | kb.pa}, sign > 0 ? coeff : -coeff);
            }
        }
    }
    return r;
}

/// Action of an element on the exterior-algebra basis vector theta_L,
/// computed by direct contraction and wedging (independent of cliff_mul).
inline std::map<Mask, Poly> apply_to_basis(const CliffordElt& a, Mask L) {
    std::map<Mask, Poly> out;
    for (const auto& [k, p] : a.terms()) {
        Mask cur = L;
        int sign = 1;
        bool dead = false;
        auto bs = bits(k.pa);
        for (auto it = bs.rbegin(); it != bs.rend(); ++it) {  // rightmost acts first
            if (!has_index(cur, *it)) { dead = true; break; }
            if (std::popcount(cur & (bit_of(*it) - 1u)) % 2 == 1) sign = -sign;
            cur &= ~bit_of(*it);
        }
        if (dead) continue;
        auto as = bits(k.th);
        for (auto it = as.rbegin(); it != as.rend(); ++it) {
            if (has_index(cur, *it)) { dead = true; break; }
            if (std::popcount(cur & (bit_of(*it) - 1u)) % 2 == 1) sign = -sign;
            cur |= bit_of(*it);
        }
        if (dead) continue;
        auto itr = out.find(cur);
        if (itr == out.end())
            out.emplace(cur, sign > 0 ? p : -p);
        else
            itr->second += (sign > 0 ? p : -p);
    }
    for (auto it = out.begin(); it != out.end();)
        it = it->second.is_zero() ? out.erase(it) : std::next(it);
    return out;
}

/// Left-derivation derivative of the monomial theta_I by theta_i:
/// returns (sign, I minus i), sign = (-1)^{position-1}; sign 0 when i is absent.
inline std::pair<int, Mask> theta_derivative(Mask I, int i) {
    if (!has_index(I, i)) return {0, I};
    int sign = (position_in(I, i) % 2 == 1) ? 1 : -1;
    return {sign, I & ~bit_of(i)};
}

/// Diagonal group action: x_i, y_i scale by the eigenvalue, theta_i by its
/// inverse, partial_i by the eigenvalue itself.
inline CliffordElt group_act(const GroupElt& h, int m, const CliffordElt& a) {
    int n = a.nvars();
    if (static_cast<int>(h.k.size()) != n)
        throw DimensionMismatch("group element rank does not match variable count");
    std::vector<Cyc> s(2 * static_cast<std::size_t>(n), Cyc(1));
    for (int i = 1; i <= n; ++i) {
        Cyc ev = eigenvalue(h, m, i);
        s[static_cast<std::size_t>(i - 1)] = ev;
        s[static_cast<std::size_t>(n + i - 1)] = ev;
    }
    CliffordElt r(n);
    for (const auto& [k, p] : a.terms()) {
        long e = 0;
        for (int i : bits(k.th)) e -= h.k[static_cast<std::size_t>(i - 1)];
        for (int j : bits(k.pa)) e += h.k[static_cast<std::size_t>(j - 1)];
        r.add_term(k, p.diag_scale(s).scaled(Cyc::zeta(static_cast<unsigned>(m), e)));
    }
    return r;
}

}  // namespace tkos
