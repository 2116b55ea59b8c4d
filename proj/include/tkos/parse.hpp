#pragma once

#include <cctype>
#include <string>

#include "tkos/clifford.hpp"
#include "tkos/errors.hpp"
#include "tkos/poly.hpp"

namespace tkos {

/// Recursive-descent parser for polynomial and Clifford expressions.
///
///   expr   := ['+'|'-'] term (('+'|'-') term)*
///   term   := factor (('*'|'/')? factor)*      (juxtaposition multiplies)
///   factor := atom ['^' integer]
///   atom   := integer | 'z' | x<k> | y<k> | t<k> | d<k> | '(' expr ')'
///
/// Division requires a nonzero constant divisor. `z` is the primitive m-th
/// root of unity. t/d tokens are rejected in polynomial mode.
class ExprParser {
public:
    static CliffordElt clifford(const std::string& text, int n, int m) {
        ExprParser p(text, n, m, false);
        CliffordElt r = p.parse_expr();
        p.skip_ws();
        if (p.pos_ != text.size()) p.fail("unexpected trailing input");
        return r;
    }

    static Poly poly(const std::string& text, int n, int m) {
        ExprParser p(text, n, m, true);
        CliffordElt r = p.parse_expr();
        p.skip_ws();
        if (p.pos_ != text.size()) p.fail("unexpected trailing input");
        return scalar_part(r, n);
    }

private:
    ExprParser(const std::string& s, int n, int m, bool poly_mode)
        : s_(s), pos_(0), n_(n), m_(m), poly_mode_(poly_mode) {}

    const std::string& s_;
    std::size_t pos_;
    int n_, m_;
    bool poly_mode_;

    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }

    bool starts_factor() {
        skip_ws();
        char c = peek();
        return std::isdigit(static_cast<unsigned char>(c)) || c == '(' || c == 'x' ||
               c == 'y' || c == 't' || c == 'd' || c == 'z';
    }

    CliffordElt parse_expr() {
        skip_ws();
        bool neg = false;
        if (peek() == '+' || peek() == '-') {
            neg = (peek() == '-');
            ++pos_;
        }
        CliffordElt acc = parse_term();
        if (neg) acc = -acc;
        for (;;) {
            skip_ws();
            char c = peek();
            if (c != '+' && c != '-') break;
            ++pos_;
            CliffordElt t = parse_term();
            if (c == '+')
                acc += t;
            else
                acc -= t;
        }
        return acc;
    }

    CliffordElt parse_term() {
        CliffordElt acc = parse_factor();
        for (;;) {
            skip_ws();
            char c = peek();
            if (c == '*' || c == '/') {
                ++pos_;
                CliffordElt rhs = parse_factor();
                if (c == '*') {
                    acc = cliff_mul(acc, rhs);
                } else {
                    Cyc d = constant_of(rhs);
                    if (d.is_zero()) fail("division by zero");
                    acc = acc.scaled(d.inverse());
                }
            } else if (starts_factor()) {
                acc = cliff_mul(acc, parse_factor());
            } else {
                break;
            }
        }
        return acc;
    }

    CliffordElt parse_factor() {
        CliffordElt base = parse_atom();
        skip_ws();
        if (peek() == '^') {
            ++pos_;
            int k = parse_index("exponent");
            CliffordElt acc = CliffordElt::one(n_);
            for (int i = 0; i < k; ++i) acc = cliff_mul(acc, base);
            return acc;
        }
        return base;
    }

    CliffordElt parse_atom() {
        skip_ws();
        char c = peek();
        if (c == '(') {
            ++pos_;
            CliffordElt inner = parse_expr();
            skip_ws();
            if (peek() != ')') fail("expected ')'");
            ++pos_;
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
            mpq_class v(s_.substr(start, pos_ - start));
            return CliffordElt::scalar(n_, Poly::constant(n_, Cyc::of(static_cast<unsigned>(m_), v)));
        }
        if (c == 'z') {
            ++pos_;
            if (std::isdigit(static_cast<unsigned char>(peek())))
                fail("the root of unity takes no index (write z^k)");
            return CliffordElt::scalar(
                n_, Poly::constant(n_, Cyc::zeta(static_cast<unsigned>(m_))));
        }
        if (c == 'x' || c == 'y' || c == 't' || c == 'd') {
            ++pos_;
            int k = parse_index("variable index");
            if (k < 1 || k > n_) fail("variable index out of range");
            if (c == 'x') return CliffordElt::scalar(n_, Poly::x(n_, k));
            if (c == 'y') return CliffordElt::scalar(n_, Poly::y(n_, k));
            if (poly_mode_) fail("theta/contraction token in a polynomial context");
            if (c == 't') return CliffordElt::theta(n_, k);
            return CliffordElt::partial_op(n_, k);
        }
        fail("expected a number, variable, or '('");
    }

    int parse_index(const std::string& what) {
        if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected " + what);
        long v = 0;
        while (std::isdigit(static_cast<unsigned char>(peek()))) {
            v = v * 10 + (peek() - '0');
            if (v > 100000) fail(what + " too large");
            ++pos_;
        }
        return static_cast<int>(v);
    }

    Cyc constant_of(const CliffordElt& e) const {
        Poly p = scalar_part(e, n_);
        if (!p.is_constant()) throw ParseError("division requires a constant divisor", pos_);
        return p.constant_value();
    }

    static Poly scalar_part(const CliffordElt& e, int n) {
        Poly p(n);
        for (const auto& [k, q] : e.terms()) {
            if (k.th != 0 || k.pa != 0)
                throw ParseError("expression is not a pure polynomial", 0);
            p += q;
        }
        return p;
    }
};

}  // namespace tkos
