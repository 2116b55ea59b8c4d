#pragma once

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tkos/clifford.hpp"
#include "tkos/errors.hpp"
#include "tkos/koszul.hpp"
#include "tkos/kosproj.hpp"
#include "tkos/lgmodel.hpp"
#include "tkos/mf.hpp"
#include "tkos/twist.hpp"

namespace tkos {

/// Sector translation: turns a morphism Delta_src -> Delta_tgt into one
/// Delta_{h' src} -> Delta_{h' tgt} by substituting y_i -> (h'_i)^{-1} y_i in
/// the coefficients and acting on the Clifford word by the inverse of h'.
inline MFMorphism translate(const OrbifoldLG& model, const GroupElt& hp,
                            const MFMorphism& phi) {
    int n = model.n();
    int m = model.m();
    std::vector<Cyc> s(2 * static_cast<std::size_t>(n), Cyc(1));
    for (int i = 1; i <= n; ++i)
        s[static_cast<std::size_t>(n + i - 1)] =
            Cyc::zeta(static_cast<unsigned>(m), -hp.k[static_cast<std::size_t>(i - 1)]);
    CliffordElt body(n);
    for (const auto& [key, p] : phi.body.terms()) {
        long e = 0;
        for (int i : bits(key.th)) e += hp.k[static_cast<std::size_t>(i - 1)];
        for (int j : bits(key.pa)) e -= hp.k[static_cast<std::size_t>(j - 1)];
        body.add_term(key, p.diag_scale(s).scaled(
                               Cyc::zeta(static_cast<unsigned>(m), e)));
    }
    return MFMorphism{model.mul(hp, phi.src), model.mul(hp, phi.tgt), body};
}

/// The cup product: project the composition of the translated exponential of
/// the left factor with the exponential of the right factor. Lands in the
/// product sector. Operands must be cocycles; the composed morphism is
/// checked closed as an internal consistency assertion.
inline KoszulCochain cup(const OrbifoldLG& model, const KoszulCochain& alpha,
                         const KoszulCochain& beta) {
    if (!is_cocycle(model, alpha) || !is_cocycle(model, beta))
        throw NotCocycle("cup product requires cocycle operands");
    const GroupElt& h = alpha.sector;
    const GroupElt& hp = beta.sector;
    MFMorphism left = translate(model, hp, exp_eta(model, h, alpha));
    MFMorphism right = exp_eta(model, hp, beta);
    MFMorphism prod = mf_compose(left, right);
    if (!is_closed(model, prod))
        throw Error("internal: cup composition is not closed");
    return kos_project_fast(model, prod);
}

/// Formal sum of cochains across sectors (zero components are not stored).
using CochainSum = std::map<GroupElt, KoszulCochain>;

inline void sum_add(CochainSum& s, const KoszulCochain& c) {
    if (c.is_zero()) return;
    auto it = s.find(c.sector);
    if (it == s.end()) {
        s.emplace(c.sector, c);
        return;
    }
    it->second = cochain_sum(it->second, c);
    if (it->second.is_zero()) s.erase(it);
}

inline CochainSum sum_of(const KoszulCochain& c) {
    CochainSum s;
    sum_add(s, c);
    return s;
}

inline CochainSum sum_plus(const CochainSum& a, const CochainSum& b) {
    CochainSum r = a;
    for (const auto& [h, c] : b) sum_add(r, c);
    return r;
}

inline CochainSum sum_minus(const CochainSum& a, const CochainSum& b) {
    CochainSum r = a;
    for (const auto& [h, c] : b) sum_add(r, cochain_scaled(c, Cyc(-1)));
    return r;
}

/// Canonical text form of a formal sum: components joined by " + ", or "0".
inline std::string sum_str(const OrbifoldLG& model, const CochainSum& s) {
    std::string out;
    for (const auto& [h, c] : s) {
        if (!out.empty()) out += " + ";
        out += cochain_str(model, c);
    }
    return out.empty() ? "0" : out;
}

/// Parses a formal sum "[h1] expr1 + [h2] expr2 + ..."; a '-' joining two
/// components negates the component that follows it. Plain "0" parses as the
/// empty sum.
inline CochainSum parse_cochain_sum(const OrbifoldLG& model, const std::string& text) {
    auto is_space = [](char ch) { return std::isspace(static_cast<unsigned char>(ch)) != 0; };
    std::vector<std::size_t> tags;
    for (std::size_t i = 0; i < text.size(); ++i)
        if (text[i] == '[') tags.push_back(i);
    if (tags.empty()) {
        std::string t = text;
        t.erase(std::remove_if(t.begin(), t.end(), is_space), t.end());
        if (t == "0") return {};
        throw ParseError("expected a [sector]-tagged cochain expression", 0);
    }
    for (std::size_t i = 0; i < tags[0]; ++i)
        if (!is_space(text[i]))
            throw ParseError("unexpected text before the first [sector] tag", i);
    CochainSum out;
    bool negate = false;
    for (std::size_t k = 0; k < tags.size(); ++k) {
        std::size_t end = (k + 1 < tags.size()) ? tags[k + 1] : text.size();
        std::string piece = text.substr(tags[k], end - tags[k]);
        bool next_negate = false;
        while (!piece.empty() && is_space(piece.back())) piece.pop_back();
        if (k + 1 < tags.size()) {
            if (piece.empty() || (piece.back() != '+' && piece.back() != '-'))
                throw ParseError("components of a cochain sum must be joined by '+' or '-'",
                                 end);
            next_negate = piece.back() == '-';
            piece.pop_back();
        }
        KoszulCochain c = parse_cochain(model, piece);
        sum_add(out, negate ? cochain_scaled(c, Cyc(-1)) : c);
        negate = next_negate;
    }
    return out;
}

/// Bilinear extension of the cup product to formal sums.
inline CochainSum cup(const OrbifoldLG& model, const CochainSum& a,
                      const CochainSum& b) {
    CochainSum r;
    for (const auto& [ha, ca] : a)
        for (const auto& [hb, cb] : b) sum_add(r, cup(model, ca, cb));
    return r;
}

/// Shared degree-bounded class arithmetic: one cached coboundary solver per
/// sector, plus class comparison over formal sums.
class ClassContext {
public:
    ClassContext(const OrbifoldLG& model, int bound) : model_(&model), bound_(bound) {}

    int bound() const { return bound_; }

    CoboundarySolver& solver(const GroupElt& h) {
        auto it = solvers_.find(h);
        if (it == solvers_.end())
            it = solvers_.emplace(h, CoboundarySolver(*model_, h, bound_)).first;
        return it->second;
    }

    /// Per-sector coboundary witnesses for the whole sum, or nothing if some
    /// component has no witness within the bound.
    std::optional<std::map<GroupElt, KoszulCochain>> witnesses(const CochainSum& s) {
        std::map<GroupElt, KoszulCochain> out;
        for (const auto& [h, c] : s) {
            auto w = solver(h).solve(c);
            if (!w) return std::nullopt;
            out.emplace(h, std::move(*w));
        }
        return out;
    }

    bool zero_class(const CochainSum& s) { return witnesses(s).has_value(); }

    bool equal(const CochainSum& a, const CochainSum& b) {
        return zero_class(sum_minus(a, b));
    }

private:
    const OrbifoldLG* model_;
    int bound_;
    std::map<GroupElt, CoboundarySolver> solvers_;
};

/// Product plus class data: the representative a cup b together with the
/// witness certifying class equality against `expect` when one is supplied.
struct ClassReport {
    KoszulCochain representative;
    bool compared = false;
    bool equal = false;
    std::optional<KoszulCochain> witness;  // d(witness) = representative - expect
};

inline ClassReport cup_class(const OrbifoldLG& model, const KoszulCochain& alpha,
                             const KoszulCochain& beta,
                             const std::optional<KoszulCochain>& expect,
                             int max_degree) {
    ClassReport rep;
    rep.representative = cup(model, alpha, beta);
    if (expect) {
        if (expect->sector != rep.representative.sector)
            throw SectorMismatch("expected class lives in sector (" +
                                 expect->sector.str() + ") but the product is in (" +
                                 rep.representative.sector.str() + ")");
        rep.compared = true;
        KoszulCochain diff = cochain_diff(rep.representative, *expect);
        CoboundarySolver solver(model, diff.sector, max_degree);
        auto w = solver.solve(diff);
        rep.equal = w.has_value();
        if (w) rep.witness = std::move(*w);
    }
    return rep;
}

}  // namespace tkos
