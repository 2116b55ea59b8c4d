#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "tkos/clifford.hpp"
#include "tkos/errors.hpp"
#include "tkos/lgmodel.hpp"
#include "tkos/linalg.hpp"
#include "tkos/parse.hpp"

namespace tkos {

/// Element of the twisted Koszul complex of sector h: sum of a_I * theta_I
/// with an implicit trailing theta_{I_h} factor. Index sets avoid I_h and
/// coefficients live in the fixed x-variables.
struct KoszulCochain {
    GroupElt sector;
    std::map<Mask, Poly> terms;

    bool is_zero() const { return terms.empty(); }

    friend bool operator==(const KoszulCochain& a, const KoszulCochain& b) {
        return a.sector == b.sector && a.terms == b.terms;
    }
    friend bool operator!=(const KoszulCochain& a, const KoszulCochain& b) {
        return !(a == b);
    }
};

inline void cochain_add(KoszulCochain& c, Mask I, const Poly& p) {
    if (p.is_zero()) return;
    auto it = c.terms.find(I);
    if (it == c.terms.end()) {
        c.terms.emplace(I, p);
    } else {
        it->second += p;
        if (it->second.is_zero()) c.terms.erase(it);
    }
}

inline KoszulCochain cochain_sum(const KoszulCochain& a, const KoszulCochain& b) {
    if (a.sector != b.sector) throw SectorMismatch("adding cochains of different sectors");
    KoszulCochain r = a;
    for (const auto& [I, p] : b.terms) cochain_add(r, I, p);
    return r;
}

inline KoszulCochain cochain_diff(const KoszulCochain& a, const KoszulCochain& b) {
    if (a.sector != b.sector)
        throw SectorMismatch("subtracting cochains of different sectors");
    KoszulCochain r = a;
    for (const auto& [I, p] : b.terms) cochain_add(r, I, -p);
    return r;
}

inline KoszulCochain cochain_scaled(const KoszulCochain& a, const Cyc& c) {
    KoszulCochain r{a.sector, {}};
    for (const auto& [I, p] : a.terms) cochain_add(r, I, p.scaled(c));
    return r;
}

inline void validate_cochain(const OrbifoldLG& model, const KoszulCochain& c) {
    const SectorData& sec = model.sector(c.sector);
    for (const auto& [I, a] : c.terms) {
        if ((I & sec.moved) != 0)
            throw Error("cochain index set meets the moved set " +
                        indexset_str(sec.moved));
        if ((I & ~full_mask(model.n())) != 0)
            throw Error("cochain index set out of range");
        if (a.is_zero()) throw Error("cochain stores a zero coefficient");
        if (a.nvars() != model.n())
            throw DimensionMismatch("cochain coefficient over wrong variable count");
        if (a.uses_y()) throw Error("cochain coefficient uses y variables");
        for (int i = 1; i <= model.n(); ++i)
            if (has_index(sec.moved, i) && a.uses_var(i - 1))
                throw Error("cochain coefficient uses the moved variable x" +
                            std::to_string(i));
    }
}

/// Z/2 degree (theta-count parity, including the implicit theta_{I_h}).
/// Returns -1 for mixed-parity cochains, 0 for the zero cochain.
inline int cochain_parity(const OrbifoldLG& model, const KoszulCochain& c) {
    const SectorData& sec = model.sector(c.sector);
    int par = -2;
    for (const auto& t : c.terms) {
        int p = (set_size(t.first) + set_size(sec.moved)) & 1;
        if (par == -2)
            par = p;
        else if (par != p)
            return -1;
    }
    return par == -2 ? 0 : par;
}

/// The cochain as a Clifford element: sum of a_I * theta_{I u I_h} with the
/// merge sign of reordering theta_I theta_{I_h} into ascending position.
inline CliffordElt embed_clifford(const OrbifoldLG& model, const KoszulCochain& c) {
    const SectorData& sec = model.sector(c.sector);
    CliffordElt e(model.n());
    for (const auto& [I, a] : c.terms) {
        int s = sign_merge(I, sec.moved);
        e.add_term(CKey{I | sec.moved, 0}, s > 0 ? a : -a);
    }
    return e;
}

inline std::string cochain_str(const OrbifoldLG& model, const KoszulCochain& c) {
    return "[" + model.sector_name(c.sector) + "] " +
           embed_clifford(model, c).str();
}

/// Inverse of cochain_str: `[sector] expression`, theta words only, each word
/// containing the full moved set.
inline KoszulCochain parse_cochain(const OrbifoldLG& model, const std::string& text) {
    std::size_t p = text.find_first_not_of(" \t");
    if (p == std::string::npos || text[p] != '[')
        throw ParseError("expected a [sector] tag", p == std::string::npos ? 0 : p);
    std::size_t q = text.find(']', p);
    if (q == std::string::npos) throw ParseError("unterminated [sector] tag", p);
    GroupElt h;
    try {
        h = model.sector_by_name(text.substr(p + 1, q - p - 1));
    } catch (const UnknownSector& e) {
        // inside the text form a bad tag is a failure to parse the text
        throw ParseError(e.what(), p + 1);
    }
    const SectorData& sec = model.sector(h);
    CliffordElt body = ExprParser::clifford(text.substr(q + 1), model.n(), model.m());
    KoszulCochain c{h, {}};
    for (const auto& [k, a] : body.terms()) {
        if (k.pa != 0)
            throw Error("cochain expression contains a contraction operator");
        if ((k.th & sec.moved) != sec.moved)
            throw Error("cochain term lacks the sector factor theta_" +
                        indexset_str(sec.moved));
        Mask I = k.th & ~sec.moved;
        int s = sign_merge(I, sec.moved);
        cochain_add(c, I, s > 0 ? a : -a);
    }
    validate_cochain(model, c);
    return c;
}

/// Koszul differential: contraction against the partials of W^h. The
/// implicit theta_{I_h} factor is never touched (its partials vanish).
inline KoszulCochain koszul_diff(const OrbifoldLG& model, const KoszulCochain& c) {
    const SectorData& sec = model.sector(c.sector);
    KoszulCochain r{c.sector, {}};
    for (const auto& [I, a] : c.terms) {
        for (int i : bits(I)) {
            const Poly& jac = sec.jacobian[static_cast<std::size_t>(i - 1)];
            if (jac.is_zero()) continue;
            auto [sign, rest] = theta_derivative(I, i);
            Poly t = a * jac;
            cochain_add(r, rest, sign > 0 ? t : -t);
        }
    }
    return r;
}

inline bool is_cocycle(const OrbifoldLG& model, const KoszulCochain& c) {
    return koszul_diff(model, c).is_zero();
}

/// Default degree bound for class-level statements.
inline int default_bound(const OrbifoldLG& model) {
    return std::max(6, 2 * model.W().total_degree());
}

namespace detail {

/// All monomials of total degree exactly d in the x-variables indexed by
/// `vars` (deterministic order).
inline void monos_exact(const std::vector<int>& vars, std::size_t at, int d,
                        Mono& cur, std::vector<Mono>& out) {
    if (at == vars.size()) {
        if (d == 0) out.push_back(cur);
        return;
    }
    std::size_t v = static_cast<std::size_t>(vars[at] - 1);
    for (int k = 0; k <= d; ++k) {
        cur.e[v] = k;
        monos_exact(vars, at + 1, d - k, cur, out);
    }
    cur.e[v] = 0;
}

inline std::vector<Mono> fixed_monomials(int n, Mask fixed, int dmin, int dmax) {
    std::vector<Mono> out;
    std::vector<int> vars = bits(fixed);
    Mono cur{std::vector<int>(2 * static_cast<std::size_t>(n), 0)};
    for (int d = std::max(dmin, 0); d <= dmax; ++d) monos_exact(vars, 0, d, cur, out);
    return out;
}

inline std::vector<Mask> subsets_of_size(Mask universe, int k) {
    std::vector<Mask> out;
    std::vector<int> v = bits(universe);
    int n = static_cast<int>(v.size());
    if (k < 0 || k > n) return out;
    for (Mask pick = 0; pick < (Mask{1} << n); ++pick) {
        if (std::popcount(pick) != k) continue;
        Mask s = 0;
        for (int i = 0; i < n; ++i)
            if (pick & (Mask{1} << i)) s |= bit_of(v[static_cast<std::size_t>(i)]);
        out.push_back(s);
    }
    return out;
}

}  // namespace detail

/// Degree-bounded coboundary solver for one sector. Builds, per theta-count
/// (and per coefficient degree when W^h is homogeneous), the row space of all
/// differential images of basis elements with coefficient degree <= bound;
/// witnesses come out of the row-space coordinates. The built blocks are
/// cached, so repeated class tests in one sector share the elimination work.
class CoboundarySolver {
public:
    CoboundarySolver(const OrbifoldLG& model, const GroupElt& h, int bound)
        : model_(&model), sec_(&model.sector(h)), bound_(bound) {
        homogeneous_ = sec_->Wh.is_homogeneous();
        wdeg_ = sec_->Wh.total_degree();
        maxjac_ = 0;
        for (const auto& j : sec_->jacobian) maxjac_ = std::max(maxjac_, j.total_degree());
    }

    int bound() const { return bound_; }
    const GroupElt& sector() const { return sec_->h; }

    /// Finds s with d(s) = c and coefficient degree <= bound, if one exists.
    /// The witness is re-verified before being returned.
    std::optional<KoszulCochain> solve(const KoszulCochain& c) {
        if (c.sector != sec_->h)
            throw SectorMismatch("cochain sector does not match the solver");
        validate_cochain(*model_, c);
        if (!is_cocycle(*model_, c))
            throw NotCocycle("coboundary solve requires a cocycle");
        KoszulCochain wit{c.sector, {}};
        if (c.terms.empty()) return wit;
        if (sec_->Wh.is_zero()) return std::nullopt;  // zero differential

        // Bucket the target coordinates by block.
        std::map<std::pair<int, int>, std::vector<std::tuple<Mask, Mono, Cyc>>> parts;
        for (const auto& [I, a] : c.terms)
            for (const auto& [mm, cc] : a.terms())
                parts[{set_size(I), homogeneous_ ? mm.total() : -1}].emplace_back(I, mm,
                                                                                   cc);

        for (const auto& [key, entries] : parts) {
            Block& blk = block(key.first, key.second);
            std::vector<Cyc> b(blk.coord.size(), Cyc(0));
            for (const auto& [I, mm, cc] : entries) {
                auto it = blk.coord.find({I, mm});
                if (it == blk.coord.end()) return std::nullopt;  // beyond the bound
                b[it->second] += cc;
            }
            auto x = blk.space.solve(std::move(b));
            if (!x) return std::nullopt;
            for (std::size_t g = 0; g < x->size(); ++g) {
                if ((*x)[g].is_zero()) continue;
                Poly p(model_->n());
                p.add_term(blk.gens[g].second, (*x)[g]);
                cochain_add(wit, blk.gens[g].first, p);
            }
        }
        if (koszul_diff(*model_, wit) != c)
            throw Error("internal: coboundary witness failed re-verification");
        return wit;
    }

private:
    struct PairLess {
        bool operator()(const std::pair<Mask, Mono>& a,
                        const std::pair<Mask, Mono>& b) const {
            if (a.first != b.first) return a.first < b.first;
            return MonoGreater{}(a.second, b.second);
        }
    };
    struct Block {
        std::vector<std::pair<Mask, Mono>> gens;
        std::map<std::pair<Mask, Mono>, std::size_t, PairLess> coord;
        RowSpace space{0};
    };

    const OrbifoldLG* model_;
    const SectorData* sec_;
    int bound_;
    bool homogeneous_;
    int wdeg_, maxjac_;
    std::map<std::pair<int, int>, Block> blocks_;

    /// Block for targets of theta-count t and coefficient degree f
    /// (f = -1: all degrees up to the bound plus the jacobian slack).
    Block& block(int t, int f) {
        auto found = blocks_.find({t, f});
        if (found != blocks_.end()) return found->second;

        int n = model_->n();
        Block blk;
        int cod_lo = (f >= 0) ? f : 0;
        int cod_hi = (f >= 0) ? f : bound_ + maxjac_;
        std::vector<Mono> cod_monos = detail::fixed_monomials(n, sec_->fixed, cod_lo, cod_hi);
        std::size_t idx = 0;
        for (Mask I : detail::subsets_of_size(sec_->fixed, t))
            for (const Mono& mm : cod_monos) blk.coord[{I, mm}] = idx++;
        blk.space = RowSpace(idx);

        int dom_lo = (f >= 0) ? f - (wdeg_ - 1) : 0;
        int dom_hi = (f >= 0) ? dom_lo : bound_;
        if (dom_lo >= 0) {
            std::vector<Mono> dom_monos =
                detail::fixed_monomials(n, sec_->fixed, dom_lo, dom_hi);
            for (Mask J : detail::subsets_of_size(sec_->fixed, t + 1)) {
                for (const Mono& mm : dom_monos) {
                    std::vector<Cyc> v(idx, Cyc(0));
                    bool nonzero = false;
                    Poly base(n);
                    base.add_term(mm, Cyc(1));
                    for (int i : bits(J)) {
                        const Poly& jac =
                            sec_->jacobian[static_cast<std::size_t>(i - 1)];
                        if (jac.is_zero()) continue;
                        auto [sign, rest] = theta_derivative(J, i);
                        Poly img = base * jac;
                        for (const auto& [im, ic] : img.terms()) {
                            auto it = blk.coord.find({rest, im});
                            if (it == blk.coord.end())
                                throw Error("internal: image outside block coordinates");
                            v[it->second] += (sign > 0) ? ic : -ic;
                            nonzero = true;
                        }
                    }
                    if (!nonzero) continue;
                    blk.gens.push_back({J, mm});
                    blk.space.insert(std::move(v));
                }
            }
        }
        return blocks_.emplace(std::make_pair(t, f), std::move(blk)).first->second;
    }
};

/// One-shot wrapper; returns the witness or nothing when no preimage exists
/// within the degree bound (which is not a proof of nontriviality).
inline std::optional<KoszulCochain> coboundary_solve(const OrbifoldLG& model,
                                                     const KoszulCochain& c,
                                                     int max_degree) {
    CoboundarySolver s(model, c.sector, max_degree);
    return s.solve(c);
}

/// Class-level equality: a - b is a coboundary within the bound. Exact
/// equality short-circuits without touching the solver.
inline bool class_equal(CoboundarySolver& solver, const KoszulCochain& a,
                        const KoszulCochain& b,
                        const OrbifoldLG& model) {
    if (a.sector != b.sector)
        throw SectorMismatch("class comparison across different sectors");
    int pa = cochain_parity(model, a), pb = cochain_parity(model, b);
    if (pa >= 0 && pb >= 0 && !a.is_zero() && !b.is_zero() && pa != pb)
        throw DegreeMismatch("class comparison across different Z/2 degrees");
    if (!is_cocycle(model, a) || !is_cocycle(model, b))
        throw NotCocycle("class comparison requires cocycles");
    KoszulCochain diff = cochain_diff(a, b);
    if (diff.is_zero()) return true;
    return solver.solve(diff).has_value();
}

inline bool class_equal(const OrbifoldLG& model, const KoszulCochain& a,
                        const KoszulCochain& b, int max_degree) {
    CoboundarySolver s(model, a.sector, max_degree);
    return class_equal(s, a, b, model);
}

}  // namespace tkos
