#pragma once

#include <map>
#include <vector>

#include "tkos/clifford.hpp"
#include "tkos/errors.hpp"
#include "tkos/koszul.hpp"
#include "tkos/lgmodel.hpp"
#include "tkos/mf.hpp"

namespace tkos {

/// Coordinates of the top projection of a morphism: for each J (with
/// complementary K = {1..n} minus J) the coefficient b of theta_J theta_K
/// partial_{K reversed}. Entries with zero coefficient are not stored.
struct TopForm {
    int n = 0;
    std::map<Mask, Poly> b;  // keyed by J

    Mask k_of(Mask J) const { return full_mask(n) & ~J; }
};

/// The projection onto the top exterior power as a Clifford operator:
/// theta_1..theta_n partial_n..partial_1.
inline CliffordElt pr_element(int n) {
    Cyc sign(sign_rev(n));  // reversal parity of the descending contraction block
    return CliffordElt::term(n, full_mask(n), full_mask(n),
                             Poly::constant(n, sign));
}

/// Composes the top projection with the morphism and reads off the b
/// coordinates: a term theta_{1..n} partial_K of pr composed with phi equals
/// theta_J theta_K partial_{K reversed} up to the two reordering parities.
inline TopForm pr_top(const MFMorphism& phi) {
    int n = phi.body.nvars();
    Mask T = full_mask(n);
    CliffordElt prphi = cliff_mul(pr_element(n), phi.body);
    TopForm t;
    t.n = n;
    for (const auto& [key, c] : prphi.terms()) {
        if (key.th != T) continue;
        Mask K = key.pa;
        Mask J = T & ~K;
        int s = sign_merge(J, K) * sign_rev(set_size(K));
        t.b.emplace(J, s > 0 ? c : -c);
    }
    return t;
}

/// Keeps the entries whose J contains the moved set of h.
inline TopForm pr_plus(const OrbifoldLG& model, const MFMorphism& phi,
                       const GroupElt& h) {
    const SectorData& sec = model.sector(h);
    TopForm t = pr_top(phi);
    for (auto it = t.b.begin(); it != t.b.end();)
        it = ((it->first & sec.moved) == sec.moved) ? std::next(it) : t.b.erase(it);
    return t;
}

/// Restriction to the fixed locus of h: moved x variables to zero, every y
/// variable to the fixed-locus value of its x partner.
inline Poly restrict_fix(const OrbifoldLG& model, const GroupElt& h, const Poly& p) {
    const SectorData& sec = model.sector(h);
    int n = model.n();
    std::vector<Poly> images;
    for (int i = 1; i <= n; ++i)
        images.push_back(has_index(sec.moved, i) ? Poly(n) : Poly::x(n, i));
    for (int i = 1; i <= n; ++i)
        images.push_back(has_index(sec.moved, i) ? Poly(n) : Poly::x(n, i));
    return p.substitute(images);
}

inline CliffordElt restrict_fix(const OrbifoldLG& model, const GroupElt& h,
                                const CliffordElt& e) {
    CliffordElt r(e.nvars());
    for (const auto& [key, p] : e.terms()) r.add_term(key, restrict_fix(model, h, p));
    return r;
}

/// The projection to the twisted Koszul complex of the target sector:
/// the (+)-part of the top form, theta_J rewritten as theta_{J minus I_h}
/// theta_{I_h} with its reordering parity, coefficients restricted to the
/// fixed locus. Defined on all morphisms out of the identity sector.
inline KoszulCochain kos_project(const OrbifoldLG& model, const MFMorphism& phi) {
    if (!is_identity(phi.src))
        throw SectorMismatch("projection requires a morphism out of the identity sector");
    const GroupElt& h = phi.tgt;
    const SectorData& sec = model.sector(h);
    TopForm t = pr_top(phi);
    KoszulCochain c{h, {}};
    for (const auto& [J, bJ] : t.b) {
        if ((J & sec.moved) != sec.moved) continue;
        Mask I = J & ~sec.moved;
        int s = sign_merge(I, sec.moved);
        Poly r = restrict_fix(model, h, bJ);
        cochain_add(c, I, s > 0 ? r : -r);
    }
    validate_cochain(model, c);
    return c;
}

/// Fast path for closed morphisms: contraction terms are discarded outright
/// and only the theta words containing theta_{I_h} survive.
inline KoszulCochain kos_project_fast(const OrbifoldLG& model, const MFMorphism& phi) {
    if (!is_identity(phi.src))
        throw SectorMismatch("projection requires a morphism out of the identity sector");
    if (!is_closed(model, phi))
        throw NotClosed("fast projection is only valid for closed morphisms");
    const SectorData& sec = model.sector(phi.tgt);
    KoszulCochain c{phi.tgt, {}};
    for (const auto& [key, p] : phi.body.terms()) {
        if (key.pa != 0) continue;
        if ((key.th & sec.moved) != sec.moved) continue;
        Mask I = key.th & ~sec.moved;
        int s = sign_merge(I, sec.moved);
        Poly r = restrict_fix(model, phi.tgt, p);
        cochain_add(c, I, s > 0 ? r : -r);
    }
    validate_cochain(model, c);
    return c;
}

}  // namespace tkos
