#pragma once

#include "tkos/clifford.hpp"
#include "tkos/errors.hpp"
#include "tkos/lgmodel.hpp"

namespace tkos {

/// Morphism of Koszul matrix factorizations Delta_src -> Delta_tgt, carried
/// by a Clifford element acting through the module action.
struct MFMorphism {
    GroupElt src, tgt;
    CliffordElt body;

    friend bool operator==(const MFMorphism& a, const MFMorphism& b) {
        return a.src == b.src && a.tgt == b.tgt && a.body == b.body;
    }
    friend bool operator!=(const MFMorphism& a, const MFMorphism& b) {
        return !(a == b);
    }
};

/// Twisted differential of Delta_h:
/// sum_i (y_i - h_i x_i) theta_i + nabla_i W(hx, y) partial_i.
inline CliffordElt delta_diff(const OrbifoldLG& model, const GroupElt& h) {
    model.sector(h);  // membership check
    int n = model.n();
    CliffordElt d(n);
    for (int i = 1; i <= n; ++i) {
        Poly lin = Poly::y(n, i) - Poly::x(n, i).scaled(eigenvalue(h, model.m(), i));
        d.add_term(CKey{bit_of(i), 0}, lin);
        d.add_term(CKey{0, bit_of(i)}, model.nabla_at(h, i));
    }
    return d;
}

/// d_h^2 = (W(y) - W(x)) * id.
inline bool check_mf(const OrbifoldLG& model, const GroupElt& h) {
    CliffordElt d = delta_diff(model, h);
    return cliff_mul(d, d) == CliffordElt::scalar(model.n(), model.box_minus());
}

/// Hom-complex differential D(phi) = d_tgt phi - (-1)^{|phi|} phi d_src,
/// extended additively over the Z/2-homogeneous parts of the body.
inline MFMorphism hom_diff(const OrbifoldLG& model, const MFMorphism& phi) {
    CliffordElt dt = delta_diff(model, phi.tgt);
    CliffordElt ds = delta_diff(model, phi.src);
    auto [even, odd] = phi.body.split_parity();
    CliffordElt out = cliff_mul(dt, even) - cliff_mul(even, ds);
    out += cliff_mul(dt, odd) + cliff_mul(odd, ds);
    return MFMorphism{phi.src, phi.tgt, out};
}

inline bool is_closed(const OrbifoldLG& model, const MFMorphism& phi) {
    return hom_diff(model, phi).body.is_zero();
}

/// Composition phi after psi (psi: a -> b, phi: b -> c).
inline MFMorphism mf_compose(const MFMorphism& phi, const MFMorphism& psi) {
    if (phi.src != psi.tgt)
        throw SectorMismatch("composition endpoints do not match");
    return MFMorphism{psi.src, phi.tgt, cliff_mul(phi.body, psi.body)};
}

}  // namespace tkos
