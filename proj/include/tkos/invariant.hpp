#pragma once

#include <string>
#include <vector>

#include "tkos/errors.hpp"
#include "tkos/koszul.hpp"
#include "tkos/lgmodel.hpp"

namespace tkos {

/// Group action on a twisted Koszul cochain: coefficients transform through
/// x_i -> g_i x_i, and the theta word (the explicit indices and the implicit
/// theta_{I_h} factor alike) scales by the inverse eigenvalues. The sector is
/// preserved because the group is abelian.
inline KoszulCochain act_cochain(const OrbifoldLG& model, const GroupElt& g,
                                 const KoszulCochain& c) {
    const SectorData& sec = model.sector(c.sector);
    int n = model.n();
    int m = model.m();
    if (static_cast<int>(g.k.size()) != n)
        throw DimensionMismatch("group element rank does not match the model");
    std::vector<Cyc> s(2 * static_cast<std::size_t>(n), Cyc(1));
    for (int i = 1; i <= n; ++i) {
        Cyc ev = eigenvalue(g, m, i);
        s[static_cast<std::size_t>(i - 1)] = ev;
        s[static_cast<std::size_t>(n + i - 1)] = ev;
    }
    KoszulCochain r{c.sector, {}};
    for (const auto& [I, a] : c.terms) {
        long e = 0;
        for (int i : bits(I | sec.moved)) e -= g.k[static_cast<std::size_t>(i - 1)];
        Cyc f = Cyc::zeta(static_cast<unsigned>(m), e);
        cochain_add(r, I, a.diag_scale(s).scaled(f));
    }
    return r;
}

/// Averaging projector onto the G-invariant subcomplex.
inline KoszulCochain invariant_part(const OrbifoldLG& model, const KoszulCochain& c) {
    KoszulCochain acc{c.sector, {}};
    for (const auto& g : model.elements())
        acc = cochain_sum(acc, act_cochain(model, g, c));
    mpq_class inv(1, static_cast<long>(model.elements().size()));
    return cochain_scaled(acc, Cyc::of(static_cast<unsigned>(model.m()), inv));
}

inline bool is_invariant(const OrbifoldLG& model, const KoszulCochain& c) {
    for (const auto& g : model.generators())
        if (act_cochain(model, g, c) != c) return false;
    return true;
}

/// All invariant monomial cochains m * theta_I (times the implicit
/// theta_{I_h}) with coefficient degree up to the bound, in a deterministic
/// order: theta-count, then index set, then the monomial enumeration.
/// Invariance is decided by the group action itself and cross-checked by
/// exponent-character arithmetic.
inline std::vector<KoszulCochain> invariant_monomial_basis(const OrbifoldLG& model,
                                                           const GroupElt& h,
                                                           int degree_bound) {
    const SectorData& sec = model.sector(h);
    int n = model.n();
    int m = model.m();
    std::vector<KoszulCochain> out;
    for (int t = 0; t <= set_size(sec.fixed); ++t) {
        for (Mask I : detail::subsets_of_size(sec.fixed, t)) {
            for (const Mono& mono :
                 detail::fixed_monomials(n, sec.fixed, 0, degree_bound)) {
                Poly p(n);
                p.add_term(mono, Cyc(1));
                KoszulCochain c{h, {}};
                cochain_add(c, I, p);
                bool fixed_point = is_invariant(model, c);
                // Independent check: the total weight of the monomial minus
                // the theta word must vanish for every generator.
                bool character_trivial = true;
                for (const auto& g : model.generators()) {
                    long e = 0;
                    for (int i = 1; i <= n; ++i)
                        e += static_cast<long>(mono.e[static_cast<std::size_t>(i - 1)]) *
                             g.k[static_cast<std::size_t>(i - 1)];
                    for (int i : bits(I | sec.moved))
                        e -= g.k[static_cast<std::size_t>(i - 1)];
                    if (((e % m) + m) % m != 0) {
                        character_trivial = false;
                        break;
                    }
                }
                if (fixed_point != character_trivial)
                    throw Error("internal: invariance tests disagree on " +
                                cochain_str(model, c));
                if (fixed_point) out.push_back(std::move(c));
            }
        }
    }
    return out;
}

}  // namespace tkos
