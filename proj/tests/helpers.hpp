#pragma once

// Shared test fixtures: the bundled example model, three deterministically
// generated invariant models, random element generators, and an independent
// dense-Gaussian ideal-membership oracle.

#include <cstdio>
#include <map>
#include <random>
#include <string>
#include <vector>

#include <tkos/tkos.hpp>

namespace fixtures {

inline tkos::OrbifoldLG demo() { return tkos::demo_model(); }

/// Random group-invariant potential: `nterms` distinct monomials of exact
/// total degree `degree` whose character under the generator vanishes, with
/// small positive integer coefficients. Fully determined by the seed.
inline tkos::Poly random_invariant_potential(int n, int m, const std::vector<int>& gen,
                                             int degree, int nterms, unsigned seed) {
    using namespace tkos;
    std::vector<Mono> eligible;
    for (const auto& mo : detail::fixed_monomials(n, full_mask(n), degree, degree)) {
        long chi = 0;
        for (int i = 0; i < n; ++i) chi += static_cast<long>(mo.e[i]) * gen[i];
        if (chi % m == 0) eligible.push_back(mo);
    }
    std::mt19937 rng(seed);
    Poly W(n);
    int take = std::min<int>(nterms, static_cast<int>(eligible.size()));
    for (int t = 0; t < take; ++t) {
        std::size_t idx = rng() % eligible.size();
        Mono mo = eligible[idx];
        eligible.erase(eligible.begin() + static_cast<long>(idx));
        W.add_term(mo, Cyc(static_cast<long>(1 + rng() % 3)));
    }
    return W;
}

inline tkos::OrbifoldLG generated_model(int n, int m, std::vector<int> gen, int degree,
                                        int nterms, unsigned seed) {
    tkos::Poly W = random_invariant_potential(n, m, gen, degree, nterms, seed);
    return tkos::OrbifoldLG::validate(n, W, m, {tkos::GroupElt{std::move(gen)}});
}

inline tkos::OrbifoldLG g1() { return generated_model(2, 2, {1, 1}, 4, 3, 101); }
inline tkos::OrbifoldLG g2() { return generated_model(3, 3, {1, 2, 0}, 3, 3, 202); }
inline tkos::OrbifoldLG g3() { return generated_model(4, 2, {1, 1, 0, 1}, 4, 5, 303); }

inline std::vector<tkos::OrbifoldLG> acceptance_models() {
    std::vector<tkos::OrbifoldLG> out;
    out.push_back(demo());
    out.push_back(g1());
    out.push_back(g2());
    out.push_back(g3());
    return out;
}

inline tkos::Cyc random_coeff(std::mt19937& rng, int m) {
    using namespace tkos;
    long num = 1 + static_cast<long>(rng() % 4);
    if (rng() % 2) num = -num;
    long den = 1 + static_cast<long>(rng() % 3);
    Cyc c = Cyc::of(static_cast<unsigned>(m), mpq_class(num, den));
    if (m > 2) c = c * Cyc::zeta(static_cast<unsigned>(m), static_cast<long>(rng() % m));
    return c;
}

/// Random polynomial in x and y (total degree <= maxdeg per term).
inline tkos::Poly random_poly(std::mt19937& rng, int n, int m, int maxdeg, int nterms) {
    using namespace tkos;
    Poly p(n);
    for (int t = 0; t < nterms; ++t) {
        Mono mo{std::vector<int>(2 * static_cast<std::size_t>(n), 0)};
        int d = static_cast<int>(rng() % static_cast<unsigned>(maxdeg + 1));
        for (int k = 0; k < d; ++k) mo.e[rng() % (2 * static_cast<unsigned>(n))]++;
        p.add_term(mo, random_coeff(rng, m));
    }
    return p;
}

inline tkos::CliffordElt random_clifford(std::mt19937& rng, int n, int m, int nterms) {
    using namespace tkos;
    CliffordElt e(n);
    for (int t = 0; t < nterms; ++t) {
        Mask th = static_cast<Mask>(rng()) & full_mask(n);
        Mask pa = static_cast<Mask>(rng()) & full_mask(n);
        e.add_term(CKey{th, pa}, random_poly(rng, n, m, 2, 2));
    }
    return e;
}

/// Random cochain in sector h: terms I subset of the fixed indices with
/// coefficients in the fixed x-variables.
inline tkos::KoszulCochain random_cochain(const tkos::OrbifoldLG& model,
                                          const tkos::GroupElt& h, std::mt19937& rng,
                                          int maxdeg, int nterms) {
    using namespace tkos;
    const SectorData& sd = model.sector(h);
    std::vector<Mono> mus = detail::fixed_monomials(model.n(), sd.fixed, 0, maxdeg);
    KoszulCochain c{h, {}};
    for (int t = 0; t < nterms; ++t) {
        Mask I = static_cast<Mask>(rng()) & sd.fixed;
        Poly p(model.n());
        p.add_term(mus[rng() % mus.size()], random_coeff(rng, model.m()));
        cochain_add(c, I, p);
    }
    return c;
}

/// Random morphism out of the identity factorization into a random sector.
inline tkos::MFMorphism random_morphism(const tkos::OrbifoldLG& model, std::mt19937& rng,
                                        int nterms) {
    using namespace tkos;
    const auto& els = model.elements();
    GroupElt tgt = els[rng() % els.size()];
    return MFMorphism{model.identity(), tgt,
                      random_clifford(rng, model.n(), model.m(), nterms)};
}

/// Every monomial cochain of sector h with coefficient degree <= maxdeg.
inline std::vector<tkos::KoszulCochain> monomial_cochains(const tkos::OrbifoldLG& model,
                                                          const tkos::GroupElt& h,
                                                          int maxdeg) {
    using namespace tkos;
    const SectorData& sd = model.sector(h);
    std::vector<Mono> mus = detail::fixed_monomials(model.n(), sd.fixed, 0, maxdeg);
    std::vector<KoszulCochain> out;
    for (int k = 0; k <= set_size(sd.fixed); ++k)
        for (Mask I : detail::subsets_of_size(sd.fixed, k))
            for (const auto& mu : mus) {
                Poly p(model.n());
                p.add_term(mu, Cyc(1));
                out.push_back(KoszulCochain{h, {{I, p}}});
            }
    return out;
}

/// Linear extension of apply_to_basis to an exterior element.
inline std::map<tkos::Mask, tkos::Poly> apply_ext(
    const tkos::CliffordElt& a, const std::map<tkos::Mask, tkos::Poly>& v) {
    using namespace tkos;
    std::map<Mask, Poly> out;
    for (const auto& [L, coeff] : v) {
        for (const auto& [M, p] : apply_to_basis(a, L)) {
            Poly q = p * coeff;
            if (q.is_zero()) continue;
            auto it = out.find(M);
            if (it == out.end())
                out.emplace(M, q);
            else {
                it->second = it->second + q;
                if (it->second.is_zero()) out.erase(it);
            }
        }
    }
    return out;
}

/// Independent ideal-membership oracle: is `target` a combination of the
/// identity-sector jacobian entries with coefficient degree <= bound? Dense
/// Gaussian elimination over the rationals, written without the library's
/// solver machinery. Requires rational coefficients (m <= 2).
inline bool brute_force_in_ideal(const tkos::OrbifoldLG& model, const tkos::Poly& target,
                                 int bound) {
    using namespace tkos;
    const SectorData& sd = model.sector(model.identity());
    std::vector<Poly> cols;
    std::vector<Mono> mus = detail::fixed_monomials(model.n(), full_mask(model.n()), 0, bound);
    for (int i = 0; i < model.n(); ++i) {
        const Poly& J = sd.jacobian[static_cast<std::size_t>(i)];
        if (J.is_zero()) continue;
        for (const auto& mu : mus) {
            Poly p(model.n());
            p.add_term(mu, Cyc(1));
            cols.push_back(p * J);
        }
    }
    std::map<Mono, int, MonoGreater> rowidx;
    auto note = [&](const Poly& p) {
        for (const auto& [mo, c] : p.terms()) {
            (void)c;
            if (!rowidx.count(mo)) {
                int k = static_cast<int>(rowidx.size());
                rowidx.emplace(mo, k);
            }
        }
    };
    for (const auto& c : cols) note(c);
    note(target);
    int R = static_cast<int>(rowidx.size());
    int C = static_cast<int>(cols.size());
    std::vector<std::vector<mpq_class>> M(static_cast<std::size_t>(R),
                                          std::vector<mpq_class>(static_cast<std::size_t>(C) + 1, 0));
    for (int c = 0; c < C; ++c)
        for (const auto& [mo, q] : cols[static_cast<std::size_t>(c)].terms())
            M[static_cast<std::size_t>(rowidx.at(mo))][static_cast<std::size_t>(c)] =
                q.as_rational();
    for (const auto& [mo, q] : target.terms())
        M[static_cast<std::size_t>(rowidx.at(mo))][static_cast<std::size_t>(C)] =
            q.as_rational();
    int r = 0;
    for (int c = 0; c < C && r < R; ++c) {
        int piv = -1;
        for (int i = r; i < R; ++i)
            if (M[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)] != 0) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        std::swap(M[static_cast<std::size_t>(r)], M[static_cast<std::size_t>(piv)]);
        mpq_class lead = M[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
        for (int j = c; j <= C; ++j) M[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)] /= lead;
        for (int i = 0; i < R; ++i) {
            if (i == r) continue;
            mpq_class f = M[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)];
            if (f == 0) continue;
            for (int j = c; j <= C; ++j)
                M[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] -=
                    f * M[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)];
        }
        ++r;
    }
    for (int i = 0; i < R; ++i) {
        bool allz = true;
        for (int c = 0; c < C; ++c)
            if (M[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)] != 0) {
                allz = false;
                break;
            }
        if (allz && M[static_cast<std::size_t>(i)][static_cast<std::size_t>(C)] != 0)
            return false;
    }
    return true;
}

#ifdef TKOS_CLI_PATH
struct CliResult {
    int status;
    std::string out;
};

inline CliResult run_cli(const std::string& args) {
    std::string cmd = std::string(TKOS_CLI_PATH) + " " + args + " 2>&1";
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) return {-1, "popen failed"};
    std::string text;
    char buf[4096];
    std::size_t nread;
    while ((nread = fread(buf, 1, sizeof(buf), p)) > 0) text.append(buf, nread);
    int rc = pclose(p);
    int status = (rc >= 0 && WIFEXITED(rc)) ? WEXITSTATUS(rc) : -1;
    return {status, text};
}

inline std::string demo_json_path() {
    return std::string(TKOS_MODELS_DIR) + "/demo.json";
}
#endif

}  // namespace fixtures
