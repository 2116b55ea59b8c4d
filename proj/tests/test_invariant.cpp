#include <catch2/catch_amalgamated.hpp>

#include <random>

#include <tkos/invariant.hpp>
#include <tkos/parse.hpp>
#include <tkos/twist.hpp>

#include "helpers.hpp"

using namespace tkos;

namespace {
KoszulCochain C(const OrbifoldLG& model, const std::string& s) {
    return parse_cochain(model, s);
}
}  // namespace

TEST_CASE("group action on cochains") {
    OrbifoldLG model = fixtures::demo();
    GroupElt rho = model.sector_by_name("rho");
    // x1 t1 picks up (-1) on the coefficient and (-1)^{-1} on theta_1, so it
    // is fixed by rho
    CHECK(act_cochain(model, rho, C(model, "[1] x1*t1")) ==
          C(model, "[1] x1*t1"));
    // x1 alone flips sign
    CHECK(act_cochain(model, rho, C(model, "[1] x1")) == C(model, "[1] -x1"));
    // in the rho sector the implicit t1 t2 block absorbs both eigenvalues
    CHECK(act_cochain(model, rho, C(model, "[rho] t1 t2")) ==
          C(model, "[rho] t1 t2"));
    CHECK(act_cochain(model, rho, C(model, "[rho] x3*t1 t2 t3")) ==
          C(model, "[rho] x3*t1 t2 t3"));
    // the identity acts trivially
    CHECK(act_cochain(model, model.identity(), C(model, "[1] x1*t2")) ==
          C(model, "[1] x1*t2"));
}

TEST_CASE("averaging projector") {
    OrbifoldLG model = fixtures::demo();
    SECTION("kills non-invariants and keeps invariants") {
        CHECK(invariant_part(model, C(model, "[1] x1")).terms.empty());
        KoszulCochain inv = C(model, "[1] x3+x1*x2");
        CHECK(invariant_part(model, inv) == inv);
        CHECK(is_invariant(model, inv));
        CHECK_FALSE(is_invariant(model, C(model, "[1] x1")));
    }
    SECTION("idempotent and invariant on random cochains") {
        std::mt19937 rng(4681);
        for (const auto& model2 : fixtures::acceptance_models())
            for (const auto& h : model2.elements())
                for (int t = 0; t < 4; ++t) {
                    KoszulCochain c = fixtures::random_cochain(model2, h, rng, 3, 3);
                    KoszulCochain p = invariant_part(model2, c);
                    CHECK(is_invariant(model2, p));
                    CHECK(invariant_part(model2, p) == p);
                }
    }
}

TEST_CASE("invariance of the twisted structure") {
    OrbifoldLG model = fixtures::demo();
    GroupElt rho = model.sector_by_name("rho");
    MFMorphism e12 = exp_eta(model, rho, C(model, "[rho] t1 t2"));
    // the exponential of an invariant cochain is a G-invariant operator
    CHECK(group_act(rho, model.m(), e12.body) == e12.body);
}

TEST_CASE("invariant monomial bases") {
    OrbifoldLG model = fixtures::demo();
    SECTION("identity sector through degree 1") {
        auto basis = invariant_monomial_basis(model, model.identity(), 1);
        CHECK(basis.size() == 16);
        // the theta-free members are exactly 1 and x3
        std::vector<KoszulCochain> scalars;
        for (const auto& c : basis)
            if (!c.terms.empty() && c.terms.begin()->first == 0u)
                scalars.push_back(c);
        REQUIRE(scalars.size() == 2);
        CHECK(scalars[0] == C(model, "[1] 1"));
        CHECK(scalars[1] == C(model, "[1] x3"));
    }
    SECTION("twisted sector at degree 0") {
        GroupElt rho = model.sector_by_name("rho");
        auto basis = invariant_monomial_basis(model, rho, 0);
        REQUIRE(basis.size() == 2);
        CHECK(basis[0] == C(model, "[rho] t1 t2"));
        CHECK(basis[1] == C(model, "[rho] t1 t2 t3"));
    }
    SECTION("members are invariant monomial cochains") {
        OrbifoldLG g2 = fixtures::g2();
        for (const auto& h : g2.elements())
            for (const auto& c : invariant_monomial_basis(g2, h, 2)) {
                CHECK(is_invariant(g2, c));
                REQUIRE(c.terms.size() == 1);
                CHECK(c.terms.begin()->second.terms().size() == 1);
            }
    }
}
