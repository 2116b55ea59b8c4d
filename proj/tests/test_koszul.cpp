#include <catch2/catch_amalgamated.hpp>

#include <random>

#include <tkos/koszul.hpp>
#include <tkos/parse.hpp>

#include "helpers.hpp"

using namespace tkos;

namespace {
KoszulCochain C(const OrbifoldLG& model, const std::string& s) {
    return parse_cochain(model, s);
}
}  // namespace

TEST_CASE("cochain validation") {
    OrbifoldLG model = fixtures::demo();
    GroupElt rho = model.sector_by_name("rho");
    // moved index in the theta set
    KoszulCochain bad1{rho, {{bit_of(1), ExprParser::poly("1", 3, 2)}}};
    CHECK_THROWS_AS(validate_cochain(model, bad1), Error);
    // moved variable in a coefficient
    KoszulCochain bad2{rho, {{0u, ExprParser::poly("x1", 3, 2)}}};
    CHECK_THROWS_AS(validate_cochain(model, bad2), Error);
    // y variable in a coefficient
    KoszulCochain bad3{model.identity(), {{0u, ExprParser::poly("y1", 3, 2)}}};
    CHECK_THROWS_AS(validate_cochain(model, bad3), Error);
    // a good one
    KoszulCochain good{rho, {{bit_of(3), ExprParser::poly("x3^2", 3, 2)}}};
    CHECK_NOTHROW(validate_cochain(model, good));
}

TEST_CASE("cochain text form") {
    OrbifoldLG model = fixtures::demo();
    KoszulCochain c = C(model, "[rho] t1 t2");
    CHECK(c.sector == model.sector_by_name("rho"));
    CHECK(c.terms.size() == 1);
    CHECK(c.terms.begin()->first == 0u);
    CHECK(cochain_str(model, c) == "[rho] t1 t2");
    KoszulCochain tau = C(model, "[rho] t1 t2 t3");
    CHECK(tau.terms.begin()->first == bit_of(3));
    CHECK(cochain_str(model, tau) == "[rho] t1 t2 t3");
    CHECK(cochain_str(model, C(model, "[1] 1/4*x3^2-1")) == "[1] 1/4*x3^2-1");
    // embedding carries the merge sign: theta_3 theta_1 theta_2 = +theta_1 theta_2 theta_3
    CHECK(embed_clifford(model, tau) == ExprParser::clifford("t1 t2 t3", 3, 2));
    // missing twisted block
    CHECK_THROWS_AS(C(model, "[rho] t1"), Error);
    // contraction generators are not cochains
    CHECK_THROWS_AS(C(model, "[1] d1"), Error);
    // unknown sector tag
    CHECK_THROWS_AS(C(model, "[nope] t1"), ParseError);
    // missing tag entirely
    CHECK_THROWS_AS(C(model, "t1 t2"), ParseError);
}

TEST_CASE("cochain parity") {
    OrbifoldLG model = fixtures::demo();
    CHECK(cochain_parity(model, C(model, "[rho] t1 t2")) == 0);
    CHECK(cochain_parity(model, C(model, "[rho] t1 t2 t3")) == 1);
    CHECK(cochain_parity(model, C(model, "[1] x3")) == 0);
    CHECK(cochain_parity(model, C(model, "[1] t1")) == 1);
    CHECK(cochain_parity(model, C(model, "[1] 1+t1 t2")) == 0);
    CHECK(cochain_parity(model, C(model, "[1] 1+t1")) == -1);  // mixed
}

TEST_CASE("differential") {
    OrbifoldLG model = fixtures::demo();
    auto P = [&](const std::string& s) { return ExprParser::poly(s, 3, 2); };
    KoszulCochain d1 = koszul_diff(model, C(model, "[1] t1"));
    CHECK(d1 == (KoszulCochain{model.identity(), {{0u, P("2*x1+x2*x3")}}}));
    KoszulCochain d3 = koszul_diff(model, C(model, "[1] t3"));
    CHECK(d3 == (KoszulCochain{model.identity(), {{0u, P("x1*x2")}}}));
    // twisted sector of the demo has vanishing differential
    GroupElt rho = model.sector_by_name("rho");
    CHECK(koszul_diff(model, C(model, "[rho] t1 t2 t3")).is_zero());
    CHECK(koszul_diff(model, C(model, "[rho] x3*t1 t2")).is_zero());
    // signs: d(t1 t2) = d(t1) t2 - t1 d(t2) pattern
    KoszulCochain d12 = koszul_diff(model, C(model, "[1] t1 t2"));
    KoszulCochain expect{model.identity(),
                         {{bit_of(2), P("2*x1+x2*x3")}, {bit_of(1), P("-2*x2-x1*x3")}}};
    CHECK(d12 == expect);
}

TEST_CASE("differential squares to zero") {
    std::mt19937 rng(2468);
    for (const auto& model : fixtures::acceptance_models())
        for (const auto& h : model.elements())
            for (int t = 0; t < 10; ++t) {
                KoszulCochain c = fixtures::random_cochain(model, h, rng, 2, 3);
                CHECK(koszul_diff(model, koszul_diff(model, c)).is_zero());
            }
}

TEST_CASE("cocycles") {
    OrbifoldLG model = fixtures::demo();
    CHECK(is_cocycle(model, C(model, "[1] 2*x2*t1-x2*x3*t2+(x3^2-4)*t3")));
    CHECK(is_cocycle(model, C(model, "[1] x3")));
    CHECK_FALSE(is_cocycle(model, C(model, "[1] t1")));
    CHECK(default_bound(model) == 6);
}

TEST_CASE("coboundary witnesses") {
    OrbifoldLG model = fixtures::demo();
    auto P = [&](const std::string& s) { return ExprParser::poly(s, 3, 2); };

    // x1*x2 is a coboundary: witness t3, found already at bound 1
    auto w = coboundary_solve(model, C(model, "[1] x1*x2"), 1);
    REQUIRE(w.has_value());
    CHECK(*w == C(model, "[1] t3"));
    CHECK(koszul_diff(model, *w) == C(model, "[1] x1*x2"));

    // the unit is not a coboundary within degree 6
    CHECK_FALSE(coboundary_solve(model, C(model, "[1] 1"), 6).has_value());

    // cross-check both memberships with the independent dense solver
    CHECK(fixtures::brute_force_in_ideal(model, P("x1*x2"), 1));
    CHECK_FALSE(fixtures::brute_force_in_ideal(model, P("1"), 6));

    // a random coboundary is always solved and re-verified
    std::mt19937 rng(1357);
    for (int t = 0; t < 4; ++t) {
        KoszulCochain c = fixtures::random_cochain(model, model.identity(), rng, 2, 2);
        KoszulCochain dc = koszul_diff(model, c);
        auto wit = coboundary_solve(model, dc, 4);
        REQUIRE(wit.has_value());
        CHECK(koszul_diff(model, *wit) == dc);
    }

    // zero target gets the zero witness
    auto z = coboundary_solve(model, KoszulCochain{model.identity(), {}}, 3);
    REQUIRE(z.has_value());
    CHECK(z->is_zero());

    // twisted demo sector: differential vanishes, nonzero targets have no witness
    GroupElt rho = model.sector_by_name("rho");
    CHECK_FALSE(coboundary_solve(model, C(model, "[rho] t1 t2"), 6).has_value());

    // non-cocycle input is rejected
    CHECK_THROWS_AS(coboundary_solve(model, C(model, "[1] t1"), 6), NotCocycle);
}

TEST_CASE("class equality") {
    OrbifoldLG model = fixtures::demo();
    KoszulCochain a = C(model, "[1] x3");
    CHECK(class_equal(model, a, a, 6));
    // differ by the coboundary d(t3) = x1*x2
    KoszulCochain b = C(model, "[1] x3+x1*x2");
    CHECK(class_equal(model, a, b, 6));
    CHECK_FALSE(class_equal(model, a, C(model, "[1] x3+1"), 6));
    // parity mismatch is a usage error
    CHECK_THROWS_AS(class_equal(model, C(model, "[rho] t1 t2"),
                                C(model, "[rho] t1 t2 t3"), 6),
                    DegreeMismatch);
    // sector mismatch
    CHECK_THROWS_AS(class_equal(model, C(model, "[1] x3"), C(model, "[rho] t1 t2"), 6),
                    SectorMismatch);
    // operands must be cocycles
    CHECK_THROWS_AS(class_equal(model, C(model, "[1] t1"), C(model, "[1] t1"), 6),
                    NotCocycle);
}
