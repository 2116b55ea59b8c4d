#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "tkos/invariant.hpp"
#include "tkos/product.hpp"

namespace tkos {

struct DemoCheck {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct DemoReport {
    std::vector<DemoCheck> checks;
    std::vector<std::pair<std::string, std::string>> values;
    bool ok() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return !checks.empty();
    }
};

/// The built-in example model: W = x1^2 + x2^2 + x1*x2*x3 with the sign flip
/// on the first two variables.
inline const char* demo_model_text() {
    return R"({"n":3,"m":2,"W":"x1^2+x2^2+x1*x2*x3","generators":[[1,1,0]],"sector_names":{"rho":[1,1,0]}})";
}

inline OrbifoldLG demo_model() {
    return OrbifoldLG::from_json(nlohmann::json::parse(demo_model_text()));
}

namespace detail {

/// Cup product with externally supplied tables (the demo's corruption hook
/// feeds tampered tables through here).
inline KoszulCochain cup_with_tables(const OrbifoldLG& model, const TwistTables& ta,
                                     const TwistTables& tb, const KoszulCochain& a,
                                     const KoszulCochain& b) {
    MFMorphism left = translate(model, b.sector, exp_eta(model, ta, a));
    MFMorphism right = exp_eta(model, tb, b);
    return kos_project_fast(model, mf_compose(left, right));
}

}  // namespace detail

/// Reproduces the full worked example: tables, exponentials, products, ring
/// relations, cohomology spot checks, invariant bases. With corrupt_g_table
/// the tables feeding the exponentials are tampered with, which must flip the
/// dependent checks to FAIL (negative control).
inline DemoReport run_demo(bool corrupt_g_table = false) {
    DemoReport rep;
    auto add = [&rep](const std::string& name,
                      const std::function<std::pair<bool, std::string>()>& fn) {
        DemoCheck c{name, false, ""};
        try {
            auto [ok, detail] = fn();
            c.pass = ok;
            c.detail = detail;
        } catch (const std::exception& e) {
            c.pass = false;
            c.detail = std::string("error: ") + e.what();
        }
        rep.checks.push_back(std::move(c));
    };
    auto value = [&rep](const std::string& name, const std::string& v) {
        rep.values.emplace_back(name, v);
    };

    OrbifoldLG model = demo_model();
    int n = model.n(), m = model.m();
    GroupElt one = model.identity();
    GroupElt rho = model.sector_by_name("rho");

    add("model loads, potential invariant, two sectors", [&] {
        bool ok = model.elements().size() == 2 && model.sector_name(rho) == "rho";
        return std::make_pair(ok, std::to_string(model.elements().size()) + " sectors");
    });

    add("d^2 = (W(y)-W(x))*id in every sector", [&] {
        for (const auto& h : model.elements())
            if (!check_mf(model, h))
                return std::make_pair(false, "fails in sector " + model.sector_name(h));
        return std::make_pair(true, std::string());
    });

    add("coefficient-table identities hold in every sector", [&] {
        for (const auto& h : model.elements()) twist_tables(model, h);
        return std::make_pair(true, std::string());
    });

    // Tables used by everything downstream; the corruption hook tampers here.
    std::map<GroupElt, TwistTables> tbl;
    tbl.emplace(one, twist_tables(model, one));
    tbl.emplace(rho, twist_tables(model, rho));
    if (corrupt_g_table) {
        auto& g = tbl.at(rho).gmap;
        g[{1, 2}] = g.at({1, 2}) + Poly::constant(n, Cyc(1));
    }
    value("tables_rho", tables_str(tbl.at(rho)));

    auto P = [&](const std::string& s) { return ExprParser::poly(s, n, m); };
    auto C = [&](const std::string& s) { return parse_cochain(model, s); };

    add("twisted-sector tables match the reference values", [&] {
        const TwistTables& t = tbl.at(rho);
        std::vector<std::tuple<int, int, std::string>> gexp = {
            {1, 1, "1"}, {1, 2, "x3"}, {1, 3, "x2"},
            {2, 2, "1"}, {2, 3, "y1"}, {3, 3, "0"}};
        for (const auto& [j, i, s] : gexp)
            if (t.g(j, i) != P(s))
                return std::make_pair(false, "g[" + std::to_string(j) + "," +
                                                 std::to_string(i) + "] = " +
                                                 t.g(j, i).str() + ", expected " + s);
        std::vector<std::tuple<int, int, std::string>> fexp = {
            {1, 2, "-x3/2"}, {1, 3, "-x2/2"}, {2, 3, "0"}};
        for (const auto& [j, i, s] : fexp)
            if (t.f(j, i) != P(s))
                return std::make_pair(false, "f[" + std::to_string(j) + "," +
                                                 std::to_string(i) + "] = " +
                                                 t.f(j, i).str() + ", expected " + s);
        return std::make_pair(true, std::string());
    });

    KoszulCochain g12 = C("[rho] t1 t2");
    KoszulCochain g123 = C("[rho] t1 t2 t3");
    MFMorphism e12 = exp_eta(model, tbl.at(rho), g12);
    MFMorphism e123 = exp_eta(model, tbl.at(rho), g123);
    value("exp_eta_t1t2", e12.body.str());
    value("exp_eta_t1t2t3", e123.body.str());

    add("exp-eta of [rho] t1 t2 matches the reference value", [&] {
        CliffordElt expect = ExprParser::clifford(
            "t1 t2+t2 d1-x3*t1 d1-t1 d2+d1 d2+1/2*x3", n, m);
        return std::make_pair(e12.body == expect, e12.body.str());
    });

    add("exponential images are closed morphisms", [&] {
        bool ok = is_closed(model, e12) && is_closed(model, e123);
        return std::make_pair(ok, std::string());
    });

    auto cupT = [&](const KoszulCochain& a, const KoszulCochain& b) {
        return detail::cup_with_tables(model, tbl.at(a.sector), tbl.at(b.sector), a, b);
    };
    auto cupSum = [&](const CochainSum& A, const CochainSum& B) {
        CochainSum r;
        for (const auto& [ha, ca] : A)
            for (const auto& [hb, cb] : B) sum_add(r, cupT(ca, cb));
        return r;
    };

    add("cup of [rho] t1 t2 with itself is [1] 1/4*x3^2-1", [&] {
        KoszulCochain p = cupT(g12, g12);
        value("cup_t1t2_t1t2", cochain_str(model, p));
        return std::make_pair(p == C("[1] 1/4*x3^2-1"), cochain_str(model, p));
    });

    add("cup of [rho] t1 t2 with [rho] t1 t2 t3 matches the reference value", [&] {
        KoszulCochain p = cupT(g12, g123);
        value("cup_t1t2_t1t2t3", cochain_str(model, p));
        KoszulCochain expect = C("[1] 1/2*x2*t1-1/4*x2*x3*t2+(1/4*x3^2-1)*t3");
        return std::make_pair(p == expect, cochain_str(model, p));
    });

    CochainSum lam_p = sum_plus(sum_of(C("[1] 1/2*x3")), sum_of(g12));
    CochainSum lam_m = sum_minus(sum_of(C("[1] 1/2*x3")), sum_of(g12));
    CochainSum tau = sum_of(g123);
    value("lambda_plus", sum_str(model, lam_p));
    value("lambda_minus", sum_str(model, lam_m));
    value("tau", sum_str(model, tau));

    ClassContext ctx(model, default_bound(model));

    auto witness_report = [&](const CochainSum& diff, const std::string& tag)
        -> std::pair<bool, std::string> {
        auto w = ctx.witnesses(diff);
        if (!w) return {false, "no witness up to degree " +
                                   std::to_string(ctx.bound())};
        std::string lines;
        for (const auto& [h, s] : *w) {
            if (koszul_diff(model, s) != diff.at(h))
                return {false, "witness failed re-verification"};
            if (!lines.empty()) lines += " + ";
            lines += cochain_str(model, s);
        }
        if (lines.empty()) lines = "0 (exact equality)";
        value(tag, lines);
        return {true, lines};
    };

    add("lambda+ cup lambda- is the unit class (witness re-verified)", [&] {
        CochainSum prod = cupSum(lam_p, lam_m);
        value("lambda_product", sum_str(model, prod));
        return witness_report(sum_minus(prod, sum_of(C("[1] 1"))), "lambda_witness");
    });

    add("tau cup tau is the zero class (witness re-verified)", [&] {
        CochainSum prod = cupSum(tau, tau);
        value("tau_square", sum_str(model, prod));
        return witness_report(prod, "tau_witness");
    });

    add("lambda+ + lambda- equals [1] x3 exactly", [&] {
        CochainSum s = sum_plus(lam_p, lam_m);
        return std::make_pair(s == sum_of(C("[1] x3")), sum_str(model, s));
    });

    add("[1] 2*x2*t1-x2*x3*t2+(x3^2-4)*t3 is closed", [&] {
        KoszulCochain gen = C("[1] 2*x2*t1-x2*x3*t2+(x3^2-4)*t3");
        value("degree_minus_one_generator", cochain_str(model, gen));
        return std::make_pair(is_cocycle(model, gen), std::string());
    });

    add("[1] x1*x2 has coboundary witness t3 at degree bound 1", [&] {
        KoszulCochain c = C("[1] x1*x2");
        KoszulCochain t3 = C("[1] t3");
        if (koszul_diff(model, t3) != c)
            return std::make_pair(false, std::string("d(t3) is not x1*x2"));
        auto w = coboundary_solve(model, c, 1);
        if (!w) return std::make_pair(false, std::string("no witness found"));
        value("x1x2_witness", cochain_str(model, *w));
        return std::make_pair(*w == t3, cochain_str(model, *w));
    });

    add("[1] 1 has no coboundary witness up to degree 6", [&] {
        auto w = coboundary_solve(model, C("[1] 1"), 6);
        return std::make_pair(!w.has_value(),
                              w ? cochain_str(model, *w)
                                : std::string("no witness up to degree 6"));
    });

    add("invariant monomial bases match", [&] {
        std::vector<KoszulCochain> b1;
        for (const auto& c : invariant_monomial_basis(model, one, 1))
            if (c.terms.begin()->first == 0) b1.push_back(c);
        std::vector<KoszulCochain> expect1 = {C("[1] 1"), C("[1] x3")};
        std::vector<KoszulCochain> brho = invariant_monomial_basis(model, rho, 0);
        std::vector<KoszulCochain> expectr = {C("[rho] t1 t2"), C("[rho] t1 t2 t3")};
        std::string got;
        for (const auto& c : b1) got += cochain_str(model, c) + "; ";
        for (const auto& c : brho) got += cochain_str(model, c) + "; ";
        value("invariant_bases", got);
        return std::make_pair(b1 == expect1 && brho == expectr, got);
    });

    value("generators", "lambda+ = " + sum_str(model, lam_p) +
                            " | lambda- = " + sum_str(model, lam_m) +
                            " | tau = " + sum_str(model, tau));
    return rep;
}

}  // namespace tkos
