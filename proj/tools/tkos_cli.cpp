#include <CLI11.hpp>
#include <cxxabi.h>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <tkos/tkos.hpp>

using nlohmann::ordered_json;

namespace {

std::string error_kind(const std::exception& e) {
    int status = 0;
    char* dem = abi::__cxa_demangle(typeid(e).name(), nullptr, nullptr, &status);
    std::string s = (status == 0 && dem) ? dem : typeid(e).name();
    std::free(dem);
    auto pos = s.rfind("::");
    if (pos != std::string::npos) s = s.substr(pos + 2);
    return s;
}

tkos::OrbifoldLG load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw tkos::ParseError("cannot open model file: " + path, 0);
    return tkos::OrbifoldLG::from_json(nlohmann::json::parse(in));
}

int cmd_validate(const std::string& path, bool json) {
    tkos::OrbifoldLG model = load_model(path);
    for (const auto& h : model.elements()) {
        if (!tkos::check_mf(model, h))
            throw tkos::Error("d^2 != (W(y)-W(x))*id in sector " +
                              model.sector_name(h));
        tkos::twist_tables(model, h);
    }
    if (json) {
        ordered_json out;
        out["pass"] = true;
        out["sectors"] = model.elements().size();
        std::vector<std::string> names;
        for (const auto& h : model.elements()) names.push_back(model.sector_name(h));
        out["sector_names"] = names;
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "PASS, " << model.elements().size() << " sectors\n";
        for (const auto& h : model.elements())
            std::cout << "  sector " << model.sector_name(h)
                      << ": factorization and table identities verified\n";
    }
    return 0;
}

int cmd_gtable(const std::string& path, const std::string& sector, bool json) {
    tkos::OrbifoldLG model = load_model(path);
    tkos::GroupElt h = model.sector_by_name(sector);
    tkos::TwistTables t = tkos::twist_tables(model, h);
    if (json) {
        ordered_json g(ordered_json::value_t::object);
        ordered_json f(ordered_json::value_t::object);
        for (int j = 1; j <= t.n; ++j)
            for (int i = j; i <= t.n; ++i)
                g[std::to_string(j) + "," + std::to_string(i)] = t.g(j, i).str();
        for (int j = 1; j <= t.n; ++j)
            for (int i = j + 1; i <= t.n; ++i)
                f[std::to_string(j) + "," + std::to_string(i)] = t.f(j, i).str();
        ordered_json out;
        out["sector"] = model.sector_name(h);
        out["g"] = g;
        out["f"] = f;
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << tkos::tables_str(t);
    }
    return 0;
}

int cmd_expeta(const std::string& path, const std::string& sector,
               std::string cochain, bool json) {
    tkos::OrbifoldLG model = load_model(path);
    tkos::GroupElt h = model.sector_by_name(sector);
    if (cochain.find('[') == std::string::npos)
        cochain = "[" + model.sector_name(h) + "] " + cochain;
    tkos::KoszulCochain c = tkos::parse_cochain(model, cochain);
    if (c.sector != h)
        throw tkos::SectorMismatch("--cochain sector tag does not match --sector");
    tkos::MFMorphism e = tkos::exp_eta(model, h, c);
    if (!tkos::is_closed(model, e))
        throw tkos::NotClosed("exponential image failed the closedness check");
    if (json) {
        ordered_json out;
        out["sector"] = model.sector_name(h);
        out["cochain"] = tkos::cochain_str(model, c);
        out["result"] = e.body.str();
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << e.body.str() << "\n";
    }
    return 0;
}

int cmd_cup(const std::string& path, const std::string& left,
            const std::string& right, const std::string& classeq, int maxdeg,
            bool json) {
    tkos::OrbifoldLG model = load_model(path);
    tkos::CochainSum a = tkos::parse_cochain_sum(model, left);
    tkos::CochainSum b = tkos::parse_cochain_sum(model, right);
    tkos::CochainSum prod = tkos::cup(model, a, b);
    int bound = maxdeg >= 0 ? maxdeg : tkos::default_bound(model);
    ordered_json out;
    out["product"] = tkos::sum_str(model, prod);
    int rc = 0;
    std::string class_line, witness_line;
    if (!classeq.empty()) {
        tkos::CochainSum expect = tkos::parse_cochain_sum(model, classeq);
        tkos::CochainSum diff = tkos::sum_minus(prod, expect);
        tkos::ClassContext ctx(model, bound);
        auto w = ctx.witnesses(diff);
        ordered_json ce;
        ce["max_degree"] = bound;
        if (!w) {
            ce["equal"] = false;
            class_line = "class-eq: no witness up to degree " + std::to_string(bound);
            rc = 1;
        } else {
            ordered_json wit(ordered_json::value_t::object);
            for (const auto& [h, c] : *w) {
                if (tkos::koszul_diff(model, c) != diff.at(h))
                    throw tkos::Error("witness failed re-verification in sector " +
                                      model.sector_name(h));
                wit[model.sector_name(h)] = tkos::cochain_str(model, c);
                if (!witness_line.empty()) witness_line += " + ";
                witness_line += tkos::cochain_str(model, c);
            }
            ce["equal"] = true;
            ce["witnesses"] = wit;
            class_line = diff.empty()
                             ? "class-eq: equal (difference is exactly zero)"
                             : "class-eq: equal (witness re-verified)";
        }
        out["class_eq"] = ce;
    }
    if (json) {
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "product: " << tkos::sum_str(model, prod) << "\n";
        if (!class_line.empty()) std::cout << class_line << "\n";
        if (!witness_line.empty()) std::cout << "witness: " << witness_line << "\n";
    }
    return rc;
}

int cmd_invariants(const std::string& path, const std::string& sector, int maxdeg,
                   bool json) {
    tkos::OrbifoldLG model = load_model(path);
    int bound = maxdeg >= 0 ? maxdeg : tkos::default_bound(model);
    std::vector<tkos::GroupElt> sectors;
    if (!sector.empty())
        sectors.push_back(model.sector_by_name(sector));
    else
        sectors = model.elements();
    ordered_json js;
    js["degree_bound"] = bound;
    ordered_json per(ordered_json::value_t::object);
    for (const auto& h : sectors) {
        auto basis = tkos::invariant_monomial_basis(model, h, bound);
        if (json) {
            std::vector<std::string> items;
            for (const auto& c : basis) items.push_back(tkos::cochain_str(model, c));
            per[model.sector_name(h)] = items;
        } else {
            std::cout << "sector " << model.sector_name(h) << " (degree bound "
                      << bound << "): " << basis.size() << " elements\n";
            for (const auto& c : basis)
                std::cout << "  " << tkos::cochain_str(model, c) << "\n";
        }
    }
    if (json) {
        js["sectors"] = per;
        std::cout << js.dump(2) << "\n";
    }
    return 0;
}

int cmd_demo(bool json, bool corrupt) {
    tkos::DemoReport rep = tkos::run_demo(corrupt);
    if (json) {
        ordered_json out;
        out["pass"] = rep.ok();
        ordered_json checks(ordered_json::value_t::array);
        for (const auto& c : rep.checks) {
            ordered_json jc;
            jc["name"] = c.name;
            jc["pass"] = c.pass;
            jc["detail"] = c.detail;
            checks.push_back(jc);
        }
        out["checks"] = checks;
        ordered_json vals(ordered_json::value_t::object);
        for (const auto& [k, v] : rep.values) vals[k] = v;
        out["values"] = vals;
        std::cout << out.dump(2) << "\n";
    } else {
        int npass = 0;
        for (const auto& c : rep.checks) {
            std::cout << (c.pass ? "PASS  " : "FAIL  ") << c.name;
            if (!c.pass && !c.detail.empty()) std::cout << "  [" << c.detail << "]";
            std::cout << "\n";
            npass += c.pass ? 1 : 0;
        }
        std::cout << npass << "/" << rep.checks.size() << " checks passed\n";
        std::cout << "\nvalues:\n";
        for (const auto& [k, v] : rep.values) {
            if (v.find('\n') != std::string::npos) {
                std::cout << "  " << k << ":\n";
                std::string line;
                for (char ch : v) {
                    if (ch == '\n') {
                        std::cout << "    " << line << "\n";
                        line.clear();
                    } else {
                        line += ch;
                    }
                }
                if (!line.empty()) std::cout << "    " << line << "\n";
            } else {
                std::cout << "  " << k << " = " << v << "\n";
            }
        }
    }
    return rep.ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"twisted Koszul algebra of orbifold Landau-Ginzburg models"};
    app.require_subcommand(1);

    std::string model_path, sector, cochain, left, right, classeq;
    int maxdeg = -1;
    bool json = false, corrupt = false;

    auto* v = app.add_subcommand(
        "validate", "check the factorization and table identities of a model");
    v->add_option("model", model_path, "model JSON file")->required();
    v->add_flag("--json", json, "structured output");

    auto* g = app.add_subcommand("g-table",
                                 "print both coefficient tables of a sector");
    g->add_option("model", model_path, "model JSON file")->required();
    g->add_option("--sector", sector, "sector name or comma-separated exponents")
        ->required();
    g->add_flag("--json", json, "structured output");

    auto* x = app.add_subcommand("exp-eta",
                                 "exponential of the twist operator on a cochain");
    x->add_option("model", model_path, "model JSON file")->required();
    x->add_option("--sector", sector, "sector name or comma-separated exponents")
        ->required();
    x->add_option("--cochain", cochain, "cochain expression, e.g. \"t1 t2\"")
        ->required();
    x->add_flag("--json", json, "structured output");

    auto* c = app.add_subcommand("cup", "cup product of two cochain sums");
    c->add_option("model", model_path, "model JSON file")->required();
    c->add_option("--left", left, "left operand, e.g. \"[rho] t1 t2\"")->required();
    c->add_option("--right", right, "right operand")->required();
    c->add_option("--class-eq", classeq,
                  "verify class equality against this cochain sum");
    c->add_option("--max-degree", maxdeg, "witness search degree bound");
    c->add_flag("--json", json, "structured output");

    auto* inv = app.add_subcommand("invariants",
                                   "group-invariant monomial basis per sector");
    inv->add_option("model", model_path, "model JSON file")->required();
    inv->add_option("--sector", sector, "restrict to one sector");
    inv->add_option("--max-degree", maxdeg, "coefficient degree bound");
    inv->add_flag("--json", json, "structured output");

    auto* d = app.add_subcommand("demo", "run the built-in example end to end");
    d->add_flag("--json", json, "structured output");
    d->add_flag("--corrupt-g-table", corrupt, "negative control: tamper with the tables")
        ->group("");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (v->parsed()) return cmd_validate(model_path, json);
        if (g->parsed()) return cmd_gtable(model_path, sector, json);
        if (x->parsed()) return cmd_expeta(model_path, sector, cochain, json);
        if (c->parsed()) return cmd_cup(model_path, left, right, classeq, maxdeg, json);
        if (inv->parsed()) return cmd_invariants(model_path, sector, maxdeg, json);
        if (d->parsed()) return cmd_demo(json, corrupt);
    } catch (const tkos::ParseError& e) {
        std::cerr << "FAIL ParseError: " << e.what() << "\n";
        return 2;
    } catch (const tkos::UnknownSector& e) {
        std::cerr << "FAIL UnknownSector: " << e.what() << "\n";
        return 2;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "FAIL ParseError: " << e.what() << "\n";
        return 2;
    } catch (const tkos::Error& e) {
        std::cerr << "FAIL " << error_kind(e) << ": " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "FAIL " << error_kind(e) << ": " << e.what() << "\n";
        return 1;
    }
    return 2;
}
