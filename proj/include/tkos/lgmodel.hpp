#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "tkos/errors.hpp"
#include "tkos/group.hpp"
#include "tkos/indexset.hpp"
#include "tkos/parse.hpp"
#include "tkos/poly.hpp"

namespace tkos {

/// The potential is not fixed by the group action.
struct NotInvariant : Error {
    explicit NotInvariant(const std::string& msg) : Error(msg) {}
};

/// Per-sector data: moved/fixed index sets, the restricted potential
/// W^h = W(x^h) (moved variables set to zero), and its partials.
struct SectorData {
    GroupElt h;
    Mask moved = 0;              // I_h
    Mask fixed = 0;              // I^h
    Poly Wh;
    std::vector<Poly> jacobian;  // dW^h/dx_i, i = 1..n
};

/// An orbifold Landau-Ginzburg model: an invariant potential W in x_1..x_n
/// together with a finite diagonal subgroup of (Z/m)^n. Immutable after
/// construction; all derived data is precomputed.
class OrbifoldLG {
public:
    static constexpr std::size_t kDefaultGroupCap = 4096;

    /// Checks the model data and builds the group closure and sector tables.
    static OrbifoldLG validate(int n, const Poly& W, int m,
                               std::vector<GroupElt> generators,
                               std::map<std::string, GroupElt> sector_names = {},
                               std::size_t group_cap = kDefaultGroupCap) {
        if (n < 1) throw Error("need at least one variable");
        if (m < 1) throw Error("root-of-unity order must be positive");
        if (W.nvars() != n) throw DimensionMismatch("potential has wrong variable count");
        if (W.is_zero()) throw Error("potential must be nonzero");
        if (W.uses_y()) throw Error("potential must use only the x variables");

        OrbifoldLG mod;
        mod.n_ = n;
        mod.m_ = m;
        mod.W_ = W;

        for (auto& g : generators) {
            if (static_cast<int>(g.k.size()) != n)
                throw DimensionMismatch("generator has wrong rank");
            for (auto& v : g.k) v = ((v % m) + m) % m;
            std::vector<Cyc> s(2 * static_cast<std::size_t>(n), Cyc(1));
            for (int i = 1; i <= n; ++i)
                s[static_cast<std::size_t>(i - 1)] = eigenvalue(g, m, i);
            if (W.diag_scale(s) != W)
                throw NotInvariant("potential is not invariant under generator (" +
                                   g.str() + ")");
        }
        mod.generators_ = generators;

        // Group closure by breadth-first products.
        std::set<GroupElt> seen;
        std::vector<GroupElt> frontier{group_identity(n)};
        seen.insert(frontier.front());
        while (!frontier.empty()) {
            std::vector<GroupElt> next;
            for (const auto& a : frontier) {
                for (const auto& g : mod.generators_) {
                    GroupElt b = group_mul(a, g, m);
                    if (seen.insert(b).second) {
                        if (seen.size() > group_cap)
                            throw GroupTooLarge("group closure exceeds cap of " +
                                                std::to_string(group_cap));
                        next.push_back(b);
                    }
                }
            }
            frontier = std::move(next);
        }
        mod.elements_.assign(seen.begin(), seen.end());

        for (const auto& h : mod.elements_) mod.sectors_.emplace(h, mod.make_sector(h));

        for (const auto& [name, h] : sector_names) {
            if (name == "1" && !is_identity(h))
                throw Error("sector name \"1\" is reserved for the identity");
            if (!mod.contains(h))
                throw UnknownSector("named sector (" + h.str() + ") is not in the group");
            mod.names_.emplace(h, name);
            mod.name_to_.emplace(name, h);
        }

        for (int j = 1; j <= n; ++j) mod.nabla_.push_back(mod.compute_nabla(j));
        mod.box_minus_ = mod.subst_prefix(n) - W;
        return mod;
    }

    int n() const { return n_; }
    int m() const { return m_; }
    const Poly& W() const { return W_; }
    const std::vector<GroupElt>& generators() const { return generators_; }
    const std::vector<GroupElt>& elements() const { return elements_; }

    GroupElt identity() const { return group_identity(n_); }
    GroupElt mul(const GroupElt& a, const GroupElt& b) const { return group_mul(a, b, m_); }
    GroupElt inv(const GroupElt& a) const { return group_inv(a, m_); }
    bool contains(const GroupElt& h) const { return sectors_.count(h) != 0; }

    const SectorData& sector(const GroupElt& h) const {
        auto it = sectors_.find(h);
        if (it == sectors_.end())
            throw UnknownSector("group element (" + h.str() + ") is not in the group");
        return it->second;
    }

    /// Difference quotient: [W(y1..yj, x_{j+1}..xn) - W(y1..y_{j-1}, xj..xn)] / (yj - xj).
    const Poly& nabla(int j) const { return nabla_.at(static_cast<std::size_t>(j - 1)); }

    /// nabla_i evaluated at (hx, y): x_k scaled by the eigenvalue of h.
    Poly nabla_at(const GroupElt& h, int i) const {
        std::vector<Cyc> s(2 * static_cast<std::size_t>(n_), Cyc(1));
        for (int k = 1; k <= n_; ++k)
            s[static_cast<std::size_t>(k - 1)] = eigenvalue(h, m_, k);
        return nabla(i).diag_scale(s);
    }

    /// W(y) - W(x), the potential of the self-factorization.
    const Poly& box_minus() const { return box_minus_; }

    std::string sector_name(const GroupElt& h) const {
        if (is_identity(h)) return "1";
        auto it = names_.find(h);
        return it != names_.end() ? it->second : h.str();
    }

    GroupElt sector_by_name(const std::string& name) const {
        if (name == "1") return identity();
        auto it = name_to_.find(name);
        if (it != name_to_.end()) return it->second;
        // Fall back to a comma-separated exponent vector.
        GroupElt h;
        std::size_t p = 0;
        while (p <= name.size()) {
            std::size_t q = name.find(',', p);
            std::string part = name.substr(p, q == std::string::npos ? q : q - p);
            try {
                h.k.push_back(std::stoi(part));
            } catch (const std::exception&) {
                throw UnknownSector("cannot parse sector \"" + name + "\"");
            }
            if (q == std::string::npos) break;
            p = q + 1;
        }
        if (static_cast<int>(h.k.size()) != n_)
            throw UnknownSector("sector \"" + name + "\" has wrong rank");
        for (auto& v : h.k) v = ((v % m_) + m_) % m_;
        if (!contains(h))
            throw UnknownSector("sector (" + h.str() + ") is not in the group");
        return h;
    }

    static OrbifoldLG from_json(const nlohmann::json& j,
                                std::size_t group_cap = kDefaultGroupCap) {
        if (!j.contains("n") || !j.contains("W") || !j.contains("m") ||
            !j.contains("generators"))
            throw Error("model JSON needs fields n, W, m, generators");
        int n = j.at("n").get<int>();
        int m = j.at("m").get<int>();
        if (n < 1) throw Error("need at least one variable");
        if (m < 1) throw Error("root-of-unity order must be positive");
        Poly W = ExprParser::poly(j.at("W").get<std::string>(), n, m);
        std::vector<GroupElt> gens;
        for (const auto& g : j.at("generators"))
            gens.push_back(GroupElt{g.get<std::vector<int>>()});
        std::map<std::string, GroupElt> names;
        if (j.contains("sector_names"))
            for (const auto& [name, v] : j.at("sector_names").items())
                names.emplace(name, GroupElt{v.get<std::vector<int>>()});
        return validate(n, W, m, std::move(gens), std::move(names), group_cap);
    }

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["n"] = n_;
        j["m"] = m_;
        j["W"] = W_.str();
        j["generators"] = nlohmann::json::array();
        for (const auto& g : generators_) j["generators"].push_back(g.k);
        if (!names_.empty()) {
            nlohmann::json names = nlohmann::json::object();
            for (const auto& [h, name] : names_) names[name] = h.k;
            j["sector_names"] = names;
        }
        return j;
    }

private:
    int n_ = 0, m_ = 1;
    Poly W_;
    std::vector<GroupElt> generators_;
    std::vector<GroupElt> elements_;
    std::map<GroupElt, SectorData> sectors_;
    std::map<GroupElt, std::string> names_;
    std::map<std::string, GroupElt> name_to_;
    std::vector<Poly> nabla_;
    Poly box_minus_;

    SectorData make_sector(const GroupElt& h) const {
        SectorData s;
        s.h = h;
        for (int i = 1; i <= n_; ++i)
            (h.k[static_cast<std::size_t>(i - 1)] % m_ != 0 ? s.moved : s.fixed) |=
                bit_of(i);
        std::vector<Poly> images;
        for (int i = 1; i <= n_; ++i)
            images.push_back(has_index(s.moved, i) ? Poly(n_) : Poly::x(n_, i));
        for (int i = 1; i <= n_; ++i) images.push_back(Poly::y(n_, i));
        s.Wh = W_.substitute(images);
        for (int i = 1; i <= n_; ++i) s.jacobian.push_back(s.Wh.partial(i - 1));
        return s;
    }

    /// W(y1..yj, x_{j+1}..xn).
    Poly subst_prefix(int j) const {
        std::vector<Poly> images;
        for (int k = 1; k <= n_; ++k)
            images.push_back(k <= j ? Poly::y(n_, k) : Poly::x(n_, k));
        for (int k = 1; k <= n_; ++k) images.push_back(Poly::y(n_, k));
        return W_.substitute(images);
    }

    Poly compute_nabla(int j) const {
        Poly num = subst_prefix(j) - subst_prefix(j - 1);
        return num.exact_div(Poly::y(n_, j) - Poly::x(n_, j));
    }
};

}  // namespace tkos
