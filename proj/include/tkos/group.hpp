#pragma once

#include <string>
#include <vector>

#include "tkos/cyclotomic.hpp"
#include "tkos/errors.hpp"

namespace tkos {

/// Element of a finite diagonal group (Z/m)^n, stored as exponents of zeta_m.
struct GroupElt {
    std::vector<int> k;

    friend bool operator==(const GroupElt& a, const GroupElt& b) { return a.k == b.k; }
    friend bool operator!=(const GroupElt& a, const GroupElt& b) { return !(a == b); }
    friend bool operator<(const GroupElt& a, const GroupElt& b) { return a.k < b.k; }

    std::string str() const {
        std::string out;
        for (std::size_t i = 0; i < k.size(); ++i) {
            if (i) out += ",";
            out += std::to_string(k[i]);
        }
        return out;
    }
};

inline GroupElt group_identity(int n) {
    return GroupElt{std::vector<int>(static_cast<std::size_t>(n), 0)};
}

inline bool is_identity(const GroupElt& g) {
    for (int v : g.k)
        if (v != 0) return false;
    return true;
}

inline GroupElt group_mul(const GroupElt& a, const GroupElt& b, int m) {
    if (a.k.size() != b.k.size())
        throw DimensionMismatch("group elements of different rank");
    GroupElt r = a;
    for (std::size_t i = 0; i < r.k.size(); ++i) r.k[i] = (r.k[i] + b.k[i]) % m;
    return r;
}

inline GroupElt group_inv(const GroupElt& a, int m) {
    GroupElt r = a;
    for (auto& v : r.k) v = (m - v % m) % m;
    return r;
}

/// Eigenvalue of h on x_i (1-based): zeta_m^{k_i}.
inline Cyc eigenvalue(const GroupElt& h, int m, int i) {
    return Cyc::zeta(static_cast<unsigned>(m), h.k.at(static_cast<std::size_t>(i - 1)));
}

}  // namespace tkos
