#pragma once

#include <bit>
#include <string>
#include <vector>

namespace tkos {

/// Subsets of {1..n} as bitmasks; bit i-1 encodes membership of index i.
using Mask = unsigned;

inline Mask bit_of(int i) { return Mask{1} << (i - 1); }
inline bool has_index(Mask s, int i) { return (s & bit_of(i)) != 0; }
inline int set_size(Mask s) { return std::popcount(s); }

inline Mask full_mask(int n) { return (n == 0) ? 0u : ((Mask{1} << n) - 1u); }

/// Members in increasing order.
inline std::vector<int> bits(Mask s) {
    std::vector<int> out;
    for (int i = 1; s != 0; ++i, s >>= 1)
        if (s & 1u) out.push_back(i);
    return out;
}

/// 1-based position of i within the increasing enumeration of s.
inline int position_in(Mask s, int i) {
    return std::popcount(s & (bit_of(i) - 1u)) + 1;
}

/// Lexicographic order on the increasing index sequences: {1} < {1,2} < {2}.
inline bool indexset_less(Mask a, Mask b) {
    if (a == b) return false;
    while (a != 0 && b != 0) {
        int la = std::countr_zero(a), lb = std::countr_zero(b);
        if (la != lb) return la < lb;
        a &= a - 1u;
        b &= b - 1u;
    }
    return a == 0;
}

/// Sign of the permutation sorting the concatenation A,B of two disjoint
/// sets into increasing order: (-1)^{#{(a,b) in A x B : a > b}}.
inline int sign_merge(Mask a, Mask b) {
    int inv = 0;
    for (Mask t = a; t != 0; t &= t - 1u) {
        Mask lowest = t & (~t + 1u);
        inv += std::popcount(b & (lowest - 1u));
    }
    return (inv % 2 == 0) ? 1 : -1;
}

/// (-1)^{k(k-1)/2}: sign of reversing a k-element index block.
inline int sign_rev(int k) {
    return (k % 4 == 0 || k % 4 == 1) ? 1 : -1;
}

inline std::string indexset_str(Mask s) {
    std::string out = "{";
    bool first = true;
    for (int i : bits(s)) {
        if (!first) out += ",";
        out += std::to_string(i);
        first = false;
    }
    return out + "}";
}

}  // namespace tkos
