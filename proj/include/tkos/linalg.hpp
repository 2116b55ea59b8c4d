#pragma once

#include <optional>
#include <vector>

#include "tkos/cyclotomic.hpp"
#include "tkos/errors.hpp"

namespace tkos {

/// Incremental row space over Q(zeta_m) in reduced row echelon form.
/// Tracks, for every stored row, its expression in the inserted generator
/// vectors, so membership queries return explicit coordinates.
class RowSpace {
public:
    explicit RowSpace(std::size_t dim) : dim_(dim) {}

    std::size_t dim() const { return dim_; }
    std::size_t rank() const { return rows_.size(); }
    std::size_t generators() const { return ngen_; }

    /// Inserts one generator vector; returns true when the rank grew.
    bool insert(std::vector<Cyc> v) {
        if (v.size() != dim_) throw DimensionMismatch("row of wrong length");
        std::vector<Cyc> combo(ngen_ + 1, Cyc(0));
        combo[ngen_] = Cyc(1);
        ++ngen_;
        reduce(v, &combo);
        std::size_t p = first_nonzero(v);
        if (p == dim_) return false;
        Cyc inv = v[p].inverse();
        scale(v, inv);
        scale(combo, inv);
        // Jordan step: clear the new pivot column in existing rows.
        for (std::size_t r = 0; r < rows_.size(); ++r) {
            if (rows_[r][p].is_zero()) continue;
            Cyc c = rows_[r][p];
            sub_scaled(rows_[r], c, v);
            sub_scaled_sparse(combos_[r], c, combo);
        }
        // Keep rows ordered by pivot column.
        std::size_t at = 0;
        while (at < pivots_.size() && pivots_[at] < p) ++at;
        rows_.insert(rows_.begin() + static_cast<std::ptrdiff_t>(at), std::move(v));
        combos_.insert(combos_.begin() + static_cast<std::ptrdiff_t>(at), std::move(combo));
        pivots_.insert(pivots_.begin() + static_cast<std::ptrdiff_t>(at), p);
        return true;
    }

    /// Coordinates x with b = sum_g x[g] * generator_g, if b is in the span.
    /// Generators that did not enlarge the span get coordinate zero.
    std::optional<std::vector<Cyc>> solve(std::vector<Cyc> b) const {
        if (b.size() != dim_) throw DimensionMismatch("vector of wrong length");
        std::vector<Cyc> x(ngen_, Cyc(0));
        for (std::size_t r = 0; r < rows_.size(); ++r) {
            const Cyc& c = b[pivots_[r]];
            if (c.is_zero()) continue;
            Cyc f = c;
            sub_scaled(b, f, rows_[r]);
            for (std::size_t g = 0; g < combos_[r].size(); ++g)
                if (!combos_[r][g].is_zero()) x[g] += f * combos_[r][g];
        }
        if (first_nonzero(b) != dim_) return std::nullopt;
        return x;
    }

    bool contains(std::vector<Cyc> b) const {
        for (std::size_t r = 0; r < rows_.size(); ++r) {
            const Cyc& c = b[pivots_[r]];
            if (c.is_zero()) continue;
            Cyc f = c;
            sub_scaled(b, f, rows_[r]);
        }
        return first_nonzero(b) == dim_;
    }

private:
    std::size_t dim_;
    std::size_t ngen_ = 0;
    std::vector<std::vector<Cyc>> rows_;
    std::vector<std::vector<Cyc>> combos_;  // rows_[r] = sum combos_[r][g] * gen_g
    std::vector<std::size_t> pivots_;

    static void scale(std::vector<Cyc>& v, const Cyc& c) {
        for (auto& e : v)
            if (!e.is_zero()) e *= c;
    }
    static void sub_scaled(std::vector<Cyc>& dst, const Cyc& c,
                           const std::vector<Cyc>& src) {
        for (std::size_t i = 0; i < src.size(); ++i)
            if (!src[i].is_zero()) dst[i] -= c * src[i];
    }
    static void sub_scaled_sparse(std::vector<Cyc>& dst, const Cyc& c,
                                  const std::vector<Cyc>& src) {
        if (dst.size() < src.size()) dst.resize(src.size(), Cyc(0));
        for (std::size_t i = 0; i < src.size(); ++i)
            if (!src[i].is_zero()) dst[i] -= c * src[i];
    }
    std::size_t first_nonzero(const std::vector<Cyc>& v) const {
        for (std::size_t i = 0; i < v.size(); ++i)
            if (!v[i].is_zero()) return i;
        return dim_;
    }

    void reduce(std::vector<Cyc>& v, std::vector<Cyc>* combo) const {
        for (std::size_t r = 0; r < rows_.size(); ++r) {
            const Cyc& c = v[pivots_[r]];
            if (c.is_zero()) continue;
            Cyc f = c;
            sub_scaled(v, f, rows_[r]);
            if (combo) sub_scaled_sparse(*combo, f, combos_[r]);
        }
    }
};

/// Solves A x = b exactly (A given row-major); free unknowns are set to zero.
inline std::optional<std::vector<Cyc>> solve_linear(
    const std::vector<std::vector<Cyc>>& A, const std::vector<Cyc>& b) {
    std::size_t rows = A.size();
    std::size_t cols = rows ? A[0].size() : 0;
    RowSpace rs(rows);
    for (std::size_t c = 0; c < cols; ++c) {
        std::vector<Cyc> col(rows, Cyc(0));
        for (std::size_t r = 0; r < rows; ++r) col[r] = A[r][c];
        rs.insert(std::move(col));
    }
    return rs.solve(b);
}

}  // namespace tkos
