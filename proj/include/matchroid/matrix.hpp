#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "matchroid/error.hpp"
#include "matchroid/field.hpp"

namespace matchroid {

struct MatrixEntry {
    std::string row;
    std::string col;
    FieldValue value;
};

/// Immutable sparse matrix over an exact field. Rows and columns are named
/// by ids; declaration order is the order used everywhere (pivoting, greedy
/// scans, rendering). Zero entries are never stored.
class SparseMatrix {
public:
    SparseMatrix(FieldSpec field, std::vector<std::string> row_ids, std::vector<std::string> col_ids,
                 const std::vector<MatrixEntry>& entries)
        : field_(field), row_ids_(std::move(row_ids)), col_ids_(std::move(col_ids)) {
        build_index(row_ids_, row_index_, "row");
        build_index(col_ids_, col_index_, "column");
        for (const auto& e : entries) {
            if (e.value.spec() != field_)
                throw parameter_error("entry (" + e.row + "," + e.col + ") is not a " + field_.name() + " value");
            if (e.value.is_zero())
                throw parameter_error("explicit zero entry at (" + e.row + "," + e.col + ")");
            const auto r = row_index_.find(e.row);
            if (r == row_index_.end()) throw parameter_error("entry references undeclared row '" + e.row + "'");
            const auto c = col_index_.find(e.col);
            if (c == col_index_.end()) throw parameter_error("entry references undeclared column '" + e.col + "'");
            if (!cells_.emplace(std::make_pair(r->second, c->second), e.value).second)
                throw parameter_error("duplicate entry at (" + e.row + "," + e.col + ")");
        }
    }

    const FieldSpec& field() const { return field_; }
    const std::vector<std::string>& row_ids() const { return row_ids_; }
    const std::vector<std::string>& col_ids() const { return col_ids_; }
    std::size_t row_count() const { return row_ids_.size(); }
    std::size_t col_count() const { return col_ids_.size(); }

    /// Cells keyed by (row index, column index) in declaration order.
    const std::map<std::pair<std::uint32_t, std::uint32_t>, FieldValue>& cells() const { return cells_; }

    std::uint32_t row_index(const std::string& id) const { return lookup(row_index_, id, "row"); }
    std::uint32_t col_index(const std::string& id) const { return lookup(col_index_, id, "column"); }
    bool has_row(const std::string& id) const { return row_index_.count(id) != 0; }
    bool has_col(const std::string& id) const { return col_index_.count(id) != 0; }

    const FieldValue* find_by_index(std::uint32_t r, std::uint32_t c) const {
        const auto it = cells_.find({r, c});
        return it == cells_.end() ? nullptr : &it->second;
    }

    const FieldValue* find(const std::string& row, const std::string& col) const {
        return find_by_index(row_index(row), col_index(col));
    }

    SparseMatrix transposed() const {
        std::vector<MatrixEntry> entries;
        entries.reserve(cells_.size());
        for (const auto& [key, v] : cells_)
            entries.push_back({col_ids_[key.second], row_ids_[key.first], v});
        return SparseMatrix(field_, col_ids_, row_ids_, entries);
    }

    /// Matrix on the same rows restricted to the given columns (indices must
    /// be strictly increasing).
    SparseMatrix select_columns(const std::vector<std::uint32_t>& cols) const {
        std::vector<std::string> ids;
        ids.reserve(cols.size());
        for (std::uint32_t c : cols) ids.push_back(col_ids_.at(c));
        std::vector<MatrixEntry> entries;
        for (std::size_t new_c = 0; new_c < cols.size(); ++new_c) {
            for (std::uint32_t r = 0; r < row_ids_.size(); ++r) {
                if (const FieldValue* v = find_by_index(r, cols[new_c]))
                    entries.push_back({row_ids_[r], ids[new_c], *v});
            }
        }
        return SparseMatrix(field_, row_ids_, ids, entries);
    }

private:
    static void build_index(const std::vector<std::string>& ids,
                            std::unordered_map<std::string, std::uint32_t>& index, const char* what) {
        for (std::uint32_t i = 0; i < ids.size(); ++i) {
            if (ids[i].empty()) throw parameter_error(std::string(what) + " ids must be nonempty");
            if (!index.emplace(ids[i], i).second)
                throw parameter_error("duplicate " + std::string(what) + " id '" + ids[i] + "'");
        }
    }

    static std::uint32_t lookup(const std::unordered_map<std::string, std::uint32_t>& index,
                                const std::string& id, const char* what) {
        const auto it = index.find(id);
        if (it == index.end()) throw not_an_element("unknown " + std::string(what) + " id '" + id + "'");
        return it->second;
    }

    FieldSpec field_;
    std::vector<std::string> row_ids_;
    std::vector<std::string> col_ids_;
    std::unordered_map<std::string, std::uint32_t> row_index_;
    std::unordered_map<std::string, std::uint32_t> col_index_;
    std::map<std::pair<std::uint32_t, std::uint32_t>, FieldValue> cells_;
};

/// y = m * x, where x assigns a value to every column id (and nothing else).
inline std::map<std::string, FieldValue> mat_vec(const SparseMatrix& m,
                                                 const std::map<std::string, FieldValue>& x) {
    if (x.size() != m.col_count())
        throw parameter_error("vector assigns " + std::to_string(x.size()) + " values to " +
                              std::to_string(m.col_count()) + " columns");
    std::vector<const FieldValue*> by_index(m.col_count(), nullptr);
    for (const auto& [id, v] : x) {
        if (!m.has_col(id)) throw parameter_error("vector assigns a value to unknown column '" + id + "'");
        if (v.spec() != m.field())
            throw spec_mismatch("vector value for '" + id + "' is not a " + m.field().name() + " value");
        by_index[m.col_index(id)] = &v;
    }

    std::vector<FieldValue> sums(m.row_count(), FieldValue::zero(m.field()));
    for (const auto& [key, v] : m.cells())
        sums[key.first] = sums[key.first] + v * *by_index[key.second];

    std::map<std::string, FieldValue> out;
    for (std::uint32_t r = 0; r < m.row_count(); ++r) out.emplace(m.row_ids()[r], sums[r]);
    return out;
}

namespace detail {

struct Elimination {
    std::size_t rank = 0;
    // pivot row for each column, or none if the column is free
    std::vector<std::optional<std::uint32_t>> pivot_row_of_col;
    // Gauss-Jordan reduced dense copy, rows x cols in declaration order
    std::vector<std::vector<FieldValue>> reduced;
};

/// Exact Gauss-Jordan elimination with pinned pivoting: scan columns in
/// declaration order, pick the first not-yet-used row with a nonzero entry.
inline Elimination eliminate(const SparseMatrix& m) {
    const std::size_t n_rows = m.row_count();
    const std::size_t n_cols = m.col_count();
    const FieldValue zero = FieldValue::zero(m.field());

    Elimination out;
    out.pivot_row_of_col.assign(n_cols, std::nullopt);
    out.reduced.assign(n_rows, std::vector<FieldValue>(n_cols, zero));
    for (const auto& [key, v] : m.cells()) out.reduced[key.first][key.second] = v;

    std::vector<bool> row_used(n_rows, false);
    for (std::uint32_t c = 0; c < n_cols; ++c) {
        std::optional<std::uint32_t> pivot;
        for (std::uint32_t r = 0; r < n_rows; ++r) {
            if (!row_used[r] && !out.reduced[r][c].is_zero()) {
                pivot = r;
                break;
            }
        }
        if (!pivot) continue;
        row_used[*pivot] = true;
        out.pivot_row_of_col[c] = pivot;
        ++out.rank;
        const std::vector<FieldValue>& prow = out.reduced[*pivot];
        const FieldValue inv = prow[c].inverse();
        for (std::uint32_t r = 0; r < n_rows; ++r) {
            if (r == *pivot || out.reduced[r][c].is_zero()) continue;
            const FieldValue factor = out.reduced[r][c] * inv;
            for (std::uint32_t k = c; k < n_cols; ++k)
                out.reduced[r][k] = out.reduced[r][k] - factor * prow[k];
        }
    }
    return out;
}

/// Fraction-free (Bareiss) test for full column rank of an integer matrix,
/// same pivot rule as eliminate(). Exact division keeps entries bounded by
/// minors of the input; much faster than rational arithmetic.
inline bool columns_independent_bareiss(std::vector<std::vector<BigInt>> grid, std::size_t n_cols) {
    if (n_cols == 0) return true;
    const std::size_t n_rows = grid.size();
    if (n_cols > n_rows) return false;
    std::vector<bool> row_used(n_rows, false);
    BigInt previous_pivot(1);
    for (std::size_t c = 0; c < n_cols; ++c) {
        std::size_t pivot = n_rows;
        for (std::size_t r = 0; r < n_rows; ++r) {
            if (!row_used[r] && grid[r][c] != 0) {
                pivot = r;
                break;
            }
        }
        if (pivot == n_rows) return false;
        row_used[pivot] = true;
        const std::vector<BigInt>& prow = grid[pivot];
        // every non-pivot row is rescaled, zero leading entry or not; the
        // exact division only holds when no row is skipped
        for (std::size_t r = 0; r < n_rows; ++r) {
            if (row_used[r]) continue;
            for (std::size_t k = c + 1; k < n_cols; ++k)
                grid[r][k] = (grid[r][k] * prow[c] - grid[r][c] * prow[k]) / previous_pivot;
            grid[r][c] = 0;
        }
        previous_pivot = prow[c];
    }
    return true;
}

/// Full-column-rank test over GF(p) on raw residues.
inline bool columns_independent_modular(std::vector<std::vector<std::uint64_t>> grid, std::size_t n_cols,
                                        std::uint64_t p) {
    if (n_cols == 0) return true;
    const std::size_t n_rows = grid.size();
    if (n_cols > n_rows) return false;
    std::vector<bool> row_used(n_rows, false);
    for (std::size_t c = 0; c < n_cols; ++c) {
        std::size_t pivot = n_rows;
        for (std::size_t r = 0; r < n_rows; ++r) {
            if (!row_used[r] && grid[r][c] != 0) {
                pivot = r;
                break;
            }
        }
        if (pivot == n_rows) return false;
        row_used[pivot] = true;
        const std::vector<std::uint64_t>& prow = grid[pivot];
        const std::uint64_t inv = mod_inverse(static_cast<std::uint32_t>(prow[c]),
                                              static_cast<std::uint32_t>(p));
        for (std::size_t r = 0; r < n_rows; ++r) {
            if (row_used[r] || grid[r][c] == 0) continue;
            const std::uint64_t factor = grid[r][c] * inv % p;
            for (std::size_t k = c + 1; k < n_cols; ++k)
                grid[r][k] = (grid[r][k] + (p - factor) * prow[k]) % p;
            grid[r][c] = 0;
        }
    }
    return true;
}

} // namespace detail

/// Exact rank over the matrix field.
inline std::size_t rank(const SparseMatrix& m) { return detail::eliminate(m).rank; }

/// A nonzero assignment to columns that the matrix annihilates, i.e. a
/// certificate that the homogeneous system has a nontrivial solution.
class KernelWitness {
public:
    KernelWitness(const SparseMatrix& m, std::vector<FieldValue> values_by_col)
        : col_ids_(m.col_ids()), values_(std::move(values_by_col)) {
        if (values_.size() != col_ids_.size())
            throw parameter_error("kernel witness has wrong length");
        bool nonzero = false;
        std::map<std::string, FieldValue> x;
        for (std::size_t c = 0; c < col_ids_.size(); ++c) {
            nonzero = nonzero || !values_[c].is_zero();
            x.emplace(col_ids_[c], values_[c]);
        }
        if (!nonzero) throw parameter_error("kernel witness is identically zero");
        for (const auto& [row, sum] : mat_vec(m, x)) {
            if (!sum.is_zero())
                throw parameter_error("kernel witness does not annihilate row '" + row + "'");
        }
    }

    const std::vector<std::string>& col_ids() const { return col_ids_; }
    const std::vector<FieldValue>& values() const { return values_; }

    const FieldValue& at(const std::string& col) const {
        for (std::size_t c = 0; c < col_ids_.size(); ++c)
            if (col_ids_[c] == col) return values_[c];
        throw not_an_element("witness has no column '" + col + "'");
    }

    std::map<std::string, FieldValue> assignment() const {
        std::map<std::string, FieldValue> out;
        for (std::size_t c = 0; c < col_ids_.size(); ++c) out.emplace(col_ids_[c], values_[c]);
        return out;
    }

private:
    std::vector<std::string> col_ids_;
    std::vector<FieldValue> values_;
};

/// Absent iff rank equals the column count (the system has only the trivial
/// solution). Otherwise the canonical witness: 1 on the first free column,
/// 0 on the remaining free columns, pivot columns by back-substitution.
inline std::optional<KernelWitness> kernel_witness(const SparseMatrix& m) {
    const std::size_t n_cols = m.col_count();
    const detail::Elimination elim = detail::eliminate(m);
    if (elim.rank == n_cols) return std::nullopt;

    std::optional<std::uint32_t> first_free;
    for (std::uint32_t c = 0; c < n_cols; ++c) {
        if (!elim.pivot_row_of_col[c]) {
            first_free = c;
            break;
        }
    }

    const FieldValue zero = FieldValue::zero(m.field());
    std::vector<FieldValue> values(n_cols, zero);
    values[*first_free] = FieldValue::one(m.field());
    for (std::uint32_t c = 0; c < n_cols; ++c) {
        if (!elim.pivot_row_of_col[c]) continue;
        const std::vector<FieldValue>& row = elim.reduced[*elim.pivot_row_of_col[c]];
        values[c] = -(row[*first_free] / row[c]);
    }
    return KernelWitness(m, std::move(values));
}

} // namespace matchroid
