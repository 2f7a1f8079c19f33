#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "matchroid/error.hpp"
#include "matchroid/exchange.hpp"
#include "matchroid/matching.hpp"
#include "matchroid/matrix.hpp"
#include "matchroid/matroid.hpp"

namespace matchroid {

/// The augmented vector family of a matrix: one identity vector per row
/// (element "row:<id>") followed by one column vector per column (element
/// "col:<id>"), all living over the row coordinates. The prefixes keep the
/// two id spaces disjoint. The row elements always form a base of the
/// resulting matroid; whether the column elements are independent is exactly
/// whether the matrix has a trivial kernel.
struct AugmentedFamily {
    Matroid matroid;
    SparseMatrix vectors; // coordinates = matrix rows, columns = tagged elements
    std::vector<std::string> row_elements;
    std::vector<std::string> col_elements;
    bool rows_form_base;
    bool cols_independent;
};

inline AugmentedFamily build_augmented_matroid(const SparseMatrix& m) {
    std::vector<std::string> tagged;
    std::vector<std::string> row_elements, col_elements;
    std::vector<MatrixEntry> entries;
    for (const auto& row : m.row_ids()) {
        row_elements.push_back("row:" + row);
        tagged.push_back(row_elements.back());
        entries.push_back({row, row_elements.back(), FieldValue::one(m.field())});
    }
    for (const auto& col : m.col_ids()) {
        col_elements.push_back("col:" + col);
        tagged.push_back(col_elements.back());
    }
    for (const auto& [key, v] : m.cells())
        entries.push_back({m.row_ids()[key.first], col_elements[key.second], v});

    SparseMatrix vectors(m.field(), m.row_ids(), tagged, entries);
    Matroid matroid = column_matroid(vectors);
    const bool rows_base = is_base(matroid, row_elements);
    if (!rows_base)
        throw internal_contract_violation("identity vectors do not form a base of the augmented matroid");
    const bool cols_indep = matroid.independent(col_elements);
    return AugmentedFamily{std::move(matroid), std::move(vectors), std::move(row_elements),
                           std::move(col_elements), rows_base, cols_indep};
}

/// Either the injection from columns to rows promised by a trivial kernel,
/// or a kernel witness showing the kernel is nontrivial.
struct SolveOutcome {
    std::optional<InjectionMap> injection; // column id -> row id
    std::optional<KernelWitness> witness;

    bool found_injection() const { return injection.has_value(); }
};

/// True iff phi covers every column, hits distinct rows, and each pair
/// (phi(j), j) sits on a stored (hence nonzero) entry.
inline bool verify_injection(const SparseMatrix& m, const InjectionMap& phi) {
    if (phi.size() != m.col_count()) return false;
    for (const auto& [col, row] : phi.pairs()) {
        if (!m.has_col(col) || !m.has_row(row)) return false;
        if (m.find_by_index(m.row_index(row), m.col_index(col)) == nullptr) return false;
    }
    return true;
}

/// Decides whether the homogeneous system has only the trivial solution and,
/// if so, constructs the injection of variables into equations through the
/// matroid route: augment, then inject the column elements into the row base.
inline SolveOutcome solve_variable_equation_matching(const SparseMatrix& m) {
    if (auto witness = kernel_witness(m)) return SolveOutcome{std::nullopt, std::move(witness)};

    AugmentedFamily aug = build_augmented_matroid(m);
    if (!aug.cols_independent)
        throw internal_contract_violation("kernel is trivial but column elements are dependent");

    const InjectionMap tagged =
        independent_into_base_injection(aug.matroid, aug.col_elements, aug.row_elements);

    std::vector<std::pair<std::string, std::string>> pairs;
    for (const auto& [source, target] : tagged.pairs())
        pairs.emplace_back(source.substr(4), target.substr(4));
    InjectionMap phi{std::move(pairs)};

    for (const auto& [col, row] : phi.pairs()) {
        if (m.find_by_index(m.row_index(row), m.col_index(col)) == nullptr)
            throw internal_contract_violation("matroid route selected the zero entry (" + row + "," + col + ")");
    }
    return SolveOutcome{std::move(phi), std::nullopt};
}

/// The direct route: maximum matching in the support graph (an edge per
/// stored entry). Present iff the matching saturates every column.
inline std::optional<InjectionMap> hall_matching_oracle(const SparseMatrix& m) {
    std::vector<std::vector<std::uint32_t>> adjacency(m.col_count());
    for (const auto& [key, v] : m.cells()) adjacency[key.second].push_back(key.first);

    const MatchingResult matching =
        maximum_bipartite_matching(m.col_count(), m.row_count(), adjacency);
    if (matching.pairs != m.col_count()) return std::nullopt;

    std::vector<std::pair<std::string, std::string>> pairs;
    for (std::uint32_t c = 0; c < m.col_count(); ++c)
        pairs.emplace_back(m.col_ids()[c], m.row_ids()[static_cast<std::uint32_t>(matching.left_to_right[c])]);
    return InjectionMap(std::move(pairs));
}

namespace detail {

/// Unbiased uniform draw in [0, n); rejection keeps the stream portable.
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n) {
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t v = rng();
    while (v >= limit) v = rng();
    return v % n;
}

template <typename T>
void shuffle_in_place(std::mt19937_64& rng, std::vector<T>& items) {
    for (std::size_t i = items.size(); i > 1; --i) std::swap(items[i - 1], items[uniform_below(rng, i)]);
}

/// Strictly positive over Q so that triangular products cannot cancel;
/// uniform over GF(p).
inline FieldValue random_block_value(std::mt19937_64& rng, const FieldSpec& field) {
    if (field.kind() == FieldKind::rationals)
        return FieldValue::rational(BigInt(1 + uniform_below(rng, 4)), BigInt(1 + uniform_below(rng, 3)));
    return FieldValue::residue(field, uniform_below(rng, field.modulus()));
}

inline FieldValue random_nonzero_value(std::mt19937_64& rng, const FieldSpec& field) {
    if (field.kind() == FieldKind::rationals) {
        const bool negative = uniform_below(rng, 2) == 1;
        const BigInt num(1 + uniform_below(rng, 5));
        const BigInt den(1 + uniform_below(rng, 3));
        return FieldValue::rational(negative ? -num : num, den);
    }
    return FieldValue::residue(field, 1 + uniform_below(rng, field.modulus() - 1));
}

} // namespace detail

/// Reproducible random instance with a guaranteed trivial kernel: an
/// invertible block (product of unit triangular matrices) is planted on the
/// first n_cols rows, extra nonzero entries are sprinkled below it up to the
/// requested density, and the rows and columns are then permuted.
inline SparseMatrix generate_instance(const FieldSpec& field, std::size_t n_rows, std::size_t n_cols,
                                      double density, std::uint64_t seed) {
    if (n_cols > n_rows)
        throw parameter_error("need n_cols <= n_rows, got " + std::to_string(n_cols) + " > " +
                              std::to_string(n_rows));
    if (!(density > 0.0) || density > 1.0) throw parameter_error("density must lie in (0, 1]");

    std::mt19937_64 rng(seed);
    const FieldValue zero = FieldValue::zero(field);
    const FieldValue unit = FieldValue::one(field);

    std::vector<std::vector<FieldValue>> upper(n_cols, std::vector<FieldValue>(n_cols, zero));
    std::vector<std::vector<FieldValue>> lower(n_cols, std::vector<FieldValue>(n_cols, zero));
    for (std::size_t i = 0; i < n_cols; ++i) {
        upper[i][i] = unit;
        lower[i][i] = unit;
        for (std::size_t j = i + 1; j < n_cols; ++j) upper[i][j] = detail::random_block_value(rng, field);
        for (std::size_t j = 0; j < i; ++j) lower[i][j] = detail::random_block_value(rng, field);
    }

    std::vector<std::vector<FieldValue>> grid(n_rows, std::vector<FieldValue>(n_cols, zero));
    std::size_t nonzeros = 0;
    for (std::size_t i = 0; i < n_cols; ++i) {
        for (std::size_t j = 0; j < n_cols; ++j) {
            FieldValue sum = zero;
            for (std::size_t k = 0; k < n_cols; ++k) sum = sum + upper[i][k] * lower[k][j];
            grid[i][j] = sum;
            if (!sum.is_zero()) ++nonzeros;
        }
    }

    const std::size_t target =
        static_cast<std::size_t>(std::ceil(density * static_cast<double>(n_rows * n_cols)));
    std::vector<std::pair<std::size_t, std::size_t>> spare;
    for (std::size_t i = n_cols; i < n_rows; ++i)
        for (std::size_t j = 0; j < n_cols; ++j) spare.emplace_back(i, j);
    detail::shuffle_in_place(rng, spare);
    for (std::size_t at = 0; nonzeros < target && at < spare.size(); ++at, ++nonzeros)
        grid[spare[at].first][spare[at].second] = detail::random_nonzero_value(rng, field);

    std::vector<std::size_t> row_perm(n_rows), col_perm(n_cols);
    for (std::size_t i = 0; i < n_rows; ++i) row_perm[i] = i;
    for (std::size_t j = 0; j < n_cols; ++j) col_perm[j] = j;
    detail::shuffle_in_place(rng, row_perm);
    detail::shuffle_in_place(rng, col_perm);

    std::vector<std::string> row_ids, col_ids;
    for (std::size_t i = 0; i < n_rows; ++i) row_ids.push_back("r" + std::to_string(i + 1));
    for (std::size_t j = 0; j < n_cols; ++j) col_ids.push_back("c" + std::to_string(j + 1));

    std::vector<MatrixEntry> entries;
    entries.reserve(nonzeros);
    for (std::size_t i = 0; i < n_rows; ++i) {
        for (std::size_t j = 0; j < n_cols; ++j) {
            if (!grid[i][j].is_zero())
                entries.push_back({row_ids[row_perm[i]], col_ids[col_perm[j]], grid[i][j]});
        }
    }
    return SparseMatrix(field, row_ids, col_ids, entries);
}

} // namespace matchroid
