#include <matchroid/solver.hpp>

#include <matchroid/io.hpp>

#include "oracles.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <bit>
#include <random>

using namespace matchroid;

namespace {

const FieldSpec kQ = FieldSpec::rationals();
const FieldSpec kF2 = FieldSpec::prime_field(2);
const FieldSpec kF5 = FieldSpec::prime_field(5);

std::vector<std::string> ids(const char* prefix, std::size_t n) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i + 1));
    return out;
}

SparseMatrix from_ints(const FieldSpec& field, const std::vector<std::vector<long long>>& grid) {
    const std::size_t n_rows = grid.size();
    const std::size_t n_cols = n_rows == 0 ? 0 : grid[0].size();
    std::vector<MatrixEntry> entries;
    for (std::size_t r = 0; r < n_rows; ++r)
        for (std::size_t c = 0; c < n_cols; ++c) {
            const FieldValue v = FieldValue::from_int(field, grid[r][c]);
            if (!v.is_zero()) entries.push_back({"r" + std::to_string(r + 1), "c" + std::to_string(c + 1), v});
        }
    return SparseMatrix(field, ids("r", n_rows), ids("c", n_cols), entries);
}

SparseMatrix identity(const FieldSpec& field, std::size_t n) {
    std::vector<std::vector<long long>> grid(n, std::vector<long long>(n, 0));
    for (std::size_t i = 0; i < n; ++i) grid[i][i] = 1;
    return from_ints(field, grid);
}

const SparseMatrix kExample32 = from_ints(kF2, {{1, 1}, {0, 1}, {1, 0}});

/// Cross-checks the three routes on one instance. A trivial kernel forces an
/// injection on every route; a matching can still exist when the kernel is
/// nontrivial (equal nonzero columns, say), so that direction is one-way.
void check_route_relations(const SparseMatrix& m) {
    const SolveOutcome outcome = solve_variable_equation_matching(m);
    const auto hall = hall_matching_oracle(m);
    const auto witness = kernel_witness(m);
    const auto brute = oracles::enumerate_valid_injections(m);

    CHECK(outcome.found_injection() == !witness.has_value());
    CHECK(hall.has_value() == !brute.empty());
    CHECK(hall.has_value() == oracles::hall_condition_holds(m));
    if (!witness.has_value()) {
        CHECK(outcome.found_injection());
        CHECK(hall.has_value());
        CHECK_FALSE(brute.empty());
    }

    if (outcome.found_injection()) {
        CHECK(verify_injection(m, *outcome.injection));
        CHECK(verify_injection(m, *hall));
    } else {
        bool nonzero = false;
        for (const auto& v : outcome.witness->values()) nonzero = nonzero || !v.is_zero();
        CHECK(nonzero);
        for (const auto& [row, sum] : mat_vec(m, outcome.witness->assignment())) {
            (void)row;
            CHECK(sum.is_zero());
        }
    }
}

} // namespace

TEST_CASE("augmented family of the 2x2 identity") {
    const AugmentedFamily aug = build_augmented_matroid(identity(kQ, 2));
    CHECK(aug.matroid.size() == 4);
    CHECK(aug.matroid.rank() == 2);
    CHECK(aug.rows_form_base);
    CHECK(aug.cols_independent);
    CHECK(is_base(aug.matroid, aug.col_elements));
}

TEST_CASE("augmented family tags rows and columns disjointly") {
    // a matrix whose row and column ids collide on purpose
    const SparseMatrix m(kQ, {"i"}, {"i"}, {{"i", "i", FieldValue::one(kQ)}});
    const AugmentedFamily aug = build_augmented_matroid(m);
    CHECK(aug.row_elements == std::vector<std::string>{"row:i"});
    CHECK(aug.col_elements == std::vector<std::string>{"col:i"});
    CHECK(aug.matroid.size() == 2);
}

TEST_CASE("augmented family of the all-ones matrix has dependent columns") {
    const AugmentedFamily aug = build_augmented_matroid(from_ints(kF2, {{1, 1}, {1, 1}}));
    CHECK(aug.rows_form_base);
    CHECK_FALSE(aug.cols_independent);
}

TEST_CASE("augmented family of the 3x2 example") {
    const AugmentedFamily aug = build_augmented_matroid(kExample32);
    CHECK(aug.matroid.size() == 5);
    CHECK(aug.matroid.rank() == 3);
    CHECK(aug.cols_independent);
    // the augmented vectors satisfy f_i(i) = 1, f_i(i') = 0 and f_j(i) = a_ij
    for (const auto& row : kExample32.row_ids()) {
        for (const auto& coord : kExample32.row_ids()) {
            const FieldValue* v = aug.vectors.find(coord, "row:" + row);
            if (coord == row) {
                REQUIRE(v != nullptr);
                CHECK(v->is_one());
            } else {
                CHECK(v == nullptr);
            }
        }
    }
    for (const auto& [key, v] : kExample32.cells()) {
        const FieldValue* got =
            aug.vectors.find(kExample32.row_ids()[key.first], "col:" + kExample32.col_ids()[key.second]);
        REQUIRE(got != nullptr);
        CHECK(*got == v);
    }
}

TEST_CASE("solve on identity matrices gives the identity injection") {
    for (std::size_t n : {std::size_t(1), std::size_t(2), std::size_t(3), std::size_t(4)}) {
        const SolveOutcome outcome = solve_variable_equation_matching(identity(kF5, n));
        REQUIRE(outcome.found_injection());
        for (std::size_t j = 1; j <= n; ++j)
            CHECK(outcome.injection->at("c" + std::to_string(j)) == "r" + std::to_string(j));
    }
}

TEST_CASE("solve on the all-ones matrix returns the (1,1) witness") {
    const SolveOutcome outcome = solve_variable_equation_matching(from_ints(kF2, {{1, 1}, {1, 1}}));
    REQUIRE_FALSE(outcome.found_injection());
    CHECK(outcome.witness->values()[0].is_one());
    CHECK(outcome.witness->values()[1].is_one());
}

TEST_CASE("solve on the 3x2 example lands in the brute-force valid set") {
    const SolveOutcome outcome = solve_variable_equation_matching(kExample32);
    REQUIRE(outcome.found_injection());
    CHECK(verify_injection(kExample32, *outcome.injection));

    const auto valid = oracles::enumerate_valid_injections(kExample32);
    CHECK(valid.size() == 3);
    bool member = false;
    for (const auto& pick : valid) {
        bool same = true;
        for (std::size_t c = 0; c < pick.size(); ++c)
            same = same && outcome.injection->at(kExample32.col_ids()[c]) == kExample32.row_ids()[pick[c]];
        member = member || same;
    }
    CHECK(member);
}

TEST_CASE("solve is deterministic") {
    const SolveOutcome a = solve_variable_equation_matching(kExample32);
    const SolveOutcome b = solve_variable_equation_matching(kExample32);
    REQUIRE(a.found_injection());
    REQUIRE(b.found_injection());
    CHECK(a.injection->pairs() == b.injection->pairs());
}

TEST_CASE("hall matching oracle") {
    const auto id = hall_matching_oracle(identity(kQ, 3));
    REQUIRE(id.has_value());
    for (std::size_t j = 1; j <= 3; ++j) CHECK(id->at("c" + std::to_string(j)) == "r" + std::to_string(j));

    // an all-zero column isolates a vertex
    CHECK_FALSE(hall_matching_oracle(from_ints(kQ, {{1, 0}, {1, 0}})).has_value());

    const auto ex = hall_matching_oracle(kExample32);
    REQUIRE(ex.has_value());
    CHECK(verify_injection(kExample32, *ex));
}

TEST_CASE("verify_injection") {
    const SparseMatrix id2 = identity(kQ, 2);
    CHECK(verify_injection(id2, InjectionMap({{"c1", "r1"}, {"c2", "r2"}})));
    CHECK_FALSE(verify_injection(id2, InjectionMap({{"c1", "r2"}, {"c2", "r1"}})));
    CHECK_FALSE(verify_injection(id2, InjectionMap({{"c1", "r1"}})));             // not total
    CHECK_FALSE(verify_injection(id2, InjectionMap({{"c1", "r1"}, {"c2", "x"}}))); // unknown row
    CHECK_FALSE(verify_injection(id2, InjectionMap({{"c1", "r1"}, {"x", "r2"}}))); // unknown col
}

TEST_CASE("solver output verifies on random trivial-kernel instances") {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const FieldSpec field = seed % 3 == 0 ? kQ : (seed % 3 == 1 ? kF2 : kF5);
        const std::size_t cols = 1 + seed % 4;
        const std::size_t rows = cols + seed % 3;
        const SparseMatrix m = generate_instance(field, rows, cols, 0.7, seed);
        const SolveOutcome outcome = solve_variable_equation_matching(m);
        REQUIRE(outcome.found_injection());
        CHECK(verify_injection(m, *outcome.injection));
    }
}

TEST_CASE("route relations on exhaustive small GF(2) matrices") {
    // every 2x2 and 3x2 GF(2) matrix, nontrivial kernels included
    for (std::size_t rows : {std::size_t(2), std::size_t(3)}) {
        const std::size_t cells = rows * 2;
        for (std::uint64_t code = 0; code < (1ull << cells); ++code) {
            std::vector<std::vector<long long>> grid(rows, std::vector<long long>(2, 0));
            for (std::size_t k = 0; k < cells; ++k)
                grid[k / 2][k % 2] = static_cast<long long>(code >> k & 1);
            check_route_relations(from_ints(kF2, grid));
        }
    }
}

TEST_CASE("route relations on random GF(5) and Q matrices") {
    std::mt19937_64 rng(99);
    for (int i = 0; i < 60; ++i) {
        const std::size_t rows = 1 + rng() % 5;
        const std::size_t cols = 1 + rng() % 4;
        std::vector<std::vector<long long>> grid(rows, std::vector<long long>(cols, 0));
        for (auto& row : grid)
            for (auto& cell : row) cell = static_cast<long long>(rng() % 4) - 1;
        check_route_relations(from_ints(i % 2 ? kQ : kF5, grid));
    }
}

TEST_CASE("a matching can exist although the kernel is nontrivial") {
    // equal nonzero columns: the support admits a matching, yet the columns
    // are dependent; an injection can only be promised when the kernel is trivial
    const SparseMatrix m = from_ints(kF2, {{1, 1}, {1, 1}});
    CHECK(kernel_witness(m).has_value());
    CHECK(hall_matching_oracle(m).has_value());
    CHECK_FALSE(solve_variable_equation_matching(m).found_injection());
}

TEST_CASE("the four routes agree on every matrix with at most three nonzeros") {
    // with support <= 3, a minimal dependent column set forces a Hall
    // violation, so existence agrees across all four routes in both
    // directions; exhaustive over all supports of size <= 3 in a 3x3 grid
    for (std::uint64_t mask = 0; mask < (1u << 9); ++mask) {
        if (std::popcount(mask) > 3) continue;
        std::vector<std::vector<long long>> grid(3, std::vector<long long>(3, 0));
        for (std::size_t k = 0; k < 9; ++k)
            if (mask >> k & 1) grid[k / 3][k % 3] = 1;
        const SparseMatrix m = from_ints(kF2, grid);
        const bool via_matroid = solve_variable_equation_matching(m).found_injection();
        const bool via_hall = hall_matching_oracle(m).has_value();
        const bool kernel_absent = !kernel_witness(m).has_value();
        const bool via_brute = !oracles::enumerate_valid_injections(m).empty();
        CHECK(via_matroid == via_hall);
        CHECK(via_matroid == kernel_absent);
        CHECK(via_matroid == via_brute);
    }
}

TEST_CASE("generated instances are reproducible and have trivial kernels") {
    const SparseMatrix a = generate_instance(kF5, 5, 3, 0.6, 12345);
    const SparseMatrix b = generate_instance(kF5, 5, 3, 0.6, 12345);
    CHECK(io::render_matrix(a) == io::render_matrix(b));

    const SparseMatrix c = generate_instance(kF5, 5, 3, 0.6, 54321);
    CHECK(io::render_matrix(a) != io::render_matrix(c)); // different seed, different matrix

    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const std::size_t cols = 1 + seed % 5;
        const std::size_t rows = cols + (seed * 7) % 3;
        const FieldSpec field = seed % 2 ? kQ : kF2;
        const SparseMatrix m = generate_instance(field, rows, cols, 0.5 + 0.005 * double(seed), seed);
        CHECK_FALSE(kernel_witness(m).has_value());
        CHECK(rank(m) == cols);
    }
}

TEST_CASE("density 1 over Q is fully dense") {
    const SparseMatrix m = generate_instance(kQ, 4, 3, 1.0, 7);
    CHECK(m.cells().size() == 12);
}

TEST_CASE("generator rejects bad parameters") {
    CHECK_THROWS_AS(generate_instance(kQ, 2, 3, 0.5, 0), parameter_error);
    CHECK_THROWS_AS(generate_instance(kQ, 3, 2, 0.0, 0), parameter_error);
    CHECK_THROWS_AS(generate_instance(kQ, 3, 2, 1.5, 0), parameter_error);
}

TEST_CASE("empty column set is trivially solvable") {
    const SparseMatrix m(kQ, {"r1", "r2"}, {}, {});
    const SolveOutcome outcome = solve_variable_equation_matching(m);
    REQUIRE(outcome.found_injection());
    CHECK(outcome.injection->empty());
    const auto hall = hall_matching_oracle(m);
    REQUIRE(hall.has_value());
    CHECK(hall->empty());
}

TEST_CASE("zero matrix yields a witness") {
    const SparseMatrix m(kF2, {"r1", "r2"}, {"c1", "c2"}, {});
    const SolveOutcome outcome = solve_variable_equation_matching(m);
    REQUIRE_FALSE(outcome.found_injection());
    CHECK_FALSE(hall_matching_oracle(m).has_value());
}
