#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "matchroid/error.hpp"
#include "matchroid/matrix.hpp"

namespace matchroid {

/// A finite matroid given by its ground set (an ordered sequence of element
/// ids) and an independence oracle over index subsets. The declaration order
/// of the ground set is the total order used by every greedy scan in the
/// library. Matroid values are immutable and cheap to copy; oracle answers
/// are memoized behind a mutex, so concurrent use is fine.
class Matroid {
public:
    using IndexSubset = std::vector<std::uint32_t>; // strictly increasing element indices
    using Oracle = std::function<bool(const IndexSubset&)>;

    Matroid(std::vector<std::string> ground, Oracle oracle) : st_(std::make_shared<State>()) {
        st_->ground = std::move(ground);
        st_->oracle = std::move(oracle);
        for (std::uint32_t i = 0; i < st_->ground.size(); ++i) {
            if (st_->ground[i].empty()) throw parameter_error("ground element ids must be nonempty");
            if (!st_->index.emplace(st_->ground[i], i).second)
                throw parameter_error("duplicate ground element '" + st_->ground[i] + "'");
        }
        // rank of the full ground set, by greedy extension in ground order
        IndexSubset cur;
        for (std::uint32_t i = 0; i < st_->ground.size(); ++i) {
            cur.push_back(i);
            if (!independent_indices(cur)) cur.pop_back();
        }
        rank_total_ = cur.size();
    }

    const std::vector<std::string>& ground() const { return st_->ground; }
    std::size_t size() const { return st_->ground.size(); }

    /// Rank of the whole ground set (cached at construction).
    std::size_t rank() const { return rank_total_; }

    bool has_element(const std::string& id) const { return st_->index.count(id) != 0; }

    std::uint32_t index_of(const std::string& id) const {
        const auto it = st_->index.find(id);
        if (it == st_->index.end()) throw not_an_element("'" + id + "' is not a ground element");
        return it->second;
    }

    /// Converts an id list to a sorted, deduplicated index subset.
    IndexSubset to_indices(const std::vector<std::string>& ids) const {
        IndexSubset out;
        out.reserve(ids.size());
        for (const auto& id : ids) {
            const auto it = st_->index.find(id);
            if (it == st_->index.end()) throw not_a_subset("'" + id + "' is not in the ground set");
            out.push_back(it->second);
        }
        normalize(out);
        return out;
    }

    std::vector<std::string> to_ids(const IndexSubset& subset) const {
        std::vector<std::string> out;
        out.reserve(subset.size());
        for (std::uint32_t i : subset) out.push_back(st_->ground.at(i));
        return out;
    }

    bool independent(const std::vector<std::string>& subset) const {
        return independent_indices(to_indices(subset));
    }

    bool independent_indices(IndexSubset subset) const {
        normalize(subset);
        for (std::uint32_t i : subset)
            if (i >= st_->ground.size()) throw not_a_subset("element index out of range");
        {
            std::lock_guard<std::mutex> lock(st_->mu);
            const auto it = st_->memo.find(subset);
            if (it != st_->memo.end()) return it->second;
        }
        const bool answer = st_->oracle(subset);
        std::lock_guard<std::mutex> lock(st_->mu);
        st_->memo.emplace(std::move(subset), answer);
        return answer;
    }

private:
    static void normalize(IndexSubset& s) {
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
    }

    struct State {
        std::vector<std::string> ground;
        std::map<std::string, std::uint32_t> index;
        Oracle oracle;
        mutable std::mutex mu;
        mutable std::map<IndexSubset, bool> memo;
    };

    std::shared_ptr<State> st_;
    std::size_t rank_total_ = 0;
};

/// Vector matroid of the columns of a matrix: S is independent iff the only
/// coefficient family annihilating the columns of S is zero, i.e. iff the
/// submatrix of S has full column rank. The oracle avoids rational
/// arithmetic: over Q each column is scaled to an integer column once (a
/// nonzero scaling leaves independence unchanged) and tested fraction-free;
/// over GF(p) elimination runs on raw residues.
inline Matroid column_matroid(const SparseMatrix& columns) {
    const std::size_t n_rows = columns.row_count();
    const std::size_t n_cols = columns.col_count();

    if (columns.field().kind() == FieldKind::rationals) {
        auto cols = std::make_shared<std::vector<std::vector<BigInt>>>(
            n_cols, std::vector<BigInt>(n_rows, BigInt(0)));
        for (std::uint32_t c = 0; c < n_cols; ++c) {
            BigInt scale(1);
            for (std::uint32_t r = 0; r < n_rows; ++r) {
                if (const FieldValue* v = columns.find_by_index(r, c)) {
                    const BigInt den = v->rational_denominator();
                    scale = scale / gcd(scale, den) * den;
                }
            }
            for (std::uint32_t r = 0; r < n_rows; ++r) {
                if (const FieldValue* v = columns.find_by_index(r, c))
                    (*cols)[c][r] = v->rational_numerator() * (scale / v->rational_denominator());
            }
        }
        return Matroid(columns.col_ids(), [cols, n_rows](const Matroid::IndexSubset& s) {
            if (s.size() > n_rows) return false;
            std::vector<std::vector<BigInt>> grid(n_rows, std::vector<BigInt>(s.size(), BigInt(0)));
            for (std::size_t k = 0; k < s.size(); ++k)
                for (std::size_t r = 0; r < n_rows; ++r) grid[r][k] = (*cols)[s[k]][r];
            return detail::columns_independent_bareiss(std::move(grid), s.size());
        });
    }

    const std::uint64_t p = columns.field().modulus();
    auto cols = std::make_shared<std::vector<std::vector<std::uint64_t>>>(
        n_cols, std::vector<std::uint64_t>(n_rows, 0));
    for (const auto& [key, v] : columns.cells()) (*cols)[key.second][key.first] = v.residue_value();
    return Matroid(columns.col_ids(), [cols, n_rows, p](const Matroid::IndexSubset& s) {
        if (s.size() > n_rows) return false;
        std::vector<std::vector<std::uint64_t>> grid(n_rows, std::vector<std::uint64_t>(s.size(), 0));
        for (std::size_t k = 0; k < s.size(); ++k)
            for (std::size_t r = 0; r < n_rows; ++r) grid[r][k] = (*cols)[s[k]][r];
        return detail::columns_independent_modular(std::move(grid), s.size(), p);
    });
}

/// Vector matroid from an explicit family of vectors over a common
/// coordinate set. Each vector is given densely, aligned with coordinate_ids.
inline Matroid vector_matroid(const FieldSpec& field, const std::vector<std::string>& coordinate_ids,
                              const std::vector<std::pair<std::string, std::vector<FieldValue>>>& vectors) {
    std::vector<std::string> element_ids;
    std::vector<MatrixEntry> entries;
    for (const auto& [id, values] : vectors) {
        if (values.size() != coordinate_ids.size())
            throw spec_mismatch("vector '" + id + "' has " + std::to_string(values.size()) +
                                " coordinates, expected " + std::to_string(coordinate_ids.size()));
        element_ids.push_back(id);
        for (std::size_t k = 0; k < values.size(); ++k) {
            if (values[k].spec() != field)
                throw spec_mismatch("vector '" + id + "' holds a " + values[k].spec().name() + " value");
            if (!values[k].is_zero()) entries.push_back({coordinate_ids[k], id, values[k]});
        }
    }
    return column_matroid(SparseMatrix(field, coordinate_ids, element_ids, entries));
}

inline Matroid uniform_matroid(std::size_t rank, std::vector<std::string> ground) {
    if (rank > ground.size())
        throw rank_too_large("uniform matroid rank " + std::to_string(rank) + " exceeds ground size " +
                             std::to_string(ground.size()));
    return Matroid(std::move(ground), [rank](const Matroid::IndexSubset& s) { return s.size() <= rank; });
}

/// Independence system given by an explicit list of independent sets,
/// interpreted literally (no closure is taken). Useful as input to
/// check_axioms; nothing guarantees the result is a matroid.
inline Matroid family_matroid(std::vector<std::string> ground,
                              const std::vector<std::vector<std::string>>& independent_sets) {
    std::map<std::string, std::uint32_t> index;
    for (std::uint32_t i = 0; i < ground.size(); ++i) index.emplace(ground[i], i);
    auto members = std::make_shared<std::set<Matroid::IndexSubset>>();
    for (const auto& set : independent_sets) {
        Matroid::IndexSubset s;
        for (const auto& id : set) {
            const auto it = index.find(id);
            if (it == index.end()) throw not_a_subset("'" + id + "' is not in the ground set");
            s.push_back(it->second);
        }
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
        members->insert(std::move(s));
    }
    return Matroid(std::move(ground),
                   [members](const Matroid::IndexSubset& s) { return members->count(s) != 0; });
}

/// Size of a maximal independent subset of x, by greedy extension in ground
/// order.
inline std::size_t rank_of_indices(const Matroid& m, const Matroid::IndexSubset& x) {
    Matroid::IndexSubset cur;
    for (std::uint32_t i : x) {
        cur.push_back(i);
        if (!m.independent_indices(cur)) cur.pop_back();
    }
    return cur.size();
}

inline std::size_t rank_of(const Matroid& m, const std::vector<std::string>& x) {
    return rank_of_indices(m, m.to_indices(x));
}

/// Extends an independent seed to a base, greedily in ground order.
inline std::vector<std::string> find_base(const Matroid& m, const std::vector<std::string>& seed) {
    Matroid::IndexSubset cur = m.to_indices(seed);
    if (!m.independent_indices(cur)) throw seed_dependent("seed set is not independent");
    for (std::uint32_t i = 0; i < m.size(); ++i) {
        if (std::binary_search(cur.begin(), cur.end(), i)) continue;
        auto candidate = cur;
        candidate.insert(std::lower_bound(candidate.begin(), candidate.end(), i), i);
        if (m.independent_indices(candidate)) cur = std::move(candidate);
    }
    return m.to_ids(cur);
}

inline bool is_base(const Matroid& m, const std::vector<std::string>& subset) {
    const auto s = m.to_indices(subset);
    return s.size() == m.rank() && m.independent_indices(s);
}

namespace detail {

inline Matroid::IndexSubset complement_of(std::size_t n, const Matroid::IndexSubset& s) {
    Matroid::IndexSubset out;
    out.reserve(n - s.size());
    std::size_t k = 0;
    for (std::uint32_t i = 0; i < n; ++i) {
        if (k < s.size() && s[k] == i)
            ++k;
        else
            out.push_back(i);
    }
    return out;
}

} // namespace detail

/// Dual matroid: S is independent iff it is disjoint from some base,
/// equivalently iff the complement of S still has full rank.
inline Matroid dual(const Matroid& m) {
    return Matroid(m.ground(), [m](const Matroid::IndexSubset& s) {
        return rank_of_indices(m, detail::complement_of(m.size(), s)) == m.rank();
    });
}

/// Restriction of m to ground minus x.
inline Matroid deletion(const Matroid& m, const std::vector<std::string>& x) {
    const Matroid::IndexSubset xi = m.to_indices(x);
    const Matroid::IndexSubset kept = detail::complement_of(m.size(), xi);
    return Matroid(m.to_ids(kept), [m, kept](const Matroid::IndexSubset& s) {
        Matroid::IndexSubset mapped;
        mapped.reserve(s.size());
        for (std::uint32_t i : s) mapped.push_back(kept[i]);
        return m.independent_indices(mapped);
    });
}

/// Contraction of x: a fixed maximal independent subset J of x is chosen
/// greedily in ground order, and S is independent iff S together with J is
/// independent in m. (Which maximal J is chosen does not matter for
/// matroids; the greedy one makes the result deterministic.)
inline Matroid contraction(const Matroid& m, const std::vector<std::string>& x) {
    const Matroid::IndexSubset xi = m.to_indices(x);
    Matroid::IndexSubset anchor;
    for (std::uint32_t i : xi) {
        anchor.push_back(i);
        if (!m.independent_indices(anchor)) anchor.pop_back();
    }
    const Matroid::IndexSubset kept = detail::complement_of(m.size(), xi);
    return Matroid(m.to_ids(kept), [m, kept, anchor](const Matroid::IndexSubset& s) {
        Matroid::IndexSubset mapped = anchor;
        for (std::uint32_t i : s) mapped.push_back(kept[i]);
        std::sort(mapped.begin(), mapped.end());
        return m.independent_indices(mapped);
    });
}

/// x spans e: either e lies in x, or {e} is dependent in m/x.
inline bool spans(const Matroid& m, const std::vector<std::string>& x, const std::string& e) {
    const std::uint32_t ei = m.index_of(e);
    const Matroid::IndexSubset xi = m.to_indices(x);
    if (std::binary_search(xi.begin(), xi.end(), ei)) return true;
    return !contraction(m, x).independent({e});
}

/// Two matroids are equal iff they share the ordered ground set and their
/// oracles agree on every subset. Exhaustive; refuses grounds above 20.
inline bool oracle_equal(const Matroid& a, const Matroid& b) {
    if (a.ground() != b.ground()) return false;
    const std::size_t n = a.size();
    if (n > 20) throw ground_too_large("oracle comparison over " + std::to_string(n) + " elements refused");
    for (std::uint64_t mask = 0; mask < (1ull << n); ++mask) {
        Matroid::IndexSubset s;
        for (std::uint32_t i = 0; i < n; ++i)
            if (mask >> i & 1) s.push_back(i);
        if (a.independent_indices(s) != b.independent_indices(s)) return false;
    }
    return true;
}

struct AxiomViolation {
    int axiom = 0; // 1..4
    // Witnessing sets; meaning depends on the axiom:
    //   II:  set_a = the independent set, set_b = its dependent subset
    //   III: set_a = the maximal set J,   set_b = the non-maximal I
    //   IV:  set_a = the restriction X,   set_b = the unextendable I
    std::vector<std::string> set_a;
    std::vector<std::string> set_b;
    std::string detail;
};

struct AxiomReport {
    std::array<bool, 4> holds{true, true, true, true};
    std::vector<AxiomViolation> violations;
    bool truncated = false;

    bool all_hold() const { return holds[0] && holds[1] && holds[2] && holds[3]; }
};

/// Exhaustively verifies the four independence axioms:
///   (I)   the empty set is independent,
///   (II)  independence is closed under taking subsets,
///   (III) every non-maximal independent I can take an element from any
///         maximal J,
///   (IV)  inside every X, every independent subset extends to a maximal
///         independent subset of X.
/// Works on arbitrary independence systems (family_matroid included) and
/// reports every violation with its witnessing sets. The ground set must
/// fit the cap; caps above 16 are refused outright.
inline AxiomReport check_axioms(const Matroid& m, std::size_t cap = 10) {
    if (cap > 16) throw parameter_error("axiom check cap above 16 is refused");
    const std::size_t n = m.size();
    if (n > cap)
        throw ground_too_large("ground set of size " + std::to_string(n) + " exceeds the axiom check cap " +
                               std::to_string(cap));

    const std::uint32_t full = static_cast<std::uint32_t>((1ull << n) - 1);
    const std::uint32_t count = full + 1;

    const auto subset_of = [&](std::uint32_t mask) {
        Matroid::IndexSubset s;
        for (std::uint32_t i = 0; i < n; ++i)
            if (mask >> i & 1) s.push_back(i);
        return s;
    };
    const auto ids_of = [&](std::uint32_t mask) { return m.to_ids(subset_of(mask)); };

    std::vector<char> indep(count);
    for (std::uint32_t mask = 0; mask < count; ++mask) indep[mask] = m.independent_indices(subset_of(mask));

    AxiomReport report;
    constexpr std::size_t kMaxViolations = 4096;
    const auto add_violation = [&](int axiom, std::uint32_t a, std::uint32_t b, std::string detail) {
        report.holds[axiom - 1] = false;
        if (report.violations.size() >= kMaxViolations) {
            report.truncated = true;
            return;
        }
        report.violations.push_back({axiom, ids_of(a), ids_of(b), std::move(detail)});
    };

    // (I)
    if (!indep[0]) add_violation(1, 0, 0, "the empty set is not independent");

    // (II) single-element removals suffice by induction
    for (std::uint32_t mask = 1; mask < count; ++mask) {
        if (!indep[mask]) continue;
        for (std::uint32_t i = 0; i < n; ++i) {
            if ((mask >> i & 1) && !indep[mask ^ (1u << i)])
                add_violation(2, mask, mask ^ (1u << i), "independent set has a dependent subset");
        }
    }

    // masks ordered by decreasing popcount, for the superset scans below
    std::vector<std::uint32_t> by_popcount_desc(count);
    {
        std::vector<std::vector<std::uint32_t>> buckets(n + 1);
        for (std::uint32_t mask = 0; mask < count; ++mask)
            buckets[static_cast<std::size_t>(std::popcount(mask))].push_back(mask);
        std::size_t at = 0;
        for (std::size_t pc = n + 1; pc-- > 0;)
            for (std::uint32_t mask : buckets[pc]) by_popcount_desc[at++] = mask;
    }

    // maximal members of the whole family
    std::vector<char> has_indep_superset(count, 0);
    for (std::uint32_t mask : by_popcount_desc) {
        for (std::uint32_t i = 0; i < n && !has_indep_superset[mask]; ++i) {
            if (mask >> i & 1) continue;
            const std::uint32_t up = mask | (1u << i);
            if (indep[up] || has_indep_superset[up]) has_indep_superset[mask] = 1;
        }
    }

    std::vector<std::uint32_t> maximal, nonmaximal_indep;
    for (std::uint32_t mask = 0; mask < count; ++mask) {
        if (!indep[mask]) continue;
        if (has_indep_superset[mask])
            nonmaximal_indep.push_back(mask);
        else
            maximal.push_back(mask);
    }

    // (III)
    for (std::uint32_t jmask : maximal) {
        for (std::uint32_t imask : nonmaximal_indep) {
            bool found = false;
            std::uint32_t candidates = jmask & ~imask;
            while (candidates != 0 && !found) {
                const std::uint32_t bit = candidates & (0u - candidates);
                if (indep[imask | bit]) found = true;
                candidates ^= bit;
            }
            if (!found) add_violation(3, jmask, imask, "no element of J beyond I extends I independently");
        }
    }

    // (IV) per restriction X: every independent subset of X must lie below a
    // maximal element of the family restricted to X. Submasks are processed
    // by decreasing popcount, so both scans only read already-written values.
    std::vector<char> has_strict_sup(count, 0); // strict independent superset within X
    std::vector<char> max_in_x(count, 0);
    std::vector<char> below_max(count, 0); // contained in some maximal-in-X member
    std::vector<std::vector<std::uint32_t>> buckets(n + 1);
    for (std::uint32_t x = 0; x < count; ++x) {
        for (auto& b : buckets) b.clear();
        for (std::uint32_t s = x;; s = (s - 1) & x) {
            buckets[static_cast<std::size_t>(std::popcount(s))].push_back(s);
            if (s == 0) break;
        }
        for (std::size_t pc = n + 1; pc-- > 0;) {
            for (std::uint32_t s : buckets[pc]) {
                char sup = 0;
                for (std::uint32_t free = x & ~s; free != 0 && !sup;) {
                    const std::uint32_t bit = free & (0u - free);
                    const std::uint32_t up = s | bit;
                    if (indep[up] || has_strict_sup[up]) sup = 1;
                    free ^= bit;
                }
                has_strict_sup[s] = sup;
                max_in_x[s] = indep[s] && !sup;
            }
        }
        for (std::size_t pc = n + 1; pc-- > 0;) {
            for (std::uint32_t s : buckets[pc]) {
                char below = max_in_x[s];
                for (std::uint32_t free = x & ~s; free != 0 && !below;) {
                    const std::uint32_t bit = free & (0u - free);
                    if (below_max[s | bit]) below = 1;
                    free ^= bit;
                }
                below_max[s] = below;
                if (indep[s] && !below)
                    add_violation(4, x, s, "independent subset of X extends to no maximal one inside X");
            }
        }
    }

    return report;
}

} // namespace matchroid
