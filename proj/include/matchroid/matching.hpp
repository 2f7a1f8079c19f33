#pragma once

#include <cstdint>
#include <vector>

namespace matchroid {

struct MatchingResult {
    std::vector<int> left_to_right; // -1 for unmatched
    std::size_t pairs = 0;
};

namespace detail {

inline bool try_augment(std::uint32_t u, const std::vector<std::vector<std::uint32_t>>& adj,
                        std::vector<int>& match_left, std::vector<int>& match_right,
                        std::vector<bool>& visited) {
    for (std::uint32_t v : adj[u]) {
        if (visited[v]) continue;
        visited[v] = true;
        if (match_right[v] < 0 ||
            try_augment(static_cast<std::uint32_t>(match_right[v]), adj, match_left, match_right, visited)) {
            match_left[u] = static_cast<int>(v);
            match_right[v] = static_cast<int>(u);
            return true;
        }
    }
    return false;
}

} // namespace detail

/// Deterministic augmenting-path maximum matching: left vertices are
/// processed in index order, neighbours in adjacency-list order.
inline MatchingResult maximum_bipartite_matching(std::size_t n_left, std::size_t n_right,
                                                 const std::vector<std::vector<std::uint32_t>>& adjacency) {
    MatchingResult out;
    out.left_to_right.assign(n_left, -1);
    std::vector<int> match_right(n_right, -1);
    std::vector<bool> visited(n_right);
    for (std::uint32_t u = 0; u < n_left; ++u) {
        visited.assign(n_right, false);
        if (detail::try_augment(u, adjacency, out.left_to_right, match_right, visited)) ++out.pairs;
    }
    return out;
}

} // namespace matchroid
