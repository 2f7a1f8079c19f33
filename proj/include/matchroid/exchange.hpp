#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "matchroid/error.hpp"
#include "matchroid/matching.hpp"
#include "matchroid/matroid.hpp"

namespace matchroid {

/// Bipartite graph on B0 \ B1 versus B1 \ B0 whose edges are the valid
/// single-element base swaps.
struct ExchangeGraph {
    std::vector<std::string> left;  // b0 \ b1, ground order
    std::vector<std::string> right; // b1 \ b0, ground order
    std::vector<std::pair<std::string, std::string>> edges;

    std::string to_string() const {
        std::ostringstream out;
        out << "left:";
        for (const auto& id : left) out << ' ' << id;
        out << " | right:";
        for (const auto& id : right) out << ' ' << id;
        out << " | edges:";
        for (const auto& [x, y] : edges) out << " (" << x << "," << y << ")";
        return out.str();
    }
};

/// An injective id-to-id mapping; pairs keep their construction order.
class InjectionMap {
public:
    InjectionMap() = default;

    InjectionMap(std::initializer_list<std::pair<std::string, std::string>> pairs)
        : InjectionMap(std::vector<std::pair<std::string, std::string>>(pairs)) {}

    explicit InjectionMap(std::vector<std::pair<std::string, std::string>> pairs) : pairs_(std::move(pairs)) {
        std::map<std::string, std::string> seen_source;
        std::map<std::string, std::string> seen_target;
        for (const auto& [s, t] : pairs_) {
            if (!seen_source.emplace(s, t).second)
                throw parameter_error("injection defines '" + s + "' twice");
            if (!seen_target.emplace(t, s).second)
                throw parameter_error("injection maps two sources to '" + t + "'");
        }
    }

    const std::vector<std::pair<std::string, std::string>>& pairs() const { return pairs_; }
    std::size_t size() const { return pairs_.size(); }
    bool empty() const { return pairs_.empty(); }

    const std::string* find(const std::string& source) const {
        for (const auto& [s, t] : pairs_)
            if (s == source) return &t;
        return nullptr;
    }

    const std::string& at(const std::string& source) const {
        if (const std::string* t = find(source)) return *t;
        throw not_an_element("injection is not defined on '" + source + "'");
    }

    InjectionMap inverted() const {
        std::vector<std::pair<std::string, std::string>> flipped;
        flipped.reserve(pairs_.size());
        for (const auto& [s, t] : pairs_) flipped.emplace_back(t, s);
        return InjectionMap(std::move(flipped));
    }

private:
    std::vector<std::pair<std::string, std::string>> pairs_;
};

/// Raised when a step that the theory guarantees fails at run time: the
/// inputs were not really bases, or the independence oracle is inconsistent.
/// Carries the exchange graph under scrutiny when one is available.
class internal_contract_violation : public error {
public:
    explicit internal_contract_violation(const std::string& what) : error(what) {}
    internal_contract_violation(const std::string& what, ExchangeGraph graph)
        : error(what + " [" + graph.to_string() + "]"), graph_(std::move(graph)) {}

    const std::optional<ExchangeGraph>& graph() const { return graph_; }

private:
    std::optional<ExchangeGraph> graph_;
};

namespace detail {

inline Matroid::IndexSubset require_base(const Matroid& m, const std::vector<std::string>& set,
                                         const std::string& label) {
    const Matroid::IndexSubset s = m.to_indices(set);
    if (s.size() != m.rank())
        throw not_a_base(label, label + " is not a base: it has " + std::to_string(s.size()) +
                                    " elements, the rank is " + std::to_string(m.rank()));
    if (!m.independent_indices(s)) throw not_a_base(label, label + " is not a base: it is dependent");
    return s;
}

inline Matroid::IndexSubset set_minus(const Matroid::IndexSubset& a, const Matroid::IndexSubset& b) {
    Matroid::IndexSubset out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

inline Matroid::IndexSubset set_and(const Matroid::IndexSubset& a, const Matroid::IndexSubset& b) {
    Matroid::IndexSubset out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

inline Matroid::IndexSubset set_or(const Matroid::IndexSubset& a, const Matroid::IndexSubset& b) {
    Matroid::IndexSubset out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

/// The swapped set b \ {out} + {in}, kept sorted.
inline Matroid::IndexSubset swap_one(const Matroid::IndexSubset& base, std::uint32_t out, std::uint32_t in) {
    Matroid::IndexSubset s;
    s.reserve(base.size());
    for (std::uint32_t i : base)
        if (i != out) s.push_back(i);
    s.insert(std::lower_bound(s.begin(), s.end(), in), in);
    return s;
}

inline void verify_swaps_in_b0(const Matroid& m, const Matroid::IndexSubset& b0, const InjectionMap& f,
                               const char* context) {
    for (const auto& [x, y] : f.pairs()) {
        const auto swapped = swap_one(b0, m.index_of(x), m.index_of(y));
        if (swapped.size() != m.rank() || !m.independent_indices(swapped))
            throw internal_contract_violation(std::string(context) + ": swap b0 \\ {" + x + "} + {" + y +
                                              "} is not a base");
    }
}

} // namespace detail

/// The exchange graph of two bases. Every edge (x, y) has been checked
/// against the independence oracle: b0 \ {x} + {y} is again a base.
inline ExchangeGraph exchange_graph(const Matroid& m, const std::vector<std::string>& b0,
                                    const std::vector<std::string>& b1) {
    const auto b0i = detail::require_base(m, b0, "b0");
    const auto b1i = detail::require_base(m, b1, "b1");
    ExchangeGraph g;
    const auto left = detail::set_minus(b0i, b1i);
    const auto right = detail::set_minus(b1i, b0i);
    g.left = m.to_ids(left);
    g.right = m.to_ids(right);
    for (std::uint32_t x : left) {
        for (std::uint32_t y : right) {
            if (m.independent_indices(detail::swap_one(b0i, x, y)))
                g.edges.emplace_back(m.ground()[x], m.ground()[y]);
        }
    }
    return g;
}

/// Base exchange bijection f: b0 -> b1 with b0 \ {x} + {f(x)} a base for
/// every x. The intersection is fixed pointwise; the rest is a perfect
/// matching of the exchange graph, found by deterministic augmenting paths.
inline InjectionMap base_exchange_bijection(const Matroid& m, const std::vector<std::string>& b0,
                                            const std::vector<std::string>& b1) {
    const auto b0i = detail::require_base(m, b0, "b0");
    const auto b1i = detail::require_base(m, b1, "b1");
    const ExchangeGraph graph = exchange_graph(m, b0, b1);

    std::map<std::string, std::uint32_t> right_pos;
    for (std::uint32_t k = 0; k < graph.right.size(); ++k) right_pos.emplace(graph.right[k], k);
    std::vector<std::vector<std::uint32_t>> adjacency(graph.left.size());
    {
        std::size_t at = 0;
        for (std::uint32_t k = 0; k < graph.left.size(); ++k) {
            while (at < graph.edges.size() && graph.edges[at].first == graph.left[k])
                adjacency[k].push_back(right_pos.at(graph.edges[at++].second));
        }
    }

    const MatchingResult matching =
        maximum_bipartite_matching(graph.left.size(), graph.right.size(), adjacency);
    if (matching.pairs != graph.left.size())
        throw internal_contract_violation("exchange graph has no perfect matching", graph);

    std::map<std::string, std::uint32_t> left_pos;
    for (std::uint32_t k = 0; k < graph.left.size(); ++k) left_pos.emplace(graph.left[k], k);

    std::vector<std::pair<std::string, std::string>> pairs;
    for (std::uint32_t x : b0i) {
        const std::string& id = m.ground()[x];
        if (std::binary_search(b1i.begin(), b1i.end(), x)) {
            pairs.emplace_back(id, id);
        } else {
            const int match = matching.left_to_right[left_pos.at(id)];
            pairs.emplace_back(id, graph.right[static_cast<std::uint32_t>(match)]);
        }
    }
    InjectionMap f{std::move(pairs)};
    detail::verify_swaps_in_b0(m, b0i, f, "base_exchange_bijection");
    return f;
}

/// The same bijection contract as base_exchange_bijection, constructed
/// through the reduction pipeline instead of a direct matching: contract
/// b0 and b1's intersection, delete everything outside their union, pass to
/// the dual, exchange there with the roles of the bases switched, then
/// invert and extend by the identity on the intersection.
inline InjectionMap dual_base_exchange(const Matroid& m, const std::vector<std::string>& b0,
                                       const std::vector<std::string>& b1) {
    const auto b0i = detail::require_base(m, b0, "b0");
    const auto b1i = detail::require_base(m, b1, "b1");

    const auto inter = detail::set_and(b0i, b1i);
    const auto outside = detail::complement_of(m.size(), detail::set_or(b0i, b1i));

    InjectionMap inner;
    try {
        const Matroid reduced = deletion(contraction(m, m.to_ids(inter)), m.to_ids(outside));
        const Matroid dualized = dual(reduced);
        const InjectionMap g =
            base_exchange_bijection(dualized, m.to_ids(detail::set_minus(b1i, b0i)),
                                    m.to_ids(detail::set_minus(b0i, b1i)));
        inner = g.inverted();
    } catch (const not_a_base& e) {
        throw internal_contract_violation(std::string("dual pipeline failed: ") + e.what());
    }

    std::vector<std::pair<std::string, std::string>> pairs;
    for (std::uint32_t x : b0i) {
        const std::string& id = m.ground()[x];
        if (std::binary_search(inter.begin(), inter.end(), x))
            pairs.emplace_back(id, id);
        else
            pairs.emplace_back(id, inner.at(id));
    }
    InjectionMap f{std::move(pairs)};
    try {
        detail::verify_swaps_in_b0(m, b0i, f, "dual_base_exchange");
    } catch (const internal_contract_violation& e) {
        throw internal_contract_violation(std::string(e.what()), exchange_graph(m, b0, b1));
    }
    return f;
}

enum class ReformForm { swap_in_b0, swap_in_b1 };

/// The two equivalent exchange statements: swap_in_b0 yields f with
/// b0 \ {x} + {f(x)} a base for all x in b0; swap_in_b1 yields f with
/// b1 \ {f(x)} + {x} a base for all x in b0. Each form is obtained from the
/// other by switching the roles of the bases and inverting.
inline InjectionMap reform_bijection(const Matroid& m, const std::vector<std::string>& b0,
                                     const std::vector<std::string>& b1, ReformForm form) {
    if (form == ReformForm::swap_in_b0) return dual_base_exchange(m, b0, b1);

    const auto b1i = detail::require_base(m, b1, "b1");
    const InjectionMap f = dual_base_exchange(m, b1, b0).inverted();
    for (const auto& [x, y] : f.pairs()) {
        const auto swapped = detail::swap_one(b1i, m.index_of(y), m.index_of(x));
        if (swapped.size() != m.rank() || !m.independent_indices(swapped))
            throw internal_contract_violation("reform_bijection: swap b1 \\ {" + y + "} + {" + x +
                                              "} is not a base");
    }
    return f;
}

/// Injection of an independent set j into a base b such that replacing
/// f(x) by x inside b always leaves a base: extend j to a base, apply the
/// swap_in_b1 form against b, restrict to j.
inline InjectionMap independent_into_base_injection(const Matroid& m, const std::vector<std::string>& j,
                                                    const std::vector<std::string>& b) {
    const auto ji = m.to_indices(j);
    if (!m.independent_indices(ji)) throw not_independent("j is not independent");
    detail::require_base(m, b, "b");

    const std::vector<std::string> extended = find_base(m, m.to_ids(ji));
    const InjectionMap full = reform_bijection(m, extended, b, ReformForm::swap_in_b1);

    std::vector<std::pair<std::string, std::string>> pairs;
    for (std::uint32_t x : ji) pairs.emplace_back(m.ground()[x], full.at(m.ground()[x]));
    return InjectionMap(std::move(pairs));
}

} // namespace matchroid
