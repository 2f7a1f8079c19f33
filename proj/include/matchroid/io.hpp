#pragma once

#include <json.hpp>

#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "matchroid/error.hpp"
#include "matchroid/exchange.hpp"
#include "matchroid/field.hpp"
#include "matchroid/matrix.hpp"
#include "matchroid/matroid.hpp"

// Canonical file formats. Matrices:
//   {"field":"Q"|{"GF":p},"rows":[ids],"cols":[ids],"entries":[[row,col,value],...]}
// Matroids:
//   {"kind":"vector","matrix":{...}}            columns are the elements
//   {"kind":"uniform","rank":r,"ground":[ids]}
//   {"kind":"family","ground":[ids],"independent":[[ids],...]}
// Values use the canonical field grammar; entries are sorted by (row, col)
// declaration order; rendering is byte-stable, so render(parse(f)) == f for
// canonical files.

namespace matchroid::io {

using ojson = nlohmann::ordered_json;

namespace detail {

inline std::string location_of(const nlohmann::json::exception& e, const std::string& text) {
    // nlohmann reports a byte offset inside parse_error messages; derive a
    // line/column from the text when possible for friendlier diagnostics.
    const std::string what = e.what();
    const auto at = what.find("at byte ");
    if (at == std::string::npos) return "";
    std::size_t offset = 0;
    for (std::size_t i = at + 8; i < what.size() && what[i] >= '0' && what[i] <= '9'; ++i)
        offset = offset * 10 + static_cast<std::size_t>(what[i] - '0');
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < offset && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return " (line " + std::to_string(line) + ", column " + std::to_string(col) + ")";
}

inline ojson parse_json(const std::string& text) {
    try {
        return ojson::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw parse_error(std::string(e.what()) + location_of(e, text));
    }
}

inline void require_keys(const ojson& j, const std::vector<std::string>& keys, const std::string& what) {
    if (!j.is_object()) throw parse_error(what + " must be a JSON object");
    for (const auto& k : keys)
        if (!j.contains(k)) throw parse_error(what + " is missing key \"" + k + "\"");
    for (const auto& [k, v] : j.items()) {
        (void)v;
        bool known = false;
        for (const auto& expected : keys) known = known || k == expected;
        if (!known) throw parse_error(what + " has unexpected key \"" + k + "\"");
    }
}

inline std::vector<std::string> parse_id_list(const ojson& j, const std::string& what) {
    if (!j.is_array()) throw parse_error(what + " must be an array of ids");
    std::vector<std::string> out;
    for (const auto& item : j) {
        if (!item.is_string() || item.get<std::string>().empty())
            throw parse_error(what + " must contain nonempty strings");
        out.push_back(item.get<std::string>());
    }
    return out;
}

} // namespace detail

inline FieldSpec parse_field_spec(const ojson& j) {
    if (j.is_string()) {
        if (j.get<std::string>() == "Q") return FieldSpec::rationals();
        throw parse_error("unknown field \"" + j.get<std::string>() + "\" (expected \"Q\" or {\"GF\": p})");
    }
    if (j.is_object() && j.size() == 1 && j.contains("GF")) {
        const auto& p = j.at("GF");
        if (!p.is_number_unsigned() || p.get<std::uint64_t>() >= (1ull << 31))
            throw parse_error("GF modulus must be an integer in [2, 2^31)");
        try {
            return FieldSpec::prime_field(static_cast<std::uint32_t>(p.get<std::uint64_t>()));
        } catch (const parameter_error& e) {
            throw parse_error(e.what());
        }
    }
    throw parse_error("field must be \"Q\" or {\"GF\": p}");
}

inline ojson field_spec_to_json(const FieldSpec& spec) {
    if (spec.kind() == FieldKind::rationals) return ojson("Q");
    return ojson{{"GF", spec.modulus()}};
}

/// Accepts "Q", "GF<p>" or "GF(<p>)"; used for command-line field overrides.
inline FieldSpec parse_field_name(const std::string& text) {
    if (text == "Q") return FieldSpec::rationals();
    if (text.size() > 2 && text.compare(0, 2, "GF") == 0) {
        std::string digits = text.substr(2);
        if (digits.size() > 2 && digits.front() == '(' && digits.back() == ')')
            digits = digits.substr(1, digits.size() - 2);
        std::uint64_t p = 0;
        if (!digits.empty() && digits.size() <= 10) {
            bool ok = true;
            for (char c : digits) ok = ok && c >= '0' && c <= '9';
            if (ok) {
                for (char c : digits) p = p * 10 + static_cast<std::uint64_t>(c - '0');
                if (p >= 2 && p < (1ull << 31)) {
                    try {
                        return FieldSpec::prime_field(static_cast<std::uint32_t>(p));
                    } catch (const parameter_error& e) {
                        throw parse_error(e.what());
                    }
                }
            }
        }
    }
    throw parse_error("unknown field '" + text + "' (expected Q, GF<p> or GF(<p>))");
}

inline SparseMatrix matrix_from_json(const ojson& j) {
    detail::require_keys(j, {"field", "rows", "cols", "entries"}, "matrix");
    const FieldSpec field = parse_field_spec(j.at("field"));
    const auto rows = detail::parse_id_list(j.at("rows"), "\"rows\"");
    const auto cols = detail::parse_id_list(j.at("cols"), "\"cols\"");
    if (!j.at("entries").is_array()) throw parse_error("\"entries\" must be an array");

    std::vector<MatrixEntry> entries;
    std::size_t at = 0;
    for (const auto& item : j.at("entries")) {
        const std::string where = "entries[" + std::to_string(at++) + "]";
        if (!item.is_array() || item.size() != 3 || !item[0].is_string() || !item[1].is_string() ||
            !item[2].is_string())
            throw parse_error(where + " must be [row, col, value] with string members");
        try {
            entries.push_back({item[0].get<std::string>(), item[1].get<std::string>(),
                               FieldValue::parse(field, item[2].get<std::string>())});
        } catch (const parse_error& e) {
            throw parse_error(where + ": " + e.what());
        }
    }
    try {
        return SparseMatrix(field, rows, cols, entries);
    } catch (const parameter_error& e) {
        throw parse_error(e.what());
    } catch (const not_an_element& e) {
        throw parse_error(e.what());
    }
}

inline SparseMatrix parse_matrix(const std::string& text) {
    return matrix_from_json(detail::parse_json(text));
}

inline ojson matrix_to_json(const SparseMatrix& m) {
    ojson out;
    out["field"] = field_spec_to_json(m.field());
    out["rows"] = m.row_ids();
    out["cols"] = m.col_ids();
    ojson entries = ojson::array();
    for (const auto& [key, v] : m.cells())
        entries.push_back(ojson::array({m.row_ids()[key.first], m.col_ids()[key.second], v.str()}));
    out["entries"] = std::move(entries);
    return out;
}

inline std::string render_matrix(const SparseMatrix& m) { return matrix_to_json(m).dump() + "\n"; }

/// A parsed matroid description plus enough structure to re-render it.
struct MatroidFile {
    Matroid matroid;
    ojson canonical;
};

inline MatroidFile matroid_from_json(const ojson& j) {
    if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string())
        throw parse_error("matroid must be an object with a \"kind\" string");
    const std::string kind = j.at("kind").get<std::string>();

    if (kind == "vector") {
        detail::require_keys(j, {"kind", "matrix"}, "vector matroid");
        SparseMatrix m = matrix_from_json(j.at("matrix"));
        ojson canonical;
        canonical["kind"] = "vector";
        canonical["matrix"] = matrix_to_json(m);
        return MatroidFile{column_matroid(m), std::move(canonical)};
    }
    if (kind == "uniform") {
        detail::require_keys(j, {"kind", "rank", "ground"}, "uniform matroid");
        if (!j.at("rank").is_number_unsigned()) throw parse_error("\"rank\" must be a nonnegative integer");
        const auto ground = detail::parse_id_list(j.at("ground"), "\"ground\"");
        const std::size_t r = j.at("rank").get<std::size_t>();
        ojson canonical;
        canonical["kind"] = "uniform";
        canonical["rank"] = r;
        canonical["ground"] = ground;
        try {
            return MatroidFile{uniform_matroid(r, ground), std::move(canonical)};
        } catch (const rank_too_large& e) {
            throw parse_error(e.what());
        } catch (const parameter_error& e) {
            throw parse_error(e.what());
        }
    }
    if (kind == "family") {
        detail::require_keys(j, {"kind", "ground", "independent"}, "family matroid");
        const auto ground = detail::parse_id_list(j.at("ground"), "\"ground\"");
        if (!j.at("independent").is_array()) throw parse_error("\"independent\" must be an array of id arrays");
        std::vector<std::vector<std::string>> sets;
        for (const auto& item : j.at("independent"))
            sets.push_back(detail::parse_id_list(item, "\"independent\" member"));
        ojson canonical;
        canonical["kind"] = "family";
        canonical["ground"] = ground;
        canonical["independent"] = j.at("independent");
        try {
            return MatroidFile{family_matroid(ground, sets), std::move(canonical)};
        } catch (const not_a_subset& e) {
            throw parse_error(e.what());
        } catch (const parameter_error& e) {
            throw parse_error(e.what());
        }
    }
    throw parse_error("unknown matroid kind \"" + kind + "\"");
}

inline MatroidFile parse_matroid(const std::string& text) {
    return matroid_from_json(detail::parse_json(text));
}

inline std::string render_matroid(const MatroidFile& f) { return f.canonical.dump() + "\n"; }

/// JSON array of element ids (a base or subset argument).
inline std::vector<std::string> parse_id_array(const std::string& text) {
    return detail::parse_id_list(detail::parse_json(text), "subset");
}

inline ojson injection_to_json(const InjectionMap& phi) {
    ojson map = ojson::object();
    for (const auto& [s, t] : phi.pairs()) map[s] = t;
    return map;
}

/// Accepts either a bare {"map": {...}} or a full solve result object.
inline InjectionMap parse_injection(const std::string& text) {
    const ojson j = detail::parse_json(text);
    if (!j.is_object() || !j.contains("map") || !j.at("map").is_object())
        throw parse_error("injection must be an object with a \"map\" object");
    std::vector<std::pair<std::string, std::string>> pairs;
    for (const auto& [s, t] : j.at("map").items()) {
        if (!t.is_string()) throw parse_error("injection targets must be strings");
        pairs.emplace_back(s, t.get<std::string>());
    }
    try {
        return InjectionMap(std::move(pairs));
    } catch (const parameter_error& e) {
        throw parse_error(e.what());
    }
}

inline ojson witness_to_json(const KernelWitness& w) {
    ojson assignment = ojson::object();
    for (std::size_t c = 0; c < w.col_ids().size(); ++c) assignment[w.col_ids()[c]] = w.values()[c].str();
    return assignment;
}

} // namespace matchroid::io
