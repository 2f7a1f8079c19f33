#pragma once

// Shared fixture matroids for the unit and acceptance suites.

#include <matchroid/matchroid.hpp>

#include <random>
#include <string>
#include <vector>

namespace fixtures {

using matchroid::FieldSpec;
using matchroid::FieldValue;
using matchroid::Matroid;

struct NamedMatroid {
    std::string name;
    Matroid matroid;
};

inline std::vector<std::string> letters(std::size_t n) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(std::string(1, static_cast<char>('a' + i)));
    return out;
}

/// The three-vector GF(2) matroid: e1=(1,0), e2=(0,1), e3=(1,1). Every
/// 2-subset is a base, the full set is dependent.
inline Matroid gf2_triple() {
    const FieldSpec f2 = FieldSpec::prime_field(2);
    return matchroid::vector_matroid(
        f2, {"x", "y"},
        {{"e1", {FieldValue::one(f2), FieldValue::zero(f2)}},
         {"e2", {FieldValue::zero(f2), FieldValue::one(f2)}},
         {"e3", {FieldValue::one(f2), FieldValue::one(f2)}}});
}

/// Over Q: (1,0), (2,0), (0,1) — the first two are parallel.
inline Matroid q_parallel() {
    const FieldSpec q = FieldSpec::rationals();
    return matchroid::vector_matroid(q, {"x", "y"},
                                     {{"v1", {FieldValue::from_int(q, 1), FieldValue::zero(q)}},
                                      {"v2", {FieldValue::from_int(q, 2), FieldValue::zero(q)}},
                                      {"v3", {FieldValue::zero(q), FieldValue::one(q)}}});
}

/// Contains the zero vector as element "z".
inline Matroid q_with_zero_vector() {
    const FieldSpec q = FieldSpec::rationals();
    return matchroid::vector_matroid(q, {"x", "y"},
                                     {{"z", {FieldValue::zero(q), FieldValue::zero(q)}},
                                      {"v1", {FieldValue::one(q), FieldValue::zero(q)}},
                                      {"v2", {FieldValue::zero(q), FieldValue::one(q)}}});
}

/// Deterministic random vector matroid: `elements` vectors over `coords`
/// coordinates, entries drawn from the field (zeros included).
inline Matroid random_vector_matroid(const FieldSpec& field, std::size_t elements, std::size_t coords,
                                     std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<std::string> coordinate_ids;
    for (std::size_t k = 0; k < coords; ++k) coordinate_ids.push_back("x" + std::to_string(k + 1));
    std::vector<std::pair<std::string, std::vector<FieldValue>>> vectors;
    for (std::size_t e = 0; e < elements; ++e) {
        std::vector<FieldValue> values;
        for (std::size_t k = 0; k < coords; ++k) {
            if (field.kind() == matchroid::FieldKind::rationals) {
                const long long v = static_cast<long long>(rng() % 7) - 3;
                values.push_back(FieldValue::from_int(field, v));
            } else {
                values.push_back(FieldValue::residue(field, rng() % field.modulus()));
            }
        }
        vectors.emplace_back("e" + std::to_string(e + 1), std::move(values));
    }
    return matchroid::vector_matroid(field, coordinate_ids, vectors);
}

/// The non-matroid independence family {{}, {a}, {b}, {a,b}, {c}} on
/// {a,b,c}; violates axiom (III) with J={c}, I={a}.
inline Matroid non_matroid_family() {
    return matchroid::family_matroid({"a", "b", "c"}, {{}, {"a"}, {"b"}, {"a", "b"}, {"c"}});
}

/// Fixture matroids with |E| <= 7, used by the identity, exchange and axiom
/// suites.
inline std::vector<NamedMatroid> small_fixtures() {
    std::vector<NamedMatroid> out;
    out.push_back({"U(0,3)", matchroid::uniform_matroid(0, letters(3))});
    out.push_back({"U(1,3)", matchroid::uniform_matroid(1, letters(3))});
    out.push_back({"U(2,4)", matchroid::uniform_matroid(2, letters(4))});
    out.push_back({"U(3,5)", matchroid::uniform_matroid(3, letters(5))});
    out.push_back({"U(2,5)", matchroid::uniform_matroid(2, letters(5))});
    out.push_back({"U(4,4)", matchroid::uniform_matroid(4, letters(4))});
    out.push_back({"gf2-triple", gf2_triple()});
    out.push_back({"q-parallel", q_parallel()});
    out.push_back({"q-zero-vector", q_with_zero_vector()});
    out.push_back({"gf2-random-6", random_vector_matroid(FieldSpec::prime_field(2), 6, 3, 11)});
    out.push_back({"gf5-random-7", random_vector_matroid(FieldSpec::prime_field(5), 7, 4, 21)});
    out.push_back({"q-random-6", random_vector_matroid(FieldSpec::rationals(), 6, 4, 31)});
    return out;
}

} // namespace fixtures
