#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>

#include "matchroid/error.hpp"

namespace matchroid {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

/// Deterministic trial-division primality test, good for any 32-bit value.
inline bool is_prime(std::uint32_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    if (n % 3 == 0) return n == 3;
    for (std::uint64_t d = 5; d * d <= n; d += 6) {
        if (n % d == 0 || n % (d + 2) == 0) return false;
    }
    return true;
}

enum class FieldKind { rationals, prime_field };

/// Which exact field values live in: the rationals, or GF(p) for a prime
/// p < 2^31. Values of different specs never mix.
class FieldSpec {
public:
    static FieldSpec rationals() { return FieldSpec(FieldKind::rationals, 0); }

    static FieldSpec prime_field(std::uint32_t p) {
        if (p < 2 || p >= (1u << 31))
            throw parameter_error("prime field modulus must satisfy 2 <= p < 2^31, got " + std::to_string(p));
        if (!is_prime(p))
            throw parameter_error("prime field modulus must be prime, got " + std::to_string(p));
        return FieldSpec(FieldKind::prime_field, p);
    }

    FieldKind kind() const { return kind_; }

    /// Only meaningful for prime fields.
    std::uint32_t modulus() const { return p_; }

    std::string name() const {
        return kind_ == FieldKind::rationals ? std::string("Q") : "GF(" + std::to_string(p_) + ")";
    }

    friend bool operator==(const FieldSpec& a, const FieldSpec& b) = default;

private:
    FieldSpec(FieldKind kind, std::uint32_t p) : kind_(kind), p_(p) {}

    FieldKind kind_;
    std::uint32_t p_;
};

namespace detail {

inline std::uint32_t mod_inverse(std::uint32_t a, std::uint32_t p) {
    // extended Euclid on signed 64-bit; p < 2^31 so nothing overflows
    std::int64_t t = 0, new_t = 1;
    std::int64_t r = p, new_r = a % p;
    while (new_r != 0) {
        const std::int64_t q = r / new_r;
        t = std::exchange(new_t, t - q * new_t);
        r = std::exchange(new_r, r - q * new_r);
    }
    if (r != 1) throw division_by_zero("no inverse of " + std::to_string(a) + " mod " + std::to_string(p));
    if (t < 0) t += p;
    return static_cast<std::uint32_t>(t);
}

/// "0" or a nonzero decimal without leading zeros.
inline bool is_canonical_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (c < '0' || c > '9') return false;
    if (s.size() > 1 && s[0] == '0') return false;
    return true;
}

} // namespace detail

/// An exact scalar in a declared field. Values are immutable and kept in
/// canonical form: gcd-reduced rationals with positive denominator, or a
/// residue in [0, p). Equality is structural.
class FieldValue {
public:
    static FieldValue zero(const FieldSpec& spec) { return from_int(spec, 0); }
    static FieldValue one(const FieldSpec& spec) { return from_int(spec, 1); }

    static FieldValue from_int(const FieldSpec& spec, long long v) {
        FieldValue out(spec);
        if (spec.kind() == FieldKind::rationals) {
            out.rat_ = BigRational(v);
        } else {
            const std::int64_t p = spec.modulus();
            out.res_ = static_cast<std::uint32_t>(((v % p) + p) % p);
        }
        return out;
    }

    /// Exact rational num/den over Q; canonicalized on construction.
    static FieldValue rational(const BigInt& num, const BigInt& den = 1) {
        if (den == 0) throw division_by_zero("rational with zero denominator");
        FieldValue out(FieldSpec::rationals());
        if (den < 0)
            out.rat_ = BigRational(-num, -den);
        else
            out.rat_ = BigRational(num, den);
        return out;
    }

    /// Residue class of v in GF(p).
    static FieldValue residue(const FieldSpec& spec, std::uint64_t v) {
        if (spec.kind() != FieldKind::prime_field)
            throw parameter_error("residue() requires a prime field spec");
        FieldValue out(spec);
        out.res_ = static_cast<std::uint32_t>(v % spec.modulus());
        return out;
    }

    const FieldSpec& spec() const { return spec_; }

    bool is_zero() const {
        return spec_.kind() == FieldKind::rationals ? rat_.is_zero() : res_ == 0;
    }

    bool is_one() const {
        return spec_.kind() == FieldKind::rationals ? rat_ == 1 : res_ == 1;
    }

    friend FieldValue operator+(const FieldValue& a, const FieldValue& b) {
        a.require_same_spec(b);
        FieldValue out(a.spec_);
        if (a.spec_.kind() == FieldKind::rationals) {
            out.rat_ = a.rat_ + b.rat_;
        } else {
            out.res_ = static_cast<std::uint32_t>(
                (static_cast<std::uint64_t>(a.res_) + b.res_) % a.spec_.modulus());
        }
        return out;
    }

    friend FieldValue operator*(const FieldValue& a, const FieldValue& b) {
        a.require_same_spec(b);
        FieldValue out(a.spec_);
        if (a.spec_.kind() == FieldKind::rationals) {
            out.rat_ = a.rat_ * b.rat_;
        } else {
            out.res_ = static_cast<std::uint32_t>(
                static_cast<std::uint64_t>(a.res_) * b.res_ % a.spec_.modulus());
        }
        return out;
    }

    FieldValue operator-() const {
        FieldValue out(spec_);
        if (spec_.kind() == FieldKind::rationals)
            out.rat_ = -rat_;
        else
            out.res_ = res_ == 0 ? 0 : spec_.modulus() - res_;
        return out;
    }

    friend FieldValue operator-(const FieldValue& a, const FieldValue& b) { return a + (-b); }

    FieldValue inverse() const {
        if (is_zero()) throw division_by_zero("inverse of zero in " + spec_.name());
        FieldValue out(spec_);
        if (spec_.kind() == FieldKind::rationals)
            out.rat_ = 1 / rat_;
        else
            out.res_ = detail::mod_inverse(res_, spec_.modulus());
        return out;
    }

    friend FieldValue operator/(const FieldValue& a, const FieldValue& b) { return a * b.inverse(); }

    friend bool operator==(const FieldValue& a, const FieldValue& b) {
        if (a.spec_ != b.spec_) return false;
        return a.spec_.kind() == FieldKind::rationals ? a.rat_ == b.rat_ : a.res_ == b.res_;
    }

    /// Rational payload accessors; only valid over Q.
    BigInt rational_numerator() const {
        require_rationals();
        return numerator(rat_);
    }
    BigInt rational_denominator() const {
        require_rationals();
        return denominator(rat_);
    }

    /// Residue payload accessor; only valid over GF(p).
    std::uint32_t residue_value() const {
        if (spec_.kind() != FieldKind::prime_field)
            throw parameter_error("residue_value() requires a prime field value");
        return res_;
    }

    /// Canonical text: rationals as "num" or "num/den" (gcd-reduced, den >= 2),
    /// prime-field residues as plain decimal in [0, p).
    std::string str() const {
        if (spec_.kind() == FieldKind::prime_field) return std::to_string(res_);
        const BigInt num = numerator(rat_);
        const BigInt den = denominator(rat_);
        if (den == 1) return num.str();
        return num.str() + "/" + den.str();
    }

    /// Strict parse of the canonical grammar above; anything non-canonical
    /// ("3/6", "02", "-0", "4/1", out-of-range residues) is rejected.
    static FieldValue parse(const FieldSpec& spec, std::string_view text) {
        if (spec.kind() == FieldKind::prime_field) {
            if (!detail::is_canonical_digits(text))
                throw parse_error("invalid " + spec.name() + " value '" + std::string(text) + "'");
            std::uint64_t v = 0;
            for (char c : text) {
                v = v * 10 + static_cast<std::uint64_t>(c - '0');
                if (v >= (1ull << 40))
                    throw parse_error("residue '" + std::string(text) + "' out of range for " + spec.name());
            }
            if (v >= spec.modulus())
                throw parse_error("residue '" + std::string(text) + "' out of range for " + spec.name());
            return residue(spec, v);
        }

        std::string_view body = text;
        bool negative = false;
        if (!body.empty() && body[0] == '-') {
            negative = true;
            body.remove_prefix(1);
        }
        const auto slash = body.find('/');
        std::string_view num_part = body.substr(0, slash);
        if (!detail::is_canonical_digits(num_part))
            throw parse_error("invalid rational value '" + std::string(text) + "'");
        if (negative && num_part == "0")
            throw parse_error("invalid rational value '" + std::string(text) + "': negative zero");
        BigInt num{std::string(num_part)};
        if (negative) num = -num;
        if (slash == std::string_view::npos) return rational(num);

        std::string_view den_part = body.substr(slash + 1);
        if (!detail::is_canonical_digits(den_part) || den_part == "0" || den_part == "1")
            throw parse_error("invalid rational value '" + std::string(text) + "'");
        const BigInt den{std::string(den_part)};
        if (gcd(abs(num), den) != 1)
            throw parse_error("rational value '" + std::string(text) + "' is not gcd-reduced");
        return rational(num, den);
    }

private:
    explicit FieldValue(const FieldSpec& spec) : spec_(spec) {}

    void require_same_spec(const FieldValue& other) const {
        if (spec_ != other.spec_)
            throw spec_mismatch("field mismatch: " + spec_.name() + " vs " + other.spec_.name());
    }

    void require_rationals() const {
        if (spec_.kind() != FieldKind::rationals)
            throw parameter_error("rational payload access on a " + spec_.name() + " value");
    }

    FieldSpec spec_;
    BigRational rat_;
    std::uint32_t res_ = 0;
};

} // namespace matchroid
