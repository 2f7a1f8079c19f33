#pragma once

#include <stdexcept>
#include <string>

namespace matchroid {

/// Base class for everything thrown by this library.
class error : public std::runtime_error {
public:
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

/// Two values (or a value and a container) disagree on the field they live in.
class spec_mismatch : public error {
public:
    using error::error;
};

class division_by_zero : public error {
public:
    using error::error;
};

/// Malformed construction arguments: duplicate ids, explicit zero entries,
/// out-of-range parameters and the like.
class parameter_error : public error {
public:
    using error::error;
};

class rank_too_large : public error {
public:
    using error::error;
};

class not_a_subset : public error {
public:
    using error::error;
};

class not_an_element : public error {
public:
    using error::error;
};

class ground_too_large : public error {
public:
    using error::error;
};

class seed_dependent : public error {
public:
    using error::error;
};

/// A set claimed to be a base failed the base test. Carries the name of the
/// offending input ("b0", "b1", ...).
class not_a_base : public error {
public:
    not_a_base(std::string input, const std::string& what) : error(what), input_(std::move(input)) {}
    const std::string& input() const { return input_; }

private:
    std::string input_;
};

class not_independent : public error {
public:
    using error::error;
};

/// Input text (JSON files, value literals) failed to parse or validate.
class parse_error : public error {
public:
    using error::error;
};

} // namespace matchroid
