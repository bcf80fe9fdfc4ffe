#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace modlab {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline constexpr const char* kVersion = "0.1.0";
inline constexpr const char* kSchema = "modlab/1";

// Operand shapes do not agree (matrix sizes, variable counts).
class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Input is well formed but mathematically unusable for the requested operation.
class DomainError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Text or file input does not conform to the accepted grammar or schema.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t line, std::size_t column)
        : std::runtime_error(what + " at line " + std::to_string(line) + ", column " +
                             std::to_string(column)),
          message_(what), line_(line), column_(column) {}

    const std::string& message() const noexcept { return message_; }
    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::string message_;
    std::size_t line_;
    std::size_t column_;
};

// JSON document does not match the expected schema; pointer locates the offending value.
class SchemaError : public std::runtime_error {
public:
    SchemaError(const std::string& what, std::string pointer)
        : std::runtime_error(what + " at " + (pointer.empty() ? std::string("/") : pointer)),
          pointer_(std::move(pointer)) {}

    const std::string& pointer() const noexcept { return pointer_; }

private:
    std::string pointer_;
};

inline std::string to_string(const BigInt& v) { return v.str(); }

inline std::string to_string(const Rational& q) {
    using boost::multiprecision::denominator;
    using boost::multiprecision::numerator;
    if (denominator(q) == 1) return numerator(q).str();
    return numerator(q).str() + "/" + denominator(q).str();
}

inline int sign(const Rational& q) { return q.sign(); }
inline int sign(const BigInt& v) { return v.sign(); }

}  // namespace modlab
