#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace hmw {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kEulerGamma = 0.577215664901532860606512090082402431;
inline constexpr cplx kI{0.0, 1.0};

// Error taxonomy. The CLI maps each family onto an exit code.
enum class ErrorKind { domain, computation, assertion };

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

// Precondition, range, pole and regime violations.
class DomainError : public Error {
public:
    explicit DomainError(const std::string& what) : Error(ErrorKind::domain, what) {}
};

// Nonconvergence and budget overruns.
class ComputationError : public Error {
public:
    explicit ComputationError(const std::string& what) : Error(ErrorKind::computation, what) {}
};

// A hard identity or bound failed; indicates a bug, not bad input.
class AssertionFailure : public Error {
public:
    explicit AssertionFailure(const std::string& what) : Error(ErrorKind::assertion, what) {}
};

class ParseError : public DomainError {
public:
    ParseError(std::size_t line, std::size_t column, const std::string& msg)
        : DomainError("parse error at line " + std::to_string(line) + ", column " +
                      std::to_string(column) + ": " + msg),
          line_(line), column_(column) {}
    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_, column_;
};

// e(x) = exp(2 pi i x) for x = num/den, reduced mod 1 in integers first.
cplx e_rat(std::int64_t num, std::int64_t den);

}  // namespace hmw
