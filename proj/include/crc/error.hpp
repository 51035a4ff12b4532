#pragma once

#include <stdexcept>
#include <string>

namespace crc {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

class ParameterOutOfRange : public Error {
public:
    using Error::Error;
};

class FileFormatError : public Error {
public:
    FileFormatError(const std::string& what, std::size_t line)
        : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
    explicit FileFormatError(const std::string& what) : Error(what), line_(0) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Fewer distinct eigenvalues than the matrix order could be isolated.
class EigenFailure : public Error {
public:
    using Error::Error;
};

class NotAnEigenvalue : public Error {
public:
    using Error::Error;
};

class TrivialCode : public Error {
public:
    using Error::Error;
};

/// An eigenvalue of a quotient matrix is not an eigenvalue of the ambient graph.
class LloydViolation : public Error {
public:
    using Error::Error;
};

class GraphNotQPolynomial : public Error {
public:
    using Error::Error;
};

/// A theorem-backed structural statement failed; indicates a bug upstream.
class LemmaViolation : public Error {
public:
    using Error::Error;
};

class DegenerateEigenvector : public Error {
public:
    using Error::Error;
};

class NonTermination : public Error {
public:
    using Error::Error;
};

class InconsistentData : public Error {
public:
    using Error::Error;
};

/// Two independent routes to the same verdict disagreed.
class InternalError : public Error {
public:
    using Error::Error;
};

}  // namespace crc
