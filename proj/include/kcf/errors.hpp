#pragma once

#include <stdexcept>
#include <string>

namespace kcf {

class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

class SingularMatrix : public Error {
   public:
    SingularMatrix() : Error("matrix is singular") {}
};

class NotSquare : public Error {
   public:
    NotSquare() : Error("pencil is not square") {}
};

class DimensionMismatch : public Error {
   public:
    using Error::Error;
};

class InvalidStructure : public Error {
   public:
    using Error::Error;
};

// Thrown in Exact mode when the regular part has an eigenvalue outside Q.
class IrrationalEigenvalue : public Error {
   public:
    explicit IrrationalEigenvalue(std::string characteristic_polynomial)
        : Error("characteristic polynomial of the regular part has non-rational roots: " +
                characteristic_polynomial + " (retry in approx mode)"),
          polynomial_(std::move(characteristic_polynomial)) {}

    const std::string& polynomial() const noexcept { return polynomial_; }

   private:
    std::string polynomial_;
};

// Approx mode works over the reals; a complex-conjugate eigenvalue pair is rejected.
class ComplexEigenvalue : public Error {
   public:
    using Error::Error;
};

class NotUnique : public Error {
   public:
    NotUnique() : Error("solution is not unique") {}
};

class MissingConstants : public Error {
   public:
    MissingConstants() : Error("solution family requires free constants") {}
};

class WrongConstantCount : public Error {
   public:
    WrongConstantCount(std::size_t expected, std::size_t got)
        : Error("expected " + std::to_string(expected) + " free constants, got " + std::to_string(got)) {}
};

class ParseError : public Error {
   public:
    using Error::Error;
};

}  // namespace kcf
