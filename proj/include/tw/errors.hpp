#pragma once

#include <stdexcept>
#include <string>

namespace tw {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct SingularMatrix : Error {
    explicit SingularMatrix(const std::string& msg = "matrix numerically singular") : Error(msg) {}
};

struct OutOfDomain : Error {
    explicit OutOfDomain(const std::string& msg = "coordinate outside potential domain") : Error(msg) {}
};

struct NoConvergence : Error {
    explicit NoConvergence(const std::string& msg = "limit not reached within truncation budget") : Error(msg) {}
};

struct StepUnderflow : Error {
    explicit StepUnderflow(const std::string& msg = "step control cannot meet tolerance") : Error(msg) {}
};

struct ZeroK : Error {
    explicit ZeroK(const std::string& msg = "k = 0 not admissible") : Error(msg) {}
};

struct Degenerate : Error {
    explicit Degenerate(const std::string& msg = "singular value not simple") : Error(msg) {}
};

struct NotAnEigenvalue : Error {
    explicit NotAnEigenvalue(const std::string& msg = "no decaying solution at this value") : Error(msg) {}
};

struct ZeroEll : Error {
    explicit ZeroEll(const std::string& msg = "boundary functional vanished on eigenfunction") : Error(msg) {}
};

struct AsymmetricDensity : Error {
    explicit AsymmetricDensity(const std::string& msg = "density diagonal entries differ beyond tolerance") : Error(msg) {}
};

struct ZeroDensity : Error {
    explicit ZeroDensity(const std::string& msg = "density below noise floor, phase undefined") : Error(msg) {}
};

}  // namespace tw
