#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace latfactor {

using Int = mpz_class;

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Carries gcd(x, N) > 1. Callers usually treat this as a found factor.
class NotInvertible : public Error {
public:
    explicit NotInvertible(Int g)
        : Error("not invertible: gcd = " + g.get_str()), gcd_(std::move(g)) {}
    const Int& gcd() const { return gcd_; }

private:
    Int gcd_;
};

class UnsupportedSize : public Error {
public:
    using Error::Error;
};

class ModulusMismatch : public Error {
public:
    ModulusMismatch() : Error("operands have different moduli") {}
};

class DependentRows : public Error {
public:
    DependentRows() : Error("basis rows are linearly dependent") {}
};

class NonDivisibleCoordinates : public Error {
public:
    using Error::Error;
};

class BoundTooLarge : public Error {
public:
    using Error::Error;
};

class NoShortEnoughVector : public Error {
public:
    using Error::Error;
};

class SharedFactor : public Error {
public:
    explicit SharedFactor(Int g)
        : Error("modulus shares factor " + g.get_str()), factor_(std::move(g)) {}
    const Int& factor() const { return factor_; }

private:
    Int factor_;
};

class SearchExhausted : public Error {
public:
    using Error::Error;
};

class NotSemiprime : public Error {
public:
    NotSemiprime(const std::string& what, std::vector<Int> partial)
        : Error(what), partial_(std::move(partial)) {}
    const std::vector<Int>& partial() const { return partial_; }

private:
    std::vector<Int> partial_;
};

class PromiseViolated : public Error {
public:
    using Error::Error;
};

class NotOfForm : public Error {
public:
    using Error::Error;
};

}  // namespace latfactor
