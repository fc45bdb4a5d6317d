#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace ampfsi {

// Base for every numerical failure raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DegenerateInput : public Error {
public:
    using Error::Error;
};

class SingularSystem : public Error {
public:
    using Error::Error;
};

class NoConvergence : public Error {
public:
    using Error::Error;
};

class ContourTooClose : public Error {
public:
    ContourTooClose(const std::string& what, std::complex<double> center, double radius,
                    double min_abs)
        : Error(what), center(center), radius(radius), min_abs(min_abs) {}

    std::complex<double> center;
    double radius;
    double min_abs;
};

class OutOfDomain : public Error {
public:
    using Error::Error;
};

// Both spatial roots sit on the unit circle (CFL violation).
class AmbiguousRoot : public Error {
public:
    using Error::Error;
};

class SingularFluidBC : public SingularSystem {
public:
    using SingularSystem::SingularSystem;
};

class DegenerateQuartic : public DegenerateInput {
public:
    using DegenerateInput::DegenerateInput;
};

class ContinuationLost : public NoConvergence {
public:
    using NoConvergence::NoConvergence;
};

}  // namespace ampfsi
