#pragma once

#include <stdexcept>
#include <string>

namespace orthopack {

/// Rejected input: bad symbol, wrong point class, out-of-range parameter.
class InvalidInput : public std::runtime_error {
public:
    explicit InvalidInput(const std::string& what) : std::runtime_error(what) {}
};

/// A numerical invariant or tolerance could not be met.
class NumericalFailure : public std::runtime_error {
public:
    explicit NumericalFailure(const std::string& what) : std::runtime_error(what) {}
};

class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace orthopack
