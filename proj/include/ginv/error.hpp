#pragma once

#include <stdexcept>
#include <string>

namespace ginv {

/// Malformed input files or unusable option combinations.
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

/// Numerical breakdown: rank decision too close to the threshold, contour
/// too close to an eigenvalue, overlapping spectra in a Sylvester solve.
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace ginv
