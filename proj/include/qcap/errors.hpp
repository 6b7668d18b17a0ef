#pragma once

#include <stdexcept>
#include <string>

namespace qcap {

// Raised when an iterative numerical procedure (adaptive quadrature, series
// summation, rejection sampling) exhausts its budget without converging.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace qcap
