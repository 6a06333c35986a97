#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qsu2 {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Evaluation of a rational function at a zero of its denominator.
struct PoleError : Error {
  using Error::Error;
};

/// Matrix or block shapes do not agree.
struct DimensionError : Error {
  using Error::Error;
};

/// Operation requested on the wrong kind of symbol (scalar vs algebra-valued).
struct KindError : Error {
  using Error::Error;
};

/// An exact identity that must hold by construction failed.
struct ConsistencyError : Error {
  using Error::Error;
};

/// A quantity would need an irrational square-root prefactor that the exact
/// backend cannot represent in this context.
struct SurdError : Error {
  using Error::Error;
};

struct ParseError : Error {
  ParseError(const std::string& what, std::size_t pos)
      : Error(what + " at position " + std::to_string(pos)), position(pos) {}
  std::size_t position;
};

}  // namespace qsu2
