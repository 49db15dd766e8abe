#pragma once

#include <stdexcept>
#include <string>

namespace gaia {

/// Base class for every error the library raises.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain of an operation (point outside the
/// world, cell outside the grid, inverted key range, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A query shape does not intersect the world extent at all.
class EmptyIntersectionError : public Error {
 public:
  using Error::Error;
};

/// Grid or store configuration is invalid or inconsistent.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Dataset could not be turned into a store (duplicate ids, ...).
class BuildError : public Error {
 public:
  using Error::Error;
};

/// Analysis input lacks the cells an evaluation needs.
class IncompleteDataError : public Error {
 public:
  using Error::Error;
};

/// A regression could not be computed (too few points, degenerate xs).
class FitError : public Error {
 public:
  using Error::Error;
};

/// Malformed text input: CSV rows, config files, shape literals.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace gaia
