#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace gsys {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands live in different dimensions, truncation orders or complexes.
class MismatchError : public Error {
 public:
  using Error::Error;
};

class NotInvertibleError : public Error {
 public:
  using Error::Error;
};

/// A caller-side precondition does not hold (axis out of range, wrong degree, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Malformed or invalid input file.
class FormatError : public Error {
 public:
  using Error::Error;
};

/// A group table fails one of the group axioms. `witness` holds the offending labels.
class GroupAxiomError : public Error {
 public:
  GroupAxiomError(std::string axiom, std::vector<std::string> witness, const std::string& what)
      : Error(what), axiom_(std::move(axiom)), witness_(std::move(witness)) {}

  const std::string& axiom() const noexcept { return axiom_; }
  const std::vector<std::string>& witness() const noexcept { return witness_; }

 private:
  std::string axiom_;
  std::vector<std::string> witness_;
};

/// An identity that holds for valid inputs failed; indicates a bug upstream.
class InternalInconsistency : public Error {
 public:
  using Error::Error;
};

}  // namespace gsys
