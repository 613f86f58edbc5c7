#pragma once

#include <stdexcept>
#include <string>

namespace jetcr {

// A documented precondition of an operation does not hold for its input.
class PreconditionError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// An internal identity that must hold by construction failed.
class InvariantError : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

// Operands live over different alphabets or carry different truncation orders.
class IncompatibleJets : public PreconditionError {
public:
  using PreconditionError::PreconditionError;
};

class SingularJacobian : public PreconditionError {
public:
  SingularJacobian(const std::string& what, int rank, int size)
      : PreconditionError(what + " (rank " + std::to_string(rank) + " of " +
                          std::to_string(size) + ")"),
        rank_(rank), size_(size) {}
  int rank() const noexcept { return rank_; }
  int size() const noexcept { return size_; }

private:
  int rank_;
  int size_;
};

class DivisionError : public PreconditionError {
public:
  DivisionError(const std::string& what, std::string monomial)
      : PreconditionError(what + ": " + monomial), monomial_(std::move(monomial)) {}
  const std::string& monomial() const noexcept { return monomial_; }

private:
  std::string monomial_;
};

} // namespace jetcr
