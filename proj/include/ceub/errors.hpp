#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ceub {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class EmptyMatrix : public Error {
 public:
  EmptyMatrix() : Error("valuation matrix must have at least one agent and one item") {}
};

class NonPositiveValuation : public Error {
 public:
  NonPositiveValuation(std::size_t agent, std::size_t item)
      : Error("valuation v[" + std::to_string(agent) + "][" + std::to_string(item) +
              "] must be strictly positive"),
        agent_(agent),
        item_(item) {}
  std::size_t agent() const { return agent_; }
  std::size_t item() const { return item_; }

 private:
  std::size_t agent_;
  std::size_t item_;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class InfeasibleAllocation : public Error {
 public:
  using Error::Error;
};

class ZeroPrice : public Error {
 public:
  explicit ZeroPrice(std::size_t item)
      : Error("price of item " + std::to_string(item) + " must be strictly positive"),
        item_(item) {}
  std::size_t item() const { return item_; }

 private:
  std::size_t item_;
};

class NotParetoOptimal : public Error {
 public:
  using Error::Error;
};

class NotAForest : public Error {
 public:
  NotAForest() : Error("allocation graph contains a cycle") {}
};

class SameTree : public Error {
 public:
  SameTree(std::size_t agent, std::size_t item)
      : Error("agent " + std::to_string(agent) + " and item " + std::to_string(item) +
              " lie in the same tree") {}
};

class InfeasibleLP : public NotParetoOptimal {
 public:
  InfeasibleLP()
      : NotParetoOptimal("multiplier LP has no solution with positive multipliers; "
                         "the allocation is not Pareto optimal") {}
};

class InternalVerificationFailed : public Error {
 public:
  using Error::Error;
};

class MalformedProblem : public Error {
 public:
  using Error::Error;
};

class WrongAgentCount : public Error {
 public:
  explicit WrongAgentCount(std::size_t n)
      : Error("two-agent algorithm requires n = 2, got n = " + std::to_string(n)) {}
};

class WrongItemCount : public Error {
 public:
  explicit WrongItemCount(std::size_t m)
      : Error("two-item algorithm requires m = 2, got m = " + std::to_string(m)) {}
};

}  // namespace ceub
