#pragma once

#include <stdexcept>
#include <string>

namespace polycone {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DimensionMismatch : Error {
  using Error::Error;
};

struct InvalidInput : Error {
  using Error::Error;
};

// mixing scalars from two different radicand contexts
struct ContextMismatch : Error {
  using Error::Error;
};

struct NotPointed : Error {
  using Error::Error;
};

struct HypothesisViolated : Error {
  using Error::Error;
};

// carries the tightest bound reached before giving up
struct BudgetExhausted : Error {
  BudgetExhausted(const std::string& what, std::string best)
      : Error(what), best_bound(std::move(best)) {}
  std::string best_bound;
};

}  // namespace polycone
