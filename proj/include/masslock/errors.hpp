#pragma once
// Error taxonomy shared by all modules. The CLI maps these to exit codes:
// ArgumentError -> 2, InfeasibleError -> 3, CapacityError -> 4.

#include <cstdint>
#include <stdexcept>
#include <string>

namespace masslock {

struct ArgumentError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Probe grid that misses a descriptor entirely.
struct DegenerateProbeError : ArgumentError {
  using ArgumentError::ArgumentError;
};

// Work exceeded a configured cap (exact-mode sizes, candidate budgets).
struct CapacityError : std::runtime_error {
  CapacityError(const std::string& what, std::uint64_t count_, std::uint64_t cap_)
      : std::runtime_error(what), count(count_), cap(cap_) {}
  std::uint64_t count = 0;
  std::uint64_t cap = 0;
};

// No candidate meets the mass constraint.
struct InfeasibleError : std::runtime_error {
  InfeasibleError(const std::string& what, double max_mass)
      : std::runtime_error(what), max_achievable_mass(max_mass) {}
  double max_achievable_mass = 0.0;
};

}  // namespace masslock
