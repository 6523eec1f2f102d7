#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace dtgw {

// Input data (files, manifests, serialized objects, infeasible constraints)
// that cannot be used. Maps to exit code 3 in the CLI.
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

// An exact computation would exceed the configured enumeration budget.
// Carries the number of warping paths that would have to be visited.
class BudgetError : public std::runtime_error {
 public:
  BudgetError(const std::string& what, std::uint64_t path_count)
      : std::runtime_error(what), path_count_(path_count) {}

  std::uint64_t path_count() const { return path_count_; }

 private:
  std::uint64_t path_count_;
};

}  // namespace dtgw
