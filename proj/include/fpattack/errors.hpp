#ifndef FPATTACK_ERRORS_HPP
#define FPATTACK_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace fpattack {

// A black box (adversary, estimator, clusterer) returned something outside
// its declared output contract.
class ContractViolation : public std::runtime_error {
 public:
  explicit ContractViolation(const std::string& what) : std::runtime_error(what) {}
};

// Exact computation requested beyond the supported size (e.g. 2^n enumeration).
class BudgetExceeded : public std::invalid_argument {
 public:
  explicit BudgetExceeded(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace fpattack

#endif
