#ifndef CONGLAB_VERIFY_HPP_
#define CONGLAB_VERIFY_HPP_

#include <cstddef>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "algebra.hpp"
#include "commutator.hpp"

namespace conglab {

  struct CheckResult {
    std::string suite;
    std::string name;
    bool        passed = true;
    std::size_t cases  = 0;
    std::string detail;  // first counterexample when failed
    // Hypotheses of the checked statement do not hold for this algebra, so
    // the verdict is reported but not counted.
    bool exploratory = false;
  };

  struct AlgebraVerification {
    std::string              algebra;
    std::size_t              size     = 0;
    std::size_t              con_size = 0;
    bool                     exploratory = false;
    std::string              exploratory_reason;
    std::string              error;  // set when the run was aborted
    std::vector<CheckResult> checks;
    double                   seconds = 0;

    // No counted check failed and the run was not aborted.
    [[nodiscard]] bool passed() const;
    [[nodiscard]] std::size_t failures() const;
  };

  struct VerifyOptions {
    AnalysisOptions analysis;
    bool            direct_quotient = false;
    // Largest universe for the exhaustive partition comparison.
    std::size_t partition_limit = 7;
  };

  [[nodiscard]] AlgebraVerification verify_algebra(FiniteAlgebra const& A,
                                                   VerifyOptions const& opts = {});

  [[nodiscard]] nlohmann::json to_json(AlgebraVerification const& v);

  // Every partition of {0..n-1} compatible with A, as normalised block
  // arrays. Throws SizeBudgetExceeded past `limit` elements.
  [[nodiscard]] std::vector<std::vector<Element>> compatible_partitions(FiniteAlgebra const& A,
                                                                        std::size_t limit = 7);

}  // namespace conglab

#endif  // CONGLAB_VERIFY_HPP_
