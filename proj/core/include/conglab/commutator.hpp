#ifndef CONGLAB_COMMUTATOR_HPP_
#define CONGLAB_COMMUTATOR_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "algebra.hpp"
#include "congruence.hpp"

namespace conglab {

  inline constexpr std::size_t default_matrix_cap = 1'000'000;

  // [alpha, beta] by the term condition over the subalgebra M(alpha, beta)
  // of A^4 generated by the matrices [a a; a' a'] (a alpha a') and
  // [b b'; b b'] (b beta b'). A matrix is stored as (x, y, z, w) with x y
  // the top row. Throws SizeBudgetExceeded if M grows past matrix_cap.
  Congruence commutator(FiniteAlgebra const& A,
                        Congruence const&    alpha,
                        Congruence const&    beta,
                        std::size_t          matrix_cap = default_matrix_cap);

  // Number of matrices in M(alpha, beta), fully generated (no early exit).
  std::size_t matrix_subalgebra_size(FiniteAlgebra const& A,
                                     Congruence const&    alpha,
                                     Congruence const&    beta,
                                     std::size_t          matrix_cap = default_matrix_cap);

  struct SurrogateReport {
    bool modular                 = true;  // Con(A) is a modular lattice
    bool top_idempotent          = true;  // [top, top] = top
    bool top_is_unit             = true;  // [theta, top] = theta for every theta
    bool closed_under_commutator = true;  // automatic for finite A

    [[nodiscard]] bool passes() const noexcept {
      return modular && top_idempotent;
    }
    // Names the first failing check, empty if none.
    [[nodiscard]] std::string failing() const;
  };

  struct AnalysisOptions {
    std::size_t con_cap    = default_congruence_cap;
    std::size_t matrix_cap = default_matrix_cap;
    unsigned    jobs       = 1;
  };

  // An algebra together with Con(A) and the full commutator table, which
  // every later stage reads by index.
  class Analysis {
   public:
    explicit Analysis(FiniteAlgebra A, AnalysisOptions const& opts = {});

    [[nodiscard]] FiniteAlgebra const& algebra() const noexcept {
      return _algebra;
    }
    [[nodiscard]] CongruenceLattice const& lattice() const noexcept {
      return _lattice;
    }
    [[nodiscard]] AnalysisOptions const& options() const noexcept {
      return _options;
    }
    [[nodiscard]] std::size_t size() const noexcept {
      return _lattice.size();
    }
    [[nodiscard]] CongId bottom() const noexcept {
      return _lattice.bottom();
    }
    [[nodiscard]] CongId top() const noexcept {
      return _lattice.top();
    }
    [[nodiscard]] bool leq(CongId a, CongId b) const {
      return _lattice.leq(a, b);
    }
    [[nodiscard]] CongId join(CongId a, CongId b) const {
      return _lattice.join(a, b);
    }
    [[nodiscard]] CongId meet(CongId a, CongId b) const {
      return _lattice.meet(a, b);
    }
    [[nodiscard]] Congruence const& operator[](CongId i) const {
      return _lattice[i];
    }
    [[nodiscard]] CongId id(Congruence const& c) const {
      return _lattice.index_of(c);
    }

    [[nodiscard]] CongId commutator(CongId a, CongId b) const {
      return _table[a * size() + b];
    }

    // [a,a]^0 = a, [a,a]^{k+1} = [[a,a]^k, [a,a]^k].
    [[nodiscard]] CongId iterate(CongId a, std::size_t k) const;
    // Least k with [a,a]^{k+1} = [a,a]^k.
    [[nodiscard]] std::size_t stabilization_index(CongId a) const;
    // [a,a]^k for k at the stabilization index.
    [[nodiscard]] CongId stable_iterate(CongId a) const;

    // a -> b: the join of the join-irreducible g with [a,g] below b.
    [[nodiscard]] CongId residuation(CongId a, CongId b) const;
    [[nodiscard]] CongId annihilator(CongId a) const {
      return residuation(a, bottom());
    }

    // A complement of a in Con(A), the annihilator when it qualifies.
    [[nodiscard]] std::optional<CongId> complement(CongId a) const {
      return _complement[a];
    }
    [[nodiscard]] bool is_complemented(CongId a) const {
      return _complement[a].has_value();
    }

    [[nodiscard]] SurrogateReport const& surrogates() const noexcept {
      return _surrogates;
    }
    // Throws TheoryHypothesisFailed naming the failed check.
    void require_theory() const;

   private:
    FiniteAlgebra                     _algebra;
    AnalysisOptions                   _options;
    CongruenceLattice                 _lattice;
    std::vector<CongId>               _table;
    std::vector<std::vector<CongId>>  _iterates;
    std::vector<std::optional<CongId>> _complement;
    SurrogateReport                   _surrogates;
  };

}  // namespace conglab

#endif  // CONGLAB_COMMUTATOR_HPP_
