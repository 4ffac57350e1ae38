#ifndef CONGLAB_SPECTRUM_HPP_
#define CONGLAB_SPECTRUM_HPP_

#include <cstdint>
#include <optional>
#include <vector>

#include "commutator.hpp"

namespace conglab {

  // Subsets of a finite point list (at most 64 points) as bit masks.
  using PointSet = std::uint64_t;

  inline constexpr std::size_t max_points = 64;

  // Clopen subsets of a finite space given by a subbasis of open sets, by
  // brute force over every subset of the points. Throws SizeBudgetExceeded
  // beyond `limit` points.
  std::vector<PointSet> finite_topology_clopens(std::size_t                  points,
                                                std::vector<PointSet> const& subbasis,
                                                std::size_t                  limit = 20);
  // True iff every singleton is closed.
  bool finite_topology_is_t1(std::size_t points, std::vector<PointSet> const& subbasis);

  struct MaxClopen {
    PointSet set;    // over maximals(), in order
    CongId   alpha;  // alpha join beta = top, [alpha,beta] <= Rad, set = Max cap D(alpha)
    CongId   beta;
  };

  // Prime and maximal congruences, radicals and the D/V operators. The
  // analysis must outlive the spectrum.
  class Spectrum {
   public:
    // Throws TheoryHypothesisFailed if the surrogate checks fail.
    explicit Spectrum(Analysis const& an, bool all_pairs_oracle = false);

    [[nodiscard]] Analysis const& analysis() const noexcept {
      return *_an;
    }

    // Join-irreducible test by default; all pairs when `all_pairs`.
    [[nodiscard]] bool is_prime(CongId phi, bool all_pairs) const;
    [[nodiscard]] bool is_prime(CongId phi) const {
      return _is_prime[phi];
    }
    // A pair (a, b) with [a,b] <= phi, a, b not below phi.
    [[nodiscard]] std::optional<std::pair<CongId, CongId>> prime_failure(CongId phi) const;

    [[nodiscard]] std::vector<CongId> const& primes() const noexcept {
      return _primes;
    }
    [[nodiscard]] std::vector<CongId> const& maximals() const noexcept {
      return _maximals;
    }
    [[nodiscard]] CongId rad() const noexcept {
      return _rad;
    }
    [[nodiscard]] CongId nilradical() const noexcept {
      return _radical[_an->bottom()];
    }

    // Meet of the primes above theta; top when there are none.
    [[nodiscard]] CongId radical(CongId theta) const {
      return _radical[theta];
    }
    // Join of every alpha with some [alpha,alpha]^n below theta.
    [[nodiscard]] CongId radical_oracle(CongId theta) const;
    [[nodiscard]] bool   is_radical(CongId theta) const {
      return _radical[theta] == theta;
    }
    [[nodiscard]] std::vector<CongId> radical_congruences() const;
    [[nodiscard]] bool                is_semiprime() const {
      return nilradical() == _an->bottom();
    }

    // Bit i refers to primes()[i].
    [[nodiscard]] PointSet v_set(CongId theta) const;
    [[nodiscard]] PointSet d_set(CongId theta) const {
      return ~v_set(theta) & all_primes();
    }
    [[nodiscard]] PointSet all_primes() const noexcept {
      return mask(_primes.size());
    }

    // Bit i refers to maximals()[i].
    [[nodiscard]] PointSet max_d_set(CongId theta) const;
    [[nodiscard]] PointSet all_maximals() const noexcept {
      return mask(_maximals.size());
    }
    // Distinct clopens of Max(A), each with the first witnessing pair in
    // canonical order, sorted by set.
    [[nodiscard]] std::vector<MaxClopen> clopens_of_max() const;
    // Same sets from the topology alone.
    [[nodiscard]] std::vector<PointSet> clopens_of_max_brute_force() const;
    [[nodiscard]] std::vector<PointSet> clopens_of_spec_brute_force() const;

    // Some iterate [a,a]^n with n >= 1 is complemented, for every a.
    [[nodiscard]] bool is_hyperarchimedean() const;

   private:
    static PointSet mask(std::size_t k) {
      return k >= 64 ? ~PointSet{0} : ((PointSet{1} << k) - 1);
    }

    Analysis const*     _an;
    std::vector<bool>   _is_prime;
    std::vector<CongId> _primes;
    std::vector<CongId> _maximals;
    std::vector<CongId> _radical;
    CongId              _rad = 0;
  };

}  // namespace conglab

#endif  // CONGLAB_SPECTRUM_HPP_
