#ifndef CONGLAB_RETICULATION_HPP_
#define CONGLAB_RETICULATION_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lattice.hpp"
#include "spectrum.hpp"

namespace conglab {

  // The reticulation L(A), carried by the radical congruences of A ordered
  // by inclusion. Element x of lattice() is the congruence element(x).
  // The spectrum must outlive the reticulation.
  class Reticulation {
   public:
    explicit Reticulation(Spectrum const& sp);

    [[nodiscard]] Spectrum const& spectrum() const noexcept {
      return *_sp;
    }
    [[nodiscard]] Analysis const& analysis() const noexcept {
      return _sp->analysis();
    }
    [[nodiscard]] FiniteLattice const& lattice() const noexcept {
      return _lattice;
    }
    [[nodiscard]] std::size_t size() const noexcept {
      return _elements.size();
    }
    [[nodiscard]] CongId element(std::size_t x) const {
      return _elements[x];
    }
    [[nodiscard]] std::vector<CongId> const& elements() const noexcept {
      return _elements;
    }

    // rho(alpha) as an element of the lattice.
    [[nodiscard]] std::size_t lambda(CongId alpha) const {
      return _lambda[alpha];
    }
    // {lambda(alpha) : alpha <= theta}.
    [[nodiscard]] LatticeIdeal star(CongId theta) const;
    // Join of every alpha with lambda(alpha) in I.
    [[nodiscard]] CongId costar(LatticeIdeal const& I) const;

   private:
    Spectrum const*          _sp;
    std::vector<CongId>      _elements;
    std::vector<std::size_t> _lambda;
    FiniteLattice            _lattice;
  };

  struct SpecHomeomorphismReport {
    std::size_t spec_size    = 0;
    std::size_t spec_id_size = 0;
    bool        bijection    = true;  // phi -> phi*, P -> P_* mutually inverse
    bool        order        = true;  // both maps preserve and reflect inclusion
    bool        basis        = true;  // u(V(alpha)) = V_Id(lambda(alpha))
    bool        frame        = true;  // RCon(A) ~ Id(L(A)) by theta -> theta*
    std::string failure;              // first mismatch, empty on success

    [[nodiscard]] bool passes() const noexcept {
      return bijection && order && basis && frame;
    }
  };

  // Mismatches are reported in the result, never thrown.
  [[nodiscard]] SpecHomeomorphismReport check_spec_homeomorphism(Reticulation const& R);

  struct CenterPreservationReport {
    bool                  holds = true;
    // alpha with lambda(alpha) complemented but no complemented iterate.
    std::optional<CongId> violating;
    // For every alpha, beta and n >= 1 some m has
    // [[alpha,alpha]^m, [beta,beta]^m] <= [alpha,beta]^n.
    bool star_property = true;
    std::optional<std::pair<CongId, CongId>> star_failure;
    bool semiprime = false;
  };

  [[nodiscard]] CenterPreservationReport preserves_boolean_center(Reticulation const& R);

  // [alpha,beta]^n with [alpha,beta]^1 = [alpha,beta].
  [[nodiscard]] CongId commutator_power(Analysis const& an, CongId a, CongId b, std::size_t n);

}  // namespace conglab

#endif  // CONGLAB_RETICULATION_HPP_
