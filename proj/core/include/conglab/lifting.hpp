#ifndef CONGLAB_LIFTING_HPP_
#define CONGLAB_LIFTING_HPP_

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "reticulation.hpp"

namespace conglab {

  // Complemented members of a congruence lattice.
  struct BooleanCenter {
    std::vector<CongId>                elements;    // increasing id
    std::vector<std::optional<CongId>> complement;  // indexed by id, empty if none
    std::vector<CongId>                atoms;

    [[nodiscard]] std::size_t size() const noexcept {
      return elements.size();
    }
    [[nodiscard]] bool contains(CongId a) const {
      return complement[a].has_value();
    }
    // Throws NotOrthogonal if a is not complemented.
    [[nodiscard]] CongId negation(CongId a) const;
  };

  // Exhaustive complement search.
  [[nodiscard]] BooleanCenter boolean_center(CongruenceLattice const& L);

  // A/theta together with the correspondence between Con(A/theta) and the
  // interval above theta in Con(A).
  class QuotientView {
   public:
    QuotientView(Analysis const& an, CongId theta);

    [[nodiscard]] CongId theta() const noexcept {
      return _theta;
    }
    [[nodiscard]] FiniteAlgebra const& algebra() const noexcept {
      return _algebra;
    }
    [[nodiscard]] std::vector<Element> const& map() const noexcept {
      return _map;
    }
    [[nodiscard]] CongruenceLattice const& lattice() const noexcept {
      return _lattice;
    }
    // eps/theta for eps above theta.
    [[nodiscard]] CongId down(CongId eps) const;
    // The preimage of a congruence of A/theta.
    [[nodiscard]] CongId up(CongId q) const {
      return _up[q];
    }
    // (alpha join theta)/theta through the interval.
    [[nodiscard]] CongId image(CongId alpha) const;
    // The congruence of A/theta generated by the image pairs of alpha.
    [[nodiscard]] CongId image_direct(CongId alpha) const;
    // Commutator table of A/theta, built on first use.
    [[nodiscard]] Analysis const& analysis() const;

   private:
    Analysis const*                   _an;
    CongId                            _theta;
    FiniteAlgebra                     _algebra;
    std::vector<Element>              _map;
    CongruenceLattice                 _lattice;
    std::vector<CongId>               _down;  // indexed by ids of A, N for ids not above theta
    std::vector<CongId>               _up;
    mutable std::unique_ptr<Analysis> _analysis;
  };

  struct Thm63Verdicts {
    bool c1 = true;  // theta has CBLP
    bool c2 = true;  // coprime phi, psi with [phi,psi] <= theta split by a complemented alpha
    bool c3 = true;  // same for [phi,psi] = theta
    bool c4 = true;  // |B(Con(A/(theta join phi-diamond)))| <= 2 for maximal phi
    bool hypotheses_met = true;

    [[nodiscard]] bool agree() const noexcept {
      return c1 == c2 && c2 == c3 && c3 == c4;
    }
  };

  struct LiftingReport {
    CongId theta = 0;
    bool   cblp  = true;
    // (eps, alpha): eps/theta complemented, alpha complemented with
    // alpha join theta = eps. First alpha in canonical order.
    std::vector<std::pair<CongId, CongId>> witnesses;
    std::optional<CongId>                  counterexample;  // eps with no lift
    // B(Con(A/theta)) as ids above theta, by residuation and directly.
    std::vector<CongId>          center_by_residuation;
    std::vector<CongId>          center_direct;
    bool                         routes_agree = true;
    std::optional<Thm63Verdicts> thm63;
    bool                         regular = false;
    CongId                       diamond = 0;
  };

  struct LiftingOptions {
    // Take the quotient center from A/theta itself rather than from the
    // residuation test inside Con(A).
    bool direct_quotient = false;
  };

  struct BNormalReport {
    bool holds = true;
    // Coprime (chi, eps) with no separating complemented pair.
    std::optional<std::pair<CongId, CongId>> failure;
  };

  struct OrthogonalReport {
    std::size_t sets_checked = 0;
    bool        unique       = true;  // every liftable orthogonal set lifts once
    bool        orthogonal   = true;  // and its lift is orthogonal
    bool        atoms_lift   = true;  // atoms of the quotient center lift to atoms
    std::vector<CongId> atom_lift;
    bool        cblp_below_nilradical = true;  // theta <= rho(Delta) forces CBLP
    std::string failure;

    [[nodiscard]] bool passes() const noexcept {
      return unique && orthogonal && atoms_lift && cblp_below_nilradical;
    }
  };

  // Decision procedures for the congruence Boolean lifting property and
  // the transfer results built on it. Each transfer check returns false
  // only on a falsified implication. The reticulation must outlive this.
  class Lifting {
   public:
    explicit Lifting(Reticulation const& R, LiftingOptions opts = {});
    ~Lifting();

    [[nodiscard]] Reticulation const& reticulation() const noexcept {
      return *_R;
    }
    [[nodiscard]] Spectrum const& spectrum() const noexcept {
      return _R->spectrum();
    }
    [[nodiscard]] Analysis const& analysis() const noexcept {
      return _R->analysis();
    }
    [[nodiscard]] BooleanCenter const& center() const noexcept {
      return _center;
    }
    [[nodiscard]] CenterPreservationReport const& center_preservation() const noexcept {
      return _preservation;
    }

    [[nodiscard]] QuotientView const& quotient(CongId theta) const;
    // (alpha join theta)/theta through the interval, checked against the
    // direct computation in A/theta; throws NotACongruence on mismatch.
    [[nodiscard]] CongId projection_image(CongId theta, CongId alpha) const;

    [[nodiscard]] LiftingReport const& report(CongId theta) const;
    [[nodiscard]] bool                 has_cblp(CongId theta) const {
      return report(theta).cblp;
    }
    [[nodiscard]] bool          algebra_has_cblp() const;
    [[nodiscard]] Thm63Verdicts characterization(CongId theta) const;
    // report() with the characterization filled in.
    [[nodiscard]] LiftingReport full_report(CongId theta) const;

    // Join of the complemented congruences below theta.
    [[nodiscard]] CongId diamond(CongId theta) const;
    [[nodiscard]] bool   is_regular(CongId theta) const {
      return diamond(theta) == theta;
    }

    // Lattice-level views of A/lo read off the interval above lo.
    [[nodiscard]] std::vector<CongId> center_above(CongId lo) const;
    // psi/lo has CBLP in A/lo.
    [[nodiscard]] bool cblp_above(CongId lo, CongId psi) const;
    [[nodiscard]] bool b_normal_above(CongId lo) const;

    [[nodiscard]] BNormalReport b_normal() const;

    // Transfer checks.
    [[nodiscard]] bool cblp_star_transfer(CongId theta) const;
    [[nodiscard]] bool ideal_costar_transfer(LatticeIdeal const& I) const;
    [[nodiscard]] bool algebra_star_transfer() const;
    [[nodiscard]] bool radical_invariance(CongId theta) const;
    [[nodiscard]] bool equal_radical_transfer(CongId theta, CongId chi) const;
    [[nodiscard]] bool below_nilradical_cblp(CongId theta) const;
    [[nodiscard]] bool max_interval_transfer(CongId theta, CongId chi) const;
    [[nodiscard]] bool clop_max_criterion() const;
    [[nodiscard]] bool clop_max_of_rad_quotient() const;
    [[nodiscard]] bool rad_projection_injective() const;
    [[nodiscard]] bool hyperarchimedean_cblp() const;
    [[nodiscard]] bool diamond_star_commute(CongId theta) const;
    [[nodiscard]] bool regular_star_regular(CongId theta) const;
    [[nodiscard]] bool regular_join_transfer(CongId theta, CongId chi) const;
    [[nodiscard]] bool noncoprime_meet_transfer(CongId theta, CongId chi) const;
    [[nodiscard]] bool quotient_cblp_descent(CongId theta) const;
    [[nodiscard]] bool quotient_b_normal_descent(CongId theta) const;
    [[nodiscard]] bool b_normal_biconditional() const;

    // Clopen subsets of Max(A) as masks over spectrum().maximals().
    [[nodiscard]] std::vector<PointSet> clopens_of_max() const;

    // Lifts a pairwise orthogonal family of complemented congruences of
    // A/theta (ids in quotient(theta).lattice()) by disjointing the first
    // lifts. Throws NotOrthogonal or NoCBLP.
    [[nodiscard]] std::vector<CongId> lift_orthogonal(CongId                     theta,
                                                      std::vector<CongId> const& family) const;
    // Throws HypothesisNotMet unless theta <= Rad(A).
    [[nodiscard]] OrthogonalReport orthogonal_uniqueness_and_atoms(CongId theta) const;
    // alpha <= Rad forces alpha = Delta, and alpha - beta <= Rad forces
    // alpha <= beta, over complemented alpha, beta.
    [[nodiscard]] bool complemented_below_rad() const;

    [[nodiscard]] nlohmann::json to_json(LiftingReport const& rep) const;

   private:
    bool complemented_in_interval(CongId lo, CongId eps) const;

    Reticulation const*                                    _R;
    LiftingOptions                                         _opts;
    BooleanCenter                                          _center;
    CenterPreservationReport                               _preservation;
    mutable std::vector<std::unique_ptr<QuotientView>>     _quotients;
    mutable std::vector<std::optional<LiftingReport>>      _reports;
  };

}  // namespace conglab

#endif  // CONGLAB_LIFTING_HPP_
