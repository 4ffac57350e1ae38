#ifndef CONGLAB_LATTICE_HPP_
#define CONGLAB_LATTICE_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

namespace conglab {

  // Bounded lattice on {0, ..., k-1} given by its order relation.
  class FiniteLattice {
   public:
    FiniteLattice() = default;

    // Throws NotALattice unless leq is a partial order with all joins and
    // meets. leq is row-major, leq[i*k + j] meaning i <= j.
    static FiniteLattice from_order(std::size_t k, std::vector<bool> leq);
    // Order is the reflexive-transitive closure of the (lower, upper) pairs.
    static FiniteLattice from_covers(std::size_t                                       k,
                                     std::vector<std::pair<std::size_t, std::size_t>> const& covers);

    [[nodiscard]] std::size_t size() const noexcept {
      return _k;
    }
    [[nodiscard]] bool leq(std::size_t i, std::size_t j) const {
      return _leq[i * _k + j];
    }
    [[nodiscard]] std::size_t join(std::size_t i, std::size_t j) const {
      return _join[i * _k + j];
    }
    [[nodiscard]] std::size_t meet(std::size_t i, std::size_t j) const {
      return _meet[i * _k + j];
    }
    [[nodiscard]] std::size_t bottom() const noexcept {
      return _bottom;
    }
    [[nodiscard]] std::size_t top() const noexcept {
      return _top;
    }

    [[nodiscard]] bool is_distributive() const;
    [[nodiscard]] std::optional<std::size_t> complement(std::size_t x) const;
    [[nodiscard]] bool is_complemented(std::size_t x) const {
      return complement(x).has_value();
    }
    // B(L) in increasing index order.
    [[nodiscard]] std::vector<std::size_t> boolean_center() const;
    [[nodiscard]] std::vector<std::size_t> coatoms() const;

    [[nodiscard]] nlohmann::json to_json() const;
    static FiniteLattice         from_json(nlohmann::json const& doc);

    bool operator==(FiniteLattice const& other) const {
      return _k == other._k && _leq == other._leq;
    }

   private:
    std::size_t              _k = 0;
    std::vector<bool>        _leq;
    std::vector<std::size_t> _join;
    std::vector<std::size_t> _meet;
    std::size_t              _bottom = 0;
    std::size_t              _top    = 0;
  };

  // Ideal of a finite lattice as member flags.
  struct LatticeIdeal {
    std::vector<bool> members;

    [[nodiscard]] bool contains(std::size_t x) const {
      return members[x];
    }
    [[nodiscard]] std::size_t count() const;
    bool operator==(LatticeIdeal const&) const = default;
  };

  [[nodiscard]] bool         is_ideal(FiniteLattice const& L, LatticeIdeal const& I);
  [[nodiscard]] LatticeIdeal principal_ideal(FiniteLattice const& L, std::size_t x);
  // Join of the members; every ideal of a finite lattice is principal.
  [[nodiscard]] std::size_t  ideal_generator(FiniteLattice const& L, LatticeIdeal const& I);
  // Smallest ideal containing the given elements.
  [[nodiscard]] LatticeIdeal ideal_generated(FiniteLattice const&            L,
                                             std::vector<std::size_t> const& elements);
  // Every ideal of L, as (x] for x in index order.
  [[nodiscard]] std::vector<LatticeIdeal> all_ideals(FiniteLattice const& L);
  // Proper ideals with x meet y in I implying x or y in I.
  [[nodiscard]] std::vector<LatticeIdeal> prime_ideals(FiniteLattice const& L);
  [[nodiscard]] std::vector<LatticeIdeal> maximal_ideals(FiniteLattice const& L);
  [[nodiscard]] bool                      is_prime_ideal(FiniteLattice const& L, LatticeIdeal const& I);
  // The ideal generated by I meet B(L).
  [[nodiscard]] LatticeIdeal ideal_diamond(FiniteLattice const& L, LatticeIdeal const& I);

  struct IdBlpReport {
    bool holds = true;
    // Complemented classes of L/I as (representative, lift in B(L)).
    std::vector<std::pair<std::size_t, std::size_t>> witnesses;
    // Least representative of a complemented class with no lift.
    std::optional<std::size_t> counterexample;
    // Number of classes of L/I and of complemented ones.
    std::size_t classes       = 0;
    std::size_t center_size   = 0;
  };

  // L/I by x ~ y iff x join i = y join i for some i in I, then checks that
  // every complemented class contains a complemented element of L.
  [[nodiscard]] IdBlpReport has_id_blp(FiniteLattice const& L, LatticeIdeal const& I);

  // Class labels of L/I (least member of each class).
  [[nodiscard]] std::vector<std::size_t> ideal_quotient_classes(FiniteLattice const& L,
                                                                LatticeIdeal const&  I);

}  // namespace conglab

#endif  // CONGLAB_LATTICE_HPP_
