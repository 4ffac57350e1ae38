#ifndef CONGLAB_CONGRUENCE_HPP_
#define CONGLAB_CONGRUENCE_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "algebra.hpp"

namespace conglab {

  // Index of a congruence inside a CongruenceLattice.
  using CongId = std::uint32_t;

  // A partition of {0, ..., n-1} stored as the array mapping each element to
  // the least element of its block. The parent fingerprint ties it to one
  // algebra; lattice operations across different parents throw
  // ParentMismatch.
  class Congruence {
   public:
    Congruence() = default;

    // Accepts any block labelling and normalises it to least representatives.
    static Congruence from_labels(std::uint64_t parent, std::span<Element const> labels);
    // Requires an already-normalised array; throws MalformedDoc otherwise.
    static Congruence from_blocks(std::uint64_t parent, std::vector<Element> blocks);

    static Congruence identity(FiniteAlgebra const& A);
    static Congruence total(FiniteAlgebra const& A);

    [[nodiscard]] std::uint64_t parent() const noexcept {
      return _parent;
    }
    [[nodiscard]] std::size_t universe_size() const noexcept {
      return _blocks.size();
    }
    [[nodiscard]] std::vector<Element> const& blocks() const noexcept {
      return _blocks;
    }
    [[nodiscard]] Element representative(Element a) const {
      return _blocks[a];
    }
    [[nodiscard]] bool related(Element a, Element b) const {
      return _blocks[a] == _blocks[b];
    }
    [[nodiscard]] std::size_t block_count() const;
    [[nodiscard]] bool        is_identity() const;
    [[nodiscard]] bool        is_total() const;

    // this ⊆ other
    [[nodiscard]] bool is_below(Congruence const& other) const;

    bool operator==(Congruence const& other) const {
      return _blocks == other._blocks;
    }
    // Canonical order: lexicographic on the block array.
    bool operator<(Congruence const& other) const {
      return _blocks < other._blocks;
    }

   private:
    std::uint64_t        _parent = 0;
    std::vector<Element> _blocks;
  };

  struct CongruenceHash {
    std::size_t operator()(Congruence const& c) const noexcept;
  };

  Congruence meet(Congruence const& x, Congruence const& y);
  Congruence join(Congruence const& x, Congruence const& y);

  // Exhaustive compatibility test against every basic operation.
  bool is_compatible(FiniteAlgebra const& A, std::span<Element const> blocks);

  // Union-find over the universe that can be closed under the unary
  // polynomial translations of the basic operations. After close() the
  // partition is the congruence generated by every pair merged so far.
  class CongruenceBuilder {
   public:
    explicit CongruenceBuilder(FiniteAlgebra const& A);
    CongruenceBuilder(FiniteAlgebra const& A, Congruence const& start);

    Element find(Element a);
    // Returns true if a and b were in different blocks.
    bool merge(Element a, Element b);
    // Returns true if close() merged anything.
    bool close();

    [[nodiscard]] Congruence result();

   private:
    FiniteAlgebra const*                   _algebra;
    std::vector<Element>                   _parent;
    std::vector<std::pair<Element, Element>> _pending;
  };

  Congruence principal_congruence(FiniteAlgebra const& A, Element a, Element b);
  Congruence generated_congruence(FiniteAlgebra const&                            A,
                                  std::span<std::pair<Element, Element> const> pairs);

  inline constexpr std::size_t default_congruence_cap = 100000;

  // Con(A) in canonical order with order, join and meet available by index.
  class CongruenceLattice {
   public:
    // Throws SizeBudgetExceeded if |Con(A)| exceeds cap.
    static CongruenceLattice compute(FiniteAlgebra const& A,
                                     std::size_t          cap = default_congruence_cap);

    [[nodiscard]] std::size_t size() const noexcept {
      return _elements.size();
    }
    [[nodiscard]] Congruence const& operator[](CongId i) const {
      return _elements[i];
    }
    [[nodiscard]] std::vector<Congruence> const& elements() const noexcept {
      return _elements;
    }
    [[nodiscard]] std::uint64_t parent() const noexcept {
      return _parent;
    }
    [[nodiscard]] CongId bottom() const noexcept {
      return _bottom;
    }
    [[nodiscard]] CongId top() const noexcept {
      return _top;
    }

    [[nodiscard]] std::optional<CongId> find(Congruence const& c) const;
    // Like find(), but throws NotACongruence on a miss.
    [[nodiscard]] CongId index_of(Congruence const& c) const;

    // Tabulated up to table_limit elements, computed on partitions beyond.
    [[nodiscard]] bool   leq(CongId i, CongId j) const;
    [[nodiscard]] CongId join(CongId i, CongId j) const;
    [[nodiscard]] CongId meet(CongId i, CongId j) const;

    static constexpr std::size_t table_limit = 4096;
    [[nodiscard]] CongId join_all(std::span<CongId const> ids) const;
    [[nodiscard]] CongId meet_all(std::span<CongId const> ids) const;

    [[nodiscard]] std::vector<CongId> const& lower_covers(CongId i) const {
      return _lower_covers[i];
    }
    [[nodiscard]] std::vector<CongId> const& upper_covers(CongId i) const {
      return _upper_covers[i];
    }
    [[nodiscard]] bool is_join_irreducible(CongId i) const {
      return _lower_covers[i].size() == 1;
    }
    [[nodiscard]] std::vector<CongId> const& join_irreducibles() const noexcept {
      return _join_irreducibles;
    }
    // A pair generating the congruence when it is principal.
    [[nodiscard]] std::optional<std::pair<Element, Element>> principal_witness(CongId i) const {
      return _witness[i];
    }

    // [theta)_A in canonical order.
    [[nodiscard]] std::vector<CongId> interval_above(CongId theta) const;

   private:
    std::uint64_t                                             _parent = 0;
    std::vector<Congruence>                                   _elements;
    std::unordered_map<Congruence, CongId, CongruenceHash>    _index;
    CongId                                                    _bottom = 0;
    CongId                                                    _top    = 0;
    std::vector<bool>                                         _leq;
    std::vector<CongId>                                       _join;
    std::vector<CongId>                                       _meet;
    std::vector<std::vector<CongId>>                          _lower_covers;
    std::vector<std::vector<CongId>>                          _upper_covers;
    std::vector<CongId>                                       _join_irreducibles;
    std::vector<std::optional<std::pair<Element, Element>>>   _witness;
  };

  inline std::vector<CongId> join_irreducibles(CongruenceLattice const& L) {
    return L.join_irreducibles();
  }

  nlohmann::json serialize_congruence(Congruence const& c);
  // Block array in any labelling; the result is normalised and checked for
  // compatibility with A (NotACongruence).
  Congruence parse_congruence(FiniteAlgebra const& A, nlohmann::json const& doc);

}  // namespace conglab

#endif  // CONGLAB_CONGRUENCE_HPP_
