#ifndef CONGLAB_ALGEBRA_HPP_
#define CONGLAB_ALGEBRA_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

namespace conglab {

  using Element = std::uint32_t;

  class Congruence;

  // A basic operation given by its full table. Tables are row-major with the
  // last argument varying fastest, so f(a0,...,ak-1) lives at
  // ((a0*n + a1)*n + ...)*n + ak-1.
  struct Operation {
    std::string          name;
    std::size_t          arity = 0;
    std::vector<Element> table;

    [[nodiscard]] Element operator()(std::span<Element const> args,
                                     std::size_t n) const {
      std::size_t idx = 0;
      for (Element a : args) {
        idx = idx * n + a;
      }
      return table[idx];
    }

    bool operator==(Operation const&) const = default;
  };

  // Finite algebra on the universe {0, ..., n-1}. Immutable once built; the
  // constructor validates every table.
  class FiniteAlgebra {
   public:
    FiniteAlgebra(std::string name, std::size_t size, std::vector<Operation> ops);

    [[nodiscard]] std::string const& name() const noexcept {
      return _name;
    }
    [[nodiscard]] std::size_t size() const noexcept {
      return _size;
    }
    [[nodiscard]] std::vector<Operation> const& operations() const noexcept {
      return _ops;
    }
    [[nodiscard]] Operation const* operation(std::string_view name) const;

    // Hash of universe size and operation tables; used to tag congruences
    // with their parent algebra.
    [[nodiscard]] std::uint64_t fingerprint() const noexcept {
      return _fingerprint;
    }

    [[nodiscard]] bool same_signature(FiniteAlgebra const& other) const;

    bool operator==(FiniteAlgebra const& other) const {
      return _size == other._size && _ops == other._ops;
    }

   private:
    std::string            _name;
    std::size_t            _size;
    std::vector<Operation> _ops;
    std::uint64_t          _fingerprint;
  };

  // n^k with overflow guard (throws SizeBudgetExceeded).
  std::size_t checked_power(std::size_t n, std::size_t k);

  ////////////////////////////////////////////////////////////////////////
  // Documents
  ////////////////////////////////////////////////////////////////////////

  FiniteAlgebra  parse_algebra(nlohmann::json const& doc);
  FiniteAlgebra  parse_algebra_text(std::string const& text);
  FiniteAlgebra  load_algebra(std::string const& path);
  nlohmann::json serialize_algebra(FiniteAlgebra const& A);

  ////////////////////////////////////////////////////////////////////////
  // Constructions
  ////////////////////////////////////////////////////////////////////////

  // Blocks of theta indexed by increasing least representative.
  FiniteAlgebra quotient(FiniteAlgebra const& A, Congruence const& theta);

  // The canonical surjection A -> A/theta as an element map.
  std::vector<Element> quotient_map(Congruence const& theta);

  // (a, b) is flattened to a * |B| + b.
  FiniteAlgebra product(FiniteAlgebra const& A, FiniteAlgebra const& B);

  // Brute-force backtracking search for an isomorphism A -> B matching
  // operations by name. Returns the element map if one exists.
  std::optional<std::vector<Element>> find_isomorphism(FiniteAlgebra const& A,
                                                       FiniteAlgebra const& B);

  // True iff f is a homomorphism A -> B (operations matched by name).
  bool is_homomorphism(FiniteAlgebra const&        A,
                       FiniteAlgebra const&        B,
                       std::vector<Element> const& f);

  ////////////////////////////////////////////////////////////////////////
  // Builders
  ////////////////////////////////////////////////////////////////////////

  namespace builders {
    // Z_n with (+, -, *, 0, 1).
    FiniteAlgebra ring_zn(std::size_t n);
    // k-element chain with (join, meet, 0, 1).
    FiniteAlgebra chain_lattice(std::size_t k);
    // Boolean lattice with the given number of atoms.
    FiniteAlgebra boolean_lattice(std::size_t atoms);
    // Lukasiewicz chain with k elements and (oplus, neg, 0).
    FiniteAlgebra mv_chain(std::size_t k);
    // Bounded lattice from its covering pairs (lower, upper).
    FiniteAlgebra lattice_from_order(
        std::string                                       name,
        std::size_t                                       size,
        std::vector<std::pair<Element, Element>> const& covers);

    FiniteAlgebra pentagon();
    FiniteAlgebra diamond();
    // {0 < x < a, b < 1} with a meet b = x.
    FiniteAlgebra two_squared_with_new_bottom();
    // Two-element set whose only operation is the constant 0.
    FiniteAlgebra pointed_set();
    FiniteAlgebra trivial();

    // The bundled corpus; every member has at most 16 elements.
    std::vector<FiniteAlgebra> corpus();
  }  // namespace builders

}  // namespace conglab

#endif  // CONGLAB_ALGEBRA_HPP_
