#include "conglab/algebra.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_set>

#include "conglab/congruence.hpp"
#include "conglab/error.hpp"

namespace conglab {

  std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
      case ErrorKind::MalformedDoc: return "MalformedDoc";
      case ErrorKind::TableShape: return "TableShape";
      case ErrorKind::EntryRange: return "EntryRange";
      case ErrorKind::NotACongruence: return "NotACongruence";
      case ErrorKind::SignatureMismatch: return "SignatureMismatch";
      case ErrorKind::NotALattice: return "NotALattice";
      case ErrorKind::SizeBudgetExceeded: return "SizeBudgetExceeded";
      case ErrorKind::ParentMismatch: return "ParentMismatch";
      case ErrorKind::TheoryHypothesisFailed: return "TheoryHypothesisFailed";
      case ErrorKind::HypothesisNotMet: return "HypothesisNotMet";
      case ErrorKind::NotOrthogonal: return "NotOrthogonal";
      case ErrorKind::NoCBLP: return "NoCBLP";
    }
    return "Unknown";
  }

  std::size_t checked_power(std::size_t n, std::size_t k) {
    std::size_t result = 1;
    for (std::size_t i = 0; i < k; ++i) {
      if (n != 0 && result > std::numeric_limits<std::uint32_t>::max() / n) {
        throw Error(ErrorKind::SizeBudgetExceeded,
                    "table of size " + std::to_string(n) + "^" + std::to_string(k)
                        + " is too large");
      }
      result *= n;
    }
    return result;
  }

  namespace {
    std::uint64_t fnv1a(std::uint64_t h, std::uint64_t v) {
      for (int i = 0; i < 8; ++i) {
        h ^= (v >> (8 * i)) & 0xff;
        h *= 0x100000001b3ULL;
      }
      return h;
    }
  }  // namespace

  FiniteAlgebra::FiniteAlgebra(std::string name, std::size_t size, std::vector<Operation> ops)
      : _name(std::move(name)), _size(size), _ops(std::move(ops)), _fingerprint(0) {
    if (_size == 0) {
      throw Error(ErrorKind::MalformedDoc, "algebra size must be at least 1");
    }
    std::set<std::string> names;
    for (auto const& op : _ops) {
      if (!names.insert(op.name).second) {
        throw Error(ErrorKind::MalformedDoc, "duplicate operation name '" + op.name + "'");
      }
      std::size_t expected = checked_power(_size, op.arity);
      if (op.table.size() != expected) {
        throw Error(ErrorKind::TableShape,
                    "operation '" + op.name + "' of arity " + std::to_string(op.arity)
                        + " needs " + std::to_string(expected) + " entries, got "
                        + std::to_string(op.table.size()));
      }
      for (std::size_t i = 0; i < op.table.size(); ++i) {
        if (op.table[i] >= _size) {
          throw Error(ErrorKind::EntryRange,
                      "operation '" + op.name + "' entry " + std::to_string(i) + " = "
                          + std::to_string(op.table[i]) + " is outside 0.."
                          + std::to_string(_size - 1));
        }
      }
    }
    std::uint64_t h = 0xcbf29ce484222325ULL;
    h               = fnv1a(h, _size);
    for (auto const& op : _ops) {
      for (char c : op.name) {
        h = fnv1a(h, static_cast<unsigned char>(c));
      }
      h = fnv1a(h, op.arity);
      for (Element e : op.table) {
        h = fnv1a(h, e);
      }
    }
    _fingerprint = h;
  }

  Operation const* FiniteAlgebra::operation(std::string_view name) const {
    auto it = std::find_if(
        _ops.begin(), _ops.end(), [&](Operation const& op) { return op.name == name; });
    return it == _ops.end() ? nullptr : &*it;
  }

  bool FiniteAlgebra::same_signature(FiniteAlgebra const& other) const {
    if (_ops.size() != other._ops.size()) {
      return false;
    }
    return std::all_of(_ops.begin(), _ops.end(), [&](Operation const& op) {
      auto const* o = other.operation(op.name);
      return o != nullptr && o->arity == op.arity;
    });
  }

  ////////////////////////////////////////////////////////////////////////
  // Documents
  ////////////////////////////////////////////////////////////////////////

  FiniteAlgebra parse_algebra(nlohmann::json const& doc) {
    auto fail = [](std::string const& what) {
      throw Error(ErrorKind::MalformedDoc, what);
    };
    if (!doc.is_object()) {
      fail("algebra document must be a JSON object");
    }
    if (!doc.contains("size") || !doc["size"].is_number_integer()) {
      fail("missing integer field 'size'");
    }
    if (!doc.contains("operations") || !doc["operations"].is_array()) {
      fail("missing array field 'operations'");
    }
    std::string name;
    if (doc.contains("name")) {
      if (!doc["name"].is_string()) {
        fail("field 'name' must be a string");
      }
      name = doc["name"].get<std::string>();
    }
    auto size = doc["size"].get<std::int64_t>();
    if (size < 1) {
      fail("field 'size' must be positive");
    }
    std::vector<Operation> ops;
    for (auto const& o : doc["operations"]) {
      if (!o.is_object() || !o.contains("name") || !o["name"].is_string()
          || !o.contains("arity") || !o["arity"].is_number_integer()
          || !o.contains("table") || !o["table"].is_array()) {
        fail("each operation needs 'name' (string), 'arity' (int) and 'table' (array)");
      }
      auto arity = o["arity"].get<std::int64_t>();
      if (arity < 0) {
        fail("operation arity must be non-negative");
      }
      Operation op;
      op.name  = o["name"].get<std::string>();
      op.arity = static_cast<std::size_t>(arity);
      op.table.reserve(o["table"].size());
      for (auto const& e : o["table"]) {
        if (!e.is_number_integer()) {
          fail("table entries of '" + op.name + "' must be integers");
        }
        auto v = e.get<std::int64_t>();
        if (v < 0 || v >= size) {
          throw Error(ErrorKind::EntryRange,
                      "operation '" + op.name + "' has entry " + std::to_string(v)
                          + " outside 0.." + std::to_string(size - 1));
        }
        op.table.push_back(static_cast<Element>(v));
      }
      ops.push_back(std::move(op));
    }
    return FiniteAlgebra(std::move(name), static_cast<std::size_t>(size), std::move(ops));
  }

  FiniteAlgebra parse_algebra_text(std::string const& text) {
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(text);
    } catch (nlohmann::json::parse_error const& e) {
      throw Error(ErrorKind::MalformedDoc, e.what());
    }
    return parse_algebra(doc);
  }

  FiniteAlgebra load_algebra(std::string const& path) {
    std::ifstream in(path);
    if (!in) {
      throw Error(ErrorKind::MalformedDoc, "cannot read '" + path + "'");
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_algebra_text(ss.str());
  }

  nlohmann::json serialize_algebra(FiniteAlgebra const& A) {
    nlohmann::json ops = nlohmann::json::array();
    for (auto const& op : A.operations()) {
      ops.push_back({{"name", op.name}, {"arity", op.arity}, {"table", op.table}});
    }
    return {{"name", A.name()}, {"size", A.size()}, {"operations", std::move(ops)}};
  }

  ////////////////////////////////////////////////////////////////////////
  // Constructions
  ////////////////////////////////////////////////////////////////////////

  std::vector<Element> quotient_map(Congruence const& theta) {
    auto const&          blocks = theta.blocks();
    std::vector<Element> index(blocks.size(), 0);
    Element              next = 0;
    for (std::size_t a = 0; a < blocks.size(); ++a) {
      if (blocks[a] == a) {
        index[a] = next++;
      }
    }
    std::vector<Element> map(blocks.size());
    for (std::size_t a = 0; a < blocks.size(); ++a) {
      map[a] = index[blocks[a]];
    }
    return map;
  }

  FiniteAlgebra quotient(FiniteAlgebra const& A, Congruence const& theta) {
    if (theta.universe_size() != A.size() || !is_compatible(A, theta.blocks())) {
      throw Error(ErrorKind::NotACongruence,
                  "partition is not a congruence of '" + A.name() + "'");
    }
    auto                 proj = quotient_map(theta);
    std::vector<Element> reps;
    for (Element a = 0; a < A.size(); ++a) {
      if (theta.representative(a) == a) {
        reps.push_back(a);
      }
    }
    std::size_t const      m = reps.size();
    std::vector<Operation> ops;
    std::vector<Element>   args;
    for (auto const& op : A.operations()) {
      Operation q{op.name, op.arity, {}};
      std::size_t const total = checked_power(m, op.arity);
      q.table.resize(total);
      args.assign(op.arity, 0);
      std::vector<std::size_t> digits(op.arity, 0);
      for (std::size_t idx = 0; idx < total; ++idx) {
        for (std::size_t i = 0; i < op.arity; ++i) {
          args[i] = reps[digits[i]];
        }
        q.table[idx] = proj[op(args, A.size())];
        for (std::size_t i = op.arity; i-- > 0;) {
          if (++digits[i] < m) {
            break;
          }
          digits[i] = 0;
        }
      }
      ops.push_back(std::move(q));
    }
    return FiniteAlgebra(A.name() + "/theta", m, std::move(ops));
  }

  FiniteAlgebra product(FiniteAlgebra const& A, FiniteAlgebra const& B) {
    if (!A.same_signature(B)) {
      throw Error(ErrorKind::SignatureMismatch,
                  "'" + A.name() + "' and '" + B.name() + "' have different signatures");
    }
    std::size_t const      nb = B.size();
    std::size_t const      n  = A.size() * nb;
    std::vector<Operation> ops;
    for (auto const& opA : A.operations()) {
      auto const&       opB   = *B.operation(opA.name);
      std::size_t const k     = opA.arity;
      std::size_t const total = checked_power(n, k);
      Operation         op{opA.name, k, std::vector<Element>(total)};
      std::vector<Element>     xa(k), xb(k);
      std::vector<std::size_t> digits(k, 0);
      for (std::size_t idx = 0; idx < total; ++idx) {
        for (std::size_t i = 0; i < k; ++i) {
          xa[i] = static_cast<Element>(digits[i] / nb);
          xb[i] = static_cast<Element>(digits[i] % nb);
        }
        op.table[idx] = static_cast<Element>(opA(xa, A.size()) * nb + opB(xb, nb));
        for (std::size_t i = k; i-- > 0;) {
          if (++digits[i] < n) {
            break;
          }
          digits[i] = 0;
        }
      }
      ops.push_back(std::move(op));
    }
    return FiniteAlgebra(A.name() + "x" + B.name(), n, std::move(ops));
  }

  bool is_homomorphism(FiniteAlgebra const&        A,
                       FiniteAlgebra const&        B,
                       std::vector<Element> const& f) {
    if (f.size() != A.size() || !A.same_signature(B)) {
      return false;
    }
    for (auto const& op : A.operations()) {
      auto const&              opB   = *B.operation(op.name);
      std::size_t const        total = op.table.size();
      std::vector<Element>     args(op.arity), image(op.arity);
      std::vector<std::size_t> digits(op.arity, 0);
      for (std::size_t idx = 0; idx < total; ++idx) {
        for (std::size_t i = 0; i < op.arity; ++i) {
          args[i]  = static_cast<Element>(digits[i]);
          image[i] = f[args[i]];
        }
        if (f[op(args, A.size())] != opB(image, B.size())) {
          return false;
        }
        for (std::size_t i = op.arity; i-- > 0;) {
          if (++digits[i] < A.size()) {
            break;
          }
          digits[i] = 0;
        }
      }
    }
    return true;
  }

  namespace {
    constexpr Element unassigned = std::numeric_limits<Element>::max();

    class IsoSearch {
     public:
      IsoSearch(FiniteAlgebra const& A, FiniteAlgebra const& B)
          : _A(A), _B(B), _map(A.size(), unassigned), _used(B.size(), false) {
        for (auto const& op : A.operations()) {
          _pairs.emplace_back(&op, B.operation(op.name));
        }
      }

      bool run() {
        return propagate_and_recurse();
      }

      std::vector<Element> const& map() const {
        return _map;
      }

     private:
      bool assign(Element a, Element b, std::vector<Element>& trail) {
        if (_map[a] != unassigned) {
          return _map[a] == b;
        }
        if (_used[b]) {
          return false;
        }
        _map[a]  = b;
        _used[b] = true;
        trail.push_back(a);
        return true;
      }

      void undo(std::vector<Element> const& trail) {
        for (Element a : trail) {
          _used[_map[a]] = false;
          _map[a]        = unassigned;
        }
      }

      // Forces images of operation results whose arguments are all mapped.
      bool propagate(std::vector<Element>& trail) {
        bool changed = true;
        while (changed) {
          changed = false;
          for (auto [opA, opB] : _pairs) {
            std::size_t const        k     = opA->arity;
            std::size_t const        total = opA->table.size();
            std::vector<Element>     args(k), image(k);
            std::vector<std::size_t> digits(k, 0);
            for (std::size_t idx = 0; idx < total; ++idx) {
              bool ready = true;
              for (std::size_t i = 0; i < k; ++i) {
                args[i]  = static_cast<Element>(digits[i]);
                image[i] = _map[args[i]];
                if (image[i] == unassigned) {
                  ready = false;
                }
              }
              if (ready) {
                Element a      = opA->table[idx];
                Element b      = (*opB)(image, _B.size());
                bool    before = _map[a] == unassigned;
                if (!assign(a, b, trail)) {
                  return false;
                }
                changed = changed || before;
              }
              for (std::size_t i = k; i-- > 0;) {
                if (++digits[i] < _A.size()) {
                  break;
                }
                digits[i] = 0;
              }
            }
          }
        }
        return true;
      }

      bool propagate_and_recurse() {
        std::vector<Element> trail;
        if (!propagate(trail)) {
          undo(trail);
          return false;
        }
        auto it = std::find(_map.begin(), _map.end(), unassigned);
        if (it == _map.end()) {
          return true;
        }
        auto a = static_cast<Element>(it - _map.begin());
        for (Element b = 0; b < _B.size(); ++b) {
          if (_used[b]) {
            continue;
          }
          std::vector<Element> local;
          assign(a, b, local);
          if (propagate_and_recurse()) {
            return true;
          }
          undo(local);
        }
        undo(trail);
        return false;
      }

      FiniteAlgebra const&                                 _A;
      FiniteAlgebra const&                                 _B;
      std::vector<Element>                                 _map;
      std::vector<bool>                                    _used;
      std::vector<std::pair<Operation const*, Operation const*>> _pairs;
    };
  }  // namespace

  std::optional<std::vector<Element>> find_isomorphism(FiniteAlgebra const& A,
                                                       FiniteAlgebra const& B) {
    if (A.size() != B.size() || !A.same_signature(B)) {
      return std::nullopt;
    }
    IsoSearch search(A, B);
    if (!search.run()) {
      return std::nullopt;
    }
    return search.map();
  }

  ////////////////////////////////////////////////////////////////////////
  // Builders
  ////////////////////////////////////////////////////////////////////////

  namespace builders {
    namespace {
      Operation binary(std::string name, std::size_t n, auto&& f) {
        Operation op{std::move(name), 2, std::vector<Element>(n * n)};
        for (std::size_t x = 0; x < n; ++x) {
          for (std::size_t y = 0; y < n; ++y) {
            op.table[x * n + y] = static_cast<Element>(f(x, y));
          }
        }
        return op;
      }

      Operation unary(std::string name, std::size_t n, auto&& f) {
        Operation op{std::move(name), 1, std::vector<Element>(n)};
        for (std::size_t x = 0; x < n; ++x) {
          op.table[x] = static_cast<Element>(f(x));
        }
        return op;
      }

      Operation constant(std::string name, Element c) {
        return Operation{std::move(name), 0, {c}};
      }

      void require_positive(std::size_t k, char const* what) {
        if (k == 0) {
          throw Error(ErrorKind::MalformedDoc, std::string(what) + " needs a positive size");
        }
      }
    }  // namespace

    FiniteAlgebra ring_zn(std::size_t n) {
      require_positive(n, "ring_zn");
      std::vector<Operation> ops;
      ops.push_back(binary("+", n, [n](auto x, auto y) { return (x + y) % n; }));
      ops.push_back(unary("-", n, [n](auto x) { return (n - x) % n; }));
      ops.push_back(binary("*", n, [n](auto x, auto y) { return (x * y) % n; }));
      ops.push_back(constant("0", 0));
      ops.push_back(constant("1", static_cast<Element>(1 % n)));
      return FiniteAlgebra("Z" + std::to_string(n), n, std::move(ops));
    }

    FiniteAlgebra chain_lattice(std::size_t k) {
      require_positive(k, "chain_lattice");
      std::vector<Operation> ops;
      ops.push_back(binary("join", k, [](auto x, auto y) { return std::max(x, y); }));
      ops.push_back(binary("meet", k, [](auto x, auto y) { return std::min(x, y); }));
      ops.push_back(constant("0", 0));
      ops.push_back(constant("1", static_cast<Element>(k - 1)));
      return FiniteAlgebra("C" + std::to_string(k), k, std::move(ops));
    }

    FiniteAlgebra boolean_lattice(std::size_t atoms) {
      if (atoms > 4) {
        throw Error(ErrorKind::SizeBudgetExceeded, "boolean_lattice is capped at 4 atoms");
      }
      std::size_t const      n = std::size_t{1} << atoms;
      std::vector<Operation> ops;
      ops.push_back(binary("join", n, [](auto x, auto y) { return x | y; }));
      ops.push_back(binary("meet", n, [](auto x, auto y) { return x & y; }));
      ops.push_back(constant("0", 0));
      ops.push_back(constant("1", static_cast<Element>(n - 1)));
      return FiniteAlgebra("B" + std::to_string(atoms), n, std::move(ops));
    }

    FiniteAlgebra mv_chain(std::size_t k) {
      require_positive(k, "mv_chain");
      std::vector<Operation> ops;
      ops.push_back(binary("oplus", k, [k](auto x, auto y) { return std::min(x + y, k - 1); }));
      ops.push_back(unary("neg", k, [k](auto x) { return k - 1 - x; }));
      ops.push_back(constant("0", 0));
      return FiniteAlgebra("L" + std::to_string(k), k, std::move(ops));
    }

    FiniteAlgebra lattice_from_order(std::string                                       name,
                                     std::size_t                                       size,
                                     std::vector<std::pair<Element, Element>> const& covers) {
      require_positive(size, "lattice_from_order");
      std::size_t const n = size;
      std::vector<bool> leq(n * n, false);
      for (std::size_t i = 0; i < n; ++i) {
        leq[i * n + i] = true;
      }
      for (auto [lo, hi] : covers) {
        if (lo >= n || hi >= n) {
          throw Error(ErrorKind::NotALattice, "cover mentions an element outside the universe");
        }
        leq[lo * n + hi] = true;
      }
      for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
          if (!leq[i * n + k]) {
            continue;
          }
          for (std::size_t j = 0; j < n; ++j) {
            if (leq[k * n + j]) {
              leq[i * n + j] = true;
            }
          }
        }
      }
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          if (i != j && leq[i * n + j] && leq[j * n + i]) {
            throw Error(ErrorKind::NotALattice, "covers contain a cycle");
          }
        }
      }
      auto bound = [&](std::size_t x, std::size_t y, bool upper) -> Element {
        std::optional<std::size_t> best;
        for (std::size_t z = 0; z < n; ++z) {
          bool is_bound = upper ? (leq[x * n + z] && leq[y * n + z])
                                : (leq[z * n + x] && leq[z * n + y]);
          if (!is_bound) {
            continue;
          }
          if (!best || (upper ? leq[z * n + *best] : leq[*best * n + z])) {
            best = z;
          }
        }
        if (!best) {
          throw Error(ErrorKind::NotALattice, "a pair has no common bound");
        }
        for (std::size_t z = 0; z < n; ++z) {
          bool is_bound = upper ? (leq[x * n + z] && leq[y * n + z])
                                : (leq[z * n + x] && leq[z * n + y]);
          if (is_bound && !(upper ? leq[*best * n + z] : leq[z * n + *best])) {
            throw Error(ErrorKind::NotALattice,
                        "elements " + std::to_string(x) + " and " + std::to_string(y)
                            + " have no " + (upper ? "least upper" : "greatest lower")
                            + " bound");
          }
        }
        return static_cast<Element>(*best);
      };
      std::vector<Operation> ops;
      ops.push_back(binary("join", n, [&](auto x, auto y) { return bound(x, y, true); }));
      ops.push_back(binary("meet", n, [&](auto x, auto y) { return bound(x, y, false); }));
      Element bottom = 0, top = 0;
      for (std::size_t z = 0; z < n; ++z) {
        bool is_bottom = true, is_top = true;
        for (std::size_t w = 0; w < n; ++w) {
          is_bottom = is_bottom && leq[z * n + w];
          is_top    = is_top && leq[w * n + z];
        }
        if (is_bottom) {
          bottom = static_cast<Element>(z);
        }
        if (is_top) {
          top = static_cast<Element>(z);
        }
      }
      ops.push_back(constant("0", bottom));
      ops.push_back(constant("1", top));
      return FiniteAlgebra(std::move(name), n, std::move(ops));
    }

    FiniteAlgebra pentagon() {
      // 0 < a < b < 1, 0 < c < 1
      return lattice_from_order("N5", 5, {{0, 1}, {1, 2}, {2, 4}, {0, 3}, {3, 4}});
    }

    FiniteAlgebra diamond() {
      return lattice_from_order("M3", 5, {{0, 1}, {0, 2}, {0, 3}, {1, 4}, {2, 4}, {3, 4}});
    }

    FiniteAlgebra two_squared_with_new_bottom() {
      // 0 < x < a, b < 1
      return lattice_from_order("D5", 5, {{0, 1}, {1, 2}, {1, 3}, {2, 4}, {3, 4}});
    }

    FiniteAlgebra pointed_set() {
      return FiniteAlgebra("pointed2", 2, {constant("0", 0)});
    }

    FiniteAlgebra trivial() {
      auto A = ring_zn(1);
      return FiniteAlgebra("trivial", 1, A.operations());
    }

    std::vector<FiniteAlgebra> corpus() {
      std::vector<FiniteAlgebra> out;
      out.push_back(trivial());
      for (std::size_t n : {2, 3, 4, 6, 8, 9, 12, 16}) {
        out.push_back(ring_zn(n));
      }
      out.push_back(product(ring_zn(2), ring_zn(2)));
      out.push_back(product(ring_zn(2), ring_zn(4)));
      out.push_back(product(product(ring_zn(2), ring_zn(2)), ring_zn(2)));
      out.push_back(product(ring_zn(2), ring_zn(6)));
      for (std::size_t k : {2, 3, 5, 7}) {
        out.push_back(chain_lattice(k));
      }
      out.push_back(boolean_lattice(3));
      out.push_back(pentagon());
      out.push_back(diamond());
      out.push_back(two_squared_with_new_bottom());
      out.push_back(product(chain_lattice(2), chain_lattice(3)));
      for (std::size_t k : {2, 3, 5}) {
        out.push_back(mv_chain(k));
      }
      out.push_back(product(mv_chain(3), mv_chain(2)));
      return out;
    }
  }  // namespace builders

}  // namespace conglab
