#include "conglab/congruence.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_set>

#include "conglab/error.hpp"

namespace conglab {

  namespace {
    void require_same_parent(Congruence const& x, Congruence const& y) {
      if (x.parent() != y.parent() || x.universe_size() != y.universe_size()) {
        throw Error(ErrorKind::ParentMismatch, "congruences belong to different algebras");
      }
    }

    Element uf_find(std::vector<Element>& p, Element a) {
      while (p[a] != a) {
        p[a] = p[p[a]];
        a    = p[a];
      }
      return a;
    }
  }  // namespace

  Congruence Congruence::from_labels(std::uint64_t parent, std::span<Element const> labels) {
    Congruence c;
    c._parent = parent;
    c._blocks.resize(labels.size());
    std::unordered_map<Element, Element> first;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      auto [it, fresh] = first.emplace(labels[i], static_cast<Element>(i));
      c._blocks[i]     = it->second;
    }
    return c;
  }

  Congruence Congruence::from_blocks(std::uint64_t parent, std::vector<Element> blocks) {
    for (std::size_t i = 0; i < blocks.size(); ++i) {
      if (blocks[i] > i || blocks[blocks[i]] != blocks[i]) {
        throw Error(ErrorKind::MalformedDoc,
                    "block array is not normalised at position " + std::to_string(i));
      }
    }
    Congruence c;
    c._parent = parent;
    c._blocks = std::move(blocks);
    return c;
  }

  Congruence Congruence::identity(FiniteAlgebra const& A) {
    std::vector<Element> b(A.size());
    std::iota(b.begin(), b.end(), Element{0});
    return from_blocks(A.fingerprint(), std::move(b));
  }

  Congruence Congruence::total(FiniteAlgebra const& A) {
    return from_blocks(A.fingerprint(), std::vector<Element>(A.size(), 0));
  }

  std::size_t Congruence::block_count() const {
    std::size_t k = 0;
    for (std::size_t i = 0; i < _blocks.size(); ++i) {
      k += _blocks[i] == i;
    }
    return k;
  }

  bool Congruence::is_identity() const {
    return block_count() == _blocks.size();
  }

  bool Congruence::is_total() const {
    return std::all_of(_blocks.begin(), _blocks.end(), [](Element b) { return b == 0; });
  }

  bool Congruence::is_below(Congruence const& other) const {
    require_same_parent(*this, other);
    for (std::size_t i = 0; i < _blocks.size(); ++i) {
      if (other._blocks[i] != other._blocks[_blocks[i]]) {
        return false;
      }
    }
    return true;
  }

  std::size_t CongruenceHash::operator()(Congruence const& c) const noexcept {
    std::size_t h = 1469598103934665603ULL;
    for (Element e : c.blocks()) {
      h = (h ^ e) * 1099511628211ULL;
    }
    return h;
  }

  Congruence meet(Congruence const& x, Congruence const& y) {
    require_same_parent(x, y);
    std::size_t const n = x.universe_size();
    std::vector<Element> labels(n);
    for (std::size_t i = 0; i < n; ++i) {
      labels[i] = static_cast<Element>(x.representative(i) * n + y.representative(i));
    }
    return Congruence::from_labels(x.parent(), labels);
  }

  Congruence join(Congruence const& x, Congruence const& y) {
    require_same_parent(x, y);
    std::vector<Element> p(x.blocks());
    for (std::size_t i = 0; i < p.size(); ++i) {
      Element a = uf_find(p, static_cast<Element>(i));
      Element b = uf_find(p, y.representative(i));
      if (a != b) {
        p[std::max(a, b)] = std::min(a, b);
      }
    }
    for (std::size_t i = 0; i < p.size(); ++i) {
      p[i] = uf_find(p, static_cast<Element>(i));
    }
    return Congruence::from_labels(x.parent(), p);
  }

  bool is_compatible(FiniteAlgebra const& A, std::span<Element const> blocks) {
    std::size_t const n = A.size();
    if (blocks.size() != n) {
      return false;
    }
    // Check each translation on consecutive members of every block.
    std::vector<Element> last(n);
    std::iota(last.begin(), last.end(), Element{0});
    std::vector<std::pair<Element, Element>> links;
    for (std::size_t i = 0; i < n; ++i) {
      Element r = blocks[i];
      if (r != i) {
        links.emplace_back(last[r], static_cast<Element>(i));
        last[r] = static_cast<Element>(i);
      }
    }
    for (auto const& op : A.operations()) {
      std::size_t const k = op.arity;
      if (k == 0) {
        continue;
      }
      std::size_t const        rest = checked_power(n, k - 1);
      std::vector<Element>     args(k);
      std::vector<std::size_t> digits(k - 1);
      for (auto [a, b] : links) {
        for (std::size_t pos = 0; pos < k; ++pos) {
          std::fill(digits.begin(), digits.end(), 0);
          for (std::size_t idx = 0; idx < rest; ++idx) {
            for (std::size_t i = 0, d = 0; i < k; ++i) {
              if (i != pos) {
                args[i] = static_cast<Element>(digits[d++]);
              }
            }
            args[pos]  = a;
            Element fa = op(args, n);
            args[pos]  = b;
            Element fb = op(args, n);
            if (blocks[fa] != blocks[fb]) {
              return false;
            }
            for (std::size_t i = k - 1; i-- > 0;) {
              if (++digits[i] < n) {
                break;
              }
              digits[i] = 0;
            }
          }
        }
      }
    }
    return true;
  }

  ////////////////////////////////////////////////////////////////////////
  // CongruenceBuilder
  ////////////////////////////////////////////////////////////////////////

  CongruenceBuilder::CongruenceBuilder(FiniteAlgebra const& A) : _algebra(&A), _parent(A.size()) {
    std::iota(_parent.begin(), _parent.end(), Element{0});
  }

  CongruenceBuilder::CongruenceBuilder(FiniteAlgebra const& A, Congruence const& start)
      : CongruenceBuilder(A) {
    if (start.parent() != A.fingerprint() || start.universe_size() != A.size()) {
      throw Error(ErrorKind::ParentMismatch, "start congruence belongs to another algebra");
    }
    // start is already compatible, so its generating pairs need no closing.
    for (std::size_t i = 0; i < A.size(); ++i) {
      _parent[i] = start.representative(static_cast<Element>(i));
    }
  }

  Element CongruenceBuilder::find(Element a) {
    return uf_find(_parent, a);
  }

  bool CongruenceBuilder::merge(Element a, Element b) {
    Element ra = find(a), rb = find(b);
    if (ra == rb) {
      return false;
    }
    _parent[std::max(ra, rb)] = std::min(ra, rb);
    _pending.emplace_back(a, b);
    return true;
  }

  bool CongruenceBuilder::close() {
    FiniteAlgebra const& A       = *_algebra;
    std::size_t const    n       = A.size();
    bool                 changed = false;
    std::vector<Element> args;
    std::vector<std::size_t> digits;
    while (!_pending.empty()) {
      auto [a, b] = _pending.back();
      _pending.pop_back();
      for (auto const& op : A.operations()) {
        std::size_t const k = op.arity;
        if (k == 0) {
          continue;
        }
        std::size_t const rest = checked_power(n, k - 1);
        args.assign(k, 0);
        digits.assign(k - 1, 0);
        for (std::size_t pos = 0; pos < k; ++pos) {
          std::fill(digits.begin(), digits.end(), 0);
          for (std::size_t idx = 0; idx < rest; ++idx) {
            for (std::size_t i = 0, d = 0; i < k; ++i) {
              if (i != pos) {
                args[i] = static_cast<Element>(digits[d++]);
              }
            }
            args[pos]  = a;
            Element fa = op(args, n);
            args[pos]  = b;
            Element fb = op(args, n);
            changed    = merge(fa, fb) || changed;
            for (std::size_t i = k - 1; i-- > 0;) {
              if (++digits[i] < n) {
                break;
              }
              digits[i] = 0;
            }
          }
        }
      }
    }
    return changed;
  }

  Congruence CongruenceBuilder::result() {
    close();
    std::vector<Element> labels(_parent.size());
    for (std::size_t i = 0; i < labels.size(); ++i) {
      labels[i] = find(static_cast<Element>(i));
    }
    return Congruence::from_labels(_algebra->fingerprint(), labels);
  }

  Congruence principal_congruence(FiniteAlgebra const& A, Element a, Element b) {
    if (a >= A.size() || b >= A.size()) {
      throw Error(ErrorKind::EntryRange, "element outside the universe");
    }
    CongruenceBuilder builder(A);
    builder.merge(a, b);
    return builder.result();
  }

  Congruence generated_congruence(FiniteAlgebra const&                          A,
                                  std::span<std::pair<Element, Element> const> pairs) {
    CongruenceBuilder builder(A);
    for (auto [a, b] : pairs) {
      if (a >= A.size() || b >= A.size()) {
        throw Error(ErrorKind::EntryRange, "element outside the universe");
      }
      builder.merge(a, b);
    }
    return builder.result();
  }

  ////////////////////////////////////////////////////////////////////////
  // CongruenceLattice
  ////////////////////////////////////////////////////////////////////////

  CongruenceLattice CongruenceLattice::compute(FiniteAlgebra const& A, std::size_t cap) {
    std::size_t const n = A.size();
    CongruenceLattice L;
    L._parent = A.fingerprint();

    std::unordered_map<Congruence, std::pair<Element, Element>, CongruenceHash> principal;
    std::unordered_set<Congruence, CongruenceHash>                            seen;
    std::vector<Congruence>                                                   all;
    auto add = [&](Congruence c) {
      if (seen.insert(c).second) {
        all.push_back(std::move(c));
        if (all.size() > cap) {
          throw Error(ErrorKind::SizeBudgetExceeded,
                      "Con(" + A.name() + ") has more than " + std::to_string(cap)
                          + " elements");
        }
      }
    };
    add(Congruence::identity(A));
    for (Element a = 0; a < n; ++a) {
      for (Element b = a + 1; b < n; ++b) {
        auto c = principal_congruence(A, a, b);
        principal.emplace(c, std::make_pair(a, b));
        add(std::move(c));
      }
    }
    // Join closure: every new element is joined with everything before it.
    std::vector<Congruence> generators(all.begin(), all.end());
    for (std::size_t i = 0; i < all.size(); ++i) {
      for (auto const& g : generators) {
        add(conglab::join(all[i], g));
      }
    }

    std::sort(all.begin(), all.end());
    L._elements = std::move(all);
    std::size_t const N = L._elements.size();
    for (std::size_t i = 0; i < N; ++i) {
      L._index.emplace(L._elements[i], static_cast<CongId>(i));
    }
    L._top    = L._index.at(Congruence::total(A));
    L._bottom = L._index.at(Congruence::identity(A));
    L._witness.resize(N);
    for (auto const& [c, pair] : principal) {
      L._witness[L._index.at(c)] = pair;
    }

    if (N <= table_limit) {
      L._leq.assign(N * N, false);
      L._join.assign(N * N, 0);
      L._meet.assign(N * N, 0);
      for (std::size_t i = 0; i < N; ++i) {
        for (std::size_t j = 0; j < N; ++j) {
          L._leq[i * N + j] = L._elements[i].is_below(L._elements[j]);
        }
      }
      for (std::size_t i = 0; i < N; ++i) {
        for (std::size_t j = i; j < N; ++j) {
          CongId jn = L._index.at(conglab::join(L._elements[i], L._elements[j]));
          CongId mt = L._index.at(conglab::meet(L._elements[i], L._elements[j]));
          L._join[i * N + j] = L._join[j * N + i] = jn;
          L._meet[i * N + j] = L._meet[j * N + i] = mt;
        }
      }
    }

    L._lower_covers.assign(N, {});
    L._upper_covers.assign(N, {});
    for (std::size_t i = 0; i < N; ++i) {
      std::vector<CongId> below;
      for (std::size_t j = 0; j < N; ++j) {
        if (j != i && L.leq(static_cast<CongId>(j), static_cast<CongId>(i))) {
          below.push_back(static_cast<CongId>(j));
        }
      }
      for (CongId j : below) {
        bool maximal = std::none_of(below.begin(), below.end(), [&](CongId k) {
          return k != j && L.leq(j, k);
        });
        if (maximal) {
          L._lower_covers[i].push_back(j);
          L._upper_covers[j].push_back(static_cast<CongId>(i));
        }
      }
    }
    for (std::size_t j = 0; j < N; ++j) {
      std::sort(L._upper_covers[j].begin(), L._upper_covers[j].end());
    }
    for (std::size_t i = 0; i < N; ++i) {
      if (L._lower_covers[i].size() == 1) {
        L._join_irreducibles.push_back(static_cast<CongId>(i));
      }
    }
    return L;
  }

  std::optional<CongId> CongruenceLattice::find(Congruence const& c) const {
    if (c.parent() != _parent) {
      throw Error(ErrorKind::ParentMismatch, "congruence belongs to another algebra");
    }
    auto it = _index.find(c);
    if (it == _index.end()) {
      return std::nullopt;
    }
    return it->second;
  }

  CongId CongruenceLattice::index_of(Congruence const& c) const {
    auto id = find(c);
    if (!id) {
      throw Error(ErrorKind::NotACongruence, "partition is not in Con(A)");
    }
    return *id;
  }

  bool CongruenceLattice::leq(CongId i, CongId j) const {
    if (!_leq.empty()) {
      return _leq[i * size() + j];
    }
    return _elements[i].is_below(_elements[j]);
  }

  CongId CongruenceLattice::join(CongId i, CongId j) const {
    if (!_join.empty()) {
      return _join[i * size() + j];
    }
    return _index.at(conglab::join(_elements[i], _elements[j]));
  }

  CongId CongruenceLattice::meet(CongId i, CongId j) const {
    if (!_meet.empty()) {
      return _meet[i * size() + j];
    }
    return _index.at(conglab::meet(_elements[i], _elements[j]));
  }

  CongId CongruenceLattice::join_all(std::span<CongId const> ids) const {
    CongId acc = _bottom;
    for (CongId i : ids) {
      acc = join(acc, i);
    }
    return acc;
  }

  CongId CongruenceLattice::meet_all(std::span<CongId const> ids) const {
    CongId acc = _top;
    for (CongId i : ids) {
      acc = meet(acc, i);
    }
    return acc;
  }

  std::vector<CongId> CongruenceLattice::interval_above(CongId theta) const {
    std::vector<CongId> out;
    for (CongId i = 0; i < size(); ++i) {
      if (leq(theta, i)) {
        out.push_back(i);
      }
    }
    return out;
  }

  nlohmann::json serialize_congruence(Congruence const& c) {
    return c.blocks();
  }

  Congruence parse_congruence(FiniteAlgebra const& A, nlohmann::json const& doc) {
    if (!doc.is_array() || doc.size() != A.size()) {
      throw Error(ErrorKind::MalformedDoc,
                  "congruence must be an array of " + std::to_string(A.size()) + " labels");
    }
    std::vector<Element> labels;
    labels.reserve(doc.size());
    for (auto const& e : doc) {
      if (!e.is_number_integer() || e.get<std::int64_t>() < 0) {
        throw Error(ErrorKind::MalformedDoc, "block labels must be non-negative integers");
      }
      labels.push_back(static_cast<Element>(e.get<std::int64_t>()));
    }
    auto c = Congruence::from_labels(A.fingerprint(), labels);
    if (!is_compatible(A, c.blocks())) {
      throw Error(ErrorKind::NotACongruence,
                  "partition " + doc.dump() + " is not compatible with '" + A.name() + "'");
    }
    return c;
  }

}  // namespace conglab
