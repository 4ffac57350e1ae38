#include "conglab/commutator.hpp"

#include <algorithm>
#include <atomic>
#include <thread>
#include <unordered_set>

#include "conglab/error.hpp"

namespace conglab {

  namespace {
    using Matrix = std::uint64_t;

    // Subalgebra of A^4 built by semi-naive closure: when the p-th matrix is
    // processed, only argument tuples over 0..p that contain p are tried.
    class MatrixClosure {
     public:
      MatrixClosure(FiniteAlgebra const& A, std::size_t cap)
          : _A(A), _n(A.size()), _cap(cap) {
        std::size_t const n4 = _n * _n * _n * _n;
        if (n4 <= (std::size_t{1} << 24)) {
          _dense.assign(n4, 0);
        }
      }

      Matrix encode(Element x, Element y, Element z, Element w) const {
        return ((Matrix{x} * _n + y) * _n + z) * _n + w;
      }

      void decode(Matrix m, Element (&out)[4]) const {
        for (int i = 3; i >= 0; --i) {
          out[i] = static_cast<Element>(m % _n);
          m /= _n;
        }
      }

      void add(Matrix m) {
        if (!_dense.empty()) {
          if (_dense[m]) {
            return;
          }
          _dense[m] = 1;
        } else if (!_sparse.insert(m).second) {
          return;
        }
        _items.push_back(m);
        if (_items.size() > _cap) {
          throw Error(ErrorKind::SizeBudgetExceeded,
                      "M(alpha,beta) for '" + _A.name() + "' exceeds "
                          + std::to_string(_cap) + " matrices");
        }
      }

      void add_constants() {
        for (auto const& op : _A.operations()) {
          if (op.arity == 0) {
            Element c = op.table[0];
            add(encode(c, c, c, c));
          }
        }
      }

      // Processes one more matrix; false when the closure is complete.
      bool step() {
        if (_next >= _items.size()) {
          return false;
        }
        std::size_t const p = _next++;
        for (auto const& op : _A.operations()) {
          std::size_t const k = op.arity;
          if (k == 0) {
            continue;
          }
          for (std::size_t first = 0; first < k; ++first) {
            apply_from(op, p, first);
          }
        }
        return true;
      }

      std::vector<Matrix> const& items() const {
        return _items;
      }

     private:
      // Positions before `first` range over 0..p-1, position `first` is p,
      // later positions range over 0..p.
      void apply_from(Operation const& op, std::size_t p, std::size_t first) {
        std::size_t const k = op.arity;
        if (first > 0 && p == 0) {
          return;
        }
        std::vector<std::size_t> idx(k, 0);
        idx[first] = p;
        std::vector<Element> rows[4];
        for (auto& r : rows) {
          r.resize(k);
        }
        Element cells[4];
        while (true) {
          for (std::size_t i = 0; i < k; ++i) {
            decode(_items[idx[i]], cells);
            for (int c = 0; c < 4; ++c) {
              rows[c][i] = cells[c];
            }
          }
          add(encode(op(rows[0], _n), op(rows[1], _n), op(rows[2], _n), op(rows[3], _n)));
          // Odometer over the free positions.
          std::size_t i = k;
          while (i-- > 0) {
            if (i == first) {
              continue;
            }
            std::size_t const limit = i < first ? p : p + 1;
            if (++idx[i] < limit) {
              break;
            }
            idx[i] = 0;
          }
          if (i == static_cast<std::size_t>(-1)) {
            break;
          }
        }
      }

      FiniteAlgebra const&         _A;
      std::size_t                  _n;
      std::size_t                  _cap;
      std::vector<std::uint8_t>    _dense;
      std::unordered_set<Matrix>   _sparse;
      std::vector<Matrix>          _items;
      std::size_t                  _next = 0;
    };

    void add_generators(MatrixClosure&    M,
                        Congruence const& alpha,
                        Congruence const& beta) {
      std::size_t const n = alpha.universe_size();
      for (Element a = 0; a < n; ++a) {
        for (Element b = 0; b < n; ++b) {
          if (alpha.related(a, b)) {
            M.add(M.encode(a, a, b, b));
          }
          if (beta.related(a, b)) {
            M.add(M.encode(a, b, a, b));
          }
        }
      }
      M.add_constants();
    }

    // Least delta satisfying the row term condition in both orientations on
    // the matrices generated so far.
    Congruence term_condition_fixpoint(FiniteAlgebra const&       A,
                                       MatrixClosure const&       M,
                                       std::vector<Matrix> const& items) {
      CongruenceBuilder builder(A);
      bool              changed = true;
      Element           cells[4];
      while (changed) {
        changed = false;
        for (Matrix m : items) {
          M.decode(m, cells);
          auto [x, y, z, w] = cells;
          if (builder.find(x) == builder.find(y)) {
            changed = builder.merge(z, w) || changed;
          }
          if (builder.find(z) == builder.find(w)) {
            changed = builder.merge(x, y) || changed;
          }
        }
        changed = builder.close() || changed;
      }
      return builder.result();
    }

    void require_parent(FiniteAlgebra const& A, Congruence const& c) {
      if (c.parent() != A.fingerprint() || c.universe_size() != A.size()) {
        throw Error(ErrorKind::ParentMismatch, "congruence belongs to another algebra");
      }
    }
  }  // namespace

  Congruence commutator(FiniteAlgebra const& A,
                        Congruence const&    alpha,
                        Congruence const&    beta,
                        std::size_t          matrix_cap) {
    require_parent(A, alpha);
    require_parent(A, beta);
    Congruence const ceiling = meet(alpha, beta);
    if (ceiling.is_identity()) {
      return ceiling;
    }
    MatrixClosure M(A, matrix_cap);
    add_generators(M, alpha, beta);
    // Partial M only ever gives a smaller delta, and the full delta never
    // exceeds alpha meet beta, so reaching the ceiling early is final.
    std::size_t checkpoint = M.items().size();
    while (M.step()) {
      if (M.items().size() >= 2 * checkpoint) {
        checkpoint = M.items().size();
        if (term_condition_fixpoint(A, M, M.items()) == ceiling) {
          return ceiling;
        }
      }
    }
    return term_condition_fixpoint(A, M, M.items());
  }

  std::size_t matrix_subalgebra_size(FiniteAlgebra const& A,
                                     Congruence const&    alpha,
                                     Congruence const&    beta,
                                     std::size_t          matrix_cap) {
    require_parent(A, alpha);
    require_parent(A, beta);
    MatrixClosure M(A, matrix_cap);
    add_generators(M, alpha, beta);
    while (M.step()) {
    }
    return M.items().size();
  }

  std::string SurrogateReport::failing() const {
    if (!modular) {
      return "Con(A) is not modular";
    }
    if (!top_idempotent) {
      return "[top,top] != top";
    }
    if (!top_is_unit) {
      return "[theta,top] != theta for some theta";
    }
    if (!closed_under_commutator) {
      return "Con(A) not closed under the commutator";
    }
    return {};
  }

  ////////////////////////////////////////////////////////////////////////
  // Analysis
  ////////////////////////////////////////////////////////////////////////

  Analysis::Analysis(FiniteAlgebra A, AnalysisOptions const& opts)
      : _algebra(std::move(A)),
        _options(opts),
        _lattice(CongruenceLattice::compute(_algebra, opts.con_cap)) {
    std::size_t const N = _lattice.size();
    _table.assign(N * N, 0);

    std::atomic<std::size_t> next{0};
    std::exception_ptr       failure;
    std::atomic<bool>        failed{false};
    auto                     worker = [&] {
      while (!failed) {
        std::size_t const k = next++;
        if (k >= N * N) {
          return;
        }
        try {
          auto c    = conglab::commutator(_algebra, _lattice[k / N], _lattice[k % N],
                                          _options.matrix_cap);
          _table[k] = _lattice.index_of(c);
        } catch (...) {
          if (!failed.exchange(true)) {
            failure = std::current_exception();
          }
        }
      }
    };
    unsigned const jobs = std::max(1u, std::min<unsigned>(opts.jobs, N * N));
    if (jobs == 1) {
      worker();
    } else {
      std::vector<std::thread> pool;
      for (unsigned j = 0; j < jobs; ++j) {
        pool.emplace_back(worker);
      }
      for (auto& t : pool) {
        t.join();
      }
    }
    if (failure) {
      std::rethrow_exception(failure);
    }

    _iterates.resize(N);
    for (CongId a = 0; a < N; ++a) {
      auto& seq = _iterates[a];
      seq.push_back(a);
      while (true) {
        CongId nxt = commutator(seq.back(), seq.back());
        if (nxt == seq.back()) {
          break;
        }
        seq.push_back(nxt);
      }
    }

    _complement.resize(N);
    for (CongId a = 0; a < N; ++a) {
      auto is_complement = [&](CongId b) {
        return join(a, b) == top() && meet(a, b) == bottom();
      };
      CongId perp = annihilator(a);
      if (is_complement(perp)) {
        _complement[a] = perp;
        continue;
      }
      for (CongId b = 0; b < N; ++b) {
        if (is_complement(b)) {
          _complement[a] = b;
          break;
        }
      }
    }

    for (CongId x = 0; x < N && _surrogates.modular; ++x) {
      for (CongId z = 0; z < N && _surrogates.modular; ++z) {
        if (!leq(x, z)) {
          continue;
        }
        for (CongId y = 0; y < N; ++y) {
          if (join(x, meet(y, z)) != meet(join(x, y), z)) {
            _surrogates.modular = false;
            break;
          }
        }
      }
    }
    _surrogates.top_idempotent = commutator(top(), top()) == top();
    for (CongId t = 0; t < N; ++t) {
      if (commutator(t, top()) != t) {
        _surrogates.top_is_unit = false;
      }
    }
  }

  CongId Analysis::iterate(CongId a, std::size_t k) const {
    auto const& seq = _iterates[a];
    return k < seq.size() ? seq[k] : seq.back();
  }

  std::size_t Analysis::stabilization_index(CongId a) const {
    return _iterates[a].size() - 1;
  }

  CongId Analysis::stable_iterate(CongId a) const {
    return _iterates[a].back();
  }

  CongId Analysis::residuation(CongId a, CongId b) const {
    CongId acc = bottom();
    for (CongId g : _lattice.join_irreducibles()) {
      if (leq(commutator(a, g), b)) {
        acc = join(acc, g);
      }
    }
    return acc;
  }

  void Analysis::require_theory() const {
    if (!_surrogates.passes()) {
      throw Error(ErrorKind::TheoryHypothesisFailed,
                  "'" + _algebra.name() + "': " + _surrogates.failing());
    }
  }

}  // namespace conglab
