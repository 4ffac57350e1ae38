// Shared fixtures and brute-force oracles for the test suites. Nothing here
// calls into the library's own enumeration code.
#ifndef CONGLAB_TESTS_SUPPORT_HPP_
#define CONGLAB_TESTS_SUPPORT_HPP_

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "conglab/algebra.hpp"
#include "conglab/commutator.hpp"
#include "conglab/congruence.hpp"

namespace testing {

  using conglab::CongId;
  using conglab::Congruence;
  using conglab::Element;
  using conglab::FiniteAlgebra;

  inline Congruence from_labels(FiniteAlgebra const& A, std::vector<Element> const& labels) {
    return Congruence::from_labels(A.fingerprint(), labels);
  }

  // x ~ y iff x = y mod d, on Z_n.
  inline Congruence mod(FiniteAlgebra const& A, std::size_t d) {
    std::vector<Element> labels(A.size());
    for (std::size_t x = 0; x < A.size(); ++x) {
      labels[x] = static_cast<Element>(x % d);
    }
    return from_labels(A, labels);
  }

  inline CongId mod_id(conglab::Analysis const& an, std::size_t d) {
    return an.id(mod(an.algebra(), d));
  }

  // Z_m x Z_n flattened as a*n + b; componentwise moduli d | m, e | n.
  inline Congruence mod2(FiniteAlgebra const& A, std::size_t n, std::size_t d, std::size_t e) {
    std::vector<Element> labels(A.size());
    for (std::size_t x = 0; x < A.size(); ++x) {
      labels[x] = static_cast<Element>((x / n) % d * n + (x % n) % e);
    }
    return from_labels(A, labels);
  }

  inline std::vector<std::size_t> divisors(std::size_t n) {
    std::vector<std::size_t> out;
    for (std::size_t d = 1; d <= n; ++d) {
      if (n % d == 0) {
        out.push_back(d);
      }
    }
    return out;
  }

  inline std::size_t idempotent_count(std::size_t n) {
    std::size_t c = 0;
    for (std::size_t e = 0; e < n; ++e) {
      c += (e * e) % n == e % n;
    }
    return c;
  }

  // Every idempotent of Z_d is the residue of an idempotent of Z_n.
  inline bool idempotents_lift(std::size_t n, std::size_t d) {
    for (std::size_t f = 0; f < d; ++f) {
      if ((f * f) % d != f % d) {
        continue;
      }
      bool found = false;
      for (std::size_t e = 0; e < n && !found; ++e) {
        found = (e * e) % n == e % n && e % d == f % d;
      }
      if (!found) {
        return false;
      }
    }
    return true;
  }

  // Compatibility by changing one argument at a time.
  inline bool compatible(FiniteAlgebra const& A, std::vector<Element> const& labels) {
    std::size_t const n = A.size();
    for (auto const& op : A.operations()) {
      std::size_t const k = op.arity;
      std::size_t       tuples = 1;
      for (std::size_t i = 0; i < k; ++i) {
        tuples *= n;
      }
      std::vector<Element> args(k), moved(k);
      for (std::size_t t = 0; t < tuples; ++t) {
        std::size_t r = t;
        for (std::size_t i = k; i-- > 0;) {
          args[i] = static_cast<Element>(r % n);
          r /= n;
        }
        for (std::size_t pos = 0; pos < k; ++pos) {
          for (Element b = 0; b < n; ++b) {
            if (labels[b] != labels[args[pos]]) {
              continue;
            }
            moved      = args;
            moved[pos] = b;
            if (labels[op(args, n)] != labels[op(moved, n)]) {
              return false;
            }
          }
        }
      }
    }
    return true;
  }

  // All compatible partitions via restricted growth strings, as normalised
  // block arrays in lexicographic order.
  inline std::vector<std::vector<Element>> brute_force_congruences(FiniteAlgebra const& A) {
    std::size_t const                 n = A.size();
    std::vector<std::vector<Element>> out;
    std::vector<Element>              rgs(n, 0);
    auto const                        emit = [&] {
      std::vector<Element> blocks(n);
      std::vector<Element> first(n, static_cast<Element>(n));
      for (Element x = 0; x < n; ++x) {
        if (first[rgs[x]] == n) {
          first[rgs[x]] = x;
        }
        blocks[x] = first[rgs[x]];
      }
      if (compatible(A, blocks)) {
        out.push_back(blocks);
      }
    };
    auto rec = [&](auto&& self, std::size_t i, Element used) -> void {
      if (i == n) {
        emit();
        return;
      }
      for (Element b = 0; b <= used; ++b) {
        rgs[i] = b;
        self(self, i + 1, std::max<Element>(used, static_cast<Element>(b + 1)));
      }
    };
    if (n == 0) {
      return out;
    }
    rgs[0] = 0;
    rec(rec, 1, 1);
    std::sort(out.begin(), out.end());
    return out;
  }

  inline bool below(Congruence const& a, Congruence const& b) {
    for (std::size_t x = 0; x < a.universe_size(); ++x) {
      if (b.representative(a.representative(x)) != b.representative(static_cast<Element>(x))) {
        return false;
      }
    }
    return true;
  }

  inline std::vector<Element> intersect(Congruence const& a, Congruence const& b) {
    std::size_t const    n = a.universe_size();
    std::vector<Element> out(n);
    for (Element x = 0; x < n; ++x) {
      out[x] = x;
      for (Element y = 0; y < x; ++y) {
        if (a.related(x, y) && b.related(x, y)) {
          out[x] = y;
          break;
        }
      }
    }
    return out;
  }

  // Transitive closure of the union of two partitions, normalised.
  inline std::vector<Element> partition_join(std::vector<Element> const& a,
                                             std::vector<Element> const& b) {
    std::size_t const    n = a.size();
    std::vector<Element> parent(n);
    std::iota(parent.begin(), parent.end(), Element{0});
    auto find = [&](Element x) {
      while (parent[x] != x) {
        x = parent[x];
      }
      return x;
    };
    for (Element x = 0; x < n; ++x) {
      for (auto const* p : {&a, &b}) {
        Element const r1 = find(x), r2 = find((*p)[x]);
        parent[std::max(r1, r2)] = std::min(r1, r2);
      }
    }
    std::vector<Element> out(n);
    for (Element x = 0; x < n; ++x) {
      out[x] = find(x);
    }
    return out;
  }

  inline std::vector<Element> partition_meet(std::vector<Element> const& a,
                                             std::vector<Element> const& b) {
    std::size_t const    n = a.size();
    std::vector<Element> out(n);
    for (Element x = 0; x < n; ++x) {
      out[x] = x;
      for (Element y = 0; y < x; ++y) {
        if (a[x] == a[y] && b[x] == b[y]) {
          out[x] = y;
          break;
        }
      }
    }
    return out;
  }

  inline bool is_total(std::vector<Element> const& p) {
    return std::all_of(p.begin(), p.end(), [](Element x) { return x == 0; });
  }

  inline bool is_identity(std::vector<Element> const& p) {
    for (std::size_t x = 0; x < p.size(); ++x) {
      if (p[x] != x) {
        return false;
      }
    }
    return true;
  }

  // Complemented members of a list of partitions.
  inline std::vector<std::vector<Element>> complemented(
      std::vector<std::vector<Element>> const& cons) {
    std::vector<std::vector<Element>> out;
    for (auto const& a : cons) {
      for (auto const& b : cons) {
        if (is_total(partition_join(a, b)) && is_identity(partition_meet(a, b))) {
          out.push_back(a);
          break;
        }
      }
    }
    return out;
  }

  // Decides lifting of complemented congruences from A/theta to A using
  // nothing but partitions of the two universes. Small algebras only.
  inline bool brute_force_cblp(FiniteAlgebra const& A, std::vector<Element> const& theta) {
    auto const cons    = brute_force_congruences(A);
    auto const center  = complemented(cons);
    auto const Q       = conglab::quotient(A, Congruence::from_blocks(A.fingerprint(), theta));
    auto const map     = conglab::quotient_map(Congruence::from_blocks(A.fingerprint(), theta));
    for (auto const& q : complemented(brute_force_congruences(Q))) {
      std::vector<Element> pre(A.size());
      for (std::size_t x = 0; x < A.size(); ++x) {
        pre[x] = q[map[x]];
      }
      // normalise labels to least representatives
      std::vector<Element> norm(A.size());
      for (Element x = 0; x < A.size(); ++x) {
        norm[x] = x;
        for (Element y = 0; y < x; ++y) {
          if (pre[y] == pre[x]) {
            norm[x] = y;
            break;
          }
        }
      }
      bool lifted = false;
      for (auto const& alpha : center) {
        if (partition_join(alpha, theta) == norm) {
          lifted = true;
          break;
        }
      }
      if (!lifted) {
        return false;
      }
    }
    return true;
  }

  inline std::string corpus_path(std::string const& file) {
    return std::string(CONGLAB_CORPUS_DIR) + "/" + file;
  }

  // The algebras named in the acceptance criteria for congruence
  // distributivity.
  inline std::vector<FiniteAlgebra> distributive_variety_members() {
    using namespace conglab::builders;
    std::vector<FiniteAlgebra> out = {pentagon(), diamond()};
    for (std::size_t k : {2, 3, 5, 7}) {
      out.push_back(chain_lattice(k));
    }
    for (std::size_t a : {1, 2, 3}) {
      out.push_back(boolean_lattice(a));
    }
    return out;
  }

}  // namespace testing

#endif  // CONGLAB_TESTS_SUPPORT_HPP_
