#include "conglab/spectrum.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "conglab/error.hpp"

namespace conglab {

  namespace {
    std::vector<PointSet> basis_from(std::size_t points, std::vector<PointSet> const& subbasis) {
      PointSet const     all = points >= 64 ? ~PointSet{0} : ((PointSet{1} << points) - 1);
      std::set<PointSet> basis{all};
      for (PointSet s : subbasis) {
        basis.insert(s & all);
      }
      bool grew = true;
      while (grew) {
        grew = false;
        std::vector<PointSet> cur(basis.begin(), basis.end());
        for (std::size_t i = 0; i < cur.size(); ++i) {
          for (std::size_t j = i + 1; j < cur.size(); ++j) {
            grew = basis.insert(cur[i] & cur[j]).second || grew;
          }
        }
      }
      return {basis.begin(), basis.end()};
    }

    bool is_open(PointSet s, std::vector<PointSet> const& basis) {
      PointSet covered = 0;
      for (PointSet b : basis) {
        if ((b & ~s) == 0) {
          covered |= b;
        }
      }
      return covered == s;
    }
  }  // namespace

  std::vector<PointSet> finite_topology_clopens(std::size_t                  points,
                                                std::vector<PointSet> const& subbasis,
                                                std::size_t                  limit) {
    if (points > limit || points >= 64) {
      throw Error(ErrorKind::SizeBudgetExceeded,
                  "clopen enumeration over " + std::to_string(points) + " points");
    }
    auto const            basis = basis_from(points, subbasis);
    PointSet const        all   = (PointSet{1} << points) - 1;
    std::vector<PointSet> out;
    for (PointSet s = 0; s <= all; ++s) {
      if (is_open(s, basis) && is_open(all & ~s, basis)) {
        out.push_back(s);
      }
    }
    return out;
  }

  bool finite_topology_is_t1(std::size_t points, std::vector<PointSet> const& subbasis) {
    auto const     basis = basis_from(points, subbasis);
    PointSet const all   = points >= 64 ? ~PointSet{0} : ((PointSet{1} << points) - 1);
    for (std::size_t i = 0; i < points; ++i) {
      if (!is_open(all & ~(PointSet{1} << i), basis)) {
        return false;
      }
    }
    return true;
  }

  Spectrum::Spectrum(Analysis const& an, bool all_pairs_oracle) : _an(&an) {
    an.require_theory();
    std::size_t const N = an.size();
    _is_prime.resize(N);
    for (CongId phi = 0; phi < N; ++phi) {
      _is_prime[phi] = is_prime(phi, all_pairs_oracle);
      if (_is_prime[phi]) {
        _primes.push_back(phi);
      }
    }
    if (_primes.size() > max_points) {
      throw Error(ErrorKind::SizeBudgetExceeded,
                  "Spec(" + an.algebra().name() + ") has more than 64 points");
    }
    for (CongId c : an.lattice().lower_covers(an.top())) {
      _maximals.push_back(c);
    }
    std::sort(_maximals.begin(), _maximals.end());
    _rad = an.lattice().meet_all(_maximals);

    _radical.resize(N);
    for (CongId theta = 0; theta < N; ++theta) {
      CongId acc = an.top();
      for (CongId phi : _primes) {
        if (an.leq(theta, phi)) {
          acc = an.meet(acc, phi);
        }
      }
      _radical[theta] = acc;
    }
  }

  bool Spectrum::is_prime(CongId phi, bool all_pairs) const {
    Analysis const& an = *_an;
    if (phi == an.top()) {
      return false;
    }
    std::vector<CongId> candidates;
    if (all_pairs) {
      for (CongId a = 0; a < an.size(); ++a) {
        candidates.push_back(a);
      }
    } else {
      candidates = an.lattice().join_irreducibles();
    }
    for (CongId a : candidates) {
      if (an.leq(a, phi)) {
        continue;
      }
      for (CongId b : candidates) {
        if (!an.leq(b, phi) && an.leq(an.commutator(a, b), phi)) {
          return false;
        }
      }
    }
    return true;
  }

  std::optional<std::pair<CongId, CongId>> Spectrum::prime_failure(CongId phi) const {
    Analysis const& an = *_an;
    for (CongId a = 0; a < an.size(); ++a) {
      for (CongId b = 0; b < an.size(); ++b) {
        if (!an.leq(a, phi) && !an.leq(b, phi) && an.leq(an.commutator(a, b), phi)) {
          return std::make_pair(a, b);
        }
      }
    }
    return std::nullopt;
  }

  CongId Spectrum::radical_oracle(CongId theta) const {
    Analysis const& an  = *_an;
    CongId          acc = an.bottom();
    for (CongId a = 0; a < an.size(); ++a) {
      // Iterates only shrink, so the stable one is the smallest.
      if (an.leq(an.stable_iterate(a), theta)) {
        acc = an.join(acc, a);
      }
    }
    return acc;
  }

  std::vector<CongId> Spectrum::radical_congruences() const {
    std::vector<CongId> out;
    for (CongId t = 0; t < _an->size(); ++t) {
      if (is_radical(t)) {
        out.push_back(t);
      }
    }
    return out;
  }

  PointSet Spectrum::v_set(CongId theta) const {
    PointSet s = 0;
    for (std::size_t i = 0; i < _primes.size(); ++i) {
      if (_an->leq(theta, _primes[i])) {
        s |= PointSet{1} << i;
      }
    }
    return s;
  }

  PointSet Spectrum::max_d_set(CongId theta) const {
    PointSet s = 0;
    for (std::size_t i = 0; i < _maximals.size(); ++i) {
      if (!_an->leq(theta, _maximals[i])) {
        s |= PointSet{1} << i;
      }
    }
    return s;
  }

  std::vector<MaxClopen> Spectrum::clopens_of_max() const {
    Analysis const&               an = *_an;
    std::map<PointSet, MaxClopen> found;
    for (CongId a = 0; a < an.size(); ++a) {
      for (CongId b = 0; b < an.size(); ++b) {
        if (an.join(a, b) == an.top() && an.leq(an.commutator(a, b), _rad)) {
          PointSet u = max_d_set(a);
          found.emplace(u, MaxClopen{u, a, b});
        }
      }
    }
    std::vector<MaxClopen> out;
    for (auto const& [u, c] : found) {
      out.push_back(c);
    }
    return out;
  }

  std::vector<PointSet> Spectrum::clopens_of_max_brute_force() const {
    std::vector<PointSet> subbasis;
    for (CongId t = 0; t < _an->size(); ++t) {
      subbasis.push_back(max_d_set(t));
    }
    return finite_topology_clopens(_maximals.size(), subbasis);
  }

  std::vector<PointSet> Spectrum::clopens_of_spec_brute_force() const {
    std::vector<PointSet> subbasis;
    for (CongId t = 0; t < _an->size(); ++t) {
      subbasis.push_back(d_set(t));
    }
    return finite_topology_clopens(_primes.size(), subbasis);
  }

  bool Spectrum::is_hyperarchimedean() const {
    Analysis const& an = *_an;
    for (CongId a = 0; a < an.size(); ++a) {
      bool found = false;
      for (std::size_t k = 1; k <= an.stabilization_index(a) + 1 && !found; ++k) {
        found = an.is_complemented(an.iterate(a, k));
      }
      if (!found) {
        return false;
      }
    }
    return true;
  }

}  // namespace conglab
