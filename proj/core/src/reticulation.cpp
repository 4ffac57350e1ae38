#include "conglab/reticulation.hpp"

#include <algorithm>

namespace conglab {

  Reticulation::Reticulation(Spectrum const& sp) : _sp(&sp) {
    Analysis const&   an = sp.analysis();
    std::size_t const N  = an.size();
    _elements            = sp.radical_congruences();
    std::vector<std::size_t> pos(N, N);
    for (std::size_t x = 0; x < _elements.size(); ++x) {
      pos[_elements[x]] = x;
    }
    _lambda.resize(N);
    for (CongId a = 0; a < N; ++a) {
      _lambda[a] = pos[sp.radical(a)];
    }
    std::size_t const k = _elements.size();
    std::vector<bool> leq(k * k);
    for (std::size_t x = 0; x < k; ++x) {
      for (std::size_t y = 0; y < k; ++y) {
        leq[x * k + y] = an.leq(_elements[x], _elements[y]);
      }
    }
    _lattice = FiniteLattice::from_order(k, std::move(leq));
  }

  LatticeIdeal Reticulation::star(CongId theta) const {
    LatticeIdeal   I{std::vector<bool>(size(), false)};
    Analysis const& an = analysis();
    for (CongId a = 0; a < an.size(); ++a) {
      if (an.leq(a, theta)) {
        I.members[_lambda[a]] = true;
      }
    }
    return I;
  }

  CongId Reticulation::costar(LatticeIdeal const& I) const {
    Analysis const& an  = analysis();
    CongId          acc = an.bottom();
    for (CongId a = 0; a < an.size(); ++a) {
      if (I.contains(_lambda[a])) {
        acc = an.join(acc, a);
      }
    }
    return acc;
  }

  namespace {
    bool ideal_below(LatticeIdeal const& I, LatticeIdeal const& J) {
      for (std::size_t x = 0; x < I.members.size(); ++x) {
        if (I.contains(x) && !J.contains(x)) {
          return false;
        }
      }
      return true;
    }
  }  // namespace

  SpecHomeomorphismReport check_spec_homeomorphism(Reticulation const& R) {
    SpecHomeomorphismReport rep;
    Analysis const&         an     = R.analysis();
    Spectrum const&         sp     = R.spectrum();
    FiniteLattice const&    L      = R.lattice();
    auto const&             primes = sp.primes();
    auto const              ideals = prime_ideals(L);
    rep.spec_size                  = primes.size();
    rep.spec_id_size               = ideals.size();

    auto fail = [&](bool& flag, std::string msg) {
      flag = false;
      if (rep.failure.empty()) {
        rep.failure = std::move(msg);
      }
    };

    if (primes.size() != ideals.size()) {
      fail(rep.bijection, "|Spec(A)| = " + std::to_string(primes.size())
                              + " but L(A) has " + std::to_string(ideals.size())
                              + " prime ideals");
    }
    std::vector<LatticeIdeal> u;
    for (CongId phi : primes) {
      u.push_back(R.star(phi));
      if (!is_prime_ideal(L, u.back())) {
        fail(rep.bijection, "phi* is not a prime ideal for phi = #" + std::to_string(phi));
      }
      if (R.costar(u.back()) != phi) {
        fail(rep.bijection, "(phi*)_* differs from phi = #" + std::to_string(phi));
      }
    }
    for (auto const& P : ideals) {
      CongId v = R.costar(P);
      if (!sp.is_prime(v)) {
        fail(rep.bijection, "P_* is not prime");
      }
      if (!(R.star(v) == P)) {
        fail(rep.bijection, "(P_*)* differs from P");
      }
    }
    for (std::size_t i = 0; i < primes.size(); ++i) {
      for (std::size_t j = 0; j < primes.size(); ++j) {
        if (an.leq(primes[i], primes[j]) != ideal_below(u[i], u[j])) {
          fail(rep.order, "inclusion not preserved between primes #"
                              + std::to_string(primes[i]) + " and #"
                              + std::to_string(primes[j]));
        }
      }
    }
    for (CongId a = 0; a < an.size(); ++a) {
      std::size_t const x = R.lambda(a);
      for (std::size_t i = 0; i < primes.size(); ++i) {
        if (an.leq(a, primes[i]) != u[i].contains(x)) {
          fail(rep.basis, "u(V(alpha)) differs from V_Id(lambda(alpha)) at alpha = #"
                              + std::to_string(a));
        }
      }
    }
    // Radical congruences against ideals of L(A).
    auto const ids = all_ideals(L);
    for (std::size_t x = 0; x < R.size(); ++x) {
      CongId const theta = R.element(x);
      LatticeIdeal s     = R.star(theta);
      if (!is_ideal(L, s) || R.costar(s) != theta) {
        fail(rep.frame, "theta -> theta* is not inverted by I -> I_* at #"
                            + std::to_string(theta));
      }
      for (std::size_t y = 0; y < R.size(); ++y) {
        if (an.leq(theta, R.element(y)) != ideal_below(s, R.star(R.element(y)))) {
          fail(rep.frame, "theta -> theta* does not preserve order");
        }
      }
    }
    for (auto const& I : ids) {
      CongId c = R.costar(I);
      if (!sp.is_radical(c) || !(R.star(c) == I)) {
        fail(rep.frame, "I -> I_* is not inverted by theta -> theta*");
      }
    }
    return rep;
  }

  CongId commutator_power(Analysis const& an, CongId a, CongId b, std::size_t n) {
    return an.iterate(an.commutator(a, b), n - 1);
  }

  CenterPreservationReport preserves_boolean_center(Reticulation const& R) {
    CenterPreservationReport rep;
    Analysis const&          an = R.analysis();
    FiniteLattice const&     L  = R.lattice();
    for (CongId a = 0; a < an.size(); ++a) {
      if (L.is_complemented(R.lambda(a)) && !an.is_complemented(an.stable_iterate(a))) {
        rep.holds     = false;
        rep.violating = a;
        break;
      }
    }
    for (CongId a = 0; a < an.size() && rep.star_property; ++a) {
      for (CongId b = 0; b < an.size() && rep.star_property; ++b) {
        CongId const      c     = an.commutator(a, b);
        std::size_t const m_max = std::max(an.stabilization_index(a), an.stabilization_index(b));
        for (std::size_t n = 1; n <= an.stabilization_index(c) + 1; ++n) {
          CongId const target = an.iterate(c, n - 1);
          bool         found  = false;
          for (std::size_t m = 0; m <= m_max && !found; ++m) {
            found = an.leq(an.commutator(an.iterate(a, m), an.iterate(b, m)), target);
          }
          if (!found) {
            rep.star_property = false;
            rep.star_failure  = std::make_pair(a, b);
            break;
          }
        }
      }
    }
    rep.semiprime = R.spectrum().is_semiprime();
    return rep;
  }

}  // namespace conglab
