#include <doctest.h>

#include <numeric>

#include "conglab/error.hpp"
#include "support.hpp"

using namespace conglab;
using testing::mod;
using testing::mod_id;

TEST_CASE("ring commutator is the ideal product") {
  for (std::size_t n = 2; n <= 16; ++n) {
    auto const Z = builders::ring_zn(n);
    for (std::size_t d : testing::divisors(n)) {
      for (std::size_t e : testing::divisors(n)) {
        CAPTURE(n);
        CAPTURE(d);
        CAPTURE(e);
        CHECK(commutator(Z, mod(Z, d), mod(Z, e)) == mod(Z, std::gcd(d * e, n)));
      }
    }
  }
}

TEST_CASE("commutator in a product of rings is componentwise") {
  auto const P = product(builders::ring_zn(2), builders::ring_zn(4));
  for (std::size_t d1 : {1, 2}) {
    for (std::size_t d2 : {1, 2, 4}) {
      for (std::size_t e1 : {1, 2}) {
        for (std::size_t e2 : {1, 2, 4}) {
          auto const got = commutator(P, testing::mod2(P, 4, d1, d2), testing::mod2(P, 4, e1, e2));
          CHECK(got == testing::mod2(P, 4, std::gcd(d1 * e1, 2), std::gcd(d2 * e2, 4)));
        }
      }
    }
  }
}

TEST_CASE("commutator is the meet in congruence-distributive algebras") {
  auto algebras = testing::distributive_variety_members();
  for (std::size_t k : {2, 3, 5}) {
    algebras.push_back(builders::mv_chain(k));
  }
  for (auto const& A : algebras) {
    CAPTURE(A.name());
    auto const L = CongruenceLattice::compute(A);
    for (auto const& a : L.elements()) {
      for (auto const& b : L.elements()) {
        CHECK(commutator(A, a, b).blocks() == testing::intersect(a, b));
      }
    }
  }
}

TEST_CASE("commutator examples in Z12") {
  auto const Z12 = builders::ring_zn(12);
  CHECK(commutator(Z12, mod(Z12, 2), mod(Z12, 2)) == mod(Z12, 4));
  CHECK(commutator(Z12, mod(Z12, 2), mod(Z12, 3)) == mod(Z12, 6));
  CHECK(commutator(Z12, mod(Z12, 6), mod(Z12, 6)) == mod(Z12, 12));
}

TEST_CASE("matrix budget") {
  auto const Z16 = builders::ring_zn(16);
  CHECK_THROWS_AS((void)commutator(Z16, mod(Z16, 1), mod(Z16, 1), 10), Error);
  CHECK(matrix_subalgebra_size(builders::ring_zn(4), mod(builders::ring_zn(4), 2),
                               mod(builders::ring_zn(4), 2)) > 0);
}

TEST_CASE("analysis table matches direct commutators") {
  for (auto const& A : builders::corpus()) {
    if (A.size() > 9) {
      continue;
    }
    CAPTURE(A.name());
    Analysis const an(A);
    for (CongId a = 0; a < an.size(); ++a) {
      for (CongId b = 0; b < an.size(); ++b) {
        CHECK(an[an.commutator(a, b)] == commutator(A, an[a], an[b]));
      }
    }
  }
}

TEST_CASE("commutator axioms across the corpus") {
  for (auto const& A : builders::corpus()) {
    CAPTURE(A.name());
    Analysis const an(A);
    for (CongId a = 0; a < an.size(); ++a) {
      for (CongId b = 0; b < an.size(); ++b) {
        CongId const c = an.commutator(a, b);
        CHECK(an.leq(c, an.meet(a, b)));
        CHECK(c == an.commutator(b, a));
        for (CongId g = 0; g < an.size(); ++g) {
          if (an.leq(a, g)) {
            CHECK(an.leq(c, an.commutator(g, b)));
          }
          CHECK(an.commutator(a, an.join(b, g)) == an.join(c, an.commutator(a, g)));
          // adjunction
          CHECK(an.leq(a, an.residuation(b, g)) == an.leq(an.commutator(a, b), g));
        }
      }
    }
  }
}

TEST_CASE("iterates and stabilisation") {
  auto const     Z16 = builders::ring_zn(16);
  Analysis const an(Z16);
  CongId const   t2 = mod_id(an, 2);
  CHECK(an.iterate(t2, 0) == t2);
  CHECK(an[an.iterate(t2, 1)] == mod(Z16, 4));
  CHECK(an[an.iterate(t2, 2)] == mod(Z16, 16));
  CHECK(an[an.stable_iterate(t2)].is_identity());
  for (CongId a = 0; a < an.size(); ++a) {
    CongId const s = an.stable_iterate(a);
    CHECK(an.commutator(s, s) == s);
    CHECK(an.iterate(a, an.stabilization_index(a)) == s);
  }
}

TEST_CASE("residuation examples") {
  auto const     Z12 = builders::ring_zn(12);
  Analysis const an(Z12);
  CongId const   r = an.residuation(mod_id(an, 2), mod_id(an, 4));
  CHECK(an.leq(mod_id(an, 2), r));
  // Largest gamma with [theta_2, gamma] <= theta_4, by scanning.
  CongId best = an.bottom();
  for (CongId g = 0; g < an.size(); ++g) {
    if (an.leq(an.commutator(mod_id(an, 2), g), mod_id(an, 4))) {
      best = an.join(best, g);
    }
  }
  CHECK(r == best);
  // [theta_2, theta_d] = theta_{gcd(2d,12)} lies below theta_4 iff d is even.
  CHECK(r == mod_id(an, 2));
  for (CongId a = 0; a < an.size(); ++a) {
    CHECK(an.residuation(a, an.top()) == an.top());
  }

  auto const     Z6 = builders::ring_zn(6);
  Analysis const a6(Z6);
  CHECK(a6[a6.annihilator(mod_id(a6, 2))] == mod(Z6, 3));
  CHECK(a6[a6.residuation(mod_id(a6, 2), a6.bottom())] == mod(Z6, 3));
}

TEST_CASE("surrogate checks") {
  Analysis const z6(builders::ring_zn(6));
  CHECK(z6.surrogates().passes());
  CHECK(z6.surrogates().modular);
  CHECK(z6.surrogates().top_idempotent);
  CHECK(z6.surrogates().top_is_unit);
  CHECK(z6.surrogates().closed_under_commutator);
  CHECK_NOTHROW(z6.require_theory());

  Analysis const pointed(builders::pointed_set());
  CHECK_FALSE(pointed.surrogates().top_idempotent);
  CHECK_FALSE(pointed.surrogates().passes());
  CHECK(pointed[pointed.commutator(pointed.top(), pointed.top())].is_identity());
  try {
    pointed.require_theory();
    FAIL("expected TheoryHypothesisFailed");
  } catch (Error const& e) {
    CHECK(e.kind() == ErrorKind::TheoryHypothesisFailed);
    CHECK(std::string(e.what()).find(pointed.surrogates().failing()) != std::string::npos);
  }

  Analysis const one(builders::trivial());
  CHECK(one.size() == 1);
  CHECK(one.surrogates().passes());

  for (auto const& A : builders::corpus()) {
    CAPTURE(A.name());
    CHECK(Analysis(A).surrogates().passes());
  }
}

TEST_CASE("complements in Con(Z12)") {
  Analysis const an(builders::ring_zn(12));
  CHECK(an.complement(mod_id(an, 3)) == mod_id(an, 4));
  CHECK(an.complement(mod_id(an, 4)) == mod_id(an, 3));
  CHECK_FALSE(an.is_complemented(mod_id(an, 2)));
  CHECK_FALSE(an.is_complemented(mod_id(an, 6)));
  CHECK(an.complement(an.top()) == an.bottom());
}

TEST_CASE("parallel analysis matches serial") {
  AnalysisOptions opts;
  opts.jobs = 3;
  for (auto const& A : {builders::ring_zn(12), builders::boolean_lattice(3), builders::pentagon()}) {
    Analysis const serial(A);
    Analysis const parallel(A, opts);
    for (CongId a = 0; a < serial.size(); ++a) {
      for (CongId b = 0; b < serial.size(); ++b) {
        CHECK(serial.commutator(a, b) == parallel.commutator(a, b));
      }
    }
  }
}
