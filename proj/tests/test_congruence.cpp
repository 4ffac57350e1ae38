#include <doctest.h>

#include "conglab/error.hpp"
#include "support.hpp"

using namespace conglab;
using testing::mod;

namespace {

  Congruence blocks(FiniteAlgebra const& A, std::vector<Element> b) {
    return Congruence::from_blocks(A.fingerprint(), std::move(b));
  }

}  // namespace

TEST_CASE("principal congruence of (0,2) in Z6") {
  auto const Z6 = builders::ring_zn(6);
  CHECK(principal_congruence(Z6, 0, 2) == blocks(Z6, {0, 1, 0, 1, 0, 1}));
}

TEST_CASE("principal congruence of a pair with itself") {
  for (auto const& A : builders::corpus()) {
    CHECK(principal_congruence(A, 0, 0).is_identity());
  }
}

TEST_CASE("principal congruence of the bottom pair in the three-chain") {
  auto const C3 = builders::chain_lattice(3);
  CHECK(principal_congruence(C3, 0, 1) == blocks(C3, {0, 0, 2}));
}

TEST_CASE("principal congruences are the least compatible partitions holding the pair") {
  for (auto const& A : builders::corpus()) {
    if (A.size() > 7) {
      continue;
    }
    CAPTURE(A.name());
    auto const all = testing::brute_force_congruences(A);
    for (Element a = 0; a < A.size(); ++a) {
      for (Element b = 0; b < A.size(); ++b) {
        auto const          cg = principal_congruence(A, a, b);
        std::vector<Element> least;
        for (auto const& p : all) {
          if (p[a] != p[b]) {
            continue;
          }
          auto const c = blocks(A, p);
          if (least.empty() || testing::below(c, blocks(A, least))) {
            least = p;
          }
        }
        CHECK(cg.blocks() == least);
      }
    }
  }
}

TEST_CASE("congruence lattice matches partition enumeration up to seven elements") {
  std::vector<FiniteAlgebra> algebras = builders::corpus();
  algebras.push_back(builders::pointed_set());
  algebras.push_back(builders::ring_zn(5));
  algebras.push_back(builders::ring_zn(7));
  for (auto const& A : algebras) {
    if (A.size() > 7) {
      continue;
    }
    CAPTURE(A.name());
    auto const                        L = CongruenceLattice::compute(A);
    std::vector<std::vector<Element>> got;
    for (auto const& c : L.elements()) {
      got.push_back(c.blocks());
    }
    CHECK(got == testing::brute_force_congruences(A));
  }
}

TEST_CASE("canonical order puts the total congruence first") {
  for (auto const& A : builders::corpus()) {
    auto const L = CongruenceLattice::compute(A);
    CHECK(L[L.top()].is_total());
    CHECK(L[L.bottom()].is_identity());
    CHECK(L.top() == 0);
    CHECK(L.bottom() == L.size() - 1);
    for (CongId i = 1; i < L.size(); ++i) {
      CHECK(L[i - 1] < L[i]);
    }
  }
}

TEST_CASE("Con(Z_n) is the divisor lattice") {
  for (std::size_t n = 1; n <= 16; ++n) {
    CAPTURE(n);
    auto const Z = builders::ring_zn(n);
    auto const L = CongruenceLattice::compute(Z);
    CHECK(L.size() == testing::divisors(n).size());
    for (std::size_t d : testing::divisors(n)) {
      CHECK(L.find(mod(Z, d)).has_value());
    }
  }
}

TEST_CASE("join and meet in Z12 and Z6") {
  auto const Z12 = builders::ring_zn(12);
  CHECK(join(mod(Z12, 4), mod(Z12, 6)) == mod(Z12, 2));
  CHECK(meet(mod(Z12, 4), mod(Z12, 6)) == mod(Z12, 12));
  auto const Z6 = builders::ring_zn(6);
  CHECK(meet(mod(Z6, 2), mod(Z6, 3)).is_identity());
  CHECK(join(mod(Z6, 2), mod(Z6, 3)).is_total());
}

TEST_CASE("meet with the total congruence is neutral") {
  for (auto const& A : builders::corpus()) {
    auto const L = CongruenceLattice::compute(A);
    for (CongId i = 0; i < L.size(); ++i) {
      CHECK(meet(L[i], Congruence::total(A)) == L[i]);
      CHECK(L.meet(i, L.top()) == i);
      CHECK(L.join(i, L.bottom()) == i);
    }
  }
}

TEST_CASE("lattice tables agree with partition operations") {
  for (auto const& A : builders::corpus()) {
    CAPTURE(A.name());
    auto const L = CongruenceLattice::compute(A);
    for (CongId i = 0; i < L.size(); ++i) {
      for (CongId j = 0; j < L.size(); ++j) {
        CHECK(L.leq(i, j) == testing::below(L[i], L[j]));
        CHECK(L[L.meet(i, j)].blocks() == testing::intersect(L[i], L[j]));
        auto const up = L[L.join(i, j)];
        CHECK(testing::below(L[i], up));
        CHECK(testing::below(L[j], up));
        for (CongId k = 0; k < L.size(); ++k) {
          if (testing::below(L[i], L[k]) && testing::below(L[j], L[k])) {
            CHECK(testing::below(up, L[k]));
          }
        }
      }
    }
  }
}

TEST_CASE("join-irreducibles have exactly one lower cover") {
  auto const Z12 = builders::ring_zn(12);
  auto const L   = CongruenceLattice::compute(Z12);
  std::set<std::vector<Element>> got;
  for (CongId j : join_irreducibles(L)) {
    got.insert(L[j].blocks());
  }
  // theta_d covers theta_{dp} for primes p with dp | 12, so theta_d has a
  // single lower cover for d = 3, 4, 6.
  std::set<std::vector<Element>> const want = {mod(Z12, 3).blocks(), mod(Z12, 4).blocks(),
                                               mod(Z12, 6).blocks()};
  CHECK(got == want);

  for (auto const& A : builders::corpus()) {
    auto const C = CongruenceLattice::compute(A);
    for (CongId i = 0; i < C.size(); ++i) {
      std::size_t covers = 0;
      for (CongId k = 0; k < C.size(); ++k) {
        if (k == i || !C.leq(k, i)) {
          continue;
        }
        bool cover = true;
        for (CongId m = 0; m < C.size() && cover; ++m) {
          cover = m == i || m == k || !(C.leq(k, m) && C.leq(m, i));
        }
        covers += cover;
      }
      CHECK(C.is_join_irreducible(i) == (covers == 1));
    }
  }
}

TEST_CASE("interval above a congruence") {
  auto const Z12 = builders::ring_zn(12);
  auto const L   = CongruenceLattice::compute(Z12);
  auto const up  = L.interval_above(L.index_of(mod(Z12, 6)));
  std::set<std::vector<Element>> got;
  for (CongId i : up) {
    got.insert(L[i].blocks());
  }
  CHECK(got == std::set<std::vector<Element>>{mod(Z12, 1).blocks(), mod(Z12, 2).blocks(),
                                              mod(Z12, 3).blocks(), mod(Z12, 6).blocks()});
  CHECK(L.interval_above(L.top()).size() == 1);
  CHECK(L.interval_above(L.bottom()).size() == L.size());
}

TEST_CASE("congruences from different algebras do not mix") {
  auto const Z4 = builders::ring_zn(4);
  auto const C4 = builders::chain_lattice(4);
  CHECK_THROWS_AS((void)join(Congruence::identity(Z4), Congruence::identity(C4)), Error);
}

TEST_CASE("congruence documents") {
  auto const Z6 = builders::ring_zn(6);
  auto const c  = parse_congruence(Z6, nlohmann::json::parse("[0,1,2,0,1,2]"));
  CHECK(c == mod(Z6, 3));
  CHECK(serialize_congruence(c) == nlohmann::json::parse("[0,1,2,0,1,2]"));
  auto const kind = [&](char const* text) {
    try {
      (void)parse_congruence(Z6, nlohmann::json::parse(text));
    } catch (Error const& e) {
      return e.kind();
    }
    return ErrorKind::ParentMismatch;
  };
  CHECK(kind("[0,1,0,1,0,1,0]") == ErrorKind::MalformedDoc);
  CHECK(kind("[0,0,2,3,4,5]") == ErrorKind::NotACongruence);
}

TEST_CASE("size budget") {
  CHECK_THROWS_AS((void)CongruenceLattice::compute(builders::ring_zn(12), 3), Error);
  CHECK(CongruenceLattice::compute(builders::ring_zn(12), 6).size() == 6);
}
