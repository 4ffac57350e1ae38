#include <doctest.h>

#include "conglab/error.hpp"
#include "conglab/lifting.hpp"
#include "support.hpp"

using namespace conglab;
using testing::mod;
using testing::mod_id;

namespace {

  // Owns the whole stack for one algebra.
  struct Stack {
    explicit Stack(FiniteAlgebra A, LiftingOptions opts = {})
        : an(std::move(A)), sp(an), R(sp), lf(R, opts) {}
    Analysis     an;
    Spectrum     sp;
    Reticulation R;
    Lifting      lf;
  };

  ErrorKind kind_of(auto&& f) {
    try {
      f();
    } catch (Error const& e) {
      return e.kind();
    }
    return ErrorKind::MalformedDoc;
  }

}  // namespace

TEST_CASE("Boolean center of Z_n counts idempotents") {
  for (std::size_t n = 1; n <= 16; ++n) {
    CAPTURE(n);
    Analysis const an(builders::ring_zn(n));
    CHECK(boolean_center(an.lattice()).size() == testing::idempotent_count(n));
  }
  Analysis const z12(builders::ring_zn(12));
  auto const     B = boolean_center(z12.lattice());
  CHECK(B.size() == 4);
  CHECK(B.negation(mod_id(z12, 3)) == mod_id(z12, 4));
  CHECK(kind_of([&] { (void)B.negation(mod_id(z12, 2)); }) == ErrorKind::NotOrthogonal);
  CHECK(B.atoms.size() == 2);
  CHECK(boolean_center(Analysis(builders::ring_zn(4)).lattice()).size() == 2);
}

TEST_CASE("Boolean center matches brute-force complements") {
  for (auto const& A : builders::corpus()) {
    if (A.size() > 8) {
      continue;
    }
    CAPTURE(A.name());
    Analysis const an(A);
    auto const     B    = boolean_center(an.lattice());
    auto const     want = testing::complemented(testing::brute_force_congruences(A));
    std::vector<std::vector<Element>> got;
    for (CongId a : B.elements) {
      got.push_back(an[a].blocks());
    }
    std::sort(got.begin(), got.end());
    CHECK(got == want);
  }
}

TEST_CASE("every congruence of Z_n lifts idempotents") {
  for (std::size_t n = 1; n <= 16; ++n) {
    Stack const s(builders::ring_zn(n));
    for (std::size_t d : testing::divisors(n)) {
      CAPTURE(n);
      CAPTURE(d);
      CHECK(testing::idempotents_lift(n, d));
      CHECK(s.lf.has_cblp(mod_id(s.an, d)) == testing::idempotents_lift(n, d));
    }
    CHECK(s.lf.algebra_has_cblp());
  }
}

TEST_CASE("lifting agrees with the partition oracle on small algebras") {
  for (auto const& A : builders::corpus()) {
    if (A.size() > 8) {
      continue;
    }
    CAPTURE(A.name());
    Stack const s(A);
    for (CongId t = 0; t < s.an.size(); ++t) {
      CHECK(s.lf.has_cblp(t) == testing::brute_force_cblp(A, s.an[t].blocks()));
    }
  }
}

TEST_CASE("witnesses are complemented lifts") {
  for (auto const& A : builders::corpus()) {
    CAPTURE(A.name());
    Stack const s(A);
    for (CongId t = 0; t < s.an.size(); ++t) {
      auto const& rep = s.lf.report(t);
      CHECK(rep.routes_agree);
      CHECK(rep.center_by_residuation == rep.center_direct);
      for (auto [eps, alpha] : rep.witnesses) {
        CHECK(s.an.is_complemented(alpha));
        CHECK(s.an.join(alpha, t) == eps);
      }
      CHECK(rep.cblp == !rep.counterexample.has_value());
      CHECK(rep.witnesses.size() + (rep.cblp ? 0 : 1) <= rep.center_direct.size());
    }
  }
}

TEST_CASE("the pentagon's radical does not lift") {
  Stack const s(builders::pentagon());
  CongId const rad = s.sp.rad();
  CHECK(s.an[rad].block_count() == 4);
  CHECK_FALSE(s.lf.has_cblp(rad));
  CHECK_FALSE(testing::brute_force_cblp(s.an.algebra(), s.an[rad].blocks()));
  // A/Rad is a product of two 2-element lattices, and every congruence of
  // it lifts within A/Rad.
  auto const& q = s.lf.quotient(rad);
  CHECK(q.algebra().size() == 4);
  CHECK(q.lattice().size() == 4);
  for (CongId c = 0; c < q.lattice().size(); ++c) {
    CHECK(testing::brute_force_cblp(q.algebra(), q.lattice()[c].blocks()));
  }
  // So "A/theta lifts for theta below Rad" does not transfer to A here.
  CHECK_FALSE(s.lf.quotient_cblp_descent(rad));
  std::size_t failures = 0;
  for (CongId t = 0; t < s.an.size(); ++t) {
    failures += !s.lf.quotient_cblp_descent(t);
  }
  CHECK(failures == 1);
}

TEST_CASE("projection image in Z12") {
  Stack const  s(builders::ring_zn(12));
  CongId const t6  = mod_id(s.an, 6);
  auto const&  q   = s.lf.quotient(t6);
  CongId const img = s.lf.projection_image(t6, mod_id(s.an, 4));
  CHECK(q.up(img) == mod_id(s.an, 2));
  CHECK(img == q.down(mod_id(s.an, 2)));
  CHECK(q.image_direct(mod_id(s.an, 4)) == img);
  CHECK(q.algebra().size() == 6);
}

TEST_CASE("lifting examples in Z12") {
  Stack const s(builders::ring_zn(12));
  for (CongId t = 0; t < s.an.size(); ++t) {
    CHECK(s.lf.has_cblp(t));
    CHECK(s.lf.cblp_star_transfer(t));
    CHECK(s.lf.diamond_star_commute(t));
  }
  CHECK(s.lf.has_cblp(s.an.top()));
  CHECK(s.lf.has_cblp(s.an.bottom()));
  CHECK(s.lf.radical_invariance(mod_id(s.an, 4)));
  CHECK(s.lf.has_cblp(s.sp.radical(mod_id(s.an, 4))));
  CHECK(s.lf.max_interval_transfer(mod_id(s.an, 6), mod_id(s.an, 6)));
  CHECK(s.lf.clop_max_criterion());
  CHECK(s.lf.clopens_of_max().size() == 4);
  CHECK(s.lf.diamond(mod_id(s.an, 2)) == mod_id(s.an, 4));
  CHECK(s.lf.diamond(mod_id(s.an, 6)) == s.an.bottom());
  CHECK(s.lf.is_regular(mod_id(s.an, 4)));
  CHECK(s.lf.regular_join_transfer(mod_id(s.an, 6), mod_id(s.an, 4)));
  CHECK(s.lf.has_cblp(s.an.join(mod_id(s.an, 6), mod_id(s.an, 4))));
  CHECK(s.lf.noncoprime_meet_transfer(mod_id(s.an, 6), mod_id(s.an, 2)));
  CHECK(s.lf.b_normal().holds);
  CHECK(s.lf.b_normal_biconditional());
  CHECK(s.lf.hyperarchimedean_cblp());
  CHECK(s.lf.rad_projection_injective());
}

TEST_CASE("lifting examples in Z4") {
  Stack const  s(builders::ring_zn(4));
  CongId const t2 = mod_id(s.an, 2);
  auto const   rep = s.lf.full_report(t2);
  REQUIRE(rep.thm63.has_value());
  CHECK(rep.thm63->hypotheses_met);
  CHECK(rep.thm63->agree());
  CHECK(rep.thm63->c4);
  CHECK(s.lf.diamond(t2) == s.an.bottom());
  CHECK(s.lf.noncoprime_meet_transfer(s.an.bottom(), t2));
  CHECK(s.lf.b_normal().holds);
  for (CongId t = 0; t < s.an.size(); ++t) {
    CHECK(s.lf.diamond_star_commute(t));
  }
}

TEST_CASE("conditions of the lifting characterization agree") {
  for (auto const& A : builders::corpus()) {
    CAPTURE(A.name());
    Stack const s(A);
    for (CongId t = 0; t < s.an.size(); ++t) {
      auto const v = s.lf.characterization(t);
      if (v.hypotheses_met) {
        CHECK(v.agree());
        CHECK(v.c1 == s.lf.has_cblp(t));
      }
    }
    CHECK(s.lf.b_normal_biconditional());
    CHECK(s.lf.b_normal().holds == s.lf.algebra_has_cblp());
  }
}

TEST_CASE("transfer checks hold on the corpus") {
  for (auto const& A : builders::corpus()) {
    CAPTURE(A.name());
    Stack const s(A);
    CHECK(s.lf.algebra_star_transfer());
    CHECK(s.lf.clop_max_criterion());
    CHECK(s.lf.hyperarchimedean_cblp());
    CHECK(s.lf.complemented_below_rad());
    for (CongId t = 0; t < s.an.size(); ++t) {
      CHECK(s.lf.cblp_star_transfer(t));
      CHECK(s.lf.radical_invariance(t));
      CHECK(s.lf.below_nilradical_cblp(t));
      CHECK(s.lf.diamond_star_commute(t));
      CHECK(s.lf.regular_star_regular(t));
      for (CongId c = 0; c < s.an.size(); ++c) {
        CHECK(s.lf.equal_radical_transfer(t, c));
        CHECK(s.lf.max_interval_transfer(t, c));
        CHECK(s.lf.regular_join_transfer(t, c));
        CHECK(s.lf.noncoprime_meet_transfer(t, c));
      }
    }
    for (auto const& I : all_ideals(s.R.lattice())) {
      CHECK(s.lf.ideal_costar_transfer(I));
    }
  }
}

TEST_CASE("direct quotient route gives the same reports") {
  for (auto const& A : {builders::ring_zn(12), builders::pentagon(), builders::boolean_lattice(3)}) {
    Stack const a(A);
    Stack const b(A, LiftingOptions{true});
    for (CongId t = 0; t < a.an.size(); ++t) {
      CHECK(a.lf.report(t).cblp == b.lf.report(t).cblp);
      CHECK(a.lf.report(t).witnesses == b.lf.report(t).witnesses);
    }
  }
}

TEST_CASE("orthogonal lifting in Z12") {
  Stack const  s(builders::ring_zn(12));
  CongId const t6 = mod_id(s.an, 6);
  auto const&  q  = s.lf.quotient(t6);
  std::vector<CongId> family = {q.down(mod_id(s.an, 2)), q.down(mod_id(s.an, 3))};
  auto const lifted = s.lf.lift_orthogonal(t6, family);
  CHECK(lifted == std::vector<CongId>{mod_id(s.an, 4), mod_id(s.an, 3)});
  CHECK(s.an.meet(lifted[0], lifted[1]) == s.an.bottom());
  CHECK(s.lf.lift_orthogonal(t6, {}).empty());
  CHECK(s.lf.lift_orthogonal(t6, {q.down(t6)}) == std::vector<CongId>{s.an.bottom()});

  auto const rep = s.lf.orthogonal_uniqueness_and_atoms(t6);
  CHECK(rep.passes());
  CHECK(rep.sets_checked > 0);
  CHECK(rep.atom_lift.size() == 2);

  CHECK(kind_of([&] { (void)s.lf.orthogonal_uniqueness_and_atoms(mod_id(s.an, 2)); }) ==
        ErrorKind::HypothesisNotMet);
  // theta_2/theta_6 and theta_2/theta_6 overlap.
  CHECK(kind_of([&] {
          (void)s.lf.lift_orthogonal(t6, {q.down(mod_id(s.an, 2)), q.down(mod_id(s.an, 2))});
        }) == ErrorKind::NotOrthogonal);
}

TEST_CASE("lifting an orthogonal set needs CBLP") {
  Stack const  s(builders::pentagon());
  CongId const rad = s.sp.rad();
  auto const&  q   = s.lf.quotient(rad);
  auto const   atoms_q = boolean_center(q.lattice()).atoms;
  REQUIRE(atoms_q.size() == 2);
  CHECK(kind_of([&] { (void)s.lf.lift_orthogonal(rad, atoms_q); }) == ErrorKind::NoCBLP);
}

TEST_CASE("complemented congruences below Rad") {
  for (auto const& A : builders::corpus()) {
    Stack const s(A);
    for (CongId a : s.lf.center().elements) {
      if (s.an.leq(a, s.sp.rad())) {
        CHECK(a == s.an.bottom());
      }
    }
  }
}

TEST_CASE("report JSON") {
  Stack const s(builders::ring_zn(12));
  auto const  j = s.lf.to_json(s.lf.full_report(mod_id(s.an, 6)));
  CHECK(j["theta"] == nlohmann::json::parse("[0,1,2,3,4,5,0,1,2,3,4,5]"));
  CHECK(j["cblp"] == true);
  CHECK(j["counterexample"].is_null());
  CHECK(j["witnesses"].size() == 4);
  CHECK(j.contains("thm63"));

  Stack const p(builders::pentagon());
  auto const  k = p.lf.to_json(p.lf.report(p.sp.rad()));
  CHECK(k["cblp"] == false);
  CHECK(k["counterexample"].is_array());
}
