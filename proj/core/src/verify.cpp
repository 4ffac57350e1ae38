#include "conglab/verify.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <set>

#include "conglab/error.hpp"
#include "conglab/lifting.hpp"

namespace conglab {

  bool AlgebraVerification::passed() const {
    return error.empty() && failures() == 0;
  }

  std::size_t AlgebraVerification::failures() const {
    return static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(), [](auto const& c) {
      return !c.passed && !c.exploratory;
    }));
  }

  std::vector<std::vector<Element>> compatible_partitions(FiniteAlgebra const& A, std::size_t limit) {
    std::size_t const n = A.size();
    if (n > limit) {
      throw Error(ErrorKind::SizeBudgetExceeded,
                  "partition enumeration over " + std::to_string(n) + " elements");
    }
    std::vector<std::vector<Element>> out;
    // Restricted growth strings; blocks[i] is the least member of i's block.
    std::vector<Element>                blocks(n, 0);
    std::function<void(std::size_t)>    rec = [&](std::size_t i) {
      if (i == n) {
        if (is_compatible(A, blocks)) {
          out.push_back(blocks);
        }
        return;
      }
      for (std::size_t j = 0; j < i; ++j) {
        if (blocks[j] == j) {
          blocks[i] = static_cast<Element>(j);
          rec(i + 1);
        }
      }
      blocks[i] = static_cast<Element>(i);
      rec(i + 1);
    };
    rec(0);
    return out;
  }

  namespace {

    struct Tally {
      std::size_t cases = 0;
      std::string failure;

      // Counts a case; records the first failure.
      void expect(bool ok, std::function<std::string()> const& what) {
        ++cases;
        if (!ok && failure.empty()) {
          failure = what();
          if (failure.empty()) {
            failure = "violated";
          }
        }
      }
    };

    std::string ids(std::initializer_list<CongId> xs) {
      std::string s;
      for (CongId x : xs) {
        s += (s.empty() ? "#" : ", #") + std::to_string(x);
      }
      return s;
    }

    class Runner {
     public:
      explicit Runner(AlgebraVerification& out) : _out(out) {}

      void run(std::string const& suite, std::string const& name, bool exploratory,
               std::function<void(Tally&)> const& body) {
        Tally       t;
        CheckResult r;
        r.suite       = suite;
        r.name        = name;
        r.exploratory = exploratory;
        try {
          body(t);
          r.passed = t.failure.empty();
          r.detail = t.failure;
        } catch (Error const& e) {
          r.passed = false;
          r.detail = e.what();
        }
        r.cases = t.cases;
        _out.checks.push_back(std::move(r));
      }

     private:
      AlgebraVerification& _out;
    };

    void congruence_suite(Runner& run, Analysis const& an, VerifyOptions const& opts) {
      FiniteAlgebra const&     A = an.algebra();
      CongruenceLattice const& L = an.lattice();
      std::size_t const        N = an.size();
      run.run("congruences", "every member is compatible", false, [&](Tally& t) {
        for (CongId a = 0; a < N; ++a) {
          t.expect(is_compatible(A, L[a].blocks()), [&] { return ids({a}); });
        }
      });
      run.run("congruences", "join and meet are the lattice bounds", false, [&](Tally& t) {
        for (CongId a = 0; a < N; ++a) {
          for (CongId b = 0; b < N; ++b) {
            CongId const j = an.join(a, b);
            CongId const m = an.meet(a, b);
            t.expect(L[m] == conglab::meet(L[a], L[b]) && an.leq(a, j) && an.leq(b, j)
                         && L[j] == generated_congruence(A, [&] {
                              std::vector<std::pair<Element, Element>> p;
                              for (std::size_t x = 0; x < A.size(); ++x) {
                                p.emplace_back(L[a].representative(x), x);
                                p.emplace_back(L[b].representative(x), x);
                              }
                              return p;
                            }()),
                     [&] { return ids({a, b}); });
          }
        }
      });
      if (A.size() <= opts.partition_limit) {
        run.run("congruences", "matches exhaustive partition search", false, [&](Tally& t) {
          auto const parts = compatible_partitions(A, opts.partition_limit);
          t.expect(parts.size() == N, [&] {
            return std::to_string(parts.size()) + " compatible partitions, "
                   + std::to_string(N) + " congruences";
          });
          for (auto const& p : parts) {
            t.expect(L.find(Congruence::from_blocks(A.fingerprint(), p)).has_value(),
                     [&] { return "partition " + serialize_congruence(Congruence::from_blocks(A.fingerprint(), p)).dump() + " missing"; });
          }
        });
      }
    }

    void commutator_suite(Runner& run, Analysis const& an, bool exploratory) {
      std::size_t const N = an.size();
      run.run("commutator", "below the meet", exploratory, [&](Tally& t) {
        for (CongId a = 0; a < N; ++a) {
          for (CongId b = 0; b < N; ++b) {
            t.expect(an.leq(an.commutator(a, b), an.meet(a, b)), [&] { return ids({a, b}); });
          }
        }
      });
      run.run("commutator", "symmetric", exploratory, [&](Tally& t) {
        for (CongId a = 0; a < N; ++a) {
          for (CongId b = 0; b < N; ++b) {
            t.expect(an.commutator(a, b) == an.commutator(b, a), [&] { return ids({a, b}); });
          }
        }
      });
      run.run("commutator", "monotone", exploratory, [&](Tally& t) {
        for (CongId a = 0; a < N; ++a) {
          for (CongId b = 0; b < N; ++b) {
            for (CongId c = 0; c < N; ++c) {
              if (an.leq(b, c)) {
                t.expect(an.leq(an.commutator(a, b), an.commutator(a, c)),
                         [&] { return ids({a, b, c}); });
              }
            }
          }
        }
      });
      run.run("commutator", "distributes over joins", exploratory, [&](Tally& t) {
        for (CongId a = 0; a < N; ++a) {
          for (CongId b = 0; b < N; ++b) {
            for (CongId c = b; c < N; ++c) {
              t.expect(an.commutator(a, an.join(b, c))
                           == an.join(an.commutator(a, b), an.commutator(a, c)),
                       [&] { return ids({a, b, c}); });
            }
          }
        }
      });
      run.run("commutator", "commutes with quotient maps", exploratory, [&](Tally& t) {
        for (CongId theta = 0; theta < N; ++theta) {
          QuotientView const qv(an, theta);
          Analysis const&    qa = qv.analysis();
          auto const         to_q = [&](CongId x) { return qa.id(qv.lattice()[x]); };
          for (CongId a = 0; a < N; ++a) {
            for (CongId b = a; b < N; ++b) {
              CongId const lhs = to_q(qv.down(an.join(an.commutator(a, b), theta)));
              CongId const rhs = qa.commutator(to_q(qv.image(a)), to_q(qv.image(b)));
              t.expect(lhs == rhs, [&] { return "theta " + ids({theta}) + ", " + ids({a, b}); });
            }
          }
        }
      });
    }

    void radical_suite(Runner& run, Spectrum const& sp) {
      Analysis const&   an = sp.analysis();
      std::size_t const N  = an.size();
      auto const        rho = [&](CongId x) { return sp.radical(x); };
      run.run("radicals", "meet of primes equals join of nilpotent parts", false, [&](Tally& t) {
        for (CongId a = 0; a < N; ++a) {
          t.expect(rho(a) == sp.radical_oracle(a), [&] { return ids({a}); });
        }
      });
      run.run("radicals", "extensive and idempotent", false, [&](Tally& t) {
        for (CongId a = 0; a < N; ++a) {
          t.expect(an.leq(a, rho(a)) && rho(rho(a)) == rho(a), [&] { return ids({a}); });
        }
      });
      run.run("radicals", "only the top has radical top", false, [&](Tally& t) {
        for (CongId a = 0; a < N; ++a) {
          t.expect((rho(a) == an.top()) == (a == an.top()), [&] { return ids({a}); });
        }
      });
      run.run("radicals", "meets, commutators and joins", false, [&](Tally& t) {
        for (CongId a = 0; a < N; ++a) {
          for (CongId b = 0; b < N; ++b) {
            CongId const m = an.meet(rho(a), rho(b));
            t.expect(rho(an.meet(a, b)) == m && rho(an.commutator(a, b)) == m
                         && rho(an.join(a, b)) == rho(an.join(rho(a), rho(b)))
                         && ((an.join(rho(a), rho(b)) == an.top())
                             == (an.join(a, b) == an.top())),
                     [&] { return ids({a, b}); });
          }
        }
      });
      run.run("radicals", "invariant under commutator powers", false, [&](Tally& t) {
        for (CongId a = 0; a < N; ++a) {
          for (std::size_t n = 0; n <= an.stabilization_index(a) + 1; ++n) {
            t.expect(rho(an.iterate(a, n)) == rho(a),
                     [&] { return ids({a}) + " power " + std::to_string(n); });
          }
        }
      });
    }

    void spectrum_suite(Runner& run, Spectrum const& sp, Spectrum const& all_pairs) {
      Analysis const&   an = sp.analysis();
      std::size_t const N  = an.size();
      run.run("spectrum", "prime test agrees with all pairs", false, [&](Tally& t) {
        for (CongId p = 0; p < N; ++p) {
          t.expect(sp.is_prime(p) == all_pairs.is_prime(p), [&] { return ids({p}); });
          if (!sp.is_prime(p) && p != an.top()) {
            t.expect(sp.prime_failure(p).has_value(), [&] { return "no witness for " + ids({p}); });
          }
        }
      });
      run.run("spectrum", "maximal congruences are prime", false, [&](Tally& t) {
        for (CongId m : sp.maximals()) {
          t.expect(sp.is_prime(m), [&] { return ids({m}); });
        }
      });
      run.run("spectrum", "clopens of Max from coprime pairs", false, [&](Tally& t) {
        std::set<PointSet> by_pairs;
        for (auto const& c : sp.clopens_of_max()) {
          by_pairs.insert(c.set);
        }
        auto const brute = sp.clopens_of_max_brute_force();
        t.expect(by_pairs == std::set<PointSet>(brute.begin(), brute.end()), [&] {
          return std::to_string(by_pairs.size()) + " by pairs, " + std::to_string(brute.size())
                 + " by enumeration";
        });
      });
      run.run("spectrum", "Max is T1", false, [&](Tally& t) {
        std::vector<PointSet> sub;
        for (CongId a = 0; a < N; ++a) {
          sub.push_back(sp.max_d_set(a));
        }
        t.expect(finite_topology_is_t1(sp.maximals().size(), sub), [] { return ""; });
      });
    }

    void reticulation_suite(Runner& run, Reticulation const& R) {
      Spectrum const&      sp = R.spectrum();
      Analysis const&      an = R.analysis();
      FiniteLattice const& L  = R.lattice();
      std::size_t const    N  = an.size();
      auto const           lam = [&](CongId x) { return R.lambda(x); };
      CongId const         nil = sp.nilradical();

      run.run("reticulation", "distributive", false,
              [&](Tally& t) { t.expect(L.is_distributive(), [] { return ""; }); });
      run.run("reticulation", "lambda preserves joins, meets and commutators", false, [&](Tally& t) {
        for (CongId a = 0; a < N; ++a) {
          for (CongId b = 0; b < N; ++b) {
            t.expect(lam(an.join(a, b)) == L.join(lam(a), lam(b))
                         && lam(an.meet(a, b)) == L.meet(lam(a), lam(b))
                         && lam(an.commutator(a, b)) == L.meet(lam(a), lam(b)),
                     [&] { return ids({a, b}); });
          }
        }
      });
      run.run("reticulation", "lambda detects top and bottom", false, [&](Tally& t) {
        for (CongId a = 0; a < N; ++a) {
          bool nilpotent = false;
          for (std::size_t k = 1; k <= an.stabilization_index(a) + 1; ++k) {
            nilpotent = nilpotent || an.iterate(a, k) == an.bottom();
          }
          bool const zero = lam(a) == L.bottom();
          t.expect((lam(a) == L.top()) == (a == an.top()) && zero == nilpotent
                       && zero == an.leq(a, nil)
                       && (!sp.is_semiprime() || zero == (a == an.bottom())),
                   [&] { return ids({a}); });
        }
      });
      run.run("reticulation", "lambda invariant under commutator powers", false, [&](Tally& t) {
        for (CongId a = 0; a < N; ++a) {
          for (std::size_t k = 1; k <= an.stabilization_index(a) + 1; ++k) {
            t.expect(lam(an.iterate(a, k)) == lam(a), [&] { return ids({a}); });
          }
        }
      });
      run.run("reticulation", "order of lambda matches radicals and powers", false, [&](Tally& t) {
        for (CongId a = 0; a < N; ++a) {
          for (CongId b = 0; b < N; ++b) {
            bool some_power = false;
            for (std::size_t n = 1; n <= an.stabilization_index(a) + 1 && !some_power; ++n) {
              some_power = an.leq(an.iterate(a, n), b);
            }
            bool const le = L.leq(lam(a), lam(b));
            t.expect(le == an.leq(sp.radical(a), sp.radical(b)) && le == some_power,
                     [&] { return ids({a, b}); });
          }
        }
      });
      run.run("reticulation", "star of joins, meets and commutators", false, [&](Tally& t) {
        for (CongId a = 0; a < N; ++a) {
          for (CongId b = 0; b < N; ++b) {
            LatticeIdeal const sa = R.star(a);
            LatticeIdeal const sb = R.star(b);
            LatticeIdeal       both{std::vector<bool>(L.size())};
            std::vector<std::size_t> gens;
            for (std::size_t x = 0; x < L.size(); ++x) {
              both.members[x] = sa.contains(x) && sb.contains(x);
              if (sa.contains(x) || sb.contains(x)) {
                gens.push_back(x);
              }
            }
            t.expect(R.star(an.commutator(a, b)) == both && R.star(an.meet(a, b)) == both
                         && R.star(an.join(a, b)) == ideal_generated(L, gens),
                     [&] { return ids({a, b}); });
          }
        }
      });
      run.run("reticulation", "star and costar", false, [&](Tally& t) {
        auto const ideals = all_ideals(L);
        for (CongId th = 0; th < N; ++th) {
          LatticeIdeal const s = R.star(th);
          t.expect(is_ideal(L, s) && R.costar(s) == sp.radical(th) && s == R.star(sp.radical(th))
                       && s == principal_ideal(L, lam(th)),
                   [&] { return ids({th}); });
          if (sp.is_prime(th)) {
            t.expect(R.costar(s) == th && is_prime_ideal(L, s),
                     [&] { return "prime " + ids({th}); });
            for (CongId a = 0; a < N; ++a) {
              t.expect(an.leq(a, th) == s.contains(lam(a)), [&] { return ids({th, a}); });
            }
          }
        }
        for (std::size_t i = 0; i < ideals.size(); ++i) {
          auto const&  I  = ideals[i];
          CongId const cs = R.costar(I);
          t.expect(R.star(cs) == I && sp.radical(cs) == cs
                       && (!is_prime_ideal(L, I) || sp.is_prime(cs)),
                   [&] { return "ideal (" + std::to_string(i) + "]"; });
          for (CongId a = 0; a < N; ++a) {
            t.expect(an.leq(a, cs) == I.contains(lam(a)),
                     [&] { return "ideal (" + std::to_string(i) + "], " + ids({a}); });
          }
        }
      });
      run.run("reticulation", "prime spectra correspond", false, [&](Tally& t) {
        auto const rep = check_spec_homeomorphism(R);
        t.expect(rep.passes() && rep.spec_size == rep.spec_id_size, [&] { return rep.failure; });
        t.expect(maximal_ideals(L).size() == sp.maximals().size(),
                 [] { return "maximal ideals and maximal congruences differ in number"; });
      });
    }

    void center_suite(Runner& run, Lifting const& lf) {
      Reticulation const&  R  = lf.reticulation();
      Spectrum const&      sp = lf.spectrum();
      Analysis const&      an = lf.analysis();
      FiniteLattice const& L  = R.lattice();
      BooleanCenter const& B  = lf.center();
      std::size_t const    N  = an.size();

      run.run("center", "complements are unique", false, [&](Tally& t) {
        for (CongId a : B.elements) {
          std::size_t count = 0;
          for (CongId b = 0; b < N; ++b) {
            count += an.join(a, b) == an.top() && an.meet(a, b) == an.bottom();
          }
          t.expect(count == 1, [&] { return ids({a}); });
        }
      });
      run.run("center", "complemented iff the annihilator complements", false, [&](Tally& t) {
        for (CongId a = 0; a < N; ++a) {
          CongId const perp = an.annihilator(a);
          bool const   via  = an.join(a, perp) == an.top() && an.commutator(a, perp) == an.bottom();
          t.expect(B.contains(a) == via && an.is_complemented(a) == B.contains(a),
                   [&] { return ids({a}); });
        }
      });
      run.run("center", "closed Boolean sublattice", false, [&](Tally& t) {
        t.expect(B.contains(an.bottom()) && B.contains(an.top()), [] { return "bounds"; });
        for (CongId a : B.elements) {
          t.expect(B.contains(B.negation(a)), [&] { return ids({a}); });
          for (CongId b : B.elements) {
            t.expect(B.contains(an.join(a, b)) && B.contains(an.meet(a, b)),
                     [&] { return ids({a, b}); });
          }
        }
      });
      run.run("center", "meet with a complemented congruence is the commutator", false, [&](Tally& t) {
        for (CongId a : B.elements) {
          for (CongId th = 0; th < N; ++th) {
            t.expect(an.meet(th, a) == an.commutator(th, a), [&] { return ids({a, th}); });
          }
        }
      });
      run.run("center", "joins with complemented congruences distribute", false, [&](Tally& t) {
        for (CongId a : B.elements) {
          for (CongId x = 0; x < N; ++x) {
            for (CongId y = x; y < N; ++y) {
              t.expect(an.join(an.meet(x, y), a) == an.meet(an.join(x, a), an.join(y, a)),
                       [&] { return ids({a, x, y}); });
            }
          }
        }
      });
      run.run("center", "coprime pairs with trivial commutator powers", false, [&](Tally& t) {
        for (CongId a = 0; a < N; ++a) {
          for (CongId b = 0; b < N; ++b) {
            if (an.join(a, b) != an.top()) {
              continue;
            }
            std::size_t const top_n =
                std::max(an.stabilization_index(a), an.stabilization_index(b)) + 1;
            for (std::size_t n = 0; n <= top_n; ++n) {
              CongId const x = an.iterate(a, n);
              CongId const y = an.iterate(b, n);
              if (an.commutator(x, y) == an.bottom()) {
                t.expect(B.contains(x) && B.contains(y),
                         [&] { return ids({a, b}) + " power " + std::to_string(n); });
              }
            }
          }
        }
      });
      run.run("center", "lambda embeds the center", false, [&](Tally& t) {
        std::set<std::size_t> image;
        for (CongId a : B.elements) {
          t.expect(L.is_complemented(R.lambda(a)), [&] { return ids({a}); });
          image.insert(R.lambda(a));
          t.expect(R.lambda(B.negation(a)) == *L.complement(R.lambda(a)),
                   [&] { return "negation " + ids({a}); });
        }
        t.expect(image.size() == B.size(), [] { return "lambda is not injective on the center"; });
      });
      auto const pres = lf.center_preservation();
      run.run("center", "center preservation conditions agree", false, [&](Tally& t) {
        std::set<std::size_t> image;
        for (CongId a : B.elements) {
          image.insert(R.lambda(a));
        }
        bool const surjective = image.size() == L.boolean_center().size();
        bool       iff        = true;
        for (CongId a = 0; a < N; ++a) {
          iff = iff && L.is_complemented(R.lambda(a)) == an.is_complemented(an.stable_iterate(a));
        }
        t.expect(surjective == pres.holds && iff == pres.holds, [&] {
          return std::string("surjective ") + (surjective ? "yes" : "no") + ", preserved "
                 + (pres.holds ? "yes" : "no");
        });
        t.expect(!(pres.star_property || pres.semiprime) || pres.holds,
                 [] { return "sufficient condition holds but the center is not preserved"; });
      });
      run.run("center", "D maps the center onto clopens of Spec iff preserved", false, [&](Tally& t) {
        auto const           clop = sp.clopens_of_spec_brute_force();
        std::set<PointSet>   image;
        bool                 into = true;
        for (CongId a : B.elements) {
          PointSet const d = sp.d_set(a);
          into = into && std::find(clop.begin(), clop.end(), d) != clop.end();
          image.insert(d);
        }
        t.expect(into && image.size() == B.size(), [] { return "D is not an embedding"; });
        bool const onto = image.size() == clop.size();
        t.expect(onto == pres.holds, [&] {
          return std::to_string(image.size()) + " of " + std::to_string(clop.size()) + " clopens hit";
        });
      });
    }

    void lifting_suite(Runner& run, Lifting const& lf) {
      Reticulation const& R  = lf.reticulation();
      Spectrum const&     sp = lf.spectrum();
      Analysis const&     an = lf.analysis();
      std::size_t const   N  = an.size();

      run.run("lifting", "quotient center by residuation and directly", false, [&](Tally& t) {
        for (CongId th = 0; th < N; ++th) {
          t.expect(lf.report(th).routes_agree, [&] { return ids({th}); });
        }
      });
      run.run("lifting", "projection image by interval and directly", false, [&](Tally& t) {
        for (CongId th = 0; th < N; ++th) {
          QuotientView const& qv = lf.quotient(th);
          for (CongId a = 0; a < N; ++a) {
            t.expect(qv.image(a) == qv.image_direct(a), [&] { return ids({th, a}); });
          }
        }
      });
      run.run("lifting", "residuation gives the quotient annihilator", false, [&](Tally& t) {
        for (CongId th = 0; th < N; ++th) {
          QuotientView const& qv   = lf.quotient(th);
          Analysis const&     qa   = qv.analysis();
          auto const          to_q = [&](CongId x) { return qa.id(qv.lattice()[x]); };
          for (CongId e = 0; e < N; ++e) {
            if (!an.leq(th, e)) {
              continue;
            }
            CongId const r = an.residuation(e, th);
            t.expect(qa.annihilator(to_q(qv.down(e))) == to_q(qv.down(r))
                         && an.leq(an.commutator(e, r), th),
                     [&] { return ids({th, e}); });
          }
        }
      });
      run.run("lifting", "ideal transfer through star", false, [&](Tally& t) {
        for (CongId th = 0; th < N; ++th) {
          t.expect(lf.cblp_star_transfer(th), [&] { return ids({th}); });
        }
        for (auto const& I : all_ideals(R.lattice())) {
          t.expect(lf.ideal_costar_transfer(I), [] { return "an ideal and its costar disagree"; });
        }
        t.expect(lf.algebra_star_transfer(), [] { return "algebra and lattice disagree"; });
      });
      run.run("lifting", "invariant under radicals", false, [&](Tally& t) {
        for (CongId th = 0; th < N; ++th) {
          t.expect(lf.radical_invariance(th), [&] { return ids({th}); });
          t.expect(lf.below_nilradical_cblp(th), [&] { return "below rho(Delta) " + ids({th}); });
          for (CongId c = 0; c < N; ++c) {
            t.expect(lf.equal_radical_transfer(th, c), [&] { return ids({th, c}); });
          }
        }
      });
      run.run("lifting", "descends along equal maximal intervals", false, [&](Tally& t) {
        for (CongId th = 0; th < N; ++th) {
          for (CongId c = 0; c < N; ++c) {
            t.expect(lf.max_interval_transfer(th, c), [&] { return ids({th, c}); });
          }
        }
      });
      run.run("lifting", "center of A/Rad matches clopens of Max", false, [&](Tally& t) {
        t.expect(lf.clop_max_of_rad_quotient(), [] { return "not an isomorphism"; });
        t.expect(lf.rad_projection_injective(), [] { return "projection to A/Rad not injective"; });
      });
      run.run("lifting", "Rad lifts iff the center maps onto clopens of Max", false, [&](Tally& t) {
        t.expect(lf.clop_max_criterion(), [&] {
          return std::string("Rad ") + (lf.has_cblp(sp.rad()) ? "lifts" : "does not lift");
        });
      });
      run.run("lifting", "hyperarchimedean algebras lift", false,
              [&](Tally& t) { t.expect(lf.hyperarchimedean_cblp(), [] { return ""; }); });
    }

    void characterization_suite(Runner& run, Lifting const& lf) {
      Reticulation const& R    = lf.reticulation();
      Analysis const&     an   = lf.analysis();
      std::size_t const   N    = an.size();
      bool const          expl = !lf.center_preservation().holds;
      FiniteLattice const& L   = R.lattice();

      run.run("characterization", "diamond commutes with star", expl, [&](Tally& t) {
        for (CongId th = 0; th < N; ++th) {
          t.expect(lf.diamond_star_commute(th), [&] { return ids({th}); });
        }
      });
      run.run("characterization", "regular congruences give regular ideals", false, [&](Tally& t) {
        for (CongId th = 0; th < N; ++th) {
          t.expect(lf.regular_star_regular(th), [&] { return ids({th}); });
        }
      });
      run.run("characterization", "regular ideals come from regular congruences", expl, [&](Tally& t) {
        for (auto const& I : all_ideals(L)) {
          if (!(ideal_diamond(L, I) == I)) {
            continue;
          }
          CongId const chi = lf.diamond(R.costar(I));
          t.expect(lf.is_regular(chi) && R.star(chi) == I,
                   [] { return "a regular ideal has no regular preimage"; });
        }
      });
      run.run("characterization", "four lifting conditions agree", expl, [&](Tally& t) {
        for (CongId th = 0; th < N; ++th) {
          Thm63Verdicts const v = lf.characterization(th);
          t.expect(v.agree(), [&] {
            return ids({th}) + " gives " + std::to_string(v.c1) + std::to_string(v.c2)
                   + std::to_string(v.c3) + std::to_string(v.c4);
          });
        }
      });
      run.run("characterization", "joins with regular congruences lift", false, [&](Tally& t) {
        for (CongId th = 0; th < N; ++th) {
          for (CongId c = 0; c < N; ++c) {
            t.expect(lf.regular_join_transfer(th, c), [&] { return ids({th, c}); });
          }
          t.expect(!lf.is_regular(th) || lf.has_cblp(th), [&] { return "regular " + ids({th}); });
        }
      });
      run.run("characterization", "meets with small-center congruences lift", false, [&](Tally& t) {
        for (CongId th = 0; th < N; ++th) {
          for (CongId c = 0; c < N; ++c) {
            t.expect(lf.noncoprime_meet_transfer(th, c), [&] { return ids({th, c}); });
          }
        }
      });
      run.run("characterization", "lifting descends from quotients by radical parts", false,
              [&](Tally& t) {
                for (CongId th = 0; th < N; ++th) {
                  t.expect(lf.quotient_cblp_descent(th), [&] {
                    return "A/" + ids({th}) + " lifts, A does not";
                  });
                }
              });
      run.run("characterization", "B-normality descends from quotients", false, [&](Tally& t) {
        for (CongId th = 0; th < N; ++th) {
          t.expect(lf.quotient_b_normal_descent(th), [&] { return ids({th}); });
        }
      });
      run.run("characterization", "B-normal iff every congruence lifts", false, [&](Tally& t) {
        t.expect(lf.b_normal_biconditional(), [&] {
          return std::string("B-normal ") + (lf.b_normal().holds ? "yes" : "no");
        });
      });
    }

    void orthogonal_suite(Runner& run, Lifting const& lf) {
      Spectrum const&   sp = lf.spectrum();
      Analysis const&   an = lf.analysis();
      std::size_t const N  = an.size();

      run.run("orthogonal", "disjointed lifts are orthogonal and exact", false, [&](Tally& t) {
        for (CongId th = 0; th < N; ++th) {
          if (!lf.has_cblp(th)) {
            continue;
          }
          QuotientView const& qv = lf.quotient(th);
          BooleanCenter const qc = boolean_center(qv.lattice());
          std::vector<std::vector<CongId>> families{qc.atoms};
          for (CongId q : qc.elements) {
            families.push_back({q, *qc.complement[q]});
          }
          for (auto const& fam : families) {
            auto const lifts = lf.lift_orthogonal(th, fam);
            bool       ok    = lifts.size() == fam.size();
            for (std::size_t i = 0; ok && i < lifts.size(); ++i) {
              ok = lf.center().contains(lifts[i]) && qv.image(lifts[i]) == fam[i];
              for (std::size_t j = 0; ok && j < i; ++j) {
                ok = an.meet(lifts[i], lifts[j]) == an.bottom()
                     && an.commutator(lifts[i], lifts[j]) == an.bottom();
              }
            }
            t.expect(ok, [&] { return ids({th}); });
          }
        }
      });
      run.run("orthogonal", "lifts below Rad are unique and keep atoms", false, [&](Tally& t) {
        for (CongId th = 0; th < N; ++th) {
          if (!an.leq(th, sp.rad())) {
            continue;
          }
          auto const rep = lf.orthogonal_uniqueness_and_atoms(th);
          t.expect(rep.passes(), [&] { return ids({th}) + ": " + rep.failure; });
        }
      });
      run.run("orthogonal", "complemented congruences below Rad", false,
              [&](Tally& t) { t.expect(lf.complemented_below_rad(), [] { return ""; }); });
    }

  }  // namespace

  AlgebraVerification verify_algebra(FiniteAlgebra const& A, VerifyOptions const& opts) {
    auto const          t0 = std::chrono::steady_clock::now();
    AlgebraVerification out;
    out.algebra = A.name();
    out.size    = A.size();
    Runner run(out);
    try {
      Analysis an(A, opts.analysis);
      out.con_size = an.size();
      congruence_suite(run, an, opts);
      bool const theory = an.surrogates().passes();
      if (!theory) {
        out.exploratory        = true;
        out.exploratory_reason = an.surrogates().failing();
      }
      commutator_suite(run, an, !theory);
      if (theory) {
        Spectrum     sp(an);
        Spectrum     all_pairs(an, true);
        Reticulation R(sp);
        Lifting      lf(R, LiftingOptions{opts.direct_quotient});
        radical_suite(run, sp);
        spectrum_suite(run, sp, all_pairs);
        reticulation_suite(run, R);
        center_suite(run, lf);
        lifting_suite(run, lf);
        if (!lf.center_preservation().holds) {
          out.exploratory        = true;
          out.exploratory_reason = "the reticulation does not preserve the Boolean center";
        }
        characterization_suite(run, lf);
        orthogonal_suite(run, lf);
      }
    } catch (Error const& e) {
      out.error = e.what();
    }
    out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return out;
  }

  nlohmann::json to_json(AlgebraVerification const& v) {
    nlohmann::json checks = nlohmann::json::array();
    for (auto const& c : v.checks) {
      checks.push_back({{"suite", c.suite},
                        {"name", c.name},
                        {"passed", c.passed},
                        {"cases", c.cases},
                        {"detail", c.detail},
                        {"exploratory", c.exploratory}});
    }
    return {{"algebra", v.algebra},
            {"size", v.size},
            {"congruences", v.con_size},
            {"exploratory", v.exploratory},
            {"exploratory_reason", v.exploratory_reason},
            {"error", v.error},
            {"passed", v.passed()},
            {"failures", v.failures()},
            {"seconds", v.seconds},
            {"checks", std::move(checks)}};
  }

}  // namespace conglab
