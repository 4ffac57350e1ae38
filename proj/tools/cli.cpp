#include "cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <future>
#include <iomanip>
#include <iostream>
#include <numeric>
#include <optional>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include "conglab/error.hpp"
#include "conglab/lifting.hpp"
#include "conglab/verify.hpp"

namespace conglab::cli {

  namespace {

    using nlohmann::json;

    struct Settings {
      bool            as_json         = false;
      bool            all_pairs       = false;
      bool            direct_quotient = false;
      AnalysisOptions analysis;
    };

    // "N" sets both caps; otherwise comma separated con=N and matrix=N.
    void apply_cap_env(char const* value, AnalysisOptions& opts) {
      std::string const s(value);
      auto const        parse_count = [&](std::string const& v) {
        std::size_t pos = 0;
        unsigned long long n = 0;
        try {
          n = std::stoull(v, &pos);
        } catch (std::exception const&) {
          pos = 0;
        }
        if (pos != v.size() || v.empty() || n == 0) {
          throw Error(ErrorKind::MalformedDoc, "CONGRUENCE_LAB_CAP: bad count '" + v + "'");
        }
        return static_cast<std::size_t>(n);
      };
      if (s.find('=') == std::string::npos) {
        opts.con_cap = opts.matrix_cap = parse_count(s);
        return;
      }
      std::stringstream ss(s);
      std::string       item;
      while (std::getline(ss, item, ',')) {
        auto const eq = item.find('=');
        if (eq == std::string::npos) {
          throw Error(ErrorKind::MalformedDoc, "CONGRUENCE_LAB_CAP: expected key=value in '" + item + "'");
        }
        std::string const key = item.substr(0, eq);
        std::size_t const n   = parse_count(item.substr(eq + 1));
        if (key == "con") {
          opts.con_cap = n;
        } else if (key == "matrix") {
          opts.matrix_cap = n;
        } else {
          throw Error(ErrorKind::MalformedDoc, "CONGRUENCE_LAB_CAP: unknown key '" + key + "'");
        }
      }
    }

    // Delta, nabla, theta_d for Z_n inputs, blocks otherwise.
    std::string label(FiniteAlgebra const& A, Congruence const& c) {
      if (c.is_identity()) {
        return "Δ";
      }
      if (c.is_total()) {
        return "∇";
      }
      static std::regex const ring(R"(Z(\d+))");
      std::smatch             m;
      if (std::regex_match(A.name(), m, ring) && std::stoul(m[1]) == A.size()) {
        std::size_t const n = A.size();
        for (std::size_t d = 2; d < n; ++d) {
          if (n % d != 0) {
            continue;
          }
          bool match = true;
          for (std::size_t x = 0; x < n && match; ++x) {
            match = c.representative(static_cast<Element>(x)) == x % d;
          }
          if (match) {
            return "θ_" + std::to_string(d);
          }
        }
      }
      return serialize_congruence(c).dump();
    }

    std::string label(Analysis const& an, CongId id) {
      return label(an.algebra(), an[id]);
    }

    std::string yes_no(bool b) {
      return b ? "yes" : "no";
    }

    json blocks(Analysis const& an, CongId id) {
      return serialize_congruence(an[id]);
    }

    json blocks_of(Analysis const& an, std::vector<CongId> const& xs) {
      json arr = json::array();
      for (CongId x : xs) {
        arr.push_back(blocks(an, x));
      }
      return arr;
    }

    Congruence parse_arg(FiniteAlgebra const& A, std::string const& text) {
      json doc;
      try {
        doc = json::parse(text);
      } catch (json::parse_error const& e) {
        throw Error(ErrorKind::MalformedDoc, "congruence argument: " + std::string(e.what()));
      }
      return parse_congruence(A, doc);
    }

    ////////////////////////////////////////////////////////////////////////
    // Commands
    ////////////////////////////////////////////////////////////////////////

    int cmd_congruences(Settings const& s, std::string const& path, std::ostream& out) {
      FiniteAlgebra const     A = load_algebra(path);
      CongruenceLattice const L = CongruenceLattice::compute(A, s.analysis.con_cap);
      if (s.as_json) {
        json elems = json::array();
        json covers = json::array();
        for (CongId i = 0; i < L.size(); ++i) {
          elems.push_back(serialize_congruence(L[i]));
          for (CongId j : L.upper_covers(i)) {
            covers.push_back({i, j});
          }
        }
        out << json{{"algebra", A.name()},
                    {"size", A.size()},
                    {"congruences", std::move(elems)},
                    {"bottom", L.bottom()},
                    {"top", L.top()},
                    {"join_irreducibles", L.join_irreducibles()},
                    {"covers", std::move(covers)}}
                   .dump(2)
            << '\n';
        return exit_ok;
      }
      if (L.size() == 1) {
        out << "Con = {Δ=∇}\n";
        return exit_ok;
      }
      out << "Con(" << A.name() << "): " << L.size() << " congruences\n";
      for (CongId i = 0; i < L.size(); ++i) {
        out << "  #" << i << "  " << label(A, L[i]) << "  " << serialize_congruence(L[i]).dump()
            << '\n';
      }
      out << "join-irreducible:";
      for (CongId j : L.join_irreducibles()) {
        out << " #" << j;
      }
      out << "\ncovers:";
      for (CongId i = 0; i < L.size(); ++i) {
        for (CongId j : L.upper_covers(i)) {
          out << " #" << i << "<#" << j;
        }
      }
      out << '\n';
      return exit_ok;
    }

    int cmd_commutator(Settings const& s, std::string const& path, std::string const& a_text,
                       std::string const& b_text, std::ostream& out) {
      FiniteAlgebra const A = load_algebra(path);
      Congruence const    a = parse_arg(A, a_text);
      Congruence const    b = parse_arg(A, b_text);
      Congruence const    c = commutator(A, a, b, s.analysis.matrix_cap);
      if (s.as_json) {
        out << json{{"alpha", serialize_congruence(a)},
                    {"beta", serialize_congruence(b)},
                    {"commutator", serialize_congruence(c)}}
                   .dump(2)
            << '\n';
      } else {
        out << "[" << label(A, a) << ", " << label(A, b) << "] = " << label(A, c) << '\n'
            << serialize_congruence(c).dump() << '\n';
      }
      return exit_ok;
    }

    json spectrum_json(Spectrum const& sp) {
      Analysis const& an = sp.analysis();
      return {{"primes", blocks_of(an, sp.primes())},
              {"maximals", blocks_of(an, sp.maximals())},
              {"rad", blocks(an, sp.rad())},
              {"nilradical", blocks(an, sp.nilradical())},
              {"semiprime", sp.is_semiprime()},
              {"hyperarchimedean", sp.is_hyperarchimedean()}};
    }

    void spectrum_text(Spectrum const& sp, std::ostream& out) {
      Analysis const&    an   = sp.analysis();
      std::string const& name = an.algebra().name();
      out << "Spec(" << name << "): " << sp.primes().size() << " primes\n";
      for (CongId p : sp.primes()) {
        out << "  " << label(an, p) << '\n';
      }
      out << "Max(" << name << "): " << sp.maximals().size() << " maximal\n";
      for (CongId m : sp.maximals()) {
        out << "  " << label(an, m) << '\n';
      }
      out << "Rad = " << label(an, sp.rad()) << '\n'
          << "rho(Δ) = " << label(an, sp.nilradical()) << '\n'
          << "semiprime: " << yes_no(sp.is_semiprime()) << '\n'
          << "hyperarchimedean: " << yes_no(sp.is_hyperarchimedean()) << '\n';
    }

    json reticulation_json(Reticulation const& R) {
      Analysis const& an  = R.analysis();
      auto const      cp  = preserves_boolean_center(R);
      auto const      hom = check_spec_homeomorphism(R);
      json            lam = json::array();
      for (CongId a = 0; a < an.size(); ++a) {
        lam.push_back(R.lambda(a));
      }
      return {{"lattice", R.lattice().to_json()},
              {"elements", blocks_of(an, R.elements())},
              {"lambda", std::move(lam)},
              {"center", R.lattice().boolean_center()},
              {"preserves_center", cp.holds},
              {"violating", cp.violating ? blocks(an, *cp.violating) : json(nullptr)},
              {"star_property", cp.star_property},
              {"semiprime", cp.semiprime},
              {"spectra_correspond", hom.passes()},
              {"spec_size", hom.spec_size},
              {"prime_ideals", hom.spec_id_size},
              {"mismatch", hom.failure}};
    }

    void reticulation_text(Reticulation const& R, std::ostream& out) {
      Analysis const&      an = R.analysis();
      FiniteLattice const& L  = R.lattice();
      auto const           cp = preserves_boolean_center(R);
      auto const           hm = check_spec_homeomorphism(R);
      out << "L(" << an.algebra().name() << "): " << R.size() << " elements\n";
      for (std::size_t x = 0; x < R.size(); ++x) {
        out << "  " << x << " = " << label(an, R.element(x));
        if (x == L.bottom()) {
          out << "  (0)";
        }
        if (x == L.top()) {
          out << "  (1)";
        }
        out << '\n';
      }
      out << "lambda:";
      for (CongId a = 0; a < an.size(); ++a) {
        out << ' ' << label(an, a) << "->" << R.lambda(a);
      }
      out << "\nB(L):";
      for (std::size_t x : L.boolean_center()) {
        out << ' ' << x;
      }
      out << "\ncenter preserved: " << yes_no(cp.holds);
      if (cp.violating) {
        out << " (fails at " << label(an, *cp.violating) << ")";
      }
      out << "\nspectra correspond: " << yes_no(hm.passes()) << " (" << hm.spec_size
          << " primes, " << hm.spec_id_size << " prime ideals)\n";
      if (!hm.passes()) {
        out << "  mismatch: " << hm.failure << '\n';
      }
    }

    json center_json(Lifting const& lf) {
      Analysis const&      an = lf.analysis();
      BooleanCenter const& B  = lf.center();
      json                 comp = json::array();
      for (CongId a : B.elements) {
        comp.push_back(blocks(an, B.negation(a)));
      }
      return {{"elements", blocks_of(an, B.elements)},
              {"complements", std::move(comp)},
              {"atoms", blocks_of(an, B.atoms)}};
    }

    void center_text(Lifting const& lf, std::ostream& out) {
      Analysis const&      an = lf.analysis();
      BooleanCenter const& B  = lf.center();
      out << "B(Con(" << an.algebra().name() << ")): " << B.size() << " elements\n";
      for (CongId a : B.elements) {
        out << "  " << label(an, a) << "  complement " << label(an, B.negation(a)) << '\n';
      }
      out << "atoms:";
      for (CongId a : B.atoms) {
        out << ' ' << label(an, a);
      }
      out << '\n';
    }

    json cblp_json(Lifting const& lf, std::vector<CongId> const& thetas, bool with_conditions) {
      json reports = json::array();
      bool all     = true;
      for (CongId t : thetas) {
        LiftingReport const rep = with_conditions ? lf.full_report(t) : lf.report(t);
        all                     = all && rep.cblp;
        reports.push_back(lf.to_json(rep));
      }
      return {{"reports", std::move(reports)}, {"all", all}};
    }

    void cblp_text(Lifting const& lf, std::vector<CongId> const& thetas, bool with_conditions,
                   bool summary, std::ostream& out) {
      Analysis const& an   = lf.analysis();
      std::size_t     good = 0;
      for (CongId t : thetas) {
        LiftingReport const rep = with_conditions ? lf.full_report(t) : lf.report(t);
        good += rep.cblp;
        out << label(an, t) << ": ";
        if (rep.cblp) {
          out << "CBLP";
        } else {
          out << "no CBLP, " << label(an, *rep.counterexample) << " (as a class above "
              << label(an, t) << ") has no complemented lift";
        }
        out << "; diamond " << label(an, rep.diamond) << (rep.regular ? ", regular" : "") << '\n';
        if (rep.thm63) {
          out << "  conditions: c1 " << yes_no(rep.thm63->c1) << ", c2 " << yes_no(rep.thm63->c2)
              << ", c3 " << yes_no(rep.thm63->c3) << ", c4 " << yes_no(rep.thm63->c4)
              << (rep.thm63->hypotheses_met ? "" : " (exploratory)") << '\n';
        }
      }
      if (summary) {
        if (good == thetas.size()) {
          out << "all " << thetas.size() << " congruences: CBLP\n";
        } else {
          out << good << " of " << thetas.size() << " congruences: CBLP\n";
        }
      }
    }

    struct Stack {
      explicit Stack(FiniteAlgebra A, Settings const& s)
          : an(std::move(A), s.analysis),
            sp((an.require_theory(), an), s.all_pairs),
            R(sp),
            lf(R, LiftingOptions{s.direct_quotient}) {}
      Analysis     an;
      Spectrum     sp;
      Reticulation R;
      Lifting      lf;
    };

    int cmd_theory(Settings const& s, std::string const& command, std::string const& path,
                   std::optional<std::string> const& theta_text, std::ostream& out) {
      Stack const st(load_algebra(path), s);
      if (command == "spectrum") {
        if (s.as_json) {
          out << spectrum_json(st.sp).dump(2) << '\n';
        } else {
          spectrum_text(st.sp, out);
        }
      } else if (command == "reticulation") {
        if (s.as_json) {
          out << reticulation_json(st.R).dump(2) << '\n';
        } else {
          reticulation_text(st.R, out);
        }
      } else if (command == "center") {
        if (s.as_json) {
          out << center_json(st.lf).dump(2) << '\n';
        } else {
          center_text(st.lf, out);
        }
      } else if (command == "cblp") {
        std::vector<CongId> thetas;
        if (theta_text) {
          thetas.push_back(st.an.id(parse_arg(st.an.algebra(), *theta_text)));
        } else {
          thetas.resize(st.an.size());
          std::iota(thetas.begin(), thetas.end(), CongId{0});
        }
        bool const single = theta_text.has_value();
        if (s.as_json) {
          out << cblp_json(st.lf, thetas, single).dump(2) << '\n';
        } else {
          cblp_text(st.lf, thetas, single, !single, out);
        }
      } else {  // report
        json doc = {{"algebra", st.an.algebra().name()},
                    {"size", st.an.algebra().size()},
                    {"congruences", blocks_of(st.an, [&] {
                       std::vector<CongId> all(st.an.size());
                       std::iota(all.begin(), all.end(), CongId{0});
                       return all;
                     }())},
                    {"spectrum", spectrum_json(st.sp)},
                    {"reticulation", reticulation_json(st.R)},
                    {"center", center_json(st.lf)}};
        std::vector<CongId> thetas(st.an.size());
        std::iota(thetas.begin(), thetas.end(), CongId{0});
        doc["cblp"] = cblp_json(st.lf, thetas, false);
        if (s.as_json) {
          out << doc.dump(2) << '\n';
        } else {
          out << "Con(" << st.an.algebra().name() << "): " << st.an.size() << " congruences\n\n";
          spectrum_text(st.sp, out);
          out << '\n';
          reticulation_text(st.R, out);
          out << '\n';
          center_text(st.lf, out);
          out << '\n';
          cblp_text(st.lf, thetas, false, true, out);
        }
      }
      return exit_ok;
    }

    int cmd_verify(Settings const& s, std::vector<std::string> const& paths, unsigned jobs,
                   std::ostream& out) {
      struct Outcome {
        std::string         path;
        std::string         load_error;
        AlgebraVerification result;
      };
      VerifyOptions vo;
      vo.analysis        = s.analysis;
      vo.direct_quotient = s.direct_quotient;
      auto const one     = [&](std::string const& path) {
        Outcome o;
        o.path = path;
        try {
          o.result = verify_algebra(load_algebra(path), vo);
        } catch (Error const& e) {
          o.load_error = e.what();
        }
        return o;
      };
      std::vector<Outcome> outcomes;
      for (std::size_t i = 0; i < paths.size(); i += std::max(jobs, 1u)) {
        std::vector<std::future<Outcome>> batch;
        for (std::size_t j = i; j < std::min(paths.size(), i + std::max(jobs, 1u)); ++j) {
          batch.push_back(std::async(jobs > 1 ? std::launch::async : std::launch::deferred, one,
                                     paths[j]));
        }
        for (auto& f : batch) {
          outcomes.push_back(f.get());
        }
      }

      bool input_error = false;
      bool falsified   = false;
      for (auto const& o : outcomes) {
        input_error = input_error || !o.load_error.empty() || !o.result.error.empty();
        falsified   = falsified || (o.load_error.empty() && o.result.failures() > 0);
      }
      if (s.as_json) {
        json results = json::array();
        for (auto const& o : outcomes) {
          json r    = o.load_error.empty() ? to_json(o.result) : json{{"error", o.load_error}};
          r["path"] = o.path;
          results.push_back(std::move(r));
        }
        out << json{{"results", std::move(results)}, {"passed", !input_error && !falsified}}.dump(2)
            << '\n';
      } else {
        std::size_t total_failures = 0;
        for (auto const& o : outcomes) {
          if (!o.load_error.empty()) {
            out << "== " << o.path << " ==\nERROR " << o.load_error << "\n\n";
            continue;
          }
          auto const& v = o.result;
          out << "== " << v.algebra << " (" << o.path << "): " << v.size << " elements, "
              << v.con_size << " congruences ==\n";
          for (auto const& c : v.checks) {
            if (c.exploratory) {
              continue;
            }
            out << (c.passed ? "PASS " : "FAIL ") << c.suite << ": " << c.name << " [" << c.cases
                << "]";
            if (!c.passed) {
              out << "  " << c.detail;
            }
            out << '\n';
          }
          if (v.exploratory) {
            out << "EXPLORATORY: " << v.exploratory_reason << '\n';
            for (auto const& c : v.checks) {
              if (c.exploratory) {
                out << "  " << (c.passed ? "holds " : "fails ") << c.suite << ": " << c.name
                    << " [" << c.cases << "]";
                if (!c.passed) {
                  out << "  " << c.detail;
                }
                out << '\n';
              }
            }
          }
          if (!v.error.empty()) {
            out << "ERROR " << v.error << '\n';
          }
          out << (v.passed() ? "PASS" : "FAIL") << " " << v.algebra << " in " << std::fixed
              << std::setprecision(3) << v.seconds << " s\n\n";
          total_failures += v.failures();
        }
        out << outcomes.size() << " algebras, " << total_failures << " failed checks\n";
      }
      if (input_error) {
        return exit_input_error;
      }
      return falsified ? exit_falsified : exit_ok;
    }

    int exit_code_for(ErrorKind kind) {
      switch (kind) {
        case ErrorKind::TheoryHypothesisFailed:
        case ErrorKind::HypothesisNotMet:
        case ErrorKind::NoCBLP:
          return exit_hypothesis;
        default:
          return exit_input_error;
      }
    }

  }  // namespace

  int run(int argc, char const* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Congruence lattices, commutators, spectra and Boolean lifting for finite algebras",
                 "conglab"};
    app.require_subcommand(1);

    Settings    s;
    std::size_t cap_con    = s.analysis.con_cap;
    std::size_t cap_matrix = s.analysis.matrix_cap;
    unsigned    jobs       = 1;
    app.add_flag("--json", s.as_json, "Emit JSON");
    app.add_option("--cap-con", cap_con, "Largest Con(A) to enumerate")->check(CLI::PositiveNumber);
    app.add_option("--cap-matrix", cap_matrix, "Largest matrix subalgebra for one commutator")
        ->check(CLI::PositiveNumber);
    app.add_flag("--oracle-all-pairs", s.all_pairs, "Test primality on all pairs of congruences");
    app.add_flag("--oracle-direct-quotient", s.direct_quotient,
                 "Take quotient centers from A/theta directly");
    app.add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);

    std::string                path;
    std::string                alpha, beta;
    std::optional<std::string> theta;
    std::vector<std::string>   paths;

    auto* congruences = app.add_subcommand("congruences", "List Con(A) with its Hasse diagram");
    congruences->add_option("path", path, "Algebra document")->required();
    auto* comm = app.add_subcommand("commutator", "Compute [alpha, beta]");
    comm->add_option("path", path, "Algebra document")->required();
    comm->add_option("alpha", alpha, "Block array")->required();
    comm->add_option("beta", beta, "Block array")->required();
    std::vector<CLI::App*> theory;
    for (auto const* name : {"spectrum", "reticulation", "center", "report"}) {
      auto* sub = app.add_subcommand(name);
      sub->add_option("path", path, "Algebra document")->required();
      theory.push_back(sub);
    }
    theory[0]->description("Prime and maximal congruences, radicals");
    theory[1]->description("The reticulation lattice and its spectrum");
    theory[2]->description("Complemented congruences");
    theory[3]->description("Every analysis for one algebra");
    auto* cblp = app.add_subcommand("cblp", "Decide the Boolean lifting property");
    cblp->add_option("path", path, "Algebra document")->required();
    cblp->add_option("theta", theta, "Block array; every congruence when omitted");
    theory.push_back(cblp);
    auto* verify = app.add_subcommand("verify", "Run every property suite");
    verify->add_option("paths", paths, "Algebra documents")->required();
    for (auto* sub : app.get_subcommands([](CLI::App*) { return true; })) {
      sub->fallthrough();
    }

    try {
      app.parse(argc, argv);
    } catch (CLI::CallForHelp const& e) {
      return app.exit(e, out, err);
    } catch (CLI::CallForAllHelp const& e) {
      return app.exit(e, out, err);
    } catch (CLI::ParseError const& e) {
      app.exit(e, out, err);
      return exit_input_error;
    }

    try {
      s.analysis.con_cap    = cap_con;
      s.analysis.matrix_cap = cap_matrix;
      s.analysis.jobs       = jobs;
      if (char const* env = std::getenv("CONGRUENCE_LAB_CAP")) {
        apply_cap_env(env, s.analysis);
      }
      if (congruences->parsed()) {
        return cmd_congruences(s, path, out);
      }
      if (comm->parsed()) {
        return cmd_commutator(s, path, alpha, beta, out);
      }
      if (verify->parsed()) {
        return cmd_verify(s, paths, jobs, out);
      }
      for (auto* sub : theory) {
        if (sub->parsed()) {
          return cmd_theory(s, sub->get_name(), path, theta, out);
        }
      }
    } catch (Error const& e) {
      err << e.what() << '\n';
      return exit_code_for(e.kind());
    } catch (nlohmann::json::exception const& e) {
      err << "MalformedDoc: " << e.what() << '\n';
      return exit_input_error;
    }
    return exit_input_error;
  }

}  // namespace conglab::cli
