#include "conglab/lifting.hpp"

#include <algorithm>
#include <set>

#include "conglab/error.hpp"

namespace conglab {

  CongId BooleanCenter::negation(CongId a) const {
    if (!contains(a)) {
      throw Error(ErrorKind::NotOrthogonal, "#" + std::to_string(a) + " is not complemented");
    }
    return *complement[a];
  }

  BooleanCenter boolean_center(CongruenceLattice const& L) {
    BooleanCenter B;
    std::size_t const N = L.size();
    B.complement.resize(N);
    for (CongId a = 0; a < N; ++a) {
      for (CongId b = 0; b < N; ++b) {
        if (L.join(a, b) == L.top() && L.meet(a, b) == L.bottom()) {
          B.complement[a] = b;
          B.elements.push_back(a);
          break;
        }
      }
    }
    for (CongId a : B.elements) {
      if (a == L.bottom()) {
        continue;
      }
      bool minimal = true;
      for (CongId b : B.elements) {
        if (b != a && b != L.bottom() && L.leq(b, a)) {
          minimal = false;
          break;
        }
      }
      if (minimal) {
        B.atoms.push_back(a);
      }
    }
    return B;
  }

  ////////////////////////////////////////////////////////////////////////
  // QuotientView
  ////////////////////////////////////////////////////////////////////////

  QuotientView::QuotientView(Analysis const& an, CongId theta)
      : _an(&an),
        _theta(theta),
        _algebra(quotient(an.algebra(), an[theta])),
        _map(quotient_map(an[theta])),
        _lattice(CongruenceLattice::compute(_algebra, an.options().con_cap)) {
    std::size_t const N = an.size();
    _down.assign(N, static_cast<CongId>(N));
    _up.assign(_lattice.size(), 0);
    std::vector<Element> labels(_algebra.size());
    std::size_t          hits = 0;
    for (CongId eps = 0; eps < N; ++eps) {
      if (!an.leq(theta, eps)) {
        continue;
      }
      for (std::size_t a = 0; a < _map.size(); ++a) {
        labels[_map[a]] = an[eps].representative(static_cast<Element>(a));
      }
      CongId q   = _lattice.index_of(Congruence::from_labels(_algebra.fingerprint(), labels));
      _down[eps] = q;
      _up[q]     = eps;
      ++hits;
    }
    if (hits != _lattice.size()) {
      throw Error(ErrorKind::NotACongruence,
                  "interval above theta does not match Con(A/theta)");
    }
  }

  CongId QuotientView::down(CongId eps) const {
    if (_down[eps] >= _an->size()) {
      throw Error(ErrorKind::NotACongruence, "congruence is not above theta");
    }
    return _down[eps];
  }

  CongId QuotientView::image(CongId alpha) const {
    return _down[_an->join(alpha, _theta)];
  }

  CongId QuotientView::image_direct(CongId alpha) const {
    Congruence const&                        c = (*_an)[alpha];
    std::vector<std::pair<Element, Element>> pairs;
    for (std::size_t a = 0; a < _map.size(); ++a) {
      Element r = c.representative(static_cast<Element>(a));
      if (_map[a] != _map[r]) {
        pairs.emplace_back(_map[r], _map[a]);
      }
    }
    return _lattice.index_of(generated_congruence(_algebra, pairs));
  }

  Analysis const& QuotientView::analysis() const {
    if (!_analysis) {
      _analysis = std::make_unique<Analysis>(_algebra, _an->options());
    }
    return *_analysis;
  }

  ////////////////////////////////////////////////////////////////////////
  // Lifting
  ////////////////////////////////////////////////////////////////////////

  Lifting::Lifting(Reticulation const& R, LiftingOptions opts)
      : _R(&R),
        _opts(opts),
        _center(boolean_center(R.analysis().lattice())),
        _preservation(preserves_boolean_center(R)),
        _quotients(R.analysis().size()),
        _reports(R.analysis().size()) {}

  Lifting::~Lifting() = default;

  QuotientView const& Lifting::quotient(CongId theta) const {
    if (!_quotients[theta]) {
      _quotients[theta] = std::make_unique<QuotientView>(analysis(), theta);
    }
    return *_quotients[theta];
  }

  CongId Lifting::projection_image(CongId theta, CongId alpha) const {
    QuotientView const& qv = quotient(theta);
    CongId const        a  = qv.image(alpha);
    if (a != qv.image_direct(alpha)) {
      throw Error(ErrorKind::NotACongruence, "projection image differs between routes");
    }
    return a;
  }

  bool Lifting::complemented_in_interval(CongId lo, CongId eps) const {
    Analysis const& an = analysis();
    for (CongId chi = 0; chi < an.size(); ++chi) {
      if (an.leq(lo, chi) && an.join(eps, chi) == an.top() && an.meet(eps, chi) == lo) {
        return true;
      }
    }
    return false;
  }

  std::vector<CongId> Lifting::center_above(CongId lo) const {
    Analysis const&     an = analysis();
    std::vector<CongId> out;
    for (CongId eps = 0; eps < an.size(); ++eps) {
      if (an.leq(lo, eps) && complemented_in_interval(lo, eps)) {
        out.push_back(eps);
      }
    }
    return out;
  }

  LiftingReport const& Lifting::report(CongId theta) const {
    if (_reports[theta]) {
      return *_reports[theta];
    }
    Analysis const&     an = analysis();
    QuotientView const& qv = quotient(theta);
    LiftingReport       rep;
    rep.theta = theta;
    for (CongId eps = 0; eps < an.size(); ++eps) {
      if (an.leq(theta, eps) && an.join(eps, an.residuation(eps, theta)) == an.top()) {
        rep.center_by_residuation.push_back(eps);
      }
    }
    BooleanCenter const qc = boolean_center(qv.lattice());
    for (CongId q : qc.elements) {
      rep.center_direct.push_back(qv.up(q));
    }
    std::sort(rep.center_direct.begin(), rep.center_direct.end());
    rep.routes_agree = rep.center_direct == rep.center_by_residuation;

    auto const& center = _opts.direct_quotient ? rep.center_direct : rep.center_by_residuation;
    for (CongId eps : center) {
      auto it = std::find_if(_center.elements.begin(), _center.elements.end(),
                             [&](CongId a) { return an.join(a, theta) == eps; });
      if (it == _center.elements.end()) {
        rep.cblp = false;
        if (!rep.counterexample) {
          rep.counterexample = eps;
        }
      } else {
        rep.witnesses.emplace_back(eps, *it);
      }
    }
    rep.diamond      = diamond(theta);
    rep.regular      = rep.diamond == theta;
    _reports[theta]  = std::move(rep);
    return *_reports[theta];
  }

  bool Lifting::algebra_has_cblp() const {
    for (CongId t = 0; t < analysis().size(); ++t) {
      if (!has_cblp(t)) {
        return false;
      }
    }
    return true;
  }

  CongId Lifting::diamond(CongId theta) const {
    Analysis const& an  = analysis();
    CongId          acc = an.bottom();
    for (CongId a : _center.elements) {
      if (an.leq(a, theta)) {
        acc = an.join(acc, a);
      }
    }
    return acc;
  }

  Thm63Verdicts Lifting::characterization(CongId theta) const {
    Analysis const& an = analysis();
    Thm63Verdicts   v;
    v.hypotheses_met = _preservation.holds;
    v.c1             = has_cblp(theta);
    auto split       = [&](CongId phi, CongId psi) {
      CongId const tp = an.join(theta, phi);
      CongId const ts = an.join(theta, psi);
      for (CongId a : _center.elements) {
        if (an.leq(a, tp) && an.leq(*_center.complement[a], ts)) {
          return true;
        }
      }
      return false;
    };
    for (CongId phi = 0; phi < an.size(); ++phi) {
      for (CongId psi = 0; psi < an.size(); ++psi) {
        if (an.join(phi, psi) != an.top()) {
          continue;
        }
        CongId const c = an.commutator(phi, psi);
        if (!an.leq(c, theta)) {
          continue;
        }
        bool const ok = split(phi, psi);
        v.c2          = v.c2 && ok;
        if (c == theta) {
          v.c3 = v.c3 && ok;
        }
      }
    }
    for (CongId phi : spectrum().maximals()) {
      if (center_above(an.join(theta, diamond(phi))).size() > 2) {
        v.c4 = false;
      }
    }
    return v;
  }

  LiftingReport Lifting::full_report(CongId theta) const {
    LiftingReport rep = report(theta);
    rep.thm63         = characterization(theta);
    return rep;
  }

  bool Lifting::cblp_above(CongId lo, CongId psi) const {
    Analysis const& an    = analysis();
    auto const      base  = center_above(lo);
    for (CongId eps : center_above(psi)) {
      bool found = std::any_of(base.begin(), base.end(),
                               [&](CongId a) { return an.join(a, psi) == eps; });
      if (!found) {
        return false;
      }
    }
    return true;
  }

  bool Lifting::b_normal_above(CongId lo) const {
    Analysis const& an = analysis();
    auto const      B  = center_above(lo);
    for (CongId chi = 0; chi < an.size(); ++chi) {
      if (!an.leq(lo, chi)) {
        continue;
      }
      for (CongId eps = 0; eps < an.size(); ++eps) {
        if (!an.leq(lo, eps) || an.join(chi, eps) != an.top()) {
          continue;
        }
        bool found = false;
        for (CongId a : B) {
          if (an.join(chi, a) != an.top()) {
            continue;
          }
          for (CongId b : B) {
            // Commutator of A/lo through the projection.
            if (an.join(eps, b) == an.top() && an.join(an.commutator(a, b), lo) == lo) {
              found = true;
              break;
            }
          }
          if (found) {
            break;
          }
        }
        if (!found) {
          return false;
        }
      }
    }
    return true;
  }

  BNormalReport Lifting::b_normal() const {
    Analysis const& an = analysis();
    BNormalReport   rep;
    for (CongId chi = 0; chi < an.size() && rep.holds; ++chi) {
      for (CongId eps = 0; eps < an.size() && rep.holds; ++eps) {
        if (an.join(chi, eps) != an.top()) {
          continue;
        }
        bool found = false;
        for (CongId a : _center.elements) {
          if (an.join(chi, a) != an.top()) {
            continue;
          }
          for (CongId b : _center.elements) {
            if (an.join(eps, b) == an.top() && an.commutator(a, b) == an.bottom()) {
              found = true;
              break;
            }
          }
          if (found) {
            break;
          }
        }
        if (!found) {
          rep.holds   = false;
          rep.failure = std::make_pair(chi, eps);
        }
      }
    }
    return rep;
  }

  ////////////////////////////////////////////////////////////////////////
  // Transfer checks
  ////////////////////////////////////////////////////////////////////////

  bool Lifting::cblp_star_transfer(CongId theta) const {
    return has_cblp(theta) == has_id_blp(_R->lattice(), _R->star(theta)).holds;
  }

  bool Lifting::ideal_costar_transfer(LatticeIdeal const& I) const {
    return has_id_blp(_R->lattice(), I).holds == has_cblp(_R->costar(I));
  }

  bool Lifting::algebra_star_transfer() const {
    bool lattice_side = true;
    for (auto const& I : all_ideals(_R->lattice())) {
      lattice_side = lattice_side && has_id_blp(_R->lattice(), I).holds;
    }
    return lattice_side == algebra_has_cblp();
  }

  bool Lifting::radical_invariance(CongId theta) const {
    return has_cblp(theta) == has_cblp(spectrum().radical(theta));
  }

  bool Lifting::equal_radical_transfer(CongId theta, CongId chi) const {
    if (spectrum().radical(theta) != spectrum().radical(chi)
        && _R->lambda(theta) != _R->lambda(chi)) {
      return true;
    }
    return has_cblp(theta) == has_cblp(chi);
  }

  bool Lifting::below_nilradical_cblp(CongId theta) const {
    return !analysis().leq(theta, spectrum().nilradical()) || has_cblp(theta);
  }

  bool Lifting::max_interval_transfer(CongId theta, CongId chi) const {
    Analysis const& an = analysis();
    if (!an.leq(theta, chi)) {
      return true;
    }
    for (CongId m : spectrum().maximals()) {
      if (an.leq(theta, m) != an.leq(chi, m)) {
        return true;
      }
    }
    return !has_cblp(chi) || has_cblp(theta);
  }

  std::vector<PointSet> Lifting::clopens_of_max() const {
    Spectrum const& sp = spectrum();
    if (sp.maximals().size() <= 20) {
      return sp.clopens_of_max_brute_force();
    }
    std::vector<PointSet> out;
    for (auto const& c : sp.clopens_of_max()) {
      out.push_back(c.set);
    }
    return out;
  }

  bool Lifting::clop_max_criterion() const {
    Spectrum const&       sp   = spectrum();
    auto const            clop = clopens_of_max();
    std::set<PointSet>    image;
    bool                  into = true;
    for (CongId a : _center.elements) {
      PointSet const u = sp.max_d_set(a);
      image.insert(u);
      into = into && std::find(clop.begin(), clop.end(), u) != clop.end();
    }
    bool const iso = into && image.size() == _center.size() && image.size() == clop.size();
    return iso == has_cblp(sp.rad());
  }

  bool Lifting::clop_max_of_rad_quotient() const {
    Analysis const&    an   = analysis();
    Spectrum const&    sp   = spectrum();
    auto const         clop = clopens_of_max();
    auto const         qc   = center_above(sp.rad());
    std::vector<PointSet> f;
    for (CongId eps : qc) {
      PointSet const u = sp.max_d_set(eps);
      if (std::find(clop.begin(), clop.end(), u) == clop.end()) {
        return false;
      }
      f.push_back(u);
    }
    if (std::set<PointSet>(f.begin(), f.end()).size() != clop.size() || f.size() != clop.size()) {
      return false;
    }
    for (std::size_t i = 0; i < qc.size(); ++i) {
      for (std::size_t j = 0; j < qc.size(); ++j) {
        bool const below = (f[i] & ~f[j]) == 0;
        if (an.leq(qc[i], qc[j]) != below) {
          return false;
        }
      }
    }
    return true;
  }

  bool Lifting::rad_projection_injective() const {
    Analysis const&  an = analysis();
    std::set<CongId> seen;
    for (CongId a : _center.elements) {
      if (!seen.insert(an.join(a, spectrum().rad())).second) {
        return false;
      }
    }
    return true;
  }

  bool Lifting::hyperarchimedean_cblp() const {
    return !spectrum().is_hyperarchimedean() || algebra_has_cblp();
  }

  bool Lifting::diamond_star_commute(CongId theta) const {
    return _R->star(diamond(theta)) == ideal_diamond(_R->lattice(), _R->star(theta));
  }

  bool Lifting::regular_star_regular(CongId theta) const {
    if (!is_regular(theta)) {
      return true;
    }
    LatticeIdeal const s = _R->star(theta);
    return ideal_diamond(_R->lattice(), s) == s;
  }

  bool Lifting::regular_join_transfer(CongId theta, CongId chi) const {
    if (!has_cblp(theta) || !is_regular(chi)) {
      return true;
    }
    return has_cblp(analysis().join(theta, chi));
  }

  bool Lifting::noncoprime_meet_transfer(CongId theta, CongId chi) const {
    Analysis const& an = analysis();
    if (an.join(theta, chi) == an.top() || !has_cblp(theta) || center_above(chi).size() > 2) {
      return true;
    }
    return has_cblp(an.meet(theta, chi));
  }

  bool Lifting::quotient_cblp_descent(CongId theta) const {
    Analysis const& an = analysis();
    if (!an.leq(theta, spectrum().rad())) {
      return true;
    }
    for (CongId psi = 0; psi < an.size(); ++psi) {
      if (an.leq(theta, psi) && !cblp_above(theta, psi)) {
        return true;
      }
    }
    return algebra_has_cblp();
  }

  bool Lifting::quotient_b_normal_descent(CongId theta) const {
    if (!analysis().leq(theta, spectrum().rad()) || !has_cblp(theta) || !b_normal_above(theta)) {
      return true;
    }
    return b_normal().holds;
  }

  bool Lifting::b_normal_biconditional() const {
    return b_normal().holds == algebra_has_cblp();
  }

  ////////////////////////////////////////////////////////////////////////
  // Orthogonal families
  ////////////////////////////////////////////////////////////////////////

  std::vector<CongId> Lifting::lift_orthogonal(CongId theta, std::vector<CongId> const& family) const {
    Analysis const&          an = analysis();
    QuotientView const&      qv = quotient(theta);
    CongruenceLattice const& QL = qv.lattice();
    BooleanCenter const      qc = boolean_center(QL);
    for (std::size_t i = 0; i < family.size(); ++i) {
      if (family[i] >= QL.size() || !qc.contains(family[i])) {
        throw Error(ErrorKind::NotOrthogonal,
                    "member " + std::to_string(i) + " is not a complemented congruence of A/theta");
      }
      for (std::size_t j = 0; j < i; ++j) {
        if (QL.meet(family[i], family[j]) != QL.bottom()) {
          throw Error(ErrorKind::NotOrthogonal, "members " + std::to_string(j) + " and "
                                                    + std::to_string(i) + " overlap");
        }
      }
    }
    LiftingReport const& rep = report(theta);
    if (!rep.cblp) {
      throw Error(ErrorKind::NoCBLP, "theta = #" + std::to_string(theta) + " lacks CBLP");
    }
    std::vector<CongId> out;
    CongId              acc = an.bottom();
    for (CongId beta : family) {
      CongId const eps = qv.up(beta);
      auto         it  = std::find_if(rep.witnesses.begin(), rep.witnesses.end(),
                                      [&](auto const& w) { return w.first == eps; });
      CongId const lift = an.meet(it->second, _center.negation(acc));
      out.push_back(lift);
      acc = an.join(acc, lift);
    }
    return out;
  }

  OrthogonalReport Lifting::orthogonal_uniqueness_and_atoms(CongId theta) const {
    Analysis const& an = analysis();
    Spectrum const& sp = spectrum();
    if (!an.leq(theta, sp.rad())) {
      throw Error(ErrorKind::HypothesisNotMet, "theta is not below Rad(A)");
    }
    OrthogonalReport         rep;
    QuotientView const&      qv = quotient(theta);
    CongruenceLattice const& QL = qv.lattice();
    BooleanCenter const      qc = boolean_center(QL);
    auto fail = [&](bool& flag, std::string msg) {
      flag = false;
      if (rep.failure.empty()) {
        rep.failure = std::move(msg);
      }
    };

    // Complemented preimages of each complemented class.
    std::vector<std::vector<CongId>> pre(QL.size());
    for (CongId a : _center.elements) {
      pre[qv.image(a)].push_back(a);
    }

    // Orthogonal families of nonzero members, grown in increasing order;
    // the zero member lifts only to Delta and is checked on its own.
    std::vector<CongId> nonzero;
    for (CongId q : qc.elements) {
      if (q != QL.bottom()) {
        nonzero.push_back(q);
      }
    }
    if (pre[QL.bottom()] != std::vector<CongId>{an.bottom()}) {
      fail(rep.unique, "the zero class has a complemented preimage other than Delta");
    }
    std::vector<CongId> family;
    auto check_family = [&] {
      ++rep.sets_checked;
      for (CongId q : family) {
        if (pre[q].empty()) {
          return;
        }
      }
      for (CongId q : family) {
        if (pre[q].size() != 1) {
          fail(rep.unique, "a class has " + std::to_string(pre[q].size()) + " complemented lifts");
          return;
        }
      }
      for (std::size_t i = 0; i < family.size(); ++i) {
        for (std::size_t j = 0; j < i; ++j) {
          CongId const a = pre[family[i]][0];
          CongId const b = pre[family[j]][0];
          if (an.meet(a, b) != an.bottom() || an.commutator(a, b) != an.bottom()) {
            fail(rep.orthogonal, "lifted family is not orthogonal");
            return;
          }
        }
      }
    };
    auto grow = [&](auto&& self, std::size_t from, CongId used) -> void {
      check_family();
      for (std::size_t k = from; k < nonzero.size(); ++k) {
        CongId const q = nonzero[k];
        if (QL.meet(q, used) != QL.bottom()) {
          continue;
        }
        family.push_back(q);
        self(self, k + 1, QL.join(used, q));
        family.pop_back();
      }
    };
    grow(grow, 0, QL.bottom());

    if (has_cblp(theta) && !qc.atoms.empty()) {
      for (CongId q : qc.atoms) {
        if (pre[q].size() != 1) {
          fail(rep.atoms_lift, "an atom of the quotient center does not lift uniquely");
          break;
        }
        CongId const a = pre[q][0];
        if (std::find(_center.atoms.begin(), _center.atoms.end(), a) == _center.atoms.end()) {
          fail(rep.atoms_lift, "an atom lifts to a non-atom #" + std::to_string(a));
        }
        rep.atom_lift.push_back(a);
      }
    }
    if (an.leq(theta, sp.nilradical()) && !has_cblp(theta)) {
      fail(rep.cblp_below_nilradical, "theta below rho(Delta) lacks CBLP");
    }
    return rep;
  }

  bool Lifting::complemented_below_rad() const {
    Analysis const& an  = analysis();
    CongId const    rad = spectrum().rad();
    for (CongId a : _center.elements) {
      if (an.leq(a, rad) && a != an.bottom()) {
        return false;
      }
      for (CongId b : _center.elements) {
        CongId const diff = an.meet(a, *_center.complement[b]);
        if (an.leq(diff, rad) && !an.leq(a, b)) {
          return false;
        }
      }
    }
    return true;
  }

  nlohmann::json Lifting::to_json(LiftingReport const& rep) const {
    Analysis const&     an = analysis();
    QuotientView const& qv = quotient(rep.theta);
    nlohmann::json      w  = nlohmann::json::array();
    for (auto const& [eps, alpha] : rep.witnesses) {
      w.push_back({{"target", serialize_congruence(qv.lattice()[qv.down(eps)])},
                   {"lift", serialize_congruence(an[alpha])}});
    }
    nlohmann::json out = {{"theta", serialize_congruence(an[rep.theta])},
                          {"cblp", rep.cblp},
                          {"witnesses", std::move(w)},
                          {"regular", rep.regular},
                          {"diamond", serialize_congruence(an[rep.diamond])}};
    out["counterexample"] = rep.counterexample
                                ? serialize_congruence(qv.lattice()[qv.down(*rep.counterexample)])
                                : nlohmann::json(nullptr);
    if (rep.thm63) {
      out["thm63"] = {{"c1", rep.thm63->c1},
                      {"c2", rep.thm63->c2},
                      {"c3", rep.thm63->c3},
                      {"c4", rep.thm63->c4}};
      out["exploratory"] = !rep.thm63->hypotheses_met;
    }
    return out;
  }

}  // namespace conglab
