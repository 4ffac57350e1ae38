#include "conglab/lattice.hpp"

#include <algorithm>

#include "conglab/error.hpp"

namespace conglab {

  FiniteLattice FiniteLattice::from_order(std::size_t k, std::vector<bool> leq) {
    if (k == 0 || leq.size() != k * k) {
      throw Error(ErrorKind::NotALattice, "order table has the wrong shape");
    }
    for (std::size_t i = 0; i < k; ++i) {
      if (!leq[i * k + i]) {
        throw Error(ErrorKind::NotALattice, "order is not reflexive");
      }
      for (std::size_t j = 0; j < k; ++j) {
        if (i != j && leq[i * k + j] && leq[j * k + i]) {
          throw Error(ErrorKind::NotALattice, "order is not antisymmetric");
        }
        for (std::size_t m = 0; m < k; ++m) {
          if (leq[i * k + j] && leq[j * k + m] && !leq[i * k + m]) {
            throw Error(ErrorKind::NotALattice, "order is not transitive");
          }
        }
      }
    }
    FiniteLattice L;
    L._k   = k;
    L._leq = std::move(leq);
    L._join.resize(k * k);
    L._meet.resize(k * k);
    for (std::size_t x = 0; x < k; ++x) {
      for (std::size_t y = 0; y < k; ++y) {
        std::optional<std::size_t> lub, glb;
        for (std::size_t z = 0; z < k; ++z) {
          if (L.leq(x, z) && L.leq(y, z) && (!lub || L.leq(z, *lub))) {
            lub = z;
          }
          if (L.leq(z, x) && L.leq(z, y) && (!glb || L.leq(*glb, z))) {
            glb = z;
          }
        }
        if (!lub || !glb) {
          throw Error(ErrorKind::NotALattice, "a pair has no common bound");
        }
        for (std::size_t z = 0; z < k; ++z) {
          if ((L.leq(x, z) && L.leq(y, z) && !L.leq(*lub, z))
              || (L.leq(z, x) && L.leq(z, y) && !L.leq(z, *glb))) {
            throw Error(ErrorKind::NotALattice,
                        "elements " + std::to_string(x) + " and " + std::to_string(y)
                            + " lack a least upper or greatest lower bound");
          }
        }
        L._join[x * k + y] = *lub;
        L._meet[x * k + y] = *glb;
      }
    }
    L._bottom = L._meet[0];
    L._top    = L._join[0];
    for (std::size_t z = 0; z < k; ++z) {
      L._bottom = L.meet(L._bottom, z);
      L._top    = L.join(L._top, z);
    }
    return L;
  }

  FiniteLattice FiniteLattice::from_covers(
      std::size_t k, std::vector<std::pair<std::size_t, std::size_t>> const& covers) {
    std::vector<bool> leq(k * k, false);
    for (std::size_t i = 0; i < k; ++i) {
      leq[i * k + i] = true;
    }
    for (auto [lo, hi] : covers) {
      if (lo >= k || hi >= k) {
        throw Error(ErrorKind::NotALattice, "cover outside the element range");
      }
      leq[lo * k + hi] = true;
    }
    for (std::size_t m = 0; m < k; ++m) {
      for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
          if (leq[i * k + m] && leq[m * k + j]) {
            leq[i * k + j] = true;
          }
        }
      }
    }
    return from_order(k, std::move(leq));
  }

  bool FiniteLattice::is_distributive() const {
    for (std::size_t x = 0; x < _k; ++x) {
      for (std::size_t y = 0; y < _k; ++y) {
        for (std::size_t z = 0; z < _k; ++z) {
          if (meet(x, join(y, z)) != join(meet(x, y), meet(x, z))) {
            return false;
          }
        }
      }
    }
    return true;
  }

  std::optional<std::size_t> FiniteLattice::complement(std::size_t x) const {
    for (std::size_t y = 0; y < _k; ++y) {
      if (join(x, y) == _top && meet(x, y) == _bottom) {
        return y;
      }
    }
    return std::nullopt;
  }

  std::vector<std::size_t> FiniteLattice::boolean_center() const {
    std::vector<std::size_t> out;
    for (std::size_t x = 0; x < _k; ++x) {
      if (is_complemented(x)) {
        out.push_back(x);
      }
    }
    return out;
  }

  std::vector<std::size_t> FiniteLattice::coatoms() const {
    std::vector<std::size_t> out;
    for (std::size_t x = 0; x < _k; ++x) {
      if (x == _top) {
        continue;
      }
      bool covered = true;
      for (std::size_t z = 0; z < _k && covered; ++z) {
        covered = !(z != x && z != _top && leq(x, z));
      }
      if (covered) {
        out.push_back(x);
      }
    }
    return out;
  }

  nlohmann::json FiniteLattice::to_json() const {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < _k; ++i) {
      nlohmann::json row = nlohmann::json::array();
      for (std::size_t j = 0; j < _k; ++j) {
        row.push_back(static_cast<bool>(leq(i, j)));
      }
      rows.push_back(std::move(row));
    }
    return {{"size", _k}, {"leq", std::move(rows)}};
  }

  FiniteLattice FiniteLattice::from_json(nlohmann::json const& doc) {
    if (!doc.is_object() || !doc.contains("size") || !doc["size"].is_number_integer()
        || !doc.contains("leq") || !doc["leq"].is_array()) {
      throw Error(ErrorKind::MalformedDoc, "lattice needs 'size' and 'leq'");
    }
    auto const k = doc["size"].get<std::size_t>();
    if (doc["leq"].size() != k) {
      throw Error(ErrorKind::MalformedDoc, "'leq' must have 'size' rows");
    }
    std::vector<bool> leq;
    leq.reserve(k * k);
    for (auto const& row : doc["leq"]) {
      if (!row.is_array() || row.size() != k) {
        throw Error(ErrorKind::MalformedDoc, "'leq' rows must have 'size' entries");
      }
      for (auto const& e : row) {
        if (!e.is_boolean()) {
          throw Error(ErrorKind::MalformedDoc, "'leq' entries must be booleans");
        }
        leq.push_back(e.get<bool>());
      }
    }
    return from_order(k, std::move(leq));
  }

  ////////////////////////////////////////////////////////////////////////
  // Ideals
  ////////////////////////////////////////////////////////////////////////

  std::size_t LatticeIdeal::count() const {
    return static_cast<std::size_t>(std::count(members.begin(), members.end(), true));
  }

  bool is_ideal(FiniteLattice const& L, LatticeIdeal const& I) {
    std::size_t const k = L.size();
    if (I.members.size() != k || I.count() == 0) {
      return false;
    }
    for (std::size_t x = 0; x < k; ++x) {
      if (!I.contains(x)) {
        continue;
      }
      for (std::size_t y = 0; y < k; ++y) {
        if (L.leq(y, x) && !I.contains(y)) {
          return false;
        }
        if (I.contains(y) && !I.contains(L.join(x, y))) {
          return false;
        }
      }
    }
    return true;
  }

  LatticeIdeal principal_ideal(FiniteLattice const& L, std::size_t x) {
    LatticeIdeal I{std::vector<bool>(L.size(), false)};
    for (std::size_t y = 0; y < L.size(); ++y) {
      I.members[y] = L.leq(y, x);
    }
    return I;
  }

  std::size_t ideal_generator(FiniteLattice const& L, LatticeIdeal const& I) {
    std::size_t g = L.bottom();
    for (std::size_t x = 0; x < L.size(); ++x) {
      if (I.contains(x)) {
        g = L.join(g, x);
      }
    }
    return g;
  }

  LatticeIdeal ideal_generated(FiniteLattice const& L, std::vector<std::size_t> const& elements) {
    std::size_t g = L.bottom();
    for (std::size_t x : elements) {
      g = L.join(g, x);
    }
    return principal_ideal(L, g);
  }

  std::vector<LatticeIdeal> all_ideals(FiniteLattice const& L) {
    std::vector<LatticeIdeal> out;
    for (std::size_t x = 0; x < L.size(); ++x) {
      out.push_back(principal_ideal(L, x));
    }
    return out;
  }

  bool is_prime_ideal(FiniteLattice const& L, LatticeIdeal const& I) {
    if (I.contains(L.top())) {
      return false;
    }
    for (std::size_t x = 0; x < L.size(); ++x) {
      for (std::size_t y = 0; y < L.size(); ++y) {
        if (I.contains(L.meet(x, y)) && !I.contains(x) && !I.contains(y)) {
          return false;
        }
      }
    }
    return true;
  }

  std::vector<LatticeIdeal> prime_ideals(FiniteLattice const& L) {
    std::vector<LatticeIdeal> out;
    for (auto& I : all_ideals(L)) {
      if (is_prime_ideal(L, I)) {
        out.push_back(std::move(I));
      }
    }
    return out;
  }

  std::vector<LatticeIdeal> maximal_ideals(FiniteLattice const& L) {
    std::vector<LatticeIdeal> out;
    for (std::size_t x : L.coatoms()) {
      out.push_back(principal_ideal(L, x));
    }
    return out;
  }

  LatticeIdeal ideal_diamond(FiniteLattice const& L, LatticeIdeal const& I) {
    std::vector<std::size_t> gens;
    for (std::size_t x : L.boolean_center()) {
      if (I.contains(x)) {
        gens.push_back(x);
      }
    }
    return ideal_generated(L, gens);
  }

  std::vector<std::size_t> ideal_quotient_classes(FiniteLattice const& L, LatticeIdeal const& I) {
    std::size_t const        k = L.size();
    std::vector<std::size_t> label(k);
    for (std::size_t x = 0; x < k; ++x) {
      label[x] = x;
      for (std::size_t y = 0; y < x; ++y) {
        bool same = false;
        for (std::size_t i = 0; i < k && !same; ++i) {
          same = I.contains(i) && L.join(x, i) == L.join(y, i);
        }
        if (same) {
          label[x] = label[y];
          break;
        }
      }
    }
    return label;
  }

  IdBlpReport has_id_blp(FiniteLattice const& L, LatticeIdeal const& I) {
    if (!is_ideal(L, I)) {
      throw Error(ErrorKind::MalformedDoc, "member flags do not form an ideal");
    }
    std::size_t const k     = L.size();
    auto const        label = ideal_quotient_classes(L, I);
    IdBlpReport       report;
    auto const        zero = label[L.bottom()];
    auto const        one  = label[L.top()];
    auto const        center = L.boolean_center();
    for (std::size_t x = 0; x < k; ++x) {
      if (label[x] != x) {
        continue;
      }
      ++report.classes;
      bool complemented = false;
      for (std::size_t y = 0; y < k && !complemented; ++y) {
        complemented = label[L.join(x, y)] == one && label[L.meet(x, y)] == zero;
      }
      if (!complemented) {
        continue;
      }
      ++report.center_size;
      auto lift = std::find_if(center.begin(), center.end(),
                               [&](std::size_t z) { return label[z] == x; });
      if (lift == center.end()) {
        report.holds = false;
        if (!report.counterexample) {
          report.counterexample = x;
        }
      } else {
        report.witnesses.emplace_back(x, *lift);
      }
    }
    return report;
  }

}  // namespace conglab
