#include "birat/verify.hpp"

#include <random>

#include "birat/errors.hpp"
#include "birat/growth.hpp"

namespace birat {

namespace {

bool classes_equal(const std::vector<DivisorClass>& a, const std::vector<DivisorClass>& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i].coeffs != b[i].coeffs) return false;
  return true;
}

bool growth_equal(const GrowthData& a, const GrowthData& b) {
  return a.rho_minpoly == b.rho_minpoly && a.rho_exact == b.rho_exact && a.j == b.j &&
         a.growth_case == b.growth_case && a.geometric == b.geometric && a.gk == b.gk;
}

}  // namespace

bool lattice_equal(const PolarizedLattice& a, const PolarizedLattice& b) {
  if (!(a.intersection() == b.intersection()) || a.canonical().coeffs != b.canonical().coeffs ||
      a.pa() != b.pa() || a.basis_labels() != b.basis_labels() ||
      a.known_curves().size() != b.known_curves().size())
    return false;
  for (size_t i = 0; i < a.known_curves().size(); ++i)
    if (a.known_curves()[i].first != b.known_curves()[i].first ||
        a.known_curves()[i].second.coeffs != b.known_curves()[i].second.coeffs)
      return false;
  return true;
}

bool map_equal(const PullbackMapData& a, const PullbackMapData& b) {
  if (!(a.p() == b.p()) || a.p_inv().has_value() != b.p_inv().has_value()) return false;
  if (a.p_inv() && !(*a.p_inv() == *b.p_inv())) return false;
  const auto& sa = a.stability();
  const auto& sb = b.stability();
  return classes_equal(a.exceptional(), b.exceptional()) &&
         classes_equal(a.contracted(), b.contracted()) && sa.kind == sb.kind &&
         sa.horizon == sb.horizon && sa.source == sb.source && sa.witness == sb.witness;
}

bool VerifySummary::all_pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

Json VerifySummary::to_json() const {
  Json j;
  j["all_pass"] = all_pass();
  Json arr = Json::array();
  for (const auto& c : checks) {
    Json e;
    e["entry"] = c.entry;
    e["check"] = c.check;
    e["pass"] = c.pass;
    e["detail"] = c.detail;
    arr.push_back(e);
  }
  j["checks"] = arr;
  return j;
}

VerifySummary run_verification(const Catalog& cat, unsigned long seed) {
  VerifySummary sum;
  auto run = [&](const std::string& entry, const std::string& name, auto&& body) {
    CheckResult r{entry, name, false, ""};
    try {
      body(r);
      r.pass = r.detail.empty();
    } catch (const std::exception& e) {
      r.detail = e.what();
    }
    sum.checks.push_back(std::move(r));
  };

  for (const auto& e : cat.entries) {
    run(e.name, "hodge_signature", [&](CheckResult& r) {
      auto l = load_entry_lattice(cat, e);
      int pos = positive_eigenvalue_count(l->intersection());
      if (pos != 1) r.detail = "got " + std::to_string(pos) + " positive eigenvalues";
    });

    run(e.name, "adjunction_parity", [&](CheckResult& r) {
      auto l = load_entry_lattice(cat, e);
      auto parity = [&](const DivisorClass& d) {
        Int v = intersect(*l, d, d) + intersect(*l, d, l->canonical());
        return mpz_even_p(v.get_mpz_t()) != 0;
      };
      if (!parity(l->canonical())) r.detail = "canonical class fails parity";
      for (const auto& [label, c] : l->known_curves())
        if (!parity(c)) r.detail = "curve '" + label + "' fails parity";
    });

    run(e.name, "blowup_contract_roundtrip", [&](CheckResult& r) {
      auto l = load_entry_lattice(cat, e);
      BlowupResult up = blowup(*l);
      ContractResult down = contract(up.lattice, up.exceptional);
      if (!(down.lattice.intersection() == l->intersection()) ||
          down.lattice.canonical().coeffs != l->canonical().coeffs)
        r.detail = "contract(blowup) changed the lattice";
    });

    run(e.name, "serialization_roundtrip", [&](CheckResult& r) {
      Json lj = read_json_file(cat.resolve(e.lattice_file));
      auto l1 = lattice_from_json(lj);
      auto l2 = lattice_from_json(lattice_to_json(*l1));
      if (!lattice_equal(*l1, *l2)) r.detail = "lattice round-trip differs";
      if (e.map_file) {
        auto m1 = map_from_json(read_json_file(cat.resolve(*e.map_file)), l1);
        auto m2 = map_from_json(map_to_json(*m1.map), l2);
        if (!map_equal(*m1.map, *m2.map)) r.detail = "map round-trip differs";
      }
      if (e.coordinate_file) {
        auto c1 = load_entry_coordinate(cat, e);
        auto c2 = coordinate_from_json(coordinate_to_json(c1));
        if (!(c1.map.forms() == c2.map.forms()) ||
            c1.inverse.has_value() != c2.inverse.has_value() ||
            (c1.inverse && !(c1.inverse->forms() == c2.inverse->forms())))
          r.detail = "coordinate map round-trip differs";
      }
      if (e.family_file) {
        auto f1 = family_from_json(read_json_file(cat.resolve(*e.family_file)));
        auto f2 = family_from_json(family_to_json(f1));
        if (f1.kind != f2.kind || f1.count != f2.count) r.detail = "family round-trip differs";
      }
    });

    if (!e.map_file) continue;

    run(e.name, "excess_identity", [&](CheckResult& r) {
      auto lm = load_entry_map(cat, e);
      for (size_t i = 0; i < lm.lattice->rank(); ++i)
        for (size_t k = i; k < lm.lattice->rank(); ++k)
          excess_intersection(*lm.map, lm.lattice->basis_class(i), lm.lattice->basis_class(k));
    });

    run(e.name, "adjointness", [&](CheckResult& r) {
      auto lm = load_entry_map(cat, e);
      if (!lm.map->p_inv()) return;  // nothing to check
      std::vector<std::pair<DivisorClass, DivisorClass>> pairs;
      for (size_t i = 0; i < lm.lattice->rank(); ++i)
        for (size_t k = 0; k < lm.lattice->rank(); ++k)
          pairs.emplace_back(lm.lattice->basis_class(i), lm.lattice->basis_class(k));
      auto rep = check_adjointness(*lm.map, pairs);
      if (!rep.ok())
        r.detail = std::to_string(rep.failures.size()) + " adjointness failures";
    });

    run(e.name, "classify_conjugation_invariance", [&](CheckResult& r) {
      auto lm = load_entry_map(cat, e);
      GrowthData base = classify(lm.map->p(), lm.map->stability());
      std::mt19937_64 rng(seed);
      for (int t = 0; t < 20; ++t) {
        IMat u = random_unimodular(lm.lattice->rank(), rng, 12);
        auto u_inv = imat_integer_inverse(u);
        if (!u_inv) {
          r.detail = "conjugator not invertible";
          return;
        }
        GrowthData conj = classify(imat_mul(imat_mul(u, lm.map->p()), *u_inv),
                                   lm.map->stability());
        if (!growth_equal(base, conj)) {
          r.detail = "verdict changed under conjugate #" + std::to_string(t);
          return;
        }
      }
    });

    run(e.name, "expected_verdict", [&](CheckResult& r) {
      const auto& x = e.expected;
      if (!x.gk && !x.growth_case && !x.geometric && !x.rho && !x.j) return;
      auto lm = load_entry_map(cat, e);
      GrowthData g = classify(lm.map->p(), lm.map->stability());
      if (x.gk && to_string(g.gk) != *x.gk)
        r.detail = "gk " + to_string(g.gk) + " != expected " + *x.gk;
      if (x.growth_case && to_string(g.growth_case) != *x.growth_case)
        r.detail = "case " + to_string(g.growth_case) + " != expected " + *x.growth_case;
      if (x.geometric && to_string(g.geometric) != *x.geometric)
        r.detail = "geometric " + to_string(g.geometric) + " != expected " + *x.geometric;
      if (x.j && g.j != *x.j) r.detail = "j " + std::to_string(g.j) + " != expected";
      if (x.rho) {
        if (!g.rho_exact)
          r.detail = "expected exact rho " + *x.rho;
        else if (g.rho_lo != Rat(Int(*x.rho)))
          r.detail = "rho " + g.rho_lo.get_str() + " != expected " + *x.rho;
      }
    });
  }
  return sum;
}

}  // namespace birat
