#include "birat/map_data.hpp"

#include <climits>
#include <sstream>

#include "birat/errors.hpp"

namespace birat {

std::string StabilityCertificate::describe() const {
  switch (kind) {
    case StabilityKind::certified_automorphism:
      return "certified_automorphism" + (source.empty() ? "" : " (" + source + ")");
    case StabilityKind::certified_stable:
      return "certified_stable(horizon=" + std::to_string(horizon) + ")" +
             (source.empty() ? "" : " (" + source + ")");
    case StabilityKind::known_unstable:
      return "known_unstable" + (witness.empty() ? "" : " [witness: " + witness + "]");
    default:
      return "unknown";
  }
}

PullbackMapData::PullbackMapData(const PolarizedLattice& lattice, IMat p,
                                 std::optional<IMat> p_inv,
                                 std::vector<DivisorClass> exceptional,
                                 std::vector<DivisorClass> contracted,
                                 StabilityCertificate stability,
                                 std::optional<IMat> exceptional_decomposition)
    : lattice_(&lattice),
      p_(std::move(p)),
      p_inv_(std::move(p_inv)),
      exceptional_(std::move(exceptional)),
      contracted_(std::move(contracted)),
      stability_(std::move(stability)) {
  const size_t d = lattice.rank();
  if (p_.rows() != d || p_.cols() != d) throw DataError("pullback matrix has wrong shape");
  if (p_inv_ && (p_inv_->rows() != d || p_inv_->cols() != d))
    throw DataError("pushforward matrix has wrong shape");
  for (auto& e : exceptional_) {
    if (e.coeffs.size() != d) throw DataError("exceptional class has wrong length");
    e.lattice_id = lattice.id();
  }
  for (auto& c : contracted_) {
    if (c.coeffs.size() != d) throw DataError("contracted class has wrong length");
    c.lattice_id = lattice.id();
  }

  // Excess-intersection identity on all basis pairs.
  for (size_t i = 0; i < d; ++i)
    for (size_t j = i; j < d; ++j) {
      DivisorClass ei = lattice.basis_class(i), ej = lattice.basis_class(j);
      DivisorClass pi{lattice.id(), imat_apply(p_, ei.coeffs)};
      DivisorClass pj{lattice.id(), imat_apply(p_, ej.coeffs)};
      Int lhs = intersect(lattice, pi, pj);
      Int rhs = intersect(lattice, ei, ej);
      for (const auto& e : exceptional_)
        rhs += intersect(lattice, ei, e) * intersect(lattice, ej, e);
      if (lhs != rhs)
        throw DataError("excess-intersection identity fails on basis pair (" +
                        std::to_string(i) + "," + std::to_string(j) + ")");
    }

  if (stability_.kind == StabilityKind::certified_automorphism) {
    if (!exceptional_.empty())
      throw DataError("certified automorphism must have an empty exceptional list");
    if (!p_inv_) throw DataError("certified automorphism requires inverse data");
    if (imat_mul(p_, *p_inv_) != IMat::identity(d))
      throw DataError("certified automorphism: P * P_inv is not the identity");
  }

  // Optional decomposition E_i = sum_j c_ij * contracted_j with c_ij >= 0.
  if (exceptional_decomposition) {
    const IMat& dec = *exceptional_decomposition;
    if (dec.rows() != exceptional_.size() || dec.cols() != contracted_.size())
      throw DataError("exceptional decomposition has wrong shape");
    for (size_t i = 0; i < dec.rows(); ++i) {
      std::vector<Int> sum(d, Int(0));
      for (size_t j = 0; j < dec.cols(); ++j) {
        if (dec.at(i, j) < 0)
          throw DataError("exceptional decomposition has a negative coefficient");
        for (size_t k = 0; k < d; ++k) sum[k] += dec.at(i, j) * contracted_[j].coeffs[k];
      }
      if (sum != exceptional_[i].coeffs)
        throw DataError("exceptional class " + std::to_string(i) +
                        " is not the supplied combination of contracted classes");
    }
  }
}

PullbackMapData::PullbackMapData(unchecked_t, const PolarizedLattice& lattice, IMat p,
                                 std::optional<IMat> p_inv,
                                 std::vector<DivisorClass> contracted,
                                 StabilityCertificate stability)
    : lattice_(&lattice),
      p_(std::move(p)),
      p_inv_(std::move(p_inv)),
      contracted_(std::move(contracted)),
      stability_(std::move(stability)) {
  for (auto& c : contracted_) c.lattice_id = lattice.id();
}

PullbackMapData PullbackMapData::formal_composite(const PolarizedLattice& lattice, IMat p,
                                                  std::optional<IMat> p_inv,
                                                  std::vector<DivisorClass> contracted,
                                                  StabilityCertificate stability) {
  return PullbackMapData(unchecked_t{}, lattice, std::move(p), std::move(p_inv),
                         std::move(contracted), std::move(stability));
}

DivisorClass pullback(const PullbackMapData& m, const DivisorClass& d) {
  if (d.lattice_id != m.lattice().id()) throw DataError("pullback: class from wrong lattice");
  return DivisorClass{m.lattice().id(), imat_apply(m.p(), d.coeffs)};
}

DivisorClass pushforward(const PullbackMapData& m, const DivisorClass& d) {
  if (!m.p_inv()) throw CapabilityError("pushforward requires inverse data");
  if (d.lattice_id != m.lattice().id()) throw DataError("pushforward: class from wrong lattice");
  return DivisorClass{m.lattice().id(), imat_apply(*m.p_inv(), d.coeffs)};
}

AdjointnessReport check_adjointness(
    const PullbackMapData& m, const std::vector<std::pair<DivisorClass, DivisorClass>>& samples) {
  if (!m.p_inv()) throw CapabilityError("adjointness check requires inverse data");
  AdjointnessReport report;
  for (const auto& [c, d] : samples) {
    Int lhs = intersect(m.lattice(), pullback(m, c), d);
    Int rhs = intersect(m.lattice(), c, pushforward(m, d));
    ++report.checked;
    if (lhs != rhs) report.failures.push_back({c, d, lhs, rhs});
  }
  return report;
}

Int excess_intersection(const PullbackMapData& m, const DivisorClass& c, const DivisorClass& d) {
  const auto& l = m.lattice();
  Int excess = intersect(l, pullback(m, c), pullback(m, d)) - intersect(l, c, d);
  Int expected = 0;
  for (const auto& e : m.exceptional()) expected += intersect(l, c, e) * intersect(l, d, e);
  if (excess != expected) {
    std::ostringstream os;
    os << "excess-intersection identity violated: (PC.PD)-(C.D) = " << excess.get_str()
       << " but sum of (C.E_i)(D.E_i) = " << expected.get_str();
    throw DataError(os.str());
  }
  return excess;
}

std::pair<PullbackMapData, CompositionReport> compose(
    const PullbackMapData& m1, const PullbackMapData& m2,
    const std::vector<DivisorClass>& nef_probes, const std::optional<IMat>& reference_composite,
    const std::optional<IMat>& discrepancy_decomposition) {
  if (m1.lattice().id() != m2.lattice().id())
    throw DataError("compose: maps live on different lattices");
  const auto& l = m1.lattice();
  IMat product = imat_mul(m1.p(), m2.p());

  CompositionReport report;
  report.reference_supplied = reference_composite.has_value();
  for (const auto& probe : nef_probes) {
    CompositionReport::ProbeResult pr;
    pr.probe = probe;
    std::vector<Int> formal = imat_apply(product, probe.coeffs);
    std::vector<Int> ref =
        reference_composite ? imat_apply(*reference_composite, probe.coeffs) : formal;
    std::vector<Int> diff(formal.size());
    for (size_t i = 0; i < diff.size(); ++i) diff[i] = formal[i] - ref[i];
    pr.discrepancy = DivisorClass{l.id(), diff};
    pr.discrepancy_degree = intersect(l, pr.discrepancy, probe);
    if (discrepancy_decomposition) {
      // Verify discrepancy = sum_j c_j * contracted_j with c_j >= 0, where the
      // contracted classes are those of the inner map m2 followed by m1.
      std::vector<DivisorClass> pool = m2.contracted();
      for (const auto& c : m1.contracted()) pool.push_back(c);
      const IMat& dec = *discrepancy_decomposition;
      if (dec.rows() != 1 || dec.cols() != pool.size())
        throw DataError("discrepancy decomposition has wrong shape");
      std::vector<Int> sum(l.rank(), Int(0));
      for (size_t j = 0; j < pool.size(); ++j) {
        if (dec.at(0, j) < 0) throw DataError("discrepancy decomposition has negative coefficient");
        for (size_t k = 0; k < l.rank(); ++k) sum[k] += dec.at(0, j) * pool[j].coeffs[k];
      }
      pr.decomposition_checked = (sum == diff);
    }
    report.probes.push_back(std::move(pr));
  }

  // Stability transport: composing certified maps keeps a certificate with
  // the smaller horizon; anything else degrades to unknown.
  StabilityCertificate cert;
  const auto& s1 = m1.stability();
  const auto& s2 = m2.stability();
  if (s1.kind == StabilityKind::certified_automorphism &&
      s2.kind == StabilityKind::certified_automorphism) {
    cert.kind = StabilityKind::certified_automorphism;
    cert.source = "composition of certified automorphisms";
  } else if (s1.iteration_certified() && s2.iteration_certified()) {
    cert.kind = StabilityKind::certified_stable;
    long h1 = s1.kind == StabilityKind::certified_automorphism ? LONG_MAX : s1.horizon;
    long h2 = s2.kind == StabilityKind::certified_automorphism ? LONG_MAX : s2.horizon;
    cert.horizon = std::min(h1, h2);
    cert.source = "composition of certified maps";
  } else {
    cert.kind = StabilityKind::unknown;
    cert.source = "composition of uncertified maps";
  }

  std::optional<IMat> inv;
  if (m1.p_inv() && m2.p_inv()) inv = imat_mul(*m2.p_inv(), *m1.p_inv());

  std::vector<DivisorClass> contracted = m2.contracted();
  for (const auto& c : m1.contracted()) contracted.push_back(c);

  // The exceptional classes of the product are not derivable at the lattice
  // level, so the composite carries none and skips the excess validation;
  // callers with resolved data construct their own PullbackMapData.
  PullbackMapData composite = PullbackMapData::formal_composite(
      l, std::move(product), std::move(inv), std::move(contracted), std::move(cert));
  return {std::move(composite), std::move(report)};
}

IteratePower iterate(const PullbackMapData& m, long n) {
  if (n <= 0) throw DataError("iterate requires n >= 1");
  IteratePower out;
  out.matrix = imat_pow(m.p(), static_cast<unsigned long>(n));
  out.formal = !m.stability().iteration_certified();
  return out;
}

NormalizedModel normalize_model(const PolarizedLattice& l, const PullbackMapData& m) {
  if (!m.p_inv()) throw CapabilityError("normalize_model requires inverse data");
  if (m.contracted().empty()) throw CapabilityError("normalize_model requires contracted classes");

  NormalizedModel out;
  out.lattice = std::make_shared<PolarizedLattice>(l.intersection(), l.canonical(), l.pa(),
                                                   l.basis_labels(), l.known_curves());
  IMat p = m.p();
  IMat p_inv = *m.p_inv();
  std::vector<std::vector<Int>> contracted;
  for (const auto& c : m.contracted()) contracted.push_back(c.coeffs);
  std::vector<std::vector<Int>> exceptional;
  for (const auto& e : m.exceptional()) exceptional.push_back(e.coeffs);

  bool saw_zero_self_int = false;
  while (true) {
    // Find a contracted class with self-intersection -1.
    size_t pick = contracted.size();
    saw_zero_self_int = false;
    for (size_t i = 0; i < contracted.size(); ++i) {
      DivisorClass v = out.lattice->make_class(contracted[i]);
      Int self = intersect(*out.lattice, v, v);
      if (self == -1) {
        pick = i;
        break;
      }
      if (self == 0) saw_zero_self_int = true;
    }
    if (pick == contracted.size()) break;

    DivisorClass v = out.lattice->make_class(contracted[pick]);
    ContractResult cr = contract(*out.lattice, v);
    out.log.contracted.push_back(v);

    auto conjugate = [&](const IMat& mat) {
      return imat_mul(imat_mul(cr.projection.matrix, mat), cr.embedding.matrix);
    };
    IMat new_p = conjugate(p);
    IMat new_p_inv = conjugate(p_inv);

    std::vector<std::vector<Int>> new_contracted;
    for (size_t i = 0; i < contracted.size(); ++i) {
      if (i == pick) continue;
      std::vector<Int> img = imat_apply(cr.projection.matrix, contracted[i]);
      bool zero = true;
      for (const auto& x : img)
        if (x != 0) zero = false;
      if (!zero) new_contracted.push_back(std::move(img));
    }
    std::vector<std::vector<Int>> new_exceptional;
    for (const auto& e : exceptional) {
      std::vector<Int> img = imat_apply(cr.projection.matrix, e);
      bool zero = true;
      for (const auto& x : img)
        if (x != 0) zero = false;
      if (!zero) new_exceptional.push_back(std::move(img));
    }

    out.lattice = std::make_shared<PolarizedLattice>(
        cr.lattice.intersection(), cr.lattice.canonical(), cr.lattice.pa(),
        cr.lattice.basis_labels(), cr.lattice.known_curves());
    p = std::move(new_p);
    p_inv = std::move(new_p_inv);
    contracted = std::move(new_contracted);
    exceptional = std::move(new_exceptional);
  }

  out.log.fibration_case = saw_zero_self_int && out.log.contracted.empty();

  std::vector<DivisorClass> ex_classes, co_classes;
  for (auto& e : exceptional) ex_classes.push_back(out.lattice->make_class(e));
  for (auto& c : contracted) co_classes.push_back(out.lattice->make_class(c));
  // Re-validates the excess identity on the quotient model.
  out.map = std::make_shared<PullbackMapData>(*out.lattice, p, p_inv, std::move(ex_classes),
                                              std::move(co_classes), m.stability());
  return out;
}

}  // namespace birat
