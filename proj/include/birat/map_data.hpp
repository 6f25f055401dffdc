#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "birat/lattice.hpp"

namespace birat {

// Stability is a certificate carried with the data, never a computed
// property: at the lattice level it is not decidable from (P, E_i) alone.
enum class StabilityKind { certified_automorphism, certified_stable, unknown, known_unstable };

struct StabilityCertificate {
  StabilityKind kind = StabilityKind::unknown;
  long horizon = 0;          // certified_stable only
  std::string source;        // provenance (orbit check, user assertion, ...)
  std::string witness;       // known_unstable only

  std::string describe() const;
  bool iteration_certified() const {
    return kind == StabilityKind::certified_automorphism ||
           kind == StabilityKind::certified_stable;
  }
};

// Pullback/pushforward action of a birational self-map on a polarized
// lattice, with the exceptional classes that measure the failure of form
// preservation.
class PullbackMapData {
 public:
  // Validates the excess-intersection identity on all basis pairs, the
  // automorphism conditions when certified, and any supplied decomposition of
  // exceptional classes into contracted classes.
  PullbackMapData(const PolarizedLattice& lattice, IMat p, std::optional<IMat> p_inv,
                  std::vector<DivisorClass> exceptional, std::vector<DivisorClass> contracted,
                  StabilityCertificate stability,
                  std::optional<IMat> exceptional_decomposition = std::nullopt);

  // Formal product of two maps: carries no exceptional classes, so the
  // excess-identity validation (which cannot hold without resolved data) is
  // skipped. Only compose() should need this.
  static PullbackMapData formal_composite(const PolarizedLattice& lattice, IMat p,
                                          std::optional<IMat> p_inv,
                                          std::vector<DivisorClass> contracted,
                                          StabilityCertificate stability);

  const PolarizedLattice& lattice() const { return *lattice_; }
  const IMat& p() const { return p_; }
  const std::optional<IMat>& p_inv() const { return p_inv_; }
  const std::vector<DivisorClass>& exceptional() const { return exceptional_; }
  const std::vector<DivisorClass>& contracted() const { return contracted_; }
  const StabilityCertificate& stability() const { return stability_; }

 private:
  struct unchecked_t {};
  PullbackMapData(unchecked_t, const PolarizedLattice& lattice, IMat p, std::optional<IMat> p_inv,
                  std::vector<DivisorClass> contracted, StabilityCertificate stability);

  const PolarizedLattice* lattice_;
  IMat p_;
  std::optional<IMat> p_inv_;
  std::vector<DivisorClass> exceptional_;
  std::vector<DivisorClass> contracted_;
  StabilityCertificate stability_;
};

DivisorClass pullback(const PullbackMapData& m, const DivisorClass& d);

// f_* = (f^{-1})^*; requires inverse data.
DivisorClass pushforward(const PullbackMapData& m, const DivisorClass& d);

struct AdjointnessReport {
  struct Failure {
    DivisorClass c, d;
    Int lhs, rhs;
  };
  std::vector<Failure> failures;
  size_t checked = 0;
  bool ok() const { return failures.empty(); }
};

// Verifies (PC.D) = (C.P_inv D) on each supplied pair.
AdjointnessReport check_adjointness(const PullbackMapData& m,
                                    const std::vector<std::pair<DivisorClass, DivisorClass>>& samples);

// (PC.PD) - (C.D); checked against sum_i (C.E_i)(D.E_i), throwing DataError
// naming the pair when the identity fails.
Int excess_intersection(const PullbackMapData& m, const DivisorClass& c, const DivisorClass& d);

struct CompositionReport {
  struct ProbeResult {
    DivisorClass probe;
    DivisorClass discrepancy;           // P1*P2*(D) - ref*(D)
    Int discrepancy_degree;             // discrepancy paired with the probe
    bool decomposition_checked = false; // nonnegative combination verified
  };
  std::vector<ProbeResult> probes;
  bool reference_supplied = false;
};

// Formal product P1*P2. Never asserts (gf)* equality: when reference data for
// the composite pullback is supplied, the difference on each nef probe is
// reported; a supplied decomposition into contracted classes is verified.
std::pair<PullbackMapData, CompositionReport> compose(
    const PullbackMapData& m1, const PullbackMapData& m2,
    const std::vector<DivisorClass>& nef_probes,
    const std::optional<IMat>& reference_composite = std::nullopt,
    const std::optional<IMat>& discrepancy_decomposition = std::nullopt);

struct IteratePower {
  IMat matrix;
  bool formal = false;  // set when the stability certificate does not cover iteration
};

// P^n by binary exponentiation; flagged formal when stability is not
// certified. Throws on n <= 0.
IteratePower iterate(const PullbackMapData& m, long n);

struct NormalizeLog {
  std::vector<DivisorClass> contracted;  // in contraction order, original-lattice coords at each step
  bool fibration_case = false;           // all contracted classes had (V.V) = 0
};

struct NormalizedModel {
  std::shared_ptr<PolarizedLattice> lattice;
  std::shared_ptr<PullbackMapData> map;
  NormalizeLog log;
};

// Repeatedly contracts a listed (-1)-class and conjugates P, P_inv through
// the projection/embedding. Throws when a conjugated matrix fails to be
// integral.
NormalizedModel normalize_model(const PolarizedLattice& l, const PullbackMapData& m);

}  // namespace birat
