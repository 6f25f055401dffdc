#pragma once

#include <string>
#include <vector>

#include "birat/map_data.hpp"

namespace birat {

// D_n = sum_{i<n} P^i D with the intersection numbers and Riemann-Roch
// values along the sequence. h(n) is a section-ring dimension only under a
// positivity assumption on the input data; that assumption is carried as a
// caveat flag, never verified here.
struct DivisorSequence {
  DivisorClass d;
  std::vector<DivisorClass> terms;  // D_0 = 0, ..., D_{n_max}
  std::vector<Int> self_ints;       // (D_n.D_n)
  std::vector<Int> k_ints;          // (D_n.K)
  std::vector<Int> h;               // h(0) = 1; h(n) by Riemann-Roch for n >= 1
  bool formal = false;              // stability not certified
  bool positivity_assumed = true;   // h labeled as dimensions only under this assumption
};

// Exact partial sum sum_{i<n} P^i D.
DivisorClass twisted_sum(const PullbackMapData& m, const DivisorClass& d, long n);

// (Dn.Dn)/2 - (Dn.K)/2 + 1 + pa; throws DataError when (Dn.Dn) - (Dn.K) is odd.
Int rr_dimension(const PolarizedLattice& l, const DivisorClass& dn);

struct RecurrenceReport {
  bool applicable = false;  // hypotheses P*E_i = E_i and (E_i.E_l) = 0 hold
  std::string skip_reason;
  Int n_value;              // N = sum (D.E_i)^2
  long pairs_checked = 0;
};

// Verifies (P^b D.P^a D) = (P^{b-a}D.D) + aN for all 0 <= a <= b <= b_max.
// When the hypotheses on the exceptional classes fail the check is skipped
// with a report; when they hold and the identity fails, throws DataError.
RecurrenceReport selfint_recurrence_check(const PolarizedLattice& l, const PullbackMapData& m,
                                          const DivisorClass& d, long b_max);

// Full Riemann-Roch sequence for an ample-flagged D ((D.D) > 0 and D nef
// against the known curves). Rejects adjunction-parity violations.
DivisorSequence hilbert_sequence(const PolarizedLattice& l, const PullbackMapData& m,
                                 const DivisorClass& d, long n_max);

struct FitConfig {
  double rho_snap = 0.02;  // |rho_hat - 1| below this snaps rho_hat to 1
  size_t min_tail = 8;
};

struct FitResult {
  double rho_hat = 1.0;
  int j_hat = 0;
  size_t tail_points = 0;
};

// Growth readout of a positive sequence a_n ~ n^j rho^n: joint least squares
// of ln a_n against {1, n, ln n} over the tail (seq[i] is a_i; tail is
// i >= tail_start >= 1), then rho snapped to 1 when within rho_snap and j_hat
// re-fit against ln n alone. The two-regressor fit is what makes polynomial
// sequences at desk scale land on rho_hat = 1 at all.
FitResult fit_growth(const std::vector<Int>& seq, size_t tail_start, const FitConfig& cfg = {});

}  // namespace birat
