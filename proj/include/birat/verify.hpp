#pragma once

#include <string>
#include <vector>

#include "birat/io.hpp"

namespace birat {

struct CheckResult {
  std::string entry;
  std::string check;
  bool pass = false;
  std::string detail;
};

struct VerifySummary {
  std::vector<CheckResult> checks;

  bool all_pass() const;
  Json to_json() const;
};

// Invariant suite over the catalog: Hodge signature, adjunction parity,
// excess identity on basis pairs, adjointness, blowup/contract round-trip,
// serialization round-trip, conjugation invariance of the classifier (20
// seeded unimodular conjugates per entry), and expected-verdict regression.
VerifySummary run_verification(const Catalog& cat, unsigned long seed);

// Value-level equality used by the round-trip checks (ids excluded).
bool lattice_equal(const PolarizedLattice& a, const PolarizedLattice& b);
bool map_equal(const PullbackMapData& a, const PullbackMapData& b);

}  // namespace birat
