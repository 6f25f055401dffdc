#pragma once

#include <string>
#include <utility>
#include <vector>

#include "birat/matrix.hpp"
#include "birat/poly.hpp"

namespace birat {

// Integer coefficient vector in a polarized lattice. The owning lattice is
// tracked by id so cross-lattice intersections fail loudly.
struct DivisorClass {
  size_t lattice_id = 0;
  std::vector<Int> coeffs;

  bool operator==(const DivisorClass& o) const = default;
  bool is_zero() const {
    for (const auto& c : coeffs)
      if (c != 0) return false;
    return true;
  }
};

DivisorClass dc_add(const DivisorClass& a, const DivisorClass& b);
DivisorClass dc_sub(const DivisorClass& a, const DivisorClass& b);
DivisorClass dc_scale(const DivisorClass& a, const Int& c);

// Exact model of N^1(X): rank, intersection form, canonical class, arithmetic
// genus constant, and a finite set of known curve classes for nef probing.
class PolarizedLattice {
 public:
  // Validates symmetry, nondegeneracy, Hodge signature (1, d-1) via Sturm
  // counts, and adjunction parity of the canonical class and known curves.
  PolarizedLattice(IMat intersection, DivisorClass canonical, Int pa,
                   std::vector<std::string> basis_labels,
                   std::vector<std::pair<std::string, DivisorClass>> known_curves);

  size_t id() const { return id_; }
  size_t rank() const { return intersection_.rows(); }
  const IMat& intersection() const { return intersection_; }
  const DivisorClass& canonical() const { return canonical_; }
  const Int& pa() const { return pa_; }
  const std::vector<std::string>& basis_labels() const { return basis_labels_; }
  const std::vector<std::pair<std::string, DivisorClass>>& known_curves() const {
    return known_curves_;
  }

  DivisorClass make_class(std::vector<Int> coeffs) const;
  DivisorClass basis_class(size_t i) const;
  DivisorClass zero_class() const;

 private:
  size_t id_;
  IMat intersection_;
  DivisorClass canonical_;
  Int pa_;
  std::vector<std::string> basis_labels_;
  std::vector<std::pair<std::string, DivisorClass>> known_curves_;
};

// C^T Q D; symmetric, bilinear. Throws DataError on lattice mismatch.
Int intersect(const PolarizedLattice& l, const DivisorClass& c, const DivisorClass& d);

// True iff (D.C) >= 0 for every supplied curve class. This is a
// necessary-condition check against the supplied set, not a nef certificate.
bool is_nef_against(const PolarizedLattice& l, const DivisorClass& d,
                    const std::vector<DivisorClass>& curves);

// Linear map between lattices stored as a matrix acting on coefficient
// columns, with the two lattice ids recorded.
struct LatticeMap {
  size_t from_id = 0, to_id = 0;
  IMat matrix;  // (rank of target) x (rank of source)

  DivisorClass apply(const DivisorClass& d) const;
};

struct BlowupResult {
  PolarizedLattice lattice;
  LatticeMap embedding;          // old -> new, appends a zero coefficient
  DivisorClass exceptional;      // the new basis class F
};

// Single monoidal transformation at the lattice level: rank d+1, form
// diag(Q, -1), canonical embed(K) + F, pa unchanged.
BlowupResult blowup(const PolarizedLattice& l, const std::string& new_label = "F");

struct ContractResult {
  PolarizedLattice lattice;
  LatticeMap projection;  // old -> new, kills the V component
  LatticeMap embedding;   // new -> old, a section of the projection
};

// Contracts a (-1)-class V: computes an integral basis splitting Q as
// diag(Q', -1) or throws. Canonical transports by embed(K') = K - V.
ContractResult contract(const PolarizedLattice& l, const DivisorClass& v);

// Number of positive eigenvalues of the intersection form, counted with
// multiplicity (exact, via Sturm counts on squarefree factors).
int positive_eigenvalue_count(const IMat& q);

}  // namespace birat
