#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "birat/map_data.hpp"

namespace birat {

// Sparse homogeneous polynomial in x, y, z over Q; exponent triple -> nonzero
// coefficient. Homogeneity is enforced at construction.
class TriPoly {
 public:
  using Terms = std::map<std::array<long, 3>, Rat>;

  TriPoly() = default;
  explicit TriPoly(Terms terms);  // validates equal total degree

  static TriPoly monomial(long ex, long ey, long ez, const Rat& c = Rat(1));
  static TriPoly parse(const std::string& text);  // +, -, *, ^, parentheses, x/y/z

  bool is_zero() const { return terms_.empty(); }
  long degree() const { return degree_; }  // -1 for zero
  const Terms& terms() const { return terms_; }

  Rat eval(const Rat& x, const Rat& y, const Rat& z) const;
  TriPoly derivative(int var) const;
  std::string to_string() const;

  // Largest coefficient numerator/denominator, in decimal digits.
  size_t max_coeff_digits() const;

  bool operator==(const TriPoly& o) const = default;

 private:
  Terms terms_;
  long degree_ = -1;
};

TriPoly tp_add(const TriPoly& a, const TriPoly& b);
TriPoly tp_sub(const TriPoly& a, const TriPoly& b);
TriPoly tp_mul(const TriPoly& a, const TriPoly& b);
TriPoly tp_scale(const TriPoly& a, const Rat& c);

// Exact division; nullopt when b does not divide a.
std::optional<TriPoly> tp_div_exact(const TriPoly& a, const TriPoly& b);
inline bool tp_divides(const TriPoly& b, const TriPoly& a) { return tp_div_exact(a, b).has_value(); }

// Gcd of homogeneous polynomials (monic leading coefficient), via z-content
// splitting and a primitive pseudo-remainder sequence on the dehomogenized
// bivariate parts.
TriPoly tp_gcd(const TriPoly& a, const TriPoly& b);

// Point of P^2(Q) in normalized integer coordinates: gcd 1, first nonzero
// coordinate positive. Normalization makes orbit membership exact equality.
struct ProjPoint {
  std::array<Int, 3> c;

  bool operator==(const ProjPoint& o) const = default;
  std::string to_string() const;
};

ProjPoint make_proj_point(Int a, Int b, Int cc);

struct ContractedCurve {
  TriPoly form;
  ProjPoint image;
};

// Rational self-map of P^2 given by three coprime homogeneous forms of equal
// degree. Fundamental points and contracted curves are supplied data checked
// for consistency (Jacobian divisibility, image spot checks), not computed:
// solving for the base locus of an arbitrary map is out of scope.
class RationalMapP2 {
 public:
  RationalMapP2(std::array<TriPoly, 3> forms, std::vector<ProjPoint> fundamental_points = {},
                std::vector<ContractedCurve> contracted_curves = {});

  static RationalMapP2 identity();

  long degree() const { return forms_[0].degree(); }
  const std::array<TriPoly, 3>& forms() const { return forms_; }
  const std::vector<ProjPoint>& fundamental_points() const { return fundamental_points_; }
  const std::vector<ContractedCurve>& contracted_curves() const { return contracted_curves_; }

 private:
  std::array<TriPoly, 3> forms_;
  std::vector<ProjPoint> fundamental_points_;
  std::vector<ContractedCurve> contracted_curves_;
};

// Substitutes and normalizes; nullopt (undefined) exactly when all three
// forms vanish at p.
std::optional<ProjPoint> evaluate(const RationalMapP2& m, const ProjPoint& p);

struct Budget {
  long max_degree = 4096;
  size_t max_coeff_digits = 1000000;
};

// m1 after m2: substitutes m2's forms into m1's and divides out the gcd.
// Throws ResourceError past the budget.
RationalMapP2 compose_reduce(const RationalMapP2& m1, const RationalMapP2& m2,
                             const Budget& budget = {});

struct DegreeSequenceResult {
  std::vector<long> degrees;  // deg(sigma^n) for n = 1..; may stop early
  bool truncated = false;     // budget exhausted; degrees holds partial results
  std::string reason;
};

DegreeSequenceResult degree_sequence(const RationalMapP2& m, long n_max, const Budget& budget = {});

// Orbit-based stability certificate: for every curve contracted by m (and,
// cross-validating, by m_inv) the forward orbit of its image point must stay
// defined and avoid the fundamental points for horizon steps. A clean run
// yields certified_stable(horizon); a hit yields known_unstable with the
// witness. Missing contracted/fundamental data throws CapabilityError.
StabilityCertificate stability_check(const RationalMapP2& m, const RationalMapP2& m_inv,
                                     long horizon);

struct UnbalancedEvidence {
  ProjPoint point;
  long backward_defined = 0;   // sigma^-n(p) defined for n = 1..backward_defined
  long forward_undefined = 0;  // count of k <= horizon with sigma^k undefined at p
  std::string detail;
};

struct UnbalancedScanResult {
  bool applicable = false;  // false when the map is not certified stable at the horizon
  std::string reason;
  long horizon = 0;
  std::vector<UnbalancedEvidence> flagged;  // evidence up to horizon, never a proof
};

// Scans the images of curves contracted by m and by m_inv: p is flagged when
// sigma^-n(p) stays defined for n <= horizon while sigma^k is undefined at p
// for at least ceil(horizon/2) values k <= horizon.
UnbalancedScanResult unbalanced_scan(const RationalMapP2& m, const RationalMapP2& m_inv,
                                     long horizon);

// The 1x1 pullback matrix on N^1(P^2): multiplication by deg.
long pullback_number(const RationalMapP2& m);

// Bridge to the lattice level: P = [deg] on a rank-1 lattice, one exceptional
// class of coefficient deg(form) per contracted curve.
PullbackMapData pullback_number_data(const RationalMapP2& m, const PolarizedLattice& l,
                                     StabilityCertificate stability);

}  // namespace birat
