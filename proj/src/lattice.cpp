#include "birat/lattice.hpp"

#include <atomic>

#include "birat/errors.hpp"

namespace birat {

namespace {
std::atomic<size_t> next_lattice_id{1};

void check_same_lattice(const PolarizedLattice& l, const DivisorClass& d) {
  if (d.lattice_id != l.id()) throw DataError("divisor class belongs to a different lattice");
  if (d.coeffs.size() != l.rank()) throw DataError("divisor class has wrong length");
}
}  // namespace

DivisorClass dc_add(const DivisorClass& a, const DivisorClass& b) {
  if (a.lattice_id != b.lattice_id || a.coeffs.size() != b.coeffs.size())
    throw DataError("divisor class mismatch in sum");
  DivisorClass r = a;
  for (size_t i = 0; i < r.coeffs.size(); ++i) r.coeffs[i] += b.coeffs[i];
  return r;
}

DivisorClass dc_sub(const DivisorClass& a, const DivisorClass& b) {
  if (a.lattice_id != b.lattice_id || a.coeffs.size() != b.coeffs.size())
    throw DataError("divisor class mismatch in difference");
  DivisorClass r = a;
  for (size_t i = 0; i < r.coeffs.size(); ++i) r.coeffs[i] -= b.coeffs[i];
  return r;
}

DivisorClass dc_scale(const DivisorClass& a, const Int& c) {
  DivisorClass r = a;
  for (auto& x : r.coeffs) x *= c;
  return r;
}

int positive_eigenvalue_count(const IMat& q) {
  IPoly cp = char_poly(q);
  Rat bound = ipoly_root_bound(cp);
  int count = 0;
  for (const auto& [g, mult] : ipoly_squarefree_decomposition(cp))
    count += mult * sturm_count_roots(g, Rat(0), bound);
  return count;
}

PolarizedLattice::PolarizedLattice(IMat intersection, DivisorClass canonical, Int pa,
                                   std::vector<std::string> basis_labels,
                                   std::vector<std::pair<std::string, DivisorClass>> known_curves)
    : id_(next_lattice_id.fetch_add(1)),
      intersection_(std::move(intersection)),
      canonical_(std::move(canonical)),
      pa_(std::move(pa)),
      basis_labels_(std::move(basis_labels)),
      known_curves_(std::move(known_curves)) {
  const size_t d = intersection_.rows();
  if (d == 0 || intersection_.cols() != d) throw DataError("intersection matrix must be square");
  for (size_t i = 0; i < d; ++i)
    for (size_t j = i + 1; j < d; ++j)
      if (intersection_.at(i, j) != intersection_.at(j, i))
        throw DataError("intersection matrix is not symmetric");
  if (canonical_.coeffs.size() != d) throw DataError("canonical class has wrong length");
  if (basis_labels_.empty())
    for (size_t i = 0; i < d; ++i) basis_labels_.push_back("b" + std::to_string(i));
  if (basis_labels_.size() != d) throw DataError("basis label count does not match rank");

  if (imat_det(intersection_) == 0) throw DataError("intersection form is degenerate");
  int pos = positive_eigenvalue_count(intersection_);
  if (pos != 1)
    throw DataError("intersection form violates the Hodge index signature (got " +
                    std::to_string(pos) + " positive eigenvalues, expected 1)");

  canonical_.lattice_id = id_;
  for (auto& [label, c] : known_curves_) {
    if (c.coeffs.size() != d) throw DataError("known curve '" + label + "' has wrong length");
    c.lattice_id = id_;
  }

  // Adjunction parity: (D.D) + (D.K) must be even for the canonical class and
  // every known curve.
  auto parity_ok = [&](const DivisorClass& dcl) {
    Int v = intersect(*this, dcl, dcl) + intersect(*this, dcl, canonical_);
    return mpz_even_p(v.get_mpz_t()) != 0;
  };
  if (!parity_ok(canonical_)) throw DataError("canonical class violates adjunction parity");
  for (const auto& [label, c] : known_curves_)
    if (!parity_ok(c)) throw DataError("known curve '" + label + "' violates adjunction parity");
}

DivisorClass PolarizedLattice::make_class(std::vector<Int> coeffs) const {
  if (coeffs.size() != rank()) throw DataError("coefficient vector has wrong length");
  return DivisorClass{id_, std::move(coeffs)};
}

DivisorClass PolarizedLattice::basis_class(size_t i) const {
  std::vector<Int> c(rank(), Int(0));
  c.at(i) = 1;
  return DivisorClass{id_, std::move(c)};
}

DivisorClass PolarizedLattice::zero_class() const {
  return DivisorClass{id_, std::vector<Int>(rank(), Int(0))};
}

Int intersect(const PolarizedLattice& l, const DivisorClass& c, const DivisorClass& d) {
  check_same_lattice(l, c);
  check_same_lattice(l, d);
  Int r = 0;
  for (size_t i = 0; i < l.rank(); ++i) {
    if (c.coeffs[i] == 0) continue;
    for (size_t j = 0; j < l.rank(); ++j) r += c.coeffs[i] * l.intersection().at(i, j) * d.coeffs[j];
  }
  return r;
}

bool is_nef_against(const PolarizedLattice& l, const DivisorClass& d,
                    const std::vector<DivisorClass>& curves) {
  for (const auto& c : curves)
    if (intersect(l, d, c) < 0) return false;
  return true;
}

DivisorClass LatticeMap::apply(const DivisorClass& d) const {
  if (d.lattice_id != from_id) throw DataError("lattice map applied to class from wrong lattice");
  return DivisorClass{to_id, imat_apply(matrix, d.coeffs)};
}

BlowupResult blowup(const PolarizedLattice& l, const std::string& new_label) {
  const size_t d = l.rank();
  IMat q(d + 1, d + 1);
  for (size_t i = 0; i < d; ++i)
    for (size_t j = 0; j < d; ++j) q.at(i, j) = l.intersection().at(i, j);
  q.at(d, d) = -1;

  std::vector<Int> k(l.canonical().coeffs);
  k.push_back(Int(1));  // K' = embed(K) + F

  auto labels = l.basis_labels();
  labels.push_back(new_label);

  std::vector<std::pair<std::string, DivisorClass>> curves;
  for (const auto& [label, c] : l.known_curves()) {
    std::vector<Int> cc(c.coeffs);
    cc.push_back(Int(0));
    curves.emplace_back(label, DivisorClass{0, std::move(cc)});
  }
  {
    std::vector<Int> f(d + 1, Int(0));
    f[d] = 1;
    curves.emplace_back(new_label, DivisorClass{0, std::move(f)});
  }

  PolarizedLattice nl(q, DivisorClass{0, std::move(k)}, l.pa(), std::move(labels),
                      std::move(curves));

  IMat emb(d + 1, d);
  for (size_t i = 0; i < d; ++i) emb.at(i, i) = 1;
  BlowupResult out{std::move(nl), LatticeMap{l.id(), 0, std::move(emb)}, DivisorClass{}};
  out.embedding.to_id = out.lattice.id();
  out.exceptional = out.lattice.basis_class(d);
  return out;
}

ContractResult contract(const PolarizedLattice& l, const DivisorClass& v) {
  const size_t d = l.rank();
  if (d < 2) throw DataError("cannot contract a rank-1 lattice");
  if (intersect(l, v, v) != -1)
    throw DataError("contract precondition failed: (V.V) != -1");

  // Orthogonal projection D -> D + (D.V)V lands in V-perp and is integral
  // because (V.V) = -1; the row lattice of the projected basis is V-perp.
  IMat proj_rows(d, d);
  for (size_t i = 0; i < d; ++i) {
    DivisorClass e = l.basis_class(i);
    Int ev = intersect(l, e, v);
    for (size_t j = 0; j < d; ++j)
      proj_rows.at(i, j) = e.coeffs[j] + ev * v.coeffs[j];
  }
  IMat basis = imat_hnf_row_basis(proj_rows);
  if (basis.rows() != d - 1)
    throw DataError("no integral splitting found: projected basis has wrong rank");

  // The change of basis [B; V] must be unimodular for a genuine splitting.
  IMat t(d, d);
  for (size_t i = 0; i + 1 < d; ++i)
    for (size_t j = 0; j < d; ++j) t.at(i, j) = basis.at(i, j);
  for (size_t j = 0; j < d; ++j) t.at(d - 1, j) = v.coeffs[j];
  Int det = imat_det(t);
  if (det != 1 && det != -1)
    throw DataError("no integral splitting found: basis change is not unimodular");

  // New form Q' = B Q B^T.
  IMat q = imat_mul(imat_mul(basis, l.intersection()), basis.transposed());

  // Canonical class: embed(K') = K - V.
  std::vector<Int> k_minus_v(d);
  for (size_t j = 0; j < d; ++j) k_minus_v[j] = l.canonical().coeffs[j] - v.coeffs[j];
  auto k_coords = solve_integral_in_row_span(basis, k_minus_v);
  if (!k_coords)
    throw DataError("canonical class does not descend integrally under contraction");

  // Projection matrix: column i = coordinates of pi(e_i) in the new basis.
  IMat projection(d - 1, d);
  for (size_t i = 0; i < d; ++i) {
    std::vector<Int> row(d);
    for (size_t j = 0; j < d; ++j) row[j] = proj_rows.at(i, j);
    auto coords = solve_integral_in_row_span(basis, row);
    if (!coords) throw DataError("no integral splitting found: projection not integral");
    for (size_t rI = 0; rI + 1 < d; ++rI) projection.at(rI, i) = (*coords)[rI];
  }

  std::vector<std::pair<std::string, DivisorClass>> curves;
  for (const auto& [label, c] : l.known_curves()) {
    if (c == v) continue;  // the contracted class disappears
    std::vector<Int> img = imat_apply(projection, c.coeffs);
    bool zero = true;
    for (const auto& x : img)
      if (x != 0) zero = false;
    if (!zero) curves.emplace_back(label, DivisorClass{0, std::move(img)});
  }

  PolarizedLattice nl(q, DivisorClass{0, *k_coords}, l.pa(), {}, std::move(curves));
  size_t new_id = nl.id();
  ContractResult out{std::move(nl),
                     LatticeMap{l.id(), new_id, std::move(projection)},
                     LatticeMap{new_id, l.id(), basis.transposed()}};
  return out;
}

}  // namespace birat
