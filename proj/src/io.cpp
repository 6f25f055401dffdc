#include "birat/io.hpp"

#include <fstream>
#include <limits>

#include "birat/errors.hpp"

namespace birat {

namespace {

const char* stability_kind_name(StabilityKind k) {
  switch (k) {
    case StabilityKind::certified_automorphism: return "certified_automorphism";
    case StabilityKind::certified_stable: return "certified_stable";
    case StabilityKind::known_unstable: return "known_unstable";
    default: return "unknown";
  }
}

StabilityKind stability_kind_from(const std::string& s) {
  if (s == "certified_automorphism") return StabilityKind::certified_automorphism;
  if (s == "certified_stable") return StabilityKind::certified_stable;
  if (s == "known_unstable") return StabilityKind::known_unstable;
  if (s == "unknown") return StabilityKind::unknown;
  throw DataError("unknown stability kind '" + s + "'");
}

std::vector<DivisorClass> classes_from_json(const Json& j, const PolarizedLattice& l) {
  std::vector<DivisorClass> out;
  for (const auto& v : j) out.push_back(l.make_class(json_to_int_vec(v)));
  return out;
}

Json classes_to_json(const std::vector<DivisorClass>& cs) {
  Json out = Json::array();
  for (const auto& c : cs) out.push_back(int_vec_to_json(c.coeffs));
  return out;
}

RationalMapP2 p2_map_from_json(const Json& j) {
  if (!j.contains("forms") || j["forms"].size() != 3)
    throw DataError("coordinate map needs exactly 3 forms");
  std::array<TriPoly, 3> forms;
  for (int i = 0; i < 3; ++i)
    forms[static_cast<size_t>(i)] = TriPoly::parse(j["forms"][static_cast<size_t>(i)].get<std::string>());
  std::vector<ProjPoint> fps;
  for (const auto& p : j.value("fundamental_points", Json::array()))
    fps.push_back(make_proj_point(json_to_int(p[0]), json_to_int(p[1]), json_to_int(p[2])));
  std::vector<ContractedCurve> ccs;
  for (const auto& c : j.value("contracted_curves", Json::array()))
    ccs.push_back(ContractedCurve{
        TriPoly::parse(c["form"].get<std::string>()),
        make_proj_point(json_to_int(c["image"][0]), json_to_int(c["image"][1]),
                        json_to_int(c["image"][2]))});
  return RationalMapP2(std::move(forms), std::move(fps), std::move(ccs));
}

Json p2_map_to_json(const RationalMapP2& m) {
  Json j;
  j["forms"] = Json::array();
  for (const auto& f : m.forms()) j["forms"].push_back(f.to_string());
  Json fps = Json::array();
  for (const auto& p : m.fundamental_points())
    fps.push_back(Json::array({int_to_json(p.c[0]), int_to_json(p.c[1]), int_to_json(p.c[2])}));
  j["fundamental_points"] = fps;
  Json ccs = Json::array();
  for (const auto& c : m.contracted_curves()) {
    Json e;
    e["form"] = c.form.to_string();
    e["image"] = Json::array(
        {int_to_json(c.image.c[0]), int_to_json(c.image.c[1]), int_to_json(c.image.c[2])});
    ccs.push_back(e);
  }
  j["contracted_curves"] = ccs;
  return j;
}

}  // namespace

Json int_to_json(const Int& v) {
  if (v.fits_slong_p()) return Json(static_cast<std::int64_t>(v.get_si()));
  return Json(v.get_str());
}

Int json_to_int(const Json& j) {
  if (j.is_number_integer()) return Int(std::to_string(j.get<std::int64_t>()));
  if (j.is_string()) return Int(j.get<std::string>());
  throw DataError("expected an integer (number or decimal string)");
}

Json int_vec_to_json(const std::vector<Int>& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(int_to_json(x));
  return out;
}

std::vector<Int> json_to_int_vec(const Json& j) {
  if (!j.is_array()) throw DataError("expected an integer array");
  std::vector<Int> out;
  for (const auto& x : j) out.push_back(json_to_int(x));
  return out;
}

Json imat_to_json(const IMat& m) {
  Json out = Json::array();
  for (size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (size_t k = 0; k < m.cols(); ++k) row.push_back(int_to_json(m.at(i, k)));
    out.push_back(row);
  }
  return out;
}

IMat json_to_imat(const Json& j) {
  if (!j.is_array() || j.empty()) throw DataError("expected a nonempty matrix");
  size_t rows = j.size(), cols = j[0].size();
  IMat m(rows, cols);
  for (size_t i = 0; i < rows; ++i) {
    if (j[i].size() != cols) throw DataError("ragged matrix rows");
    for (size_t k = 0; k < cols; ++k) m.at(i, k) = json_to_int(j[i][k]);
  }
  return m;
}

std::shared_ptr<PolarizedLattice> lattice_from_json(const Json& j) {
  IMat q = json_to_imat(j.at("intersection"));
  if (j.contains("rank") && j["rank"].get<size_t>() != q.rows())
    throw DataError("declared rank does not match the intersection matrix");
  DivisorClass k{0, json_to_int_vec(j.at("canonical"))};
  Int pa = j.contains("pa") ? json_to_int(j["pa"]) : Int(0);
  std::vector<std::string> labels;
  for (const auto& s : j.value("basis_labels", Json::array())) labels.push_back(s.get<std::string>());
  std::vector<std::pair<std::string, DivisorClass>> curves;
  for (const auto& c : j.value("known_curves", Json::array()))
    curves.emplace_back(c.at("label").get<std::string>(),
                        DivisorClass{0, json_to_int_vec(c.at("class"))});
  return std::make_shared<PolarizedLattice>(std::move(q), std::move(k), std::move(pa),
                                            std::move(labels), std::move(curves));
}

Json lattice_to_json(const PolarizedLattice& l) {
  Json j;
  j["rank"] = l.rank();
  j["intersection"] = imat_to_json(l.intersection());
  j["canonical"] = int_vec_to_json(l.canonical().coeffs);
  j["pa"] = int_to_json(l.pa());
  j["basis_labels"] = l.basis_labels();
  Json curves = Json::array();
  for (const auto& [label, c] : l.known_curves()) {
    Json e;
    e["label"] = label;
    e["class"] = int_vec_to_json(c.coeffs);
    curves.push_back(e);
  }
  j["known_curves"] = curves;
  return j;
}

LoadedMap map_from_json(const Json& j, std::shared_ptr<PolarizedLattice> lattice) {
  IMat p = json_to_imat(j.at("p"));
  std::optional<IMat> p_inv;
  if (j.contains("p_inv") && !j["p_inv"].is_null()) p_inv = json_to_imat(j["p_inv"]);
  auto exceptional = classes_from_json(j.value("exceptional", Json::array()), *lattice);
  auto contracted = classes_from_json(j.value("contracted", Json::array()), *lattice);
  StabilityCertificate cert;
  if (j.contains("stability")) {
    const Json& s = j["stability"];
    cert.kind = stability_kind_from(s.at("kind").get<std::string>());
    cert.horizon = s.value("horizon", 0L);
    cert.source = s.value("source", std::string{});
    cert.witness = s.value("witness", std::string{});
  }
  std::optional<IMat> decomp;
  if (j.contains("exceptional_decomposition") && !j["exceptional_decomposition"].is_null())
    decomp = json_to_imat(j["exceptional_decomposition"]);
  auto map = std::make_shared<PullbackMapData>(*lattice, std::move(p), std::move(p_inv),
                                               std::move(exceptional), std::move(contracted),
                                               std::move(cert), std::move(decomp));
  std::optional<DivisorClass> ample;
  if (j.contains("ample") && !j["ample"].is_null())
    ample = lattice->make_class(json_to_int_vec(j["ample"]));
  return LoadedMap{std::move(lattice), std::move(map), std::move(ample)};
}

Json map_to_json(const PullbackMapData& m, const std::optional<DivisorClass>& ample) {
  Json j;
  j["p"] = imat_to_json(m.p());
  j["p_inv"] = m.p_inv() ? imat_to_json(*m.p_inv()) : Json(nullptr);
  j["exceptional"] = classes_to_json(m.exceptional());
  j["contracted"] = classes_to_json(m.contracted());
  Json s;
  s["kind"] = stability_kind_name(m.stability().kind);
  s["horizon"] = m.stability().horizon;
  s["source"] = m.stability().source;
  s["witness"] = m.stability().witness;
  j["stability"] = s;
  if (ample) j["ample"] = int_vec_to_json(ample->coeffs);
  return j;
}

CoordinatePair coordinate_from_json(const Json& j) {
  RationalMapP2 fwd = p2_map_from_json(j);
  std::optional<RationalMapP2> inv;
  if (j.contains("inverse") && !j["inverse"].is_null()) inv = p2_map_from_json(j["inverse"]);
  long horizon = j.value("horizon", 10L);
  return CoordinatePair{std::move(fwd), std::move(inv), horizon};
}

Json coordinate_to_json(const CoordinatePair& c) {
  Json j = p2_map_to_json(c.map);
  j["inverse"] = c.inverse ? p2_map_to_json(*c.inverse) : Json(nullptr);
  j["horizon"] = c.horizon;
  return j;
}

CurveFamilySpec family_from_json(const Json& j) {
  CurveFamilySpec f;
  f.kind = j.at("kind").get<std::string>();
  f.count = j.at("count").get<size_t>();
  if (f.kind != "constant" && f.kind != "doubling" && f.kind != "growing")
    throw DataError("unknown curve family kind '" + f.kind + "'");
  return f;
}

Json family_to_json(const CurveFamilySpec& f) {
  Json j;
  j["kind"] = f.kind;
  j["count"] = f.count;
  return j;
}

std::vector<RationalSubspace> build_family(const CurveFamilySpec& f) {
  std::vector<RationalSubspace> out;
  out.reserve(f.count);
  for (size_t i = 0; i < f.count; ++i) {
    if (f.kind == "constant")
      out.push_back(family_constant(i));
    else if (f.kind == "doubling")
      out.push_back(family_doubling(i));
    else
      out.push_back(family_growing(i));
  }
  return out;
}

const CatalogEntry& Catalog::entry(const std::string& name) const {
  for (const auto& e : entries)
    if (e.name == name) return e;
  throw CapabilityError("catalog has no entry named '" + name + "'");
}

Catalog load_catalog(const std::string& path) {
  Json j = read_json_file(path);
  Catalog cat;
  size_t slash = path.find_last_of('/');
  cat.dir = (slash == std::string::npos) ? "." : path.substr(0, slash);
  for (const auto& e : j.at("entries")) {
    CatalogEntry entry;
    entry.name = e.at("name").get<std::string>();
    entry.lattice_file = e.at("lattice").get<std::string>();
    if (e.contains("map")) entry.map_file = e["map"].get<std::string>();
    if (e.contains("coordinate")) entry.coordinate_file = e["coordinate"].get<std::string>();
    if (e.contains("family")) entry.family_file = e["family"].get<std::string>();
    if (e.contains("expected")) {
      const Json& x = e["expected"];
      if (x.contains("gk")) entry.expected.gk = x["gk"].get<std::string>();
      if (x.contains("case")) entry.expected.growth_case = x["case"].get<std::string>();
      if (x.contains("geometric")) entry.expected.geometric = x["geometric"].get<std::string>();
      if (x.contains("rho")) entry.expected.rho = x["rho"].get<std::string>();
      if (x.contains("j")) entry.expected.j = x["j"].get<int>();
    }
    cat.entries.push_back(std::move(entry));
  }
  return cat;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CapabilityError("cannot open file '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const std::exception& e) {
    throw DataError("malformed file '" + path + "': " + e.what());
  }
}

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw CapabilityError("cannot write file '" + path + "'");
  out << j.dump(2) << "\n";
}

std::shared_ptr<PolarizedLattice> load_entry_lattice(const Catalog& cat, const CatalogEntry& e) {
  return lattice_from_json(read_json_file(cat.resolve(e.lattice_file)));
}

LoadedMap load_entry_map(const Catalog& cat, const CatalogEntry& e) {
  if (!e.map_file) throw CapabilityError("entry '" + e.name + "' has no lattice-level map data");
  return map_from_json(read_json_file(cat.resolve(*e.map_file)), load_entry_lattice(cat, e));
}

CoordinatePair load_entry_coordinate(const Catalog& cat, const CatalogEntry& e) {
  if (!e.coordinate_file)
    throw CapabilityError("entry '" + e.name + "' has no coordinate-level map data");
  return coordinate_from_json(read_json_file(cat.resolve(*e.coordinate_file)));
}

}  // namespace birat
