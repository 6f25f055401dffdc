#pragma once

#include <json.hpp>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "birat/cremona.hpp"
#include "birat/curve.hpp"
#include "birat/map_data.hpp"

namespace birat {

using Json = nlohmann::ordered_json;

// Integers are bit-exact: values beyond int64 range are written as decimal
// strings; both forms are accepted on input.
Json int_to_json(const Int& v);
Int json_to_int(const Json& j);
Json int_vec_to_json(const std::vector<Int>& v);
std::vector<Int> json_to_int_vec(const Json& j);
Json imat_to_json(const IMat& m);
IMat json_to_imat(const Json& j);

std::shared_ptr<PolarizedLattice> lattice_from_json(const Json& j);
Json lattice_to_json(const PolarizedLattice& l);

struct LoadedMap {
  std::shared_ptr<PolarizedLattice> lattice;
  std::shared_ptr<PullbackMapData> map;
  std::optional<DivisorClass> ample;  // reference class for sequence commands
};

LoadedMap map_from_json(const Json& j, std::shared_ptr<PolarizedLattice> lattice);
Json map_to_json(const PullbackMapData& m, const std::optional<DivisorClass>& ample = std::nullopt);

// Coordinate-level map on P^2 together with its inverse data when supplied.
struct CoordinatePair {
  RationalMapP2 map;
  std::optional<RationalMapP2> inverse;
  long horizon = 10;  // default certification horizon for this entry
};

CoordinatePair coordinate_from_json(const Json& j);
Json coordinate_to_json(const CoordinatePair& c);

// Curve-oracle family: one of the built-in generators plus a factor count.
struct CurveFamilySpec {
  std::string kind;  // "constant" | "doubling" | "growing"
  size_t count = 0;
};

CurveFamilySpec family_from_json(const Json& j);
Json family_to_json(const CurveFamilySpec& f);
std::vector<RationalSubspace> build_family(const CurveFamilySpec& f);

struct ExpectedVerdict {
  std::optional<std::string> gk, growth_case, geometric, rho;
  std::optional<int> j;
};

struct CatalogEntry {
  std::string name;
  std::string lattice_file;                 // required
  std::optional<std::string> map_file;
  std::optional<std::string> coordinate_file;
  std::optional<std::string> family_file;
  ExpectedVerdict expected;
};

struct Catalog {
  std::string dir;
  std::vector<CatalogEntry> entries;

  const CatalogEntry& entry(const std::string& name) const;  // CapabilityError if absent
  std::string resolve(const std::string& file) const { return dir + "/" + file; }
};

Catalog load_catalog(const std::string& path);  // path to the catalog index file

Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

// Entry loading shortcuts used by the CLI and the verification suite.
std::shared_ptr<PolarizedLattice> load_entry_lattice(const Catalog& cat, const CatalogEntry& e);
LoadedMap load_entry_map(const Catalog& cat, const CatalogEntry& e);
CoordinatePair load_entry_coordinate(const Catalog& cat, const CatalogEntry& e);

}  // namespace birat
