#include <CLI11.hpp>
#include <iostream>
#include <sstream>

#include "birat/errors.hpp"
#include "birat/growth.hpp"
#include "birat/hilbert.hpp"
#include "birat/io.hpp"
#include "birat/verify.hpp"

namespace {

using namespace birat;

std::string coeffs_str(const std::vector<Int>& v) {
  std::string s = "(";
  for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].get_str();
  return s + ")";
}

int cmd_classify(const std::string& catalog_path, const std::string& entry,
                 const std::string& format) {
  Catalog cat = load_catalog(catalog_path);
  LoadedMap lm = load_entry_map(cat, cat.entry(entry));
  GrowthData g = classify(*lm.map);
  if (format == "structured") {
    Json j;
    j["entry"] = entry;
    j["rho"] = g.rho_string();
    j["rho_minpoly"] = ipoly_to_string(g.rho_minpoly);
    j["rho_exact"] = g.rho_exact;
    j["j"] = g.j;
    j["case"] = to_string(g.growth_case);
    j["geometric"] = to_string(g.geometric);
    j["gk"] = to_string(g.gk);
    j["formal"] = g.formal;
    j["certificate"] = g.certificate;
    std::cout << j.dump(2) << "\n";
  } else {
    const char* sep = (format == "delimited") ? "\t" : ": ";
    std::cout << "rho" << sep << g.rho_string() << "\n"
              << "j" << sep << g.j << "\n"
              << "case" << sep << to_string(g.growth_case) << "\n"
              << "geometric" << sep << to_string(g.geometric) << "\n"
              << "gk" << sep << to_string(g.gk) << "\n"
              << "certificate" << sep << g.certificate << "\n";
  }
  return 0;
}

int cmd_hilbert(const std::string& catalog_path, const std::string& entry, long n_max,
                const std::string& format) {
  Catalog cat = load_catalog(catalog_path);
  LoadedMap lm = load_entry_map(cat, cat.entry(entry));
  if (!lm.ample)
    throw CapabilityError("entry '" + entry + "' has no ample reference class for sequences");
  DivisorSequence seq = hilbert_sequence(*lm.lattice, *lm.map, *lm.ample, n_max);

  const char* sep = (format == "table") ? "  " : "\t";
  if (format == "structured") {
    Json j;
    j["entry"] = entry;
    j["caveat"] = "h(n) is a section-ring dimension only under the positivity assumption on the input data";
    Json rows = Json::array();
    for (size_t n = 0; n < seq.terms.size(); ++n) {
      Json r;
      r["n"] = n;
      r["Dn"] = int_vec_to_json(seq.terms[n].coeffs);
      r["selfint"] = int_to_json(seq.self_ints[n]);
      r["kint"] = int_to_json(seq.k_ints[n]);
      r["h"] = int_to_json(seq.h[n]);
      rows.push_back(r);
    }
    j["rows"] = rows;
    if (seq.h.size() > 9) {
      FitResult fit = fit_growth(seq.h, std::max<size_t>(1, seq.h.size() / 2));
      j["fit"] = {{"rho_hat", fit.rho_hat}, {"j_hat", fit.j_hat}};
    }
    std::cout << j.dump(2) << "\n";
    return 0;
  }
  std::cout << "n" << sep << "Dn" << sep << "selfint" << sep << "kint" << sep << "h\n";
  for (size_t n = 0; n < seq.terms.size(); ++n)
    std::cout << n << sep << coeffs_str(seq.terms[n].coeffs) << sep << seq.self_ints[n].get_str()
              << sep << seq.k_ints[n].get_str() << sep << seq.h[n].get_str() << "\n";
  std::cout << "caveat: h(n) assumes positivity of the input data (not verified here)\n";
  if (seq.formal) std::cout << "note: stability not certified; sequence is formal\n";
  if (seq.h.size() > 9) {
    FitResult fit = fit_growth(seq.h, std::max<size_t>(1, seq.h.size() / 2));
    std::cout << "fit: rho_hat=" << fit.rho_hat << " j_hat=" << fit.j_hat << "\n";
    GrowthData g = classify(*lm.map);
    if (!g.rho_exact || g.rho_lo > 1) {
      double rho = g.rho_exact ? mpq_get_d(g.rho_lo.get_mpq_t())
                               : mpq_get_d(Rat((g.rho_lo + g.rho_hi) / 2).get_mpq_t());
      std::cout << "map rho=" << rho << "; h-rate " << fit.rho_hat << " tracks rho^2="
                << rho * rho << " ((Dn.Dn) dominance)\n";
    }
  }
  return 0;
}

int cmd_orbit(const std::string& catalog_path, const std::string& entry, long horizon,
              bool attach, const std::string& format) {
  Catalog cat = load_catalog(catalog_path);
  const CatalogEntry& ce = cat.entry(entry);
  CoordinatePair cp = load_entry_coordinate(cat, ce);
  if (!cp.inverse) throw CapabilityError("entry '" + entry + "' has no inverse coordinate map");
  StabilityCertificate cert = stability_check(cp.map, *cp.inverse, horizon);
  UnbalancedScanResult scan = unbalanced_scan(cp.map, *cp.inverse, horizon);

  if (attach) {
    if (!ce.map_file)
      throw CapabilityError("entry '" + entry + "' has no map file to attach the certificate to");
    std::string path = cat.resolve(*ce.map_file);
    Json j = read_json_file(path);
    auto lattice = load_entry_lattice(cat, ce);
    LoadedMap lm = map_from_json(j, lattice);  // re-validates before touching the file
    Json s;
    s["kind"] = cert.kind == StabilityKind::certified_stable ? "certified_stable"
                : cert.kind == StabilityKind::known_unstable ? "known_unstable"
                                                             : "unknown";
    s["horizon"] = cert.horizon;
    s["source"] = cert.source;
    s["witness"] = cert.witness;
    j["stability"] = s;
    write_json_file(path, j);
  }

  if (format == "structured") {
    Json j;
    j["entry"] = entry;
    j["horizon"] = horizon;
    j["stability"] = cert.describe();
    Json orbits = Json::array();
    for (const auto& cc : cp.map.contracted_curves()) {
      Json o;
      o["curve"] = cc.form.to_string();
      Json steps = Json::array();
      ProjPoint q = cc.image;
      bool alive = true;
      for (long n = 0; n <= horizon && alive; ++n) {
        steps.push_back(Json::array({n, q.to_string()}));
        auto next = evaluate(cp.map, q);
        if (next)
          q = *next;
        else
          alive = false;
      }
      o["steps"] = steps;
      orbits.push_back(o);
    }
    j["orbits"] = orbits;
    Json flagged = Json::array();
    for (const auto& ev : scan.flagged)
      flagged.push_back(Json{{"point", ev.point.to_string()}, {"evidence", ev.detail}});
    j["unbalanced"] = {{"applicable", scan.applicable},
                       {"reason", scan.reason},
                       {"flagged", flagged}};
    std::cout << j.dump(2) << "\n";
    return 0;
  }
  const char* sep = (format == "delimited") ? "\t" : "  ";
  std::cout << "stability" << sep << cert.describe() << "\n";
  for (const auto& cc : cp.map.contracted_curves()) {
    std::cout << "curve" << sep << cc.form.to_string() << "\n";
    ProjPoint q = cc.image;
    for (long n = 0; n <= horizon; ++n) {
      std::cout << n << sep << q.to_string() << sep << "defined\n";
      auto next = evaluate(cp.map, q);
      if (!next) {
        std::cout << (n + 1) << sep << "-" << sep << "undefined\n";
        break;
      }
      q = *next;
    }
  }
  if (!scan.applicable) {
    std::cout << "unbalanced scan inapplicable" << sep << scan.reason << "\n";
  } else {
    for (const auto& ev : scan.flagged)
      std::cout << "unbalanced" << sep << ev.point.to_string() << sep << ev.detail << "\n";
    if (scan.flagged.empty()) std::cout << "unbalanced" << sep << "none flagged\n";
  }
  return 0;
}

int cmd_degseq(const std::string& catalog_path, const std::string& entry, long n_max,
               long max_degree, const std::string& format) {
  Catalog cat = load_catalog(catalog_path);
  CoordinatePair cp = load_entry_coordinate(cat, cat.entry(entry));
  Budget budget;
  budget.max_degree = max_degree;
  DegreeSequenceResult r = degree_sequence(cp.map, n_max, budget);
  if (format == "structured") {
    Json j;
    j["entry"] = entry;
    j["degrees"] = r.degrees;
    j["truncated"] = r.truncated;
    j["reason"] = r.reason;
    std::cout << j.dump(2) << "\n";
  } else {
    const char* sep = (format == "delimited") ? "\t" : "  ";
    std::cout << "n" << sep << "deg\n";
    for (size_t n = 0; n < r.degrees.size(); ++n)
      std::cout << (n + 1) << sep << r.degrees[n] << "\n";
    if (r.truncated) std::cout << "truncated" << sep << r.reason << "\n";
  }
  if (r.truncated) {
    std::cerr << "degree sequence truncated: " << r.reason << "\n";
    return 4;
  }
  return 0;
}

int cmd_verify(const std::string& catalog_path, unsigned long seed, const std::string& format) {
  Catalog cat = load_catalog(catalog_path);
  VerifySummary sum = run_verification(cat, seed);
  if (format == "structured") {
    std::cout << sum.to_json().dump(2) << "\n";
  } else {
    const char* sep = (format == "delimited") ? "\t" : "  ";
    for (const auto& c : sum.checks)
      std::cout << (c.pass ? "PASS" : "FAIL") << sep << c.entry << sep << c.check
                << (c.detail.empty() ? "" : sep + c.detail) << "\n";
    std::cout << (sum.all_pass() ? "all checks passed" : "FAILURES PRESENT") << "\n";
  }
  return sum.all_pass() ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact birational-surface growth toolkit"};
  app.require_subcommand(1);

  std::string catalog = "catalog/catalog.json";
  std::string entry, format = "table";
  long n_max = 20, horizon = 10;
  unsigned long seed = 17;
  app.add_option("--catalog", catalog, "Catalog index file");
  app.add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"table", "delimited", "structured"}));

  auto* classify_cmd = app.add_subcommand("classify", "Growth classification of a catalog entry");
  classify_cmd->add_option("--entry", entry)->required();

  auto* hilbert_cmd = app.add_subcommand("hilbert", "Riemann-Roch dimension sequence");
  hilbert_cmd->add_option("--entry", entry)->required();
  hilbert_cmd->add_option("--n-max", n_max);

  bool attach = false;
  auto* orbit_cmd = app.add_subcommand("orbit", "Contracted-curve orbits and stability");
  orbit_cmd->add_option("--entry", entry)->required();
  orbit_cmd->add_option("--horizon", horizon);
  orbit_cmd->add_flag("--attach", attach, "Write the resulting certificate into the entry's map file");

  long max_degree = 4096;
  auto* degseq_cmd = app.add_subcommand("degseq", "Degree sequence of iterates");
  degseq_cmd->add_option("--entry", entry)->required();
  degseq_cmd->add_option("--n-max", n_max);
  degseq_cmd->add_option("--max-degree", max_degree, "Degree budget for composition");

  auto* verify_cmd = app.add_subcommand("verify", "Invariant suite over the catalog");
  verify_cmd->add_option("--seed", seed);

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand(classify_cmd)) return cmd_classify(catalog, entry, format);
    if (app.got_subcommand(hilbert_cmd)) return cmd_hilbert(catalog, entry, n_max, format);
    if (app.got_subcommand(orbit_cmd)) return cmd_orbit(catalog, entry, horizon, attach, format);
    if (app.got_subcommand(degseq_cmd)) return cmd_degseq(catalog, entry, n_max, max_degree, format);
    if (app.got_subcommand(verify_cmd)) return cmd_verify(catalog, seed, format);
  } catch (const birat::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return static_cast<int>(e.code());
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
