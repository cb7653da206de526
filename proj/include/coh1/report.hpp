#pragma once

// Solve reports and their JSON round trip.  The JSON layer is the machine
// interface of the CLI: parse(serialize(report)) reproduces the report
// exactly (doubles are emitted with shortest round-trip precision).

#include <chrono>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "coh1/catalog.hpp"
#include "coh1/cheeger.hpp"
#include "coh1/solve.hpp"

namespace coh1 {

inline bool operator==(const OrbitSolution& a, const OrbitSolution& b) {
  return a.t_root == b.t_root && a.bracket_lo == b.bracket_lo &&
         a.bracket_hi == b.bracket_hi && a.residual == b.residual &&
         a.trA_at_root == b.trA_at_root &&
         a.classification == b.classification && a.order == b.order &&
         a.x_value == b.x_value;
}

struct SolveReport {
  std::string geometry;
  std::map<std::string, double> params;  // family parameters other than s
  double cheeger_s = 0.0;
  int order_r = 2;
  std::vector<OrbitSolution> roots;  // sorted by t
  double elapsed_ms = 0.0;

  friend bool operator==(const SolveReport&, const SolveReport&) = default;
};

inline OrbitClass orbit_class_from_string(const std::string& s) {
  if (s == "minimal") return OrbitClass::Minimal;
  if (s == "proper_biharmonic") return OrbitClass::ProperBiharmonic;
  if (s == "proper_r_harmonic") return OrbitClass::ProperRHarmonic;
  throw std::invalid_argument("unknown orbit classification: " + s);
}

inline nlohmann::json to_json(const OrbitSolution& sol) {
  nlohmann::json j{{"t", sol.t_root},
                   {"bracket", {sol.bracket_lo, sol.bracket_hi}},
                   {"residual", sol.residual},
                   {"trA", sol.trA_at_root},
                   {"classification", to_string(sol.classification)},
                   {"order", sol.order}};
  if (sol.x_value) j["x"] = *sol.x_value;
  return j;
}

inline OrbitSolution orbit_solution_from_json(const nlohmann::json& j) {
  OrbitSolution sol;
  sol.t_root = j.at("t").get<double>();
  sol.bracket_lo = j.at("bracket").at(0).get<double>();
  sol.bracket_hi = j.at("bracket").at(1).get<double>();
  sol.residual = j.at("residual").get<double>();
  sol.trA_at_root = j.at("trA").get<double>();
  sol.classification =
      orbit_class_from_string(j.at("classification").get<std::string>());
  sol.order = j.at("order").get<double>();
  if (j.contains("x")) sol.x_value = j.at("x").get<double>();
  return sol;
}

inline nlohmann::json to_json(const SolveReport& rep) {
  nlohmann::json roots = nlohmann::json::array();
  for (const auto& r : rep.roots) roots.push_back(to_json(r));
  return {{"geometry", rep.geometry}, {"params", rep.params},
          {"cheeger_s", rep.cheeger_s}, {"order_r", rep.order_r},
          {"roots", std::move(roots)}, {"elapsed_ms", rep.elapsed_ms}};
}

inline SolveReport solve_report_from_json(const nlohmann::json& j) {
  SolveReport rep;
  rep.geometry = j.at("geometry").get<std::string>();
  rep.params = j.at("params").get<std::map<std::string, double>>();
  rep.cheeger_s = j.at("cheeger_s").get<double>();
  rep.order_r = j.at("order_r").get<int>();
  for (const auto& item : j.at("roots"))
    rep.roots.push_back(orbit_solution_from_json(item));
  rep.elapsed_ms = j.at("elapsed_ms").get<double>();
  return rep;
}

// Builds a report by running find_roots on the (optionally Cheeger-deformed)
// catalog family.
inline SolveReport make_solve_report(const std::string& geometry,
                                     const std::map<std::string, double>& params,
                                     double cheeger_s, int order_r,
                                     const RootFindOptions& opts = {}) {
  const auto start = std::chrono::steady_clock::now();
  MetricFamily fam = catalog::make_catalog_family(geometry, params);
  if (cheeger_s > 0.0) fam = cheeger_deform(fam, cheeger_s);
  const Functional fn = order_r == 2 ? Functional::biharmonic()
                                     : Functional::rharmonic(order_r);
  SolveReport rep;
  rep.geometry = geometry;
  rep.params = params;
  rep.cheeger_s = cheeger_s;
  rep.order_r = order_r;
  rep.roots = find_roots(fam, fn, opts);
  rep.elapsed_ms = std::chrono::duration<double, std::milli>(
                       std::chrono::steady_clock::now() - start)
                       .count();
  return rep;
}

}  // namespace coh1
