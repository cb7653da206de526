// coh1: command-line front end for the cohomogeneity-one orbit library.
// Subcommands: catalog, solve, sweep, stability, krmap, foliation, verify.
// Exit codes: 0 success, 1 verification failure, 2 usage error.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "coh1/coh1.hpp"

namespace {

using nlohmann::json;

enum class Format { kJson, kCsv, kTable };

Format parse_format(const std::string& s) {
  if (s == "json") return Format::kJson;
  if (s == "csv") return Format::kCsv;
  return Format::kTable;
}

// Machine formats carry 17 significant digits; the human table rounds to 6.
std::string fmt_num(double v, Format f) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), f == Format::kTable ? "%.6g" : "%.17g", v);
  return buf;
}

struct Cells {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

void print_cells(const Cells& c, Format f) {
  if (f == Format::kCsv) {
    const auto line = [](const std::vector<std::string>& row) {
      std::string out;
      for (size_t i = 0; i < row.size(); ++i) {
        if (i) out += ',';
        out += row[i];
      }
      return out;
    };
    std::cout << line(c.header) << '\n';
    for (const auto& row : c.rows) std::cout << line(row) << '\n';
    return;
  }
  std::vector<size_t> width(c.header.size(), 0);
  const auto grow = [&](const std::vector<std::string>& row) {
    for (size_t i = 0; i < row.size() && i < width.size(); ++i)
      width[i] = std::max(width[i], row[i].size());
  };
  grow(c.header);
  for (const auto& row : c.rows) grow(row);
  const auto line = [&](const std::vector<std::string>& row) {
    std::string out;
    for (size_t i = 0; i < row.size(); ++i) {
      if (i) out += "  ";
      out += row[i];
      if (i + 1 < row.size()) out.append(width[i] - row[i].size(), ' ');
    }
    return out;
  };
  std::cout << line(c.header) << '\n';
  for (const auto& row : c.rows) std::cout << line(row) << '\n';
}

// --- geometry selection ----------------------------------------------------

struct GeometryOpts {
  std::string name;
  std::optional<int> n, k, p;

  std::map<std::string, double> params() const {
    std::map<std::string, double> out;
    if (n) out["n"] = *n;
    if (k) out["k"] = *k;
    if (p) out["p"] = *p;
    return out;
  }
};

void add_geometry_options(CLI::App* sub, GeometryOpts& g) {
  sub->add_option("--geometry", g.name, "catalog family name (see `catalog`)")
      ->required();
  sub->add_option("--n", g.n, "family parameter n");
  sub->add_option("--k", g.k, "family parameter k");
  sub->add_option("--p", g.p, "family parameter p");
}

// --- solve / sweep -----------------------------------------------------------

Cells report_cells(const std::vector<coh1::SolveReport>& reports, Format f) {
  Cells c;
  c.header = {"geometry", "cheeger_s", "order_r",       "t_root",
              "x_value",  "residual",  "trA",           "classification"};
  for (const auto& rep : reports) {
    for (const auto& root : rep.roots) {
      c.rows.push_back({rep.geometry, fmt_num(rep.cheeger_s, f),
                        std::to_string(rep.order_r), fmt_num(root.t_root, f),
                        root.x_value ? fmt_num(*root.x_value, f) : "",
                        fmt_num(root.residual, f), fmt_num(root.trA_at_root, f),
                        coh1::to_string(root.classification)});
    }
  }
  return c;
}

void emit_reports(const std::vector<coh1::SolveReport>& reports, Format f,
                  bool as_array) {
  if (f == Format::kJson) {
    if (as_array) {
      json arr = json::array();
      for (const auto& rep : reports) arr.push_back(coh1::to_json(rep));
      std::cout << arr.dump(2) << '\n';
    } else {
      std::cout << coh1::to_json(reports.at(0)).dump(2) << '\n';
    }
    return;
  }
  print_cells(report_cells(reports, f), f);
}

int run_solve(const GeometryOpts& geo, double cheeger_s, int order,
              const coh1::RootFindOptions& opts, Format format) {
  const auto rep = coh1::make_solve_report(geo.name, geo.params(), cheeger_s,
                                           order, opts);
  emit_reports({rep}, format, /*as_array=*/false);
  return 0;
}

int run_sweep(const GeometryOpts& geo, const std::string& cheeger_range,
              std::vector<int> orders, double cheeger_s, int order,
              const coh1::RootFindOptions& opts, Format format) {
  const bool sweep_s = !cheeger_range.empty();
  const bool sweep_r = !orders.empty();
  if (sweep_s == sweep_r)
    throw std::invalid_argument(
        "sweep: give exactly one of --cheeger START:END:STEP or --orders "
        "R1,R2,...");
  std::vector<coh1::SolveReport> reports;
  if (sweep_s) {
    double lo = 0.0, hi = 0.0, step = 0.0;
    if (std::sscanf(cheeger_range.c_str(), "%lf:%lf:%lf", &lo, &hi, &step) != 3)
      throw std::invalid_argument("sweep: --cheeger expects START:END:STEP");
    if (!(step > 0.0) || hi < lo)
      throw std::invalid_argument("sweep: empty --cheeger range");
    for (double s = lo; s <= hi + 1e-12; s += step)
      reports.push_back(
          coh1::make_solve_report(geo.name, geo.params(), s, order, opts));
  } else {
    for (int r : orders)
      reports.push_back(coh1::make_solve_report(geo.name, geo.params(),
                                                cheeger_s, r, opts));
  }
  if (reports.empty()) throw std::invalid_argument("sweep: empty range");
  emit_reports(reports, format, /*as_array=*/true);
  return 0;
}

// --- stability ---------------------------------------------------------------

int run_stability(CLI::App* sub, const GeometryOpts& geo, double t,
                  double cheeger_s, std::optional<double> mu,
                  std::optional<int> index_n, std::optional<double> index_t,
                  std::optional<int> hpn_probe_n, Format format) {
  if (hpn_probe_n) {
    const auto probe = coh1::hpn_asymptotics_probe(*hpn_probe_n);
    if (format == Format::kJson) {
      json j = {{"n", *hpn_probe_n},
                {"x_minus", probe.x_minus},
                {"sqrt_n_times_trA", probe.sqrt_n_times_trA},
                {"trC_over_sqrt_n", probe.trC_over_sqrt_n}};
      std::cout << j.dump(2) << '\n';
    } else {
      Cells c;
      c.header = {"n", "x_minus", "sqrt_n_times_trA", "trC_over_sqrt_n"};
      c.rows.push_back({std::to_string(*hpn_probe_n),
                        fmt_num(probe.x_minus, format),
                        fmt_num(probe.sqrt_n_times_trA, format),
                        fmt_num(probe.trC_over_sqrt_n, format)});
      print_cells(c, format);
    }
    return 0;
  }
  if (index_n || index_t) {
    if (!index_n || !index_t)
      throw std::invalid_argument(
          "stability: --index-n and --index-t go together");
    const auto in = coh1::warped_index_nullity(*index_n, *index_t);
    if (format == Format::kJson) {
      json j = {{"n", *index_n},
                {"t", *index_t},
                {"index", in.index},
                {"nullity", in.nullity},
                {"k_max", in.k_max}};
      std::cout << j.dump(2) << '\n';
    } else {
      Cells c;
      c.header = {"n", "t", "index", "nullity", "k_max"};
      c.rows.push_back({std::to_string(*index_n), fmt_num(*index_t, format),
                        std::to_string(in.index), std::to_string(in.nullity),
                        std::to_string(in.k_max)});
      print_cells(c, format);
    }
    return 0;
  }
  if (geo.name.empty() || sub->count("--t") == 0)
    throw std::invalid_argument(
        "stability: need --geometry and --t (or one of the probe modes)");
  coh1::MetricFamily fam = coh1::catalog::make_catalog_family(geo.name,
                                                              geo.params());
  if (cheeger_s > 0.0) fam = coh1::cheeger_deform(fam, cheeger_s);
  const auto rep = coh1::stability_report(fam, t);
  std::optional<double> hbound;
  if (mu) hbound = coh1::hessian_lower_bound(fam, t, *mu);
  if (format == Format::kJson) {
    json j = {{"geometry", geo.name}, {"t", rep.t},
              {"trA", rep.trA},       {"trC", rep.trC},
              {"criterion", rep.criterion},
              {"hessian_const", rep.hessian_const},
              {"unstable", rep.unstable},
              {"notes", rep.notes}};
    if (hbound) j["hessian_lower_bound"] = *hbound;
    std::cout << j.dump(2) << '\n';
    return 0;
  }
  Cells c;
  c.header = {"t", "trA", "trC", "criterion", "hessian_const", "unstable"};
  c.rows.push_back({fmt_num(rep.t, format), fmt_num(rep.trA, format),
                    fmt_num(rep.trC, format), fmt_num(rep.criterion, format),
                    fmt_num(rep.hessian_const, format),
                    rep.unstable ? "yes" : "no"});
  if (hbound) {
    c.header.push_back("hessian_lower_bound");
    c.rows[0].push_back(fmt_num(*hbound, format));
  }
  print_cells(c, format);
  for (const auto& note : rep.notes) std::cout << "note: " << note << '\n';
  return 0;
}

// --- krmap -------------------------------------------------------------------

int run_krmap_shoot(const GeometryOpts& geo, int winding, double tol,
                    const std::string& csv_path, Format format) {
  const auto fam = coh1::catalog::make_catalog_family(geo.name, geo.params());
  const auto shot = coh1::shoot_kr(fam, winding, {0.25, 2.5}, tol);
  if (!csv_path.empty() && shot.converged) {
    std::ofstream out(csv_path);
    if (!out) throw std::invalid_argument("cannot write " + csv_path);
    out << "t,r,r1,F,F1\n";
    for (const auto& s : shot.trajectory)
      out << fmt_num(s.t, Format::kCsv) << ',' << fmt_num(s.r, Format::kCsv)
          << ',' << fmt_num(s.r1, Format::kCsv) << ','
          << fmt_num(s.F, Format::kCsv) << ',' << fmt_num(s.F1, Format::kCsv)
          << '\n';
  }
  if (format == Format::kJson) {
    json j = {{"geometry", geo.name},
              {"winding", winding},
              {"converged", shot.converged},
              {"message", shot.message},
              {"slope", shot.slope},
              {"fdot", shot.fdot},
              {"iterations", shot.iterations},
              {"samples", shot.trajectory.size()}};
    if (std::isfinite(shot.mismatch)) j["mismatch"] = shot.mismatch;
    std::cout << j.dump(2) << '\n';
  } else {
    Cells c;
    c.header = {"converged", "slope", "fdot", "mismatch", "iterations",
                "samples"};
    c.rows.push_back({shot.converged ? "yes" : "no",
                      fmt_num(shot.slope, format), fmt_num(shot.fdot, format),
                      fmt_num(shot.mismatch, format),
                      std::to_string(shot.iterations),
                      std::to_string(shot.trajectory.size())});
    print_cells(c, format);
    if (!shot.converged) std::cout << "note: " << shot.message << '\n';
  }
  return shot.converged ? 0 : 1;
}

// Reads a two-column table (t, r) with uniform t spacing; accepts commas or
// whitespace, '#' comments, and an optional non-numeric header line.
std::pair<std::pair<double, double>, std::vector<double>> read_map_table(
    const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read " + path);
  std::vector<double> ts, rs;
  std::string line;
  while (std::getline(in, line)) {
    for (auto& ch : line)
      if (ch == ',' || ch == ';' || ch == '\t') ch = ' ';
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    double t = 0.0, r = 0.0;
    if (ls >> t >> r) {
      ts.push_back(t);
      rs.push_back(r);
    }
  }
  if (ts.size() < 6)
    throw std::invalid_argument("map table needs at least 6 rows: " + path);
  const double dt = (ts.back() - ts.front()) / double(ts.size() - 1);
  if (!(dt > 0.0))
    throw std::invalid_argument("map table abscissae must increase: " + path);
  for (size_t i = 0; i < ts.size(); ++i)
    if (std::fabs(ts[i] - (ts.front() + dt * double(i))) > 1e-9 * std::max(1.0, std::fabs(ts.back())))
      throw std::invalid_argument("map table must be uniformly spaced: " + path);
  return {{ts.front(), dt}, rs};
}

int run_krmap_verify(const GeometryOpts& geo, const std::string& map_spec,
                     int winding, int grid, double margin,
                     std::optional<double> threshold, Format format) {
  auto fam = coh1::catalog::make_catalog_family(geo.name, geo.params());
  coh1::EquivariantMap map;
  bool has_bitension = true;
  double lo = fam.t_min, hi = fam.t_max;
  if (map_spec == "identity") {
    map = coh1::identity_map(fam);
  } else if (map_spec.rfind("linear:", 0) == 0) {
    const double slope = std::stod(map_spec.substr(7));
    map.fam = fam;
    map.k = winding;
    map.r_fn = [slope](double t) {
      return coh1::RJet{slope * t, slope, 0.0, 0.0, 0.0};
    };
    if (!fam.extendable && slope > 1.0)
      throw std::invalid_argument(
          "krmap verify: linear slope > 1 leaves the orbit interval");
  } else if (map_spec.rfind("table:", 0) == 0) {
    const auto [grid0, values] = read_map_table(map_spec.substr(6));
    const double t_last = grid0.first + grid0.second * double(values.size() - 1);
    map = coh1::tabulated_map(fam, winding, grid0.first, grid0.second, values);
    has_bitension = false;  // no fourth derivative from point samples
    lo = std::max(lo, grid0.first);
    hi = std::min(hi, t_last);
  } else {
    throw std::invalid_argument(
        "krmap verify: --map must be identity, linear:SLOPE, or table:PATH");
  }
  const double len = hi - lo;
  if (!std::isfinite(len) || !(len > 0.0))
    throw std::invalid_argument("krmap verify: empty evaluation interval");
  double max_f = 0.0, max_g = 0.0;
  const int points = std::max(grid, 2);
  for (int i = 0; i < points; ++i) {
    const double t =
        lo + len * (margin + (1.0 - 2.0 * margin) * i / double(points - 1));
    max_f = std::max(max_f, std::fabs(coh1::tension(map, t)));
    if (has_bitension)
      max_g = std::max(max_g, std::fabs(coh1::bitension(map, t)));
  }
  if (format == Format::kJson) {
    json j = {{"geometry", geo.name},
              {"map", map_spec},
              {"points", points},
              {"max_tension", max_f}};
    if (has_bitension)
      j["max_bitension"] = max_g;
    else
      j["max_bitension"] = nullptr;
    std::cout << j.dump(2) << '\n';
  } else {
    Cells c;
    c.header = {"map", "points", "max_tension", "max_bitension"};
    c.rows.push_back({map_spec, std::to_string(points),
                      fmt_num(max_f, format),
                      has_bitension ? fmt_num(max_g, format) : ""});
    print_cells(c, format);
  }
  if (threshold && (max_f > *threshold || (has_bitension && max_g > *threshold)))
    return 1;
  return 0;
}

int run_krmap_degree(int j, int weyl, int codim0, int codim1, Format format) {
  const int k = coh1::admissible_k(j, weyl);
  coh1::DegreeInput d;
  d.j_even = j % 2 == 0;
  d.codim_n0_even = codim0 % 2 == 0;
  d.codim_n1_even = codim1 % 2 == 0;
  d.weyl_order = weyl;
  const int degree = coh1::brouwer_degree(d, k);
  if (format == Format::kJson) {
    json jj = {{"j", j},           {"weyl_order", weyl}, {"codim_n0", codim0},
               {"codim_n1", codim1}, {"k", k},           {"degree", degree}};
    std::cout << jj.dump(2) << '\n';
  } else {
    Cells c;
    c.header = {"j", "weyl_order", "codim_n0", "codim_n1", "k", "degree"};
    c.rows.push_back({std::to_string(j), std::to_string(weyl),
                      std::to_string(codim0), std::to_string(codim1),
                      std::to_string(k), std::to_string(degree)});
    print_cells(c, format);
  }
  return 0;
}

// --- foliation -----------------------------------------------------------------

int run_foliation_warped(int r, double c1, double c2, double t_max, int grid,
                         Format format) {
  double max_res = 0.0;
  Cells c;
  c.header = {"t", "f", "residual"};
  const int points = std::max(grid, 2);
  for (int i = 0; i < points; ++i) {
    const double t = t_max * i / double(points - 1);
    const double f = c1 * std::pow(c2 + t, (double(r) - 1.0) / double(r));
    const double res = coh1::warped_leaf_residual(r, c1, c2, t);
    max_res = std::max(max_res, std::fabs(res));
    if (format == Format::kCsv)
      c.rows.push_back({fmt_num(t, format), fmt_num(f, format),
                        fmt_num(res, format)});
  }
  if (format == Format::kJson) {
    json j = {{"r", r},       {"c1", c1},          {"c2", c2},
              {"t_max", t_max}, {"points", points}, {"max_residual", max_res}};
    std::cout << j.dump(2) << '\n';
  } else if (format == Format::kCsv) {
    print_cells(c, format);
  } else {
    std::cout << "r-harmonic warped foliation, r = " << r << ", f = "
              << fmt_num(c1, format) << " (t + " << fmt_num(c2, format)
              << ")^((r-1)/r)\n"
              << "max |residual| over " << points
              << " points: " << fmt_num(max_res, format) << '\n';
  }
  return 0;
}

int run_foliation_doubly(int n, int m, int grid, Format format) {
  const double T = coh1::doubly_warped_halfwidth(n, m);
  const double t_star = coh1::doubly_warped_minimal_time(n, m);
  double max_res = 0.0;
  Cells c;
  c.header = {"t", "residual"};
  const int points = std::max(grid, 2);
  for (int i = 0; i < points; ++i) {
    const double t = -0.9 * T + 1.8 * T * i / double(points - 1);
    const double res = coh1::doubly_warped_residual(n, m, t);
    max_res = std::max(max_res, std::fabs(res));
    if (format == Format::kCsv)
      c.rows.push_back({fmt_num(t, format), fmt_num(res, format)});
  }
  if (format == Format::kJson) {
    json j = {{"n", n},
              {"m", m},
              {"halfwidth", T},
              {"minimal_time", t_star},
              {"points", points},
              {"max_residual", max_res}};
    std::cout << j.dump(2) << '\n';
  } else if (format == Format::kCsv) {
    print_cells(c, format);
  } else {
    std::cout << "biharmonic doubly warped foliation, (n, m) = (" << n << ", "
              << m << ")\n"
              << "domain halfwidth: " << fmt_num(T, format)
              << ", minimal leaf at t = " << fmt_num(t_star, format) << '\n'
              << "max |residual| over " << points
              << " points: " << fmt_num(max_res, format) << '\n';
  }
  return 0;
}

int run_foliation_torus(double a, double d, int samples, Format format) {
  const coh1::TorusCubic tc = coh1::torus_family(a, d);
  const bool c0 = tc.c0_periodic();
  const bool c1 = tc.c1_periodic();
  const bool partition = coh1::torus_partition_check(a, samples);
  if (format == Format::kJson) {
    json j = {{"a", tc.a},
              {"b", tc.b},
              {"c", tc.c},
              {"d", tc.d},
              {"c0_periodic", c0},
              {"c1_periodic", c1},
              {"second_derivative_jump", tc.second_derivative_jump()},
              {"partition_check", partition},
              {"samples", samples}};
    std::cout << j.dump(2) << '\n';
  } else {
    Cells c;
    c.header = {"a", "b", "c", "d", "c0", "c1", "psi2_jump", "partition"};
    c.rows.push_back({fmt_num(tc.a, format), fmt_num(tc.b, format),
                      fmt_num(tc.c, format), fmt_num(tc.d, format),
                      c0 ? "yes" : "no", c1 ? "yes" : "no",
                      fmt_num(tc.second_derivative_jump(), format),
                      partition ? "pass" : "fail"});
    print_cells(c, format);
  }
  return (c0 && c1 && partition) ? 0 : 1;
}

// --- verify --------------------------------------------------------------------

int run_verify(const std::string& filter) {
  const auto results = coh1::run_acceptance_checks(filter);
  if (results.empty()) {
    std::cerr << "error: no checks match filter '" << filter << "'\n";
    return 2;
  }
  int failed = 0;
  for (const auto& r : results) {
    std::cout << (r.passed ? "PASS" : "FAIL") << "  " << r.id;
    if (!r.detail.empty()) std::cout << "  (" << r.detail << ")";
    std::cout << '\n';
    if (!r.passed) ++failed;
  }
  std::cout << (results.size() - failed) << "/" << results.size()
            << " checks passed\n";
  return failed == 0 ? 0 : 1;
}

int run_catalog(Format format) {
  const auto& table = coh1::catalog::entries();
  if (format == Format::kJson) {
    json arr = json::array();
    for (const auto& e : table)
      arr.push_back({{"name", e.name},
                     {"params", e.params},
                     {"description", e.description}});
    std::cout << arr.dump(2) << '\n';
    return 0;
  }
  Cells c;
  c.header = {"name", "params", "description"};
  for (const auto& e : table) c.rows.push_back({e.name, e.params, e.description});
  print_cells(c, format);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "coh1 - biharmonic and r-harmonic orbits of cohomogeneity-one metrics"};
  app.require_subcommand(1);

  int exit_code = 0;

  // Shared option storage (each subcommand binds the pieces it uses).
  GeometryOpts geo;
  std::string format_name = "table";
  coh1::RootFindOptions opts;
  int order = 2;
  double cheeger_s = 0.0;

  const auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", format_name, "output format")
        ->check(CLI::IsMember({"json", "csv", "table"}))
        ->capture_default_str();
  };
  const auto add_solver_options = [&](CLI::App* sub) {
    sub->add_option("--grid", opts.grid_points, "scan grid points")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sub->add_option("--tol", opts.tol, "root bracket tolerance")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
  };

  // catalog
  auto* cat = app.add_subcommand("catalog", "list the built-in geometries");
  add_format(cat);
  cat->callback([&]() { exit_code = run_catalog(parse_format(format_name)); });

  // solve
  auto* solve = app.add_subcommand(
      "solve", "find and classify r-harmonic orbits of one geometry");
  add_geometry_options(solve, geo);
  solve->add_option("--order", order, "polyharmonic order r")
      ->check(CLI::Range(2, 64))
      ->capture_default_str();
  solve->add_option("--cheeger-s", cheeger_s, "Cheeger deformation parameter")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  add_solver_options(solve);
  add_format(solve);
  solve->callback([&]() {
    exit_code =
        run_solve(geo, cheeger_s, order, opts, parse_format(format_name));
  });

  // sweep
  auto* sweep = app.add_subcommand(
      "sweep", "solve across a Cheeger range or a list of orders");
  add_geometry_options(sweep, geo);
  std::string cheeger_range;
  std::vector<int> orders;
  sweep->add_option("--cheeger", cheeger_range,
                    "sweep Cheeger parameter START:END:STEP");
  sweep->add_option("--orders", orders, "sweep polyharmonic orders R1,R2,...")
      ->delimiter(',');
  sweep->add_option("--order", order, "fixed order while sweeping --cheeger")
      ->check(CLI::Range(2, 64))
      ->capture_default_str();
  sweep->add_option("--cheeger-s", cheeger_s,
                    "fixed Cheeger parameter while sweeping --orders")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  add_solver_options(sweep);
  add_format(sweep);
  sweep->callback([&]() {
    exit_code = run_sweep(geo, cheeger_range, orders, cheeger_s, order, opts,
                          parse_format(format_name));
  });

  // stability
  auto* stab = app.add_subcommand(
      "stability", "orbit stability report and spectral index tools");
  stab->add_option("--geometry", geo.name, "catalog family name");
  stab->add_option("--n", geo.n, "family parameter n");
  stab->add_option("--k", geo.k, "family parameter k");
  stab->add_option("--p", geo.p, "family parameter p");
  double stab_t = 0.0;
  std::optional<double> stab_mu;
  std::optional<int> index_n, probe_n;
  std::optional<double> index_t;
  stab->add_option("--t", stab_t, "orbit parameter t");
  stab->add_option("--cheeger-s", cheeger_s, "Cheeger deformation parameter")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  stab->add_option("--mu", stab_mu,
                   "spectral lower bound: report mu^2 + trA trC / 4");
  stab->add_option("--index-n", index_n,
                   "warped foliation index/nullity: sphere dimension n");
  stab->add_option("--index-t", index_t,
                   "warped foliation index/nullity: leaf time t");
  stab->add_option("--hpn-probe", probe_n,
                   "evaluate the large-n trace asymptotics at this n");
  add_format(stab);
  stab->callback([&]() {
    exit_code = run_stability(stab, geo, stab_t, cheeger_s, stab_mu, index_n,
                              index_t, probe_n, parse_format(format_name));
  });

  // krmap
  auto* krmap = app.add_subcommand(
      "krmap", "equivariant (k,r)-maps: shooting, verification, degree");
  krmap->require_subcommand(1);

  auto* shoot = krmap->add_subcommand(
      "shoot", "solve the biharmonic boundary value problem by shooting");
  add_geometry_options(shoot, geo);
  int winding = 1;
  double shoot_tol = 1e-8;
  std::string csv_path;
  shoot->add_option("--winding", winding, "boundary winding k")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  shoot->add_option("--tol", shoot_tol, "mismatch tolerance")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  shoot->add_option("--csv", csv_path, "write the trajectory to this CSV file");
  add_format(shoot);
  shoot->callback([&]() {
    exit_code = run_krmap_shoot(geo, winding, shoot_tol, csv_path,
                                parse_format(format_name));
  });

  auto* kverify = krmap->add_subcommand(
      "verify", "evaluate tension and bitension of a given map");
  add_geometry_options(kverify, geo);
  std::string map_spec = "identity";
  double margin = 0.02;
  std::optional<double> threshold;
  kverify->add_option("--map", map_spec,
                      "identity | linear:SLOPE | table:PATH (uniform t,r rows)")
      ->capture_default_str();
  kverify->add_option("--winding", winding, "boundary winding k of the map")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  kverify
      ->add_option("--margin", margin,
                   "fraction of the interval excluded at each end")
      ->check(CLI::Range(0.0, 0.49))
      ->capture_default_str();
  kverify->add_option("--threshold", threshold,
                      "exit 1 when a residual exceeds this value");
  add_solver_options(kverify);
  add_format(kverify);
  kverify->callback([&]() {
    exit_code = run_krmap_verify(geo, map_spec, winding, opts.grid_points,
                                 margin, threshold, parse_format(format_name));
  });

  auto* degree = krmap->add_subcommand(
      "degree", "admissible winding and Brouwer degree from the case table");
  int deg_j = 0, deg_weyl = 2, codim0 = 1, codim1 = 1;
  degree->add_option("--j", deg_j, "index j in k = j|W|/2 + 1")
      ->required()
      ->check(CLI::NonNegativeNumber);
  degree->add_option("--weyl", deg_weyl, "Weyl group order |W| (even)")
      ->required();
  degree->add_option("--codim0", codim0, "codimension of the singular orbit N0")
      ->required()
      ->check(CLI::PositiveNumber);
  degree->add_option("--codim1", codim1, "codimension of the singular orbit N1")
      ->required()
      ->check(CLI::PositiveNumber);
  add_format(degree);
  degree->callback([&]() {
    exit_code = run_krmap_degree(deg_j, deg_weyl, codim0, codim1,
                                 parse_format(format_name));
  });

  // foliation
  auto* fol = app.add_subcommand(
      "foliation", "polyharmonic foliations: warped, doubly warped, torus");
  fol->require_subcommand(1);

  auto* warped = fol->add_subcommand(
      "warped", "r-harmonic warped product foliation residuals");
  int fol_r = 2;
  double c1 = 1.0, c2 = 1.0, fol_tmax = 10.0;
  warped->add_option("--order", fol_r, "polyharmonic order r")
      ->check(CLI::Range(2, 64))
      ->capture_default_str();
  warped->add_option("--c1", c1, "leaf profile scale")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  warped->add_option("--c2", c2, "leaf profile shift")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  warped->add_option("--t-max", fol_tmax, "grid endpoint")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  add_solver_options(warped);
  add_format(warped);
  warped->callback([&]() {
    exit_code = run_foliation_warped(fol_r, c1, c2, fol_tmax, opts.grid_points,
                                     parse_format(format_name));
  });

  auto* doubly = fol->add_subcommand(
      "doubly", "biharmonic doubly warped foliation residuals");
  int fol_n = 1, fol_m = 1;
  doubly->add_option("--n", fol_n, "first sphere dimension")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  doubly->add_option("--m", fol_m, "second sphere dimension")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  add_solver_options(doubly);
  add_format(doubly);
  doubly->callback([&]() {
    exit_code = run_foliation_doubly(fol_n, fol_m, opts.grid_points,
                                     parse_format(format_name));
  });

  auto* torus = fol->add_subcommand(
      "torus", "biharmonic cubic-graph foliation of the flat torus");
  double torus_a = 1.0, torus_d = 0.0;
  int torus_samples = 10000;
  torus->add_option("--a", torus_a, "family parameter a (nonzero)")
      ->capture_default_str();
  torus->add_option("--d", torus_d, "leaf offset d")->capture_default_str();
  torus->add_option("--samples", torus_samples, "partition check sample count")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  add_format(torus);
  torus->callback([&]() {
    exit_code = run_foliation_torus(torus_a, torus_d, torus_samples,
                                    parse_format(format_name));
  });

  // verify
  auto* verify = app.add_subcommand(
      "verify", "run the built-in verification suite (exit 1 on failure)");
  std::string filter;
  verify->add_option("--filter", filter, "run only checks whose id contains this");
  verify->callback([&]() { exit_code = run_verify(filter); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return exit_code;
}
