// Command-line front end: runs verification campaigns and emits
// machine-readable reports (JSON or RFC-4180 CSV).
//
// Exit codes: 0 = all checks passed, 1 = a mathematical bound was violated,
// 2 = usage or configuration error.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "acl/convexbody.hpp"
#include "acl/density.hpp"
#include "acl/entropy.hpp"
#include "acl/logconcave.hpp"
#include "acl/report.hpp"
#include "acl/special.hpp"

namespace {

using nlohmann::json;

constexpr double kInf = std::numeric_limits<double>::infinity();

struct CommonOptions {
  std::uint64_t seed = 42;
  std::size_t samples = 1000000;
  int threads = 1;
  std::string output;  // empty or "-" means stdout
  std::string format = "json";
};

void add_common(CLI::App* cmd, CommonOptions& opt) {
  cmd->add_option("--seed", opt.seed, "RNG seed")
      ->envname("ACL_SEED")
      ->capture_default_str();
  cmd->add_option("--samples", opt.samples, "Monte Carlo sample count")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--threads", opt.threads,
                  "worker threads (does not change results)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--output", opt.output, "output path ('-' for stdout)");
  cmd->add_option("--format", opt.format, "report format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
}

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

acl::density::CoefficientVector parse_coeffs(const std::string& spec) {
  if (spec.rfind("equal:", 0) == 0) {
    const std::string num = spec.substr(6);
    std::size_t pos = 0;
    unsigned long n = 0;
    try {
      n = std::stoul(num, &pos);
    } catch (const std::exception&) {
      throw UsageError("malformed coefficient spec '" + spec + "'");
    }
    if (pos != num.size() || n == 0)
      throw UsageError("malformed coefficient spec '" + spec + "'");
    return acl::density::CoefficientVector::equal(n);
  }
  std::vector<double> raw;
  std::stringstream ss(spec);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
      v = std::stod(tok, &pos);
    } catch (const std::exception&) {
      throw UsageError("malformed coefficient '" + tok + "'");
    }
    if (pos != tok.size()) throw UsageError("malformed coefficient '" + tok + "'");
    raw.push_back(v);
  }
  if (raw.empty()) throw UsageError("empty coefficient list");
  try {
    return acl::density::CoefficientVector::from(raw);
  } catch (const std::domain_error& e) {
    throw UsageError(e.what());
  }
}

double parse_order(const std::string& p) {
  if (p == "inf" || p == "Inf" || p == "INF") return kInf;
  try {
    std::size_t pos = 0;
    const double v = std::stod(p, &pos);
    if (pos != p.size()) throw UsageError("malformed order '" + p + "'");
    return v;
  } catch (const UsageError&) {
    throw;
  } catch (const std::exception&) {
    throw UsageError("malformed order '" + p + "'");
  }
}

// "start:stop:step" inclusive of stop up to roundoff
std::vector<double> parse_grid(const std::string& spec) {
  double start = 0.0, stop = 0.0, step = 0.0;
  char c1 = 0, c2 = 0;
  std::stringstream ss(spec);
  if (!(ss >> start >> c1 >> stop >> c2 >> step) || c1 != ':' || c2 != ':' ||
      !(step > 0.0) || stop < start || !ss.eof())
    throw UsageError("malformed grid spec '" + spec + "' (want start:stop:step)");
  std::vector<double> g;
  for (double t = start; t <= stop + 1e-12; t += step) g.push_back(std::min(t, stop));
  return g;
}

std::pair<int, int> parse_sweep(const std::string& spec) {
  int lo = 0, hi = 0;
  char c = 0;
  std::stringstream ss(spec);
  if (!(ss >> lo >> c >> hi) || c != ':' || lo < 1 || hi < lo || !ss.eof())
    throw UsageError("malformed sweep spec '" + spec + "' (want dmin:dmax)");
  return {lo, hi};
}

void emit(const acl::report::Report& rep, const CommonOptions& opt,
          const std::string& table_csv = "") {
  std::string text;
  if (opt.format == "csv")
    text = table_csv.empty() ? rep.to_csv() : table_csv;
  else
    text = rep.to_json().dump(2) + "\n";
  if (opt.output.empty() || opt.output == "-") {
    std::cout << text;
  } else {
    std::ofstream out(opt.output, std::ios::binary);
    if (!out) throw UsageError("cannot open output file '" + opt.output + "'");
    out << text;
  }
}

class Stopwatch {
 public:
  Stopwatch() : t0_(std::chrono::steady_clock::now()) {}
  double ms() const {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now() - t0_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point t0_;
};

// ---------------------------------------------------------------- density

int run_density(const CommonOptions& opt, int dim, const std::string& coeff_spec) {
  using namespace acl::density;
  if (dim < 1) throw UsageError("--dim must be >= 1");
  const CoefficientVector coeffs = parse_coeffs(coeff_spec);
  Stopwatch watch;
  acl::report::Report rep;
  rep.command = "density";
  rep.seed = opt.seed;
  rep.config = {{"seed", opt.seed},       {"samples", opt.samples},
                {"dim", dim},             {"coeffs", coeffs.a},
                {"threads", opt.threads}, {"format", opt.format}};
  rep.constants = {
      {"density_floor", density_floor_constant(dim)},
      {"density_floor_1d_sharp", density_floor_constant_1d_sharp()},
      {"unit_norm_lower_bound", 0.1}};

  const acl::RngStream rng(opt.seed, 0);

  // 20 radii along a fixed axis plus 10 random directions (the estimator is
  // radial, so directions only contribute extra radii)
  std::vector<acl::Point> grid;
  for (int k = 0; k < 20; ++k) {
    acl::Point x(static_cast<std::size_t>(dim), 0.0);
    x[0] = static_cast<double>(k) / 20.0;
    grid.push_back(std::move(x));
  }
  {
    acl::RngStream dir_rng = rng.substream(900);
    for (int k = 0; k < 10; ++k) {
      acl::Point x = acl::sample_sphere(dim, dir_rng);
      const double r = dir_rng.next_double();
      for (auto& v : x) v *= r;
      grid.push_back(std::move(x));
    }
  }
  const FloorReport floor = verify_density_floor(coeffs, dim, grid, opt.samples,
                                                 rng.substream(1), opt.threads);
  for (const auto& pt : floor.points) {
    char name[80];
    std::snprintf(name, sizeof(name), "density_floor r=%.4f%s", pt.radius,
                  pt.estimate.high_relative_error ? " [high rel stderr]" : "");
    rep.add({name, pt.estimate.value.mean, pt.estimate.value.se, floor.floor,
             ">=", pt.pass});
  }

  std::vector<double> radii;
  for (double r : {0.25, 0.5, 1.0})
    if (r < coeffs.abs_sum()) radii.push_back(r);
  if (radii.empty()) radii.push_back(0.5 * coeffs.abs_sum());
  const RadialIdentityReport radial = verify_radial_identity(
      coeffs, dim, radii, opt.samples, rng.substream(2), opt.threads);
  for (const auto& pt : radial.points) {
    char name[64];
    std::snprintf(name, sizeof(name), "radial_identity r=%.4f", pt.r);
    const double comb =
        std::sqrt(pt.lhs.se * pt.lhs.se + pt.rhs.se * pt.rhs.se);
    rep.add({name, std::fabs(pt.lhs.mean - pt.rhs.mean), comb, 3.0 * comb,
             "<=", pt.pass});
  }

  const acl::McEstimate low =
      unit_norm_lower(coeffs, dim, opt.samples, rng.substream(3), opt.threads);
  rep.add({"unit_norm_lower", low.mean, low.se, 0.1 - 3.0 * low.se, ">=",
           low.mean >= 0.1 - 3.0 * low.se});
  for (double t : {1.5, 2.0}) {
    const acl::McEstimate tail = norm_tail_estimate(coeffs, dim, t, opt.samples,
                                                    rng.substream(4), opt.threads);
    const double bound = norm_tail_bound(dim, t);
    char name[64];
    std::snprintf(name, sizeof(name), "norm_tail t=%.2f", t);
    rep.add({name, tail.mean, tail.se, bound + 3.0 * tail.se, "<=",
             tail.mean <= bound + 3.0 * tail.se});
  }

  rep.wall_time_ms = watch.ms();
  emit(rep, opt);
  return rep.pass() ? 0 : 1;
}

// ---------------------------------------------------------------- extremal

std::vector<double> default_log_grid(double lo, double hi, int n) {
  std::vector<double> g;
  for (int i = 0; i < n; ++i)
    g.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1)));
  return g;
}

int run_extremal(const CommonOptions& opt, const std::string& mode,
                 const std::string& t0_grid_spec) {
  using namespace acl::logconcave;
  Stopwatch watch;
  acl::report::Report rep;
  rep.command = "extremal " + mode;
  rep.seed = opt.seed;
  rep.config = {{"seed", opt.seed}, {"format", opt.format}, {"mode", mode}};
  const double limit = acl::convexbody::edge_section_limit();
  rep.constants = {{"edge_value_limit", limit},
                   {"uniform_value", 0.5 / std::sqrt(3.0)}};
  std::string table;

  if (mode == "min") {
    const MinimizeResult res = minimize_edge_value();
    rep.config["a_star"] = res.argmin.a;
    rep.config["b_star"] =
        res.argmin.infinite_tail() ? json("inf") : json(res.argmin.b);
    rep.add({"edge_value_min", res.value, 0.0, limit, "within 1e-4 of",
             std::fabs(res.value - limit) <= 1e-4});
    rep.add({"edge_value_argmin_a", res.argmin.a, 0.0, 1e-3, "<=",
             res.argmin.a <= 1e-3});
    rep.add({"edge_value_argmin_b_infinite",
             res.argmin.infinite_tail() ? 1.0 : 0.0, 0.0, 1.0, "==",
             res.argmin.infinite_tail()});
  } else if (mode == "claims") {
    const auto dominates = verify_edge_dominates(default_log_grid(1e-3, 10.0, 100),
                                                 default_log_grid(1e-3, 20.0, 100));
    rep.add({"edge_radius_dominates", dominates.worst_margin, 0.0, -1e-12, ">=",
             dominates.pass});
    for (double a : {0.01, 0.1, 1.0, 10.0}) {
      std::vector<double> bs;
      for (int i = 0; i < 200; ++i) bs.push_back(0.1 + 19.9 * i / 199.0);
      const auto mono = verify_slack_monotone(a, bs);
      char name[64];
      std::snprintf(name, sizeof(name), "slack_monotone a=%g", a);
      rep.add({name, mono.worst_margin, 0.0, -1e-10, ">=", mono.pass});
    }
    auto a_grid = default_log_grid(1e-4, 1e2, 100);
    a_grid.insert(a_grid.begin(), 0.0);
    const auto lim = verify_slack_limit(a_grid);
    rep.add({"slack_limit_nonnegative", lim.worst_margin, 0.0, 0.0, ">=",
             lim.pass});
  } else if (mode == "curve") {
    const auto t0s = parse_grid(t0_grid_spec.empty() ? "0:1.7320508:0.1"
                                                     : t0_grid_spec);
    std::string csv = "t0,min_value,a_star,b_star\r\n";
    json rows = json::array();
    double prev = kInf;
    bool monotone = true;
    for (double t0 : t0s) {
      const MinimizeResult res = min_scaled_density_at(t0);
      monotone = monotone && res.value <= prev + 1e-9;
      prev = res.value;
      csv += acl::report::format_double(t0) + ',' +
             acl::report::format_double(res.value) + ',' +
             acl::report::format_double(res.argmin.a) + ',' +
             (res.argmin.infinite_tail()
                  ? std::string("inf")
                  : acl::report::format_double(res.argmin.b)) +
             "\r\n";
      rows.push_back({{"t0", t0},
                      {"min_value", res.value},
                      {"a_star", res.argmin.a},
                      {"b_star", res.argmin.infinite_tail()
                                     ? json("inf")
                                     : json(res.argmin.b)}});
    }
    rep.config["rows"] = rows;
    rep.add({"curve_nonincreasing", monotone ? 1.0 : 0.0, 0.0, 1.0, "==",
             monotone});
    table = csv;
  } else if (mode == "grid") {
    std::string csv = "a,b,edge_slack,edge_value\r\n";
    bool ok = true;
    for (double a : default_log_grid(1e-3, 10.0, 50)) {
      for (double b : default_log_grid(1e-3, 20.0, 50)) {
        const ExtremalParams p{a, b};
        const double h = edge_slack(p);
        const double v = edge_value(p);
        ok = ok && h >= -1e-12 && v >= limit - 1e-12;
        csv += acl::report::format_double(a) + ',' +
               acl::report::format_double(b) + ',' +
               acl::report::format_double(h) + ',' +
               acl::report::format_double(v) + "\r\n";
      }
    }
    rep.add({"grid_slack_nonnegative", ok ? 1.0 : 0.0, 0.0, 1.0, "==", ok});
    table = csv;
  } else {
    throw UsageError("unknown extremal mode '" + mode +
                     "' (want min|claims|curve|grid)");
  }

  rep.wall_time_ms = watch.ms();
  emit(rep, opt, table);
  return rep.pass() ? 0 : 1;
}

// ---------------------------------------------------------------- cone

int run_cone(const CommonOptions& opt, int d_single, const std::string& sweep) {
  using namespace acl::convexbody;
  Stopwatch watch;
  int dmin = d_single, dmax = d_single;
  if (!sweep.empty()) {
    const auto [lo, hi] = parse_sweep(sweep);
    dmin = lo;
    dmax = hi;
  }
  if (dmin < 1) throw UsageError("cone: need --d >= 1 or --sweep dmin:dmax");

  acl::report::Report rep;
  rep.command = "cone";
  rep.seed = opt.seed;
  rep.config = {{"seed", opt.seed},
                {"dmin", dmin},
                {"dmax", dmax},
                {"format", opt.format}};
  const double limit = edge_section_limit();
  rep.constants = {{"edge_section_limit", limit}};

  std::string csv = "d,lambda1,lambda2,L_d,edge_section_value,gap_to_limit\r\n";
  json rows = json::array();
  bool vol_ok = true, iso_ok = true, decreasing = true;
  double prev = kInf, final_gap = 0.0;
  for (int d = dmin; d <= dmax; ++d) {
    const IsotropicCone c = isotropic_cone(d);
    const double log_vol = log_cone_volume(c.params());
    vol_ok = vol_ok && std::fabs(log_vol) < 1e-10;
    const SecondMoments m = cone_second_moments(c.params());
    const double L2 = c.L * c.L;
    iso_ok = iso_ok && std::fabs(m.axial - L2) <= 1e-10 * L2 &&
             std::fabs(m.transverse - L2) <= 1e-10 * L2;
    const EdgeSectionValue v = cone_edge_section_value(d);
    if (d >= 3 && prev != kInf) decreasing = decreasing && v.value < prev;
    if (d >= 3) prev = v.value;
    final_gap = v.value - limit;
    csv += std::to_string(d) + ',' + acl::report::format_double(c.lambda1) +
           ',' + acl::report::format_double(c.lambda2) + ',' +
           acl::report::format_double(c.L) + ',' +
           acl::report::format_double(v.value) + ',' +
           acl::report::format_double(v.value - limit) + "\r\n";
    rows.push_back({{"d", d},
                    {"lambda1", c.lambda1},
                    {"lambda2", c.lambda2},
                    {"L_d", c.L},
                    {"edge_section_value", v.value},
                    {"gap_to_limit", v.value - limit}});
  }
  rep.config["rows"] = rows;
  rep.add({"volume_normalized", vol_ok ? 1.0 : 0.0, 0.0, 1.0, "==", vol_ok});
  rep.add({"isotropy_closed_form", iso_ok ? 1.0 : 0.0, 0.0, 1.0, "==", iso_ok});
  rep.add({"edge_value_decreasing", decreasing ? 1.0 : 0.0, 0.0, 1.0, "==",
           decreasing});
  rep.add({"final_gap_to_limit", final_gap, 0.0,
           dmax >= 1000 ? 0.002 : kInf, "<=",
           dmax >= 1000 ? final_gap < 0.002 : true});

  rep.wall_time_ms = watch.ms();
  emit(rep, opt, csv);
  return rep.pass() ? 0 : 1;
}

// ---------------------------------------------------------------- cube

int run_cube(const CommonOptions& opt, int dim, std::size_t directions) {
  Stopwatch watch;
  if (dim < 2 || dim > 30) throw UsageError("cube: --dim must lie in [2, 30]");
  acl::report::Report rep;
  rep.command = "cube";
  rep.seed = opt.seed;
  rep.config = {{"seed", opt.seed},
                {"dim", dim},
                {"directions", directions},
                {"format", opt.format}};
  const auto cube = acl::convexbody::verify_cube_sections(
      dim, directions, acl::RngStream(opt.seed, 0));
  rep.constants = {{"sharp_bound", cube.bound}};
  rep.add({"cube_section_min", cube.min_volume, 0.0, cube.bound, ">=",
           cube.pass});
  rep.wall_time_ms = watch.ms();
  emit(rep, opt);
  return rep.pass() ? 0 : 1;
}

// ---------------------------------------------------------------- entropy

acl::entropy::SumInstance parse_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open instance file '" + path + "'");
  json doc;
  try {
    in >> doc;
  } catch (const std::exception& e) {
    throw UsageError(std::string("malformed instance JSON: ") + e.what());
  }
  acl::entropy::SumInstance inst;
  try {
    inst.d = doc.at("d").get<int>();
    inst.lambdas = doc.at("lambdas").get<std::vector<double>>();
    for (const auto& c : doc.at("components")) {
      const std::string kind = c.at("kind").get<std::string>();
      if (kind == "point-mass") {
        inst.components.push_back(acl::entropy::TractableDensity::point_mass(inst.d));
      } else if (kind == "uniform-ball") {
        inst.components.push_back(acl::entropy::TractableDensity::uniform_ball(
            inst.d, c.at("radius").get<double>()));
      } else if (kind == "piecewise-poly-1d") {
        const auto bps = c.at("breakpoints").get<std::vector<double>>();
        const auto pieces = c.at("pieces").get<std::vector<std::vector<double>>>();
        std::vector<acl::Polynomial> polys;
        for (const auto& coeffs : pieces) polys.emplace_back(coeffs);
        inst.components.push_back(acl::entropy::TractableDensity::piecewise_1d(
            acl::PiecewisePolynomial(bps, polys)));
      } else if (kind == "gaussian") {
        const auto cov_rows = c.at("covariance").get<std::vector<std::vector<double>>>();
        std::vector<double> cov;
        for (const auto& row : cov_rows)
          cov.insert(cov.end(), row.begin(), row.end());
        inst.components.push_back(
            acl::entropy::TractableDensity::gaussian(inst.d, cov));
      } else {
        throw UsageError("unknown component kind '" + kind + "'");
      }
    }
    acl::entropy::validate(inst);
  } catch (const UsageError&) {
    throw;
  } catch (const std::exception& e) {
    throw UsageError(std::string("bad instance: ") + e.what());
  }
  return inst;
}

int run_entropy(const CommonOptions& opt, const std::string& mode,
                const std::string& p_spec, int d, const std::string& instance,
                double lambda) {
  using namespace acl::entropy;
  Stopwatch watch;
  acl::report::Report rep;
  rep.command = "entropy " + mode;
  rep.seed = opt.seed;
  rep.config = {{"seed", opt.seed}, {"format", opt.format}, {"mode", mode}};

  if (mode == "constants") {
    const double p = parse_order(p_spec);
    if (d < 1) throw UsageError("entropy constants: need --d >= 1");
    rep.config["p"] = p_spec;
    rep.config["d"] = d;
    const auto cs = renyi_superadditivity_constants(p, d);
    rep.constants = {{"superadditivity_exact", cs.exact},
                     {"superadditivity_stated", cs.stated},
                     {"kappa_d", kappa_d(d)}};
    if (!(std::isinf(p) && d < 2))
      rep.constants["epi_constant"] = renyi_epi_constant(p, d);
    if (std::isinf(p)) rep.constants["epi_constant_limit"] = renyi_epi_constant(p);
    rep.add({"constant_exact_below_stated", cs.exact, 0.0, cs.stated, "<",
             cs.exact < cs.stated});
    rep.add({"kappa_floor", kappa_d(d), 0.0, 1.0 / 12.0, ">=",
             kappa_d(d) >= 1.0 / 12.0});
  } else if (mode == "check-thm16") {
    const double p = parse_order(p_spec);
    if (instance.empty()) throw UsageError("check-thm16: need --instance file");
    const SumInstance inst = parse_instance(instance);
    rep.config["p"] = p_spec;
    rep.config["instance"] = instance;
    const auto res = verify_renyi_superadditivity(inst, p);
    rep.constants = {{"C_pd", res.constant}};
    rep.add({"smoothed_superadditivity_lhs", res.lhs, 0.0, res.rhs, ">=",
             res.pass});
  } else if (mode == "check-cor17") {
    if (instance.empty()) throw UsageError("check-cor17: need --instance file");
    const SumInstance inst = parse_instance(instance);
    rep.config["instance"] = instance;
    rep.config["lambda"] = lambda;
    const auto res = verify_concentration_upper(inst, lambda, opt.samples,
                                                acl::RngStream(opt.seed, 0),
                                                opt.threads);
    rep.config["lhs_exact"] = res.lhs_exact;
    rep.add({"concentration_upper_lhs", res.lhs, res.lhs_se,
             res.rhs + 3.0 * res.lhs_se, "<=", res.pass});
  } else {
    throw UsageError("unknown entropy mode '" + mode +
                     "' (want constants|check-thm16|check-cor17)");
  }

  rep.wall_time_ms = watch.ms();
  emit(rep, opt);
  return rep.pass() ? 0 : 1;
}

// ---------------------------------------------------------------- merge

int run_merge(const CommonOptions& opt, const std::vector<std::string>& files) {
  if (files.empty()) throw UsageError("report-merge: need input files");
  std::vector<json> reports;
  for (const auto& f : files) {
    std::ifstream in(f);
    if (!in) throw UsageError("cannot open report '" + f + "'");
    json doc;
    try {
      in >> doc;
    } catch (const std::exception& e) {
      throw UsageError(std::string("malformed report JSON: ") + e.what());
    }
    reports.push_back(std::move(doc));
  }
  const json merged = acl::report::merge_reports(reports);
  const std::string text = merged.dump(2) + "\n";
  if (opt.output.empty() || opt.output == "-") {
    std::cout << text;
  } else {
    std::ofstream out(opt.output, std::ios::binary);
    if (!out) throw UsageError("cannot open output file '" + opt.output + "'");
    out << text;
  }
  return merged["pass"].get<bool>() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"anti-concentration verification laboratory"};
  app.require_subcommand(1);

  CommonOptions density_opt;
  int density_dim = 1;
  std::string density_coeffs = "equal:5";
  auto* density_cmd = app.add_subcommand("density", "density floor, radial identity and norm-tail checks");
  add_common(density_cmd, density_opt);
  density_cmd->add_option("--dim", density_dim, "ambient dimension d")
      ->capture_default_str();
  density_cmd->add_option("--coeffs", density_coeffs,
                          "comma list or equal:n")
      ->capture_default_str();

  CommonOptions extremal_opt;
  std::string extremal_mode;
  std::string t0_grid;
  auto* extremal_cmd = app.add_subcommand("extremal", "extremal log-concave family checks");
  add_common(extremal_cmd, extremal_opt);
  extremal_cmd->add_option("mode", extremal_mode, "min|claims|curve|grid")
      ->required();
  extremal_cmd->add_option("--t0-grid", t0_grid, "curve grid start:stop:step");

  CommonOptions cone_opt;
  int cone_d = 0;
  std::string cone_sweep;
  auto* cone_cmd = app.add_subcommand("cone", "isotropic double-cone construction");
  add_common(cone_cmd, cone_opt);
  cone_cmd->add_option("--d", cone_d, "single dimension");
  cone_cmd->add_option("--sweep", cone_sweep, "dimension sweep dmin:dmax");

  CommonOptions cube_opt;
  int cube_dim = 3;
  std::size_t cube_directions = 100;
  auto* cube_cmd = app.add_subcommand("cube", "unit-cube noncentral sections");
  add_common(cube_cmd, cube_opt);
  cube_cmd->add_option("--dim", cube_dim, "cube dimension (2..30)")
      ->capture_default_str();
  cube_cmd->add_option("--directions", cube_directions, "random directions")
      ->capture_default_str();

  CommonOptions entropy_opt;
  std::string entropy_mode, entropy_p = "inf", entropy_instance;
  int entropy_d = 1;
  double entropy_lambda = 1.0;
  auto* entropy_cmd = app.add_subcommand("entropy", "entropy power and concentration identities");
  add_common(entropy_cmd, entropy_opt);
  entropy_cmd->add_option("mode", entropy_mode, "constants|check-thm16|check-cor17")
      ->required();
  entropy_cmd->add_option("--p", entropy_p, "Renyi order (> 1 or inf)")
      ->capture_default_str();
  entropy_cmd->add_option("--d", entropy_d, "dimension")->capture_default_str();
  entropy_cmd->add_option("--instance", entropy_instance, "instance JSON file");
  entropy_cmd->add_option("--lambda", entropy_lambda, "window radius")
      ->capture_default_str();

  CommonOptions merge_opt;
  std::vector<std::string> merge_files;
  auto* merge_cmd = app.add_subcommand("report-merge", "merge JSON reports");
  merge_cmd->add_option("files", merge_files, "report files")->required();
  merge_cmd->add_option("--output", merge_opt.output, "output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (density_cmd->parsed())
      return run_density(density_opt, density_dim, density_coeffs);
    if (extremal_cmd->parsed())
      return run_extremal(extremal_opt, extremal_mode, t0_grid);
    if (cone_cmd->parsed()) return run_cone(cone_opt, cone_d, cone_sweep);
    if (cube_cmd->parsed()) return run_cube(cube_opt, cube_dim, cube_directions);
    if (entropy_cmd->parsed())
      return run_entropy(entropy_opt, entropy_mode, entropy_p, entropy_d,
                         entropy_instance, entropy_lambda);
    if (merge_cmd->parsed()) return run_merge(merge_opt, merge_files);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
