#include "masslock/cli.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "masslock/errors.hpp"
#include "masslock/experiments.hpp"
#include "masslock/localize.hpp"
#include "masslock/metric_core.hpp"

namespace masslock {

namespace {

using nlohmann::json;

std::string fnv1a_hex(const std::string& s) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

json provenance(const json& config) {
  json p;
  p["version"] = MASSLOCK_VERSION;
  p["config"] = config;
  p["config_hash"] = fnv1a_hex(config.dump());
  if (config.contains("seed")) p["seed"] = config["seed"];
  return p;
}

std::string provenance_comment(const json& config) {
  std::string line = "# masslock " MASSLOCK_VERSION " config_hash=";
  line += fnv1a_hex(config.dump());
  if (config.contains("seed"))
    line += " seed=" + config["seed"].dump();
  return line;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw ArgumentError("cannot write " + path);
  out << text;
}

void emit_json(const std::string& out_path, const json& j) {
  if (out_path.empty())
    std::cout << j.dump(2) << '\n';
  else
    write_text(out_path, j.dump(2) + "\n");
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ArgumentError("cannot open " + path);
  json j;
  in >> j;
  return j;
}

std::vector<double> parse_double_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(std::stod(tok));
  if (out.empty()) throw ArgumentError("empty list: " + s);
  return out;
}

std::vector<std::size_t> parse_size_list(const std::string& s) {
  std::vector<std::size_t> out;
  for (double v : parse_double_list(s)) {
    if (v < 1) throw ArgumentError("list entries must be >= 1: " + s);
    out.push_back(static_cast<std::size_t>(v));
  }
  return out;
}

Distribution parse_distribution(const std::string& spec) {
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  std::string tok;
  while (std::getline(ss, tok, ':')) parts.push_back(tok);
  if (parts.empty()) throw ArgumentError("empty distribution spec");
  auto num = [&](std::size_t i, double fallback) {
    return parts.size() > i ? std::stod(parts[i]) : fallback;
  };
  Distribution d;
  if (parts[0] == "uniform" || parts[0] == "uniform-box") {
    d.kind = Distribution::Kind::uniform_box;
    d.lo = {num(1, 0.0)};
    d.hi = {num(2, 1.0)};
    if (!(d.lo[0] < d.hi[0])) throw ArgumentError("uniform requires lo < hi");
  } else if (parts[0] == "gaussian") {
    d.kind = Distribution::Kind::gaussian;
    d.mean = {num(1, 0.0)};
    d.sd = num(2, 1.0);
    if (!(d.sd > 0.0)) throw ArgumentError("gaussian sd must be > 0");
  } else if (parts[0] == "tilted") {
    d.kind = Distribution::Kind::tilted;
    d.tilt_n = num(1, 1.0);
  } else if (parts[0] == "circle") {
    d.kind = Distribution::Kind::circle;
    d.radius = num(1, 1.0);
  } else {
    throw ArgumentError("unknown distribution: " + parts[0]);
  }
  return d;
}

// Shared flag bundles -------------------------------------------------------

struct FunctionalFlags {
  std::string weight = "linear";
  double power = 1.0;
  double tmax = 1.0;

  void attach(CLI::App* cmd) {
    cmd->add_option("--weight", weight, "size weight: linear|constant|power");
    cmd->add_option("--power", power, "exponent for --weight power");
    cmd->add_option("--tmax", tmax, "integration cutoff t_max");
  }
  SizeFunctional build() const {
    json j{{"weight", weight}, {"t_max", tmax}};
    if (weight == "power") j["power"] = power;
    return SizeFunctional::from_json(j);
  }
};

struct ClassFlags {
  std::string family = "intervals";
  int union_k = 2;
  double union_eps = 1.0;
  std::uint64_t budget = 10'000'000;

  void attach(CLI::App* cmd) {
    cmd->add_option("--class", family,
                    "intervals|balls|boxes|separated-union|finite-subsets");
    cmd->add_option("--union-k", union_k, "max union components (<= 3)");
    cmd->add_option("--union-eps", union_eps, "required union gap");
    cmd->add_option("--budget", budget, "candidate enumeration budget");
  }
  ClassSpec build() const {
    ClassSpec s;
    s.family = family_from_string(family);
    s.union_k = union_k;
    s.union_eps = union_eps;
    s.candidate_budget = budget;
    if (s.family == Family::separated_union &&
        (s.union_k < 1 || s.union_k > 3))
      throw ArgumentError("separated-union supports 1 <= k <= 3");
    return s;
  }
};

struct CapFlags {
  std::size_t cap_packing = 64;
  std::size_t cap_covering = 24;

  void attach(CLI::App* cmd) {
    cmd->add_option("--cap-packing", cap_packing, "exact packing cap");
    cmd->add_option("--cap-covering", cap_covering, "exact covering cap");
  }
  PackingCaps build() const { return PackingCaps{cap_packing, cap_covering}; }
};

// Subcommand runners --------------------------------------------------------

int run_pack(const std::string& input, double t, const std::string& mode,
             const CapFlags& caps, const std::string& out_path, bool cover) {
  PointSet ps = PointSet::load(input);
  std::size_t value;
  json cfg{{"input", input}, {"t", t}, {"mode", mode}};
  if (cover) {
    CoveringMode m = CoveringMode::exact;
    if (mode == "upper-bound")
      m = CoveringMode::upper_bound;
    else if (mode != "exact")
      throw ArgumentError("cover mode must be exact or upper-bound");
    value = covering_number(ps, t, m, caps.build());
  } else {
    PackingMode m = PackingMode::exact;
    if (mode == "lower-bound")
      m = PackingMode::lower_bound;
    else if (mode != "exact")
      throw ArgumentError("pack mode must be exact or lower-bound");
    value = packing_number(ps, t, m, caps.build());
  }
  std::cout << value << '\n';
  if (!out_path.empty()) {
    json j{{"value", value},
           {"t", t},
           {"mode", mode},
           {"n", ps.size()},
           {"provenance", provenance(cfg)}};
    if (cover) {
      j["note"] =
          "covering uses external balls of radius t (ball-cover variant of "
          "diameter-2t covers)";
      if (!ps.has_coords())
        j["note"] = std::string(j["note"].get<std::string>()) +
                    "; matrix space: centers restricted to the space's points";
    }
    emit_json(out_path, j);
  }
  return 0;
}

int run_profile(const std::string& input, const CapFlags& caps,
                const std::string& out_path) {
  PointSet ps = PointSet::load(input);
  json j = packing_profile(ps, caps.build()).to_json();
  j["provenance"] = provenance(json{{"input", input}});
  emit_json(out_path, j);
  return 0;
}

int run_tau(const std::string& input, double interval_length,
            const std::string& descriptor_path, const std::string& backend,
            double grid_step, const FunctionalFlags& ff, const CapFlags& caps,
            const std::string& out_path) {
  const SizeFunctional f = ff.build();
  double value;
  json cfg{{"functional", f.to_json()}};
  if (interval_length >= 0.0) {
    value = tau_interval(interval_length, f);
    cfg["interval_length"] = interval_length;
  } else if (!descriptor_path.empty()) {
    SetDescriptor d = descriptor_from_json(load_json_file(descriptor_path));
    SizeBackend b;
    if (backend == "grid") {
      b.kind = SizeBackendKind::grid;
      b.grid_step = grid_step;
      if (!(grid_step > 0.0)) throw ArgumentError("--grid-step must be > 0");
    } else if (backend == "interval-exact") {
      b.kind = SizeBackendKind::interval_exact;
    } else if (backend == "finite") {
      b.kind = SizeBackendKind::finite;
    } else {
      throw ArgumentError("tau backend must be finite|interval-exact|grid");
    }
    value = tau_of_descriptor(d, f, b, MetricKind::euclidean, caps.build());
    cfg["descriptor"] = descriptor_path;
    cfg["backend"] = b.to_json();
  } else if (!input.empty()) {
    PointSet ps = PointSet::load(input);
    value = tau_of_profile(packing_profile(ps, caps.build()), f);
    cfg["input"] = input;
  } else {
    throw ArgumentError(
        "tau needs --input, --interval-length, or --descriptor");
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  std::cout << buf << '\n';
  if (!out_path.empty())
    emit_json(out_path, json{{"tau", value}, {"provenance", provenance(cfg)}});
  return 0;
}

int run_haus(const std::string& a_path, const std::string& b_path,
             const std::string& out_path) {
  PointSet a = PointSet::load(a_path);
  PointSet b = PointSet::load(b_path);
  if (!a.has_coords() || !b.has_coords())
    throw ArgumentError("haus requires coordinate point sets");
  if (a.metric() != b.metric() || a.dim() != b.dim())
    throw ArgumentError("haus requires one ambient space");
  const double ab = haus_contrast(a.points(), b.points(), a.metric());
  const double ba = haus_contrast(b.points(), a.points(), a.metric());
  char buf[160];
  std::snprintf(buf, sizeof buf, "%.17g %.17g %.17g", ab, ba, std::max(ab, ba));
  std::cout << buf << '\n';
  if (!out_path.empty())
    emit_json(out_path,
              json{{"contrast_a_b", ab},
                   {"contrast_b_a", ba},
                   {"metric", std::max(ab, ba)},
                   {"provenance", provenance(json{{"a", a_path}, {"b", b_path}})}});
  return 0;
}

struct LocalizeFlags {
  std::string input;
  std::string analytic;
  double alpha = 0.25;
  double slack = 1e-9;
  std::string backend = "auto";
  double grid_step = 0.0;
  std::string out_path;
  std::string config_path;
};

int run_localize(LocalizeFlags lf, ClassFlags cf, FunctionalFlags ff,
                 CapFlags caps) {
  if (!lf.config_path.empty()) {
    // Config file overrides flags (documented precedence).
    const json c = load_json_file(lf.config_path);
    if (c.contains("input")) lf.input = c["input"].get<std::string>();
    if (c.contains("analytic")) lf.analytic = c["analytic"].get<std::string>();
    if (c.contains("alpha")) lf.alpha = c["alpha"].get<double>();
    if (c.contains("slack")) lf.slack = c["slack"].get<double>();
    if (c.contains("backend")) lf.backend = c["backend"].get<std::string>();
    if (c.contains("grid_step")) lf.grid_step = c["grid_step"].get<double>();
    if (c.contains("class")) cf.family = c["class"].get<std::string>();
    if (c.contains("union_k")) cf.union_k = c["union_k"].get<int>();
    if (c.contains("union_eps")) cf.union_eps = c["union_eps"].get<double>();
    if (c.contains("budget")) cf.budget = c["budget"].get<std::uint64_t>();
    if (c.contains("weight")) ff.weight = c["weight"].get<std::string>();
    if (c.contains("power")) ff.power = c["power"].get<double>();
    if (c.contains("t_max")) ff.tmax = c["t_max"].get<double>();
  }
  if (lf.input.empty() == lf.analytic.empty())
    throw ArgumentError("localize needs exactly one of --input or --analytic");

  LocalizationProblem p;
  p.cls = cf.build();
  p.alpha = lf.alpha;
  p.functional = ff.build();
  p.caps = caps.build();
  std::size_t dim = 1;
  if (!lf.input.empty()) {
    EmpiricalMeasure mu = EmpiricalMeasure::load(lf.input);
    dim = mu.support.dim();
    p.measure = std::move(mu);
  } else {
    p.measure = Analytic1DMeasure::parse(lf.analytic);
  }
  if (lf.backend == "auto") {
    p.backend = default_backend(p.cls.family, dim);
  } else if (lf.backend == "finite") {
    p.backend.kind = SizeBackendKind::finite;
  } else if (lf.backend == "interval-exact") {
    p.backend.kind = SizeBackendKind::interval_exact;
  } else if (lf.backend == "grid") {
    p.backend.kind = SizeBackendKind::grid;
    p.backend.grid_step = lf.grid_step;
    if (!(lf.grid_step > 0.0)) throw ArgumentError("--grid-step must be > 0");
  } else {
    throw ArgumentError("backend must be auto|finite|interval-exact|grid");
  }

  json cfg{{"alpha", lf.alpha},
           {"slack", lf.slack},
           {"class", p.cls.to_json()},
           {"functional", p.functional.to_json()},
           {"backend", p.backend.to_json()},
           {"caps",
            {{"packing", p.caps.exact_packing},
             {"covering", p.caps.exact_covering}}}};
  if (!lf.input.empty()) cfg["input"] = lf.input;
  if (!lf.analytic.empty()) cfg["analytic"] = lf.analytic;

  const LocalizationResult res = solve(p, lf.slack);
  json j = res.to_json();
  j["provenance"] = provenance(cfg);
  emit_json(lf.out_path, j);
  return 0;
}

struct SweepFlags {
  std::string dist = "uniform:0:1";
  std::string chain = "iid";
  double rho = 0.0;
  double alpha = 0.25;
  std::string n_list = "100,500,2500,12500";
  std::size_t replications = 20;
  std::uint64_t seed = 7;
  double slack = 1e-9;
  std::string config_path;
  std::string out_path;
  std::string summary_path;
};

SweepConfig build_sweep_config(const SweepFlags& sf, const ClassFlags& cf,
                               const FunctionalFlags& ff) {
  SweepConfig cfg;
  cfg.generator.dist = parse_distribution(sf.dist);
  if (sf.chain == "ar1") {
    cfg.generator.chain = ChainKind::ar1;
    cfg.generator.rho = sf.rho;
  } else if (sf.chain != "iid") {
    throw ArgumentError("chain must be iid or ar1");
  }
  cfg.cls = cf.build();
  cfg.functional = ff.build();
  cfg.alpha = sf.alpha;
  cfg.n_list = parse_size_list(sf.n_list);
  cfg.replications = sf.replications;
  cfg.seed = sf.seed;
  cfg.slack = sf.slack;
  if (!sf.config_path.empty()) {
    // Config file overrides flag-built values key by key.
    json merged = cfg.to_json();
    const json file = load_json_file(sf.config_path);
    for (const auto& [key, value] : file.items()) merged[key] = value;
    cfg = SweepConfig::from_json(merged);
  }
  return cfg;
}

int run_sweep(const SweepFlags& sf, const ClassFlags& cf,
              const FunctionalFlags& ff) {
  const SweepConfig cfg = build_sweep_config(sf, cf, ff);
  const SweepReport report = consistency_sweep(cfg);
  if (!sf.out_path.empty()) {
    std::ostringstream body;
    body << provenance_comment(cfg.to_json()) << '\n';
    report.write_csv(sf.out_path + ".tmp");
    std::ifstream in(sf.out_path + ".tmp");
    body << in.rdbuf();
    in.close();
    std::remove((sf.out_path + ".tmp").c_str());
    write_text(sf.out_path, body.str());
  }
  json summary = report.summary_json();
  summary["provenance"] = provenance(cfg.to_json());
  emit_json(sf.summary_path, summary);
  return 0;
}

int run_sandwich(const SweepFlags& sf, const ClassFlags& cf,
                 const FunctionalFlags& ff, double eps, double tol,
                 const std::string& out_path) {
  const SweepConfig cfg = build_sweep_config(sf, cf, ff);
  SandwichReport report = sandwich_check(cfg, eps, tol);
  json j = report.to_json();
  j["provenance"] = provenance(cfg.to_json());
  emit_json(out_path, j);
  return 0;
}

int run_alpha_curve(const std::string& input, const std::string& analytic,
                    const std::string& alphas_csv, const ClassFlags& cf,
                    const FunctionalFlags& ff, const std::string& out_path) {
  if (input.empty() == analytic.empty())
    throw ArgumentError("alpha-curve needs exactly one of --input or --analytic");
  LocalizationProblem p;
  p.cls = cf.build();
  p.functional = ff.build();
  std::size_t dim = 1;
  if (!input.empty()) {
    EmpiricalMeasure mu = EmpiricalMeasure::load(input);
    dim = mu.support.dim();
    p.measure = std::move(mu);
  } else {
    p.measure = Analytic1DMeasure::parse(analytic);
  }
  p.backend = default_backend(p.cls.family, dim);
  const auto alphas = parse_double_list(alphas_csv);
  const auto curve = tau_alpha_curve(p, alphas);
  json cfg{{"alphas", alphas},
           {"class", p.cls.to_json()},
           {"functional", p.functional.to_json()}};
  if (!input.empty()) cfg["input"] = input;
  if (!analytic.empty()) cfg["analytic"] = analytic;
  std::string body = provenance_comment(cfg) + "\nalpha,tau\n";
  char buf[96];
  for (const auto& [a, tau] : curve) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", a, tau);
    body += buf;
  }
  if (out_path.empty())
    std::cout << body;
  else
    write_text(out_path, body);
  return 0;
}

int run_converse(double alpha, const std::string& n_list_csv,
                 const std::string& out_path) {
  const auto n_list = parse_size_list(n_list_csv);
  ConverseReport report = converse_demo(alpha, n_list);
  json j = report.to_json();
  j["provenance"] =
      provenance(json{{"alpha", alpha}, {"n_list", n_list}});
  emit_json(out_path, j);
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"mass localization toolkit"};
  app.set_version_flag("--version", "masslock " MASSLOCK_VERSION);
  app.require_subcommand(1);

  // pack / cover
  std::string in_path, out_path, mode = "exact";
  double t_value = 1.0;
  CapFlags caps;
  auto* pack = app.add_subcommand("pack", "packing number M(B,t)");
  pack->add_option("--input", in_path, "points file (csv|json)")->required();
  pack->add_option("--t", t_value, "separation scale t")->required();
  pack->add_option("--mode", mode, "exact|lower-bound");
  pack->add_option("--out", out_path, "optional JSON output");
  caps.attach(pack);

  std::string cov_in, cov_out, cov_mode = "exact";
  double cov_t = 1.0;
  CapFlags cov_caps;
  auto* cover = app.add_subcommand("cover", "covering number N(B,t)");
  cover->add_option("--input", cov_in, "points file (csv|json)")->required();
  cover->add_option("--t", cov_t, "ball radius t")->required();
  cover->add_option("--mode", cov_mode, "exact|upper-bound");
  cover->add_option("--out", cov_out, "optional JSON output");
  cov_caps.attach(cover);

  // profile
  std::string prof_in, prof_out;
  CapFlags prof_caps;
  auto* profile = app.add_subcommand("profile", "full packing profile");
  profile->add_option("--input", prof_in, "points file")->required();
  profile->add_option("--out", prof_out, "JSON output (default stdout)");
  prof_caps.attach(profile);

  // tau
  std::string tau_in, tau_desc, tau_backend = "finite", tau_out;
  double tau_len = -1.0, tau_grid_step = 0.0;
  FunctionalFlags tau_ff;
  CapFlags tau_caps;
  auto* tau = app.add_subcommand("tau", "size functional value");
  tau->add_option("--input", tau_in, "points file (finite backend)");
  tau->add_option("--interval-length", tau_len, "closed-form interval length");
  tau->add_option("--descriptor", tau_desc, "descriptor JSON file");
  tau->add_option("--backend", tau_backend, "finite|interval-exact|grid");
  tau->add_option("--grid-step", tau_grid_step, "grid backend step");
  tau->add_option("--out", tau_out, "optional JSON output");
  tau_ff.attach(tau);
  tau_caps.attach(tau);

  // haus
  std::string haus_a, haus_b, haus_out;
  auto* haus = app.add_subcommand("haus", "Hausdorff contrasts between point sets");
  haus->add_option("--a", haus_a, "first points file")->required();
  haus->add_option("--b", haus_b, "second points file")->required();
  haus->add_option("--out", haus_out, "optional JSON output");

  // localize
  LocalizeFlags lf;
  ClassFlags loc_cf;
  FunctionalFlags loc_ff;
  CapFlags loc_caps;
  auto* localize = app.add_subcommand("localize", "smallest set with mass >= 1-alpha");
  localize->add_option("--input", lf.input, "sample file (csv|json)");
  localize->add_option("--analytic", lf.analytic,
                       "analytic measure, e.g. uniform:0:1 | tilted:5 | gaussian:0:1");
  localize->add_option("--alpha", lf.alpha, "mass level in (0,1)");
  localize->add_option("--slack", lf.slack, "near-minimizer slack");
  localize->add_option("--backend", lf.backend, "auto|finite|interval-exact|grid");
  localize->add_option("--grid-step", lf.grid_step, "grid backend step");
  localize->add_option("--config", lf.config_path, "JSON config (overrides flags)");
  localize->add_option("--out", lf.out_path, "result JSON (default stdout)");
  loc_cf.attach(localize);
  loc_ff.attach(localize);
  loc_caps.attach(localize);

  // sweep / sandwich
  SweepFlags sf;
  ClassFlags sweep_cf;
  FunctionalFlags sweep_ff;
  auto* sweep = app.add_subcommand("sweep", "consistency sweep over n");
  sweep->add_option("--dist", sf.dist, "generator, e.g. uniform:0:1");
  sweep->add_option("--chain", sf.chain, "iid|ar1");
  sweep->add_option("--rho", sf.rho, "ar1 coefficient");
  sweep->add_option("--alpha", sf.alpha, "mass level");
  sweep->add_option("--n-list", sf.n_list, "comma list of sample sizes");
  sweep->add_option("--replications", sf.replications, "replicates per n");
  sweep->add_option("--seed", sf.seed, "master seed");
  sweep->add_option("--slack", sf.slack, "near-minimizer slack");
  sweep->add_option("--config", sf.config_path, "JSON config (overrides flags)");
  sweep->add_option("--out", sf.out_path, "records CSV path");
  sweep->add_option("--summary", sf.summary_path, "summary JSON (default stdout)");
  sweep_cf.attach(sweep);
  sweep_ff.attach(sweep);

  SweepFlags swf;
  ClassFlags sand_cf;
  FunctionalFlags sand_ff;
  double sand_eps = 0.05, sand_tol = 1e-6;
  std::string sand_out;
  auto* sandwich = app.add_subcommand("sandwich", "sandwich inequality check");
  sandwich->add_option("--dist", swf.dist, "generator, e.g. uniform:0:1");
  sandwich->add_option("--chain", swf.chain, "iid|ar1");
  sandwich->add_option("--rho", swf.rho, "ar1 coefficient");
  sandwich->add_option("--alpha", swf.alpha, "mass level");
  sandwich->add_option("--n-list", swf.n_list, "comma list; largest n is used");
  sandwich->add_option("--replications", swf.replications, "replicates");
  sandwich->add_option("--seed", swf.seed, "master seed");
  sandwich->add_option("--slack", swf.slack, "near-minimizer slack");
  sandwich->add_option("--eps", sand_eps, "alpha offset for the upper bound");
  sandwich->add_option("--tol", sand_tol, "band tolerance");
  sandwich->add_option("--config", swf.config_path, "JSON config (overrides flags)");
  sandwich->add_option("--out", sand_out, "report JSON (default stdout)");
  sand_cf.attach(sandwich);
  sand_ff.attach(sandwich);

  // alpha-curve
  std::string ac_in, ac_analytic, ac_alphas = "0.1,0.2,0.3,0.4,0.5", ac_out;
  ClassFlags ac_cf;
  FunctionalFlags ac_ff;
  auto* alpha_curve = app.add_subcommand("alpha-curve", "tau^alpha over an alpha grid");
  alpha_curve->add_option("--input", ac_in, "sample file");
  alpha_curve->add_option("--analytic", ac_analytic, "analytic measure spec");
  alpha_curve->add_option("--alphas", ac_alphas, "comma list, ascending");
  alpha_curve->add_option("--out", ac_out, "CSV output (default stdout)");
  ac_cf.attach(alpha_curve);
  ac_ff.attach(alpha_curve);

  // converse
  double conv_alpha = 0.25;
  std::string conv_nlist = "100,1000,12500,100000,1000000", conv_out;
  auto* converse = app.add_subcommand("converse", "one-sided convergence demo");
  converse->add_option("--alpha", conv_alpha, "alpha in (0, 1/2)");
  converse->add_option("--n-list", conv_nlist, "comma list of tilt indices");
  converse->add_option("--out", conv_out, "report JSON (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (pack->parsed()) return run_pack(in_path, t_value, mode, caps, out_path, false);
    if (cover->parsed()) return run_pack(cov_in, cov_t, cov_mode, cov_caps, cov_out, true);
    if (profile->parsed()) return run_profile(prof_in, prof_caps, prof_out);
    if (tau->parsed())
      return run_tau(tau_in, tau_len, tau_desc, tau_backend, tau_grid_step,
                     tau_ff, tau_caps, tau_out);
    if (haus->parsed()) return run_haus(haus_a, haus_b, haus_out);
    if (localize->parsed()) return run_localize(lf, loc_cf, loc_ff, loc_caps);
    if (sweep->parsed()) return run_sweep(sf, sweep_cf, sweep_ff);
    if (sandwich->parsed())
      return run_sandwich(swf, sand_cf, sand_ff, sand_eps, sand_tol, sand_out);
    if (alpha_curve->parsed())
      return run_alpha_curve(ac_in, ac_analytic, ac_alphas, ac_cf, ac_ff, ac_out);
    if (converse->parsed()) return run_converse(conv_alpha, conv_nlist, conv_out);
    throw ArgumentError("no subcommand given");
  } catch (const InfeasibleError& e) {
    std::cerr << "infeasible: " << e.what() << '\n';
    return 3;
  } catch (const CapacityError& e) {
    std::cerr << "capacity: " << e.what() << '\n';
    return 4;
  } catch (const ArgumentError& e) {
    std::cerr << "argument error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace masslock
