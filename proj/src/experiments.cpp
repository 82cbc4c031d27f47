#include "masslock/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <limits>
#include <mutex>
#include <thread>

#include "masslock/errors.hpp"
#include "masslock/metric_core.hpp"

namespace masslock {

namespace {

Interval as_interval(const SetDescriptor& d) {
  if (std::holds_alternative<Interval>(d)) return std::get<Interval>(d);
  if (std::holds_alternative<Ball>(d) && descriptor_dim(d) == 1) {
    const auto& b = std::get<Ball>(d);
    return Interval{b.center[0] - b.radius, b.center[0] + b.radius};
  }
  throw ArgumentError("population comparison requires 1-D intervals or balls");
}

// Distance from one interval to the family {[c, c+len] : c in [c_lo, c_hi]}.
double family_distance(const Interval& b, double len, double c_lo, double c_hi) {
  const double c_star =
      std::clamp((b.lo + b.hi - len) / 2.0, c_lo, c_hi);
  return std::max(std::abs(b.lo - c_star), std::abs(b.hi - (c_star + len)));
}

struct PopulationRef {
  enum class Kind { interval_family, unique_interval, reference_set };
  Kind kind = Kind::unique_interval;
  double len = 0.0, c_lo = 0.0, c_hi = 0.0;  // interval_family
  Interval unique{0.0, 0.0};
  std::vector<Interval> reference;
  double tau_ref = 0.0;
  bool approximate = false;
  std::string note;

  double distance(const Interval& b) const {
    switch (kind) {
      case Kind::interval_family: return family_distance(b, len, c_lo, c_hi);
      case Kind::unique_interval: return interval_hausdorff(b, unique);
      case Kind::reference_set: {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& r : reference)
          best = std::min(best, interval_hausdorff(b, r));
        return best;
      }
    }
    return 0.0;
  }
};

LocalizationProblem make_problem(const SweepConfig& cfg,
                                 EmpiricalMeasure mu) {
  LocalizationProblem p;
  const std::size_t dim = mu.support.dim();
  p.measure = std::move(mu);
  p.cls = cfg.cls;
  p.alpha = cfg.alpha;
  p.functional = cfg.functional;
  p.backend = default_backend(cfg.cls.family, dim);
  return p;
}

PopulationRef population_reference(const SweepConfig& cfg) {
  PopulationRef ref;
  if (auto analytic = population_of(cfg.generator)) {
    if (analytic->kind == Density1D::uniform) {
      const double width = analytic->b - analytic->a;
      ref.kind = PopulationRef::Kind::interval_family;
      ref.len = (1.0 - cfg.alpha) * width;
      ref.c_lo = analytic->a;
      ref.c_hi = analytic->b - ref.len;
      ref.tau_ref = tau_interval(ref.len, cfg.functional);
      ref.note = "analytic uniform minimizer family";
      return ref;
    }
    const auto best = smallest_interval(*analytic, 1.0 - cfg.alpha, 1e-12);
    ref.kind = PopulationRef::Kind::unique_interval;
    ref.unique = best.interval;
    ref.tau_ref =
        tau_interval(best.interval.hi - best.interval.lo, cfg.functional);
    ref.note = "analytic unique minimizer";
    return ref;
  }
  // No analytic law: high-n reference run, flagged approximate.
  const std::size_t ref_n = cfg.reference_multiplier * cfg.n_list.back();
  Generator gen = cfg.generator;
  gen.seed = rng_split(cfg.seed, 0x9E3779B9ull);  // off the replicate streams
  LocalizationProblem p = make_problem(cfg, sample(gen, ref_n));
  const auto res = solve(p, 1e-9);
  ref.kind = PopulationRef::Kind::reference_set;
  for (const auto& d : res.near_minimizers)
    ref.reference.push_back(as_interval(d));
  ref.tau_ref = res.tau_value;
  ref.approximate = true;
  ref.note = "reference run at n=" + std::to_string(ref_n);
  return ref;
}

void run_jobs(std::size_t job_count, const std::function<void(std::size_t)>& job) {
  const std::size_t threads = std::min(thread_hint(), job_count);
  if (threads <= 1) {
    for (std::size_t k = 0; k < job_count; ++k) job(k);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t k = next.fetch_add(1);
      if (k >= job_count || failed.load()) return;
      try {
        job(k);
      } catch (...) {
        std::scoped_lock lock(error_mutex);
        if (!error) error = std::current_exception();
        failed.store(true);
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

double median_of(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : (v[n / 2 - 1] + v[n / 2]) / 2.0;
}

void format_double(std::string& out, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out += buf;
}

}  // namespace

std::size_t thread_hint() {
  const char* env = std::getenv("MASSLOCK_THREADS");
  if (!env) return 1;
  const long v = std::strtol(env, nullptr, 10);
  if (v < 1) return 1;
  return std::min<long>(v, 64);
}

nlohmann::json SweepConfig::to_json() const {
  return nlohmann::json{{"generator", generator.to_json()},
                        {"class", cls.to_json()},
                        {"functional", functional.to_json()},
                        {"alpha", alpha},
                        {"n_list", n_list},
                        {"replications", replications},
                        {"seed", seed},
                        {"slack", slack},
                        {"reference_multiplier", reference_multiplier}};
}

SweepConfig SweepConfig::from_json(const nlohmann::json& j) {
  SweepConfig cfg;
  cfg.generator = Generator::from_json(j.at("generator"));
  cfg.cls = ClassSpec::from_json(j.at("class"));
  if (j.contains("functional"))
    cfg.functional = SizeFunctional::from_json(j.at("functional"));
  cfg.alpha = j.value("alpha", 0.25);
  cfg.n_list = j.at("n_list").get<std::vector<std::size_t>>();
  cfg.replications = j.value("replications", std::size_t{1});
  cfg.seed = j.value("seed", std::uint64_t{0});
  cfg.slack = j.value("slack", 1e-9);
  cfg.reference_multiplier = j.value("reference_multiplier", std::size_t{10});
  if (cfg.n_list.empty()) throw ArgumentError("n_list must be non-empty");
  for (std::size_t i = 1; i < cfg.n_list.size(); ++i)
    if (!(cfg.n_list[i - 1] < cfg.n_list[i]))
      throw ArgumentError("n_list must be strictly increasing");
  if (cfg.replications < 1) throw ArgumentError("replications must be >= 1");
  if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0))
    throw ArgumentError("alpha must be in (0,1)");
  return cfg;
}

void SweepReport::write_csv(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw ArgumentError("cannot write " + path);
  out << "n,replicate,haus,tau_n,tau_ref,ms\n";
  for (const auto& r : records) {
    std::string line;
    line += std::to_string(r.n);
    line += ',';
    line += std::to_string(r.replicate);
    line += ',';
    format_double(line, r.haus_to_population);
    line += ',';
    format_double(line, r.tau_n_alpha);
    line += ',';
    format_double(line, r.tau_alpha_ref);
    line += ',';
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", r.runtime_ms);
    line += buf;
    out << line << '\n';
  }
}

nlohmann::json SweepReport::summary_json() const {
  nlohmann::json per_n = nlohmann::json::array();
  for (std::size_t k = 0; k < config.n_list.size(); ++k)
    per_n.push_back({{"n", config.n_list[k]}, {"median_haus", median_haus[k]}});
  return nlohmann::json{
      {"config", config.to_json()},
      {"medians", per_n},
      {"medians_strictly_decreasing", medians_strictly_decreasing},
      {"reference_approximate", reference_approximate},
      {"population", population_note},
      {"chain_note", config.generator.chain == ChainKind::ar1
                         ? "ar1 chain is an artifact instantiation of the "
                           "ergodic dependent case"
                         : "iid"}};
}

SweepReport consistency_sweep(const SweepConfig& cfg) {
  SweepReport report;
  report.config = cfg;
  const PopulationRef population = population_reference(cfg);
  report.reference_approximate = population.approximate;
  report.population_note = population.note;

  const std::size_t R = cfg.replications;
  report.records.resize(cfg.n_list.size() * R);
  run_jobs(report.records.size(), [&](std::size_t slot) {
    const std::size_t n_idx = slot / R;
    const std::size_t rep = slot % R;
    const auto t0 = std::chrono::steady_clock::now();
    Generator gen = cfg.generator;
    gen.seed = rng_split(cfg.seed, rep);
    EmpiricalMeasure mu = sample(gen, cfg.n_list[n_idx]);
    LocalizationProblem p = make_problem(cfg, std::move(mu));
    LocalizationResult res;
    try {
      res = solve(p, cfg.slack);
    } catch (const InfeasibleError& e) {
      throw InfeasibleError("replicate " + std::to_string(rep) + " at n=" +
                                std::to_string(cfg.n_list[n_idx]) +
                                " infeasible: " + e.what(),
                            e.max_achievable_mass);
    }
    double haus = 0.0;
    for (const auto& d : res.near_minimizers)
      haus = std::max(haus, population.distance(as_interval(d)));
    const auto t1 = std::chrono::steady_clock::now();
    SweepRecord rec;
    rec.n = cfg.n_list[n_idx];
    rec.replicate = rep;
    rec.haus_to_population = haus;
    rec.tau_n_alpha = res.tau_value;
    rec.tau_alpha_ref = population.tau_ref;
    rec.runtime_ms =
        std::chrono::duration<double, std::milli>(t1 - t0).count();
    report.records[slot] = rec;
  });

  report.median_haus.resize(cfg.n_list.size());
  for (std::size_t k = 0; k < cfg.n_list.size(); ++k) {
    std::vector<double> h;
    h.reserve(R);
    for (std::size_t r = 0; r < R; ++r)
      h.push_back(report.records[k * R + r].haus_to_population);
    report.median_haus[k] = median_of(std::move(h));
  }
  report.medians_strictly_decreasing = true;
  for (std::size_t k = 1; k < report.median_haus.size(); ++k)
    if (!(report.median_haus[k] < report.median_haus[k - 1]))
      report.medians_strictly_decreasing = false;
  return report;
}

nlohmann::json SandwichReport::to_json() const {
  return nlohmann::json{{"config", config.to_json()},
                        {"eps", eps},
                        {"tol", tol},
                        {"n", n},
                        {"tau_alpha", tau_alpha},
                        {"tau_alpha_minus_eps", tau_alpha_minus_eps},
                        {"tau_alpha_plus_eps", tau_alpha_plus_eps},
                        {"violations", violations},
                        {"violation_fraction", violation_fraction},
                        {"violations_wide_band", violations_wide},
                        {"violation_fraction_wide_band", violation_fraction_wide},
                        {"small_n_skipped", small_n_skipped},
                        {"tau_n", tau_n}};
}

SandwichReport sandwich_check(const SweepConfig& cfg, double eps, double tol) {
  if (!(eps > 0.0 && eps < cfg.alpha))
    throw ArgumentError("sandwich eps must satisfy 0 < eps < alpha");
  if (cfg.alpha + eps >= 1.0)
    throw ArgumentError("sandwich requires alpha + eps < 1");
  auto analytic = population_of(cfg.generator);
  if (!analytic)
    throw ArgumentError("sandwich_check requires an analytic 1-D population");
  auto tau_at = [&](double a) {
    const auto best = smallest_interval(*analytic, 1.0 - a, 1e-12);
    return tau_interval(best.interval.hi - best.interval.lo, cfg.functional);
  };
  SandwichReport rep;
  rep.config = cfg;
  rep.eps = eps;
  rep.tol = tol;
  rep.n = cfg.n_list.back();
  rep.tau_alpha = tau_at(cfg.alpha);
  rep.tau_alpha_minus_eps = tau_at(cfg.alpha - eps);
  rep.tau_alpha_plus_eps = tau_at(cfg.alpha + eps);
  if (rep.n < 2) {
    rep.small_n_skipped = true;
    return rep;
  }
  rep.tau_n.resize(cfg.replications);
  run_jobs(cfg.replications, [&](std::size_t rep_idx) {
    Generator gen = cfg.generator;
    gen.seed = rng_split(cfg.seed, rep_idx);
    LocalizationProblem p = make_problem(cfg, sample(gen, rep.n));
    rep.tau_n[rep_idx] = solve(p, cfg.slack).tau_value;
  });
  for (double t : rep.tau_n) {
    if (t < rep.tau_alpha - tol || t > rep.tau_alpha_minus_eps + tol)
      ++rep.violations;
    if (t < rep.tau_alpha_plus_eps - tol || t > rep.tau_alpha_minus_eps + tol)
      ++rep.violations_wide;
  }
  rep.violation_fraction =
      static_cast<double>(rep.violations) / static_cast<double>(cfg.replications);
  rep.violation_fraction_wide =
      static_cast<double>(rep.violations_wide) /
      static_cast<double>(cfg.replications);
  return rep;
}

nlohmann::json AlphaContinuityReport::to_json() const {
  return nlohmann::json{{"alphas", alphas},
                        {"delta", delta},
                        {"tau", tau},
                        {"tau_delta", tau_delta},
                        {"max_tau_gap", max_tau_gap},
                        {"max_haus_slack0", max_haus_slack0},
                        {"max_haus_slack1e9", max_haus_slack1e9},
                        {"analytic", analytic},
                        {"note", note}};
}

namespace {

// Haus(S' | S) for uniform minimizer families (all placements of the
// shortest feasible length): the supremum sits at an extreme placement.
double uniform_family_contrast(double len_from, double len_to, double a,
                               double b) {
  const double c_lo_to = a;
  const double c_hi_to = b - len_to;
  double worst = 0.0;
  for (double c : {a, b - len_from}) {
    const Interval probe{c, c + len_from};
    worst = std::max(worst, family_distance(probe, len_to, c_lo_to, c_hi_to));
  }
  return worst;
}

}  // namespace

AlphaContinuityReport alpha_continuity(
    const std::variant<EmpiricalMeasure, Analytic1DMeasure>& measure,
    const ClassSpec& cls, const SizeFunctional& f,
    const std::vector<double>& alphas, double delta) {
  if (!(delta > 0.0)) throw ArgumentError("delta must be > 0");
  AlphaContinuityReport rep;
  rep.alphas = alphas;
  rep.delta = delta;

  if (std::holds_alternative<Analytic1DMeasure>(measure)) {
    const auto& m = std::get<Analytic1DMeasure>(measure);
    rep.analytic = true;
    for (double a : alphas) {
      if (!(a > 0.0 && a + delta < 1.0))
        throw ArgumentError("alpha grid with delta must stay inside (0,1)");
      const auto s0 = smallest_interval(m, 1.0 - a, 1e-12);
      const auto s1 = smallest_interval(m, 1.0 - a - delta, 1e-12);
      const double t0 = tau_interval(s0.interval.hi - s0.interval.lo, f);
      const double t1 = tau_interval(s1.interval.hi - s1.interval.lo, f);
      rep.tau.push_back(t0);
      rep.tau_delta.push_back(t1);
      rep.max_tau_gap = std::max(rep.max_tau_gap, std::abs(t1 - t0));
      double haus;
      if (m.kind == Density1D::uniform) {
        haus = uniform_family_contrast(s1.interval.hi - s1.interval.lo,
                                       s0.interval.hi - s0.interval.lo, m.a, m.b);
      } else {
        haus = interval_hausdorff(s1.interval, s0.interval);
      }
      rep.max_haus_slack0 = std::max(rep.max_haus_slack0, haus);
      rep.max_haus_slack1e9 = rep.max_haus_slack0;
    }
    rep.note = "analytic minimizer families";
    return rep;
  }

  const auto& mu = std::get<EmpiricalMeasure>(measure);
  for (double a : alphas) {
    if (!(a > 0.0 && a + delta < 1.0))
      throw ArgumentError("alpha grid with delta must stay inside (0,1)");
    LocalizationProblem p;
    p.measure = mu;
    p.cls = cls;
    p.functional = f;
    p.backend = default_backend(cls.family, mu.support.dim());
    p.alpha = a;
    for (double slack : {0.0, 1e-9}) {
      const auto r0 = solve(p, slack);
      LocalizationProblem q = p;
      q.alpha = a + delta;
      const auto r1 = solve(q, slack);
      double haus = 0.0;
      for (const auto& d1 : r1.near_minimizers) {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& d0 : r0.near_minimizers)
          best = std::min(best, descriptor_hausdorff_exact(
                                    d1, d0, mu.support.metric()));
        haus = std::max(haus, best);
      }
      if (slack == 0.0)
        rep.max_haus_slack0 = std::max(rep.max_haus_slack0, haus);
      else
        rep.max_haus_slack1e9 = std::max(rep.max_haus_slack1e9, haus);
      if (slack != 0.0) {
        rep.tau.push_back(r0.tau_value);
        rep.tau_delta.push_back(r1.tau_value);
        rep.max_tau_gap =
            std::max(rep.max_tau_gap, std::abs(r1.tau_value - r0.tau_value));
      }
    }
  }
  rep.note =
      "empirical tau^alpha is a step function; continuity requires an "
      "F-regular, connected-support population";
  return rep;
}

nlohmann::json ConverseReport::to_json() const {
  nlohmann::json rows_json = nlohmann::json::array();
  for (const auto& r : rows)
    rows_json.push_back({{"n", r.n},
                         {"minimizer", descriptor_to_json(r.tilted_minimizer)},
                         {"haus_sn_to_s", r.haus_sn_to_s},
                         {"haus_s_to_sn", r.haus_s_to_sn}});
  return nlohmann::json{{"alpha", alpha},
                        {"rows", rows_json},
                        {"limit_haus_s_to_sn", limit_haus_s_to_sn}};
}

ConverseReport converse_demo(double alpha,
                             const std::vector<std::size_t>& n_list) {
  if (!(alpha > 0.0 && alpha < 0.5))
    throw ArgumentError("converse demo requires alpha in (0, 1/2)");
  ConverseReport rep;
  rep.alpha = alpha;
  // The limit family: uniform on (-1/2, 1/2), lengths 1-alpha, leftmost at
  // -1/2, rightmost at alpha - 1/2.
  const double len = 1.0 - alpha;
  const double c_lo = -0.5;
  const double c_hi = alpha - 0.5;
  auto row_for = [&](std::size_t n) {
    ConverseRow row;
    row.n = n;
    const auto sn = smallest_interval(Analytic1DMeasure::tilted(
                                          static_cast<double>(n)),
                                      1.0 - alpha, 1e-12);
    row.tilted_minimizer = sn.interval;
    row.haus_sn_to_s = family_distance(sn.interval, len, c_lo, c_hi);
    double worst = 0.0;
    for (double c : {c_lo, c_hi})
      worst = std::max(
          worst, interval_hausdorff(Interval{c, c + len}, sn.interval));
    row.haus_s_to_sn = worst;
    return row;
  };
  for (std::size_t n : n_list) rep.rows.push_back(row_for(n));
  rep.limit_haus_s_to_sn = row_for(1'000'000'000ull).haus_s_to_sn;
  return rep;
}

}  // namespace masslock
