// eddr: estimate, calibrate, classify, simulate, verify-moments.
// Exit codes: 0 ok, 1 usage, 2 data, 3 numerically infeasible / failed check.

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "eddr/cutoff.hpp"
#include "eddr/discriminant.hpp"
#include "eddr/errors.hpp"
#include "eddr/io.hpp"
#include "eddr/simulation.hpp"
#include "eddr/wishart.hpp"
#include "json.hpp"

using json = nlohmann::json;
using namespace eddr;

namespace {

constexpr const char* kVersion = "0.1.0";

struct DataOpts {
  std::string train1, train2;
  std::string header = "auto";
  std::string delta3 = "linear";
};

HeaderMode header_mode(const std::string& s) {
  if (s == "auto") return HeaderMode::Auto;
  if (s == "yes") return HeaderMode::Present;
  if (s == "no") return HeaderMode::Absent;
  throw UsageError("--header must be auto, yes or no");
}

Delta3Form delta3_form(const std::string& s) {
  if (s == "linear") return Delta3Form::Linear;
  if (s == "printed") return Delta3Form::AsPrinted;
  throw UsageError("--delta3 must be linear or printed");
}

LogitVariance logit_variance(const std::string& s) {
  if (s == "delta") return LogitVariance::DeltaMethod;
  if (s == "printed") return LogitVariance::AsPrinted;
  throw UsageError("--logit-variance must be delta or printed");
}

M2Anchor m2_anchor(const std::string& s) {
  if (s == "fixed-point") return M2Anchor::FixedPoint;
  if (s == "target") return M2Anchor::AtTarget;
  throw UsageError("--m2-anchor must be fixed-point or target");
}

CutoffSource cutoff_source(const std::string& s) {
  if (s == "plug-in") return CutoffSource::PlugIn;
  if (s == "population") return CutoffSource::Population;
  throw UsageError("--cutoff-source must be plug-in or population");
}

MeanPlacement mean_placement(const std::string& s) {
  if (s == "sym-sqrt") return MeanPlacement::SymSqrt;
  if (s == "identity") return MeanPlacement::Identity;
  throw UsageError("--mean-placement must be sym-sqrt or identity");
}

void add_data_opts(CLI::App* cmd, DataOpts& o) {
  cmd->add_option("train1", o.train1, "CSV of group 1 training rows")->required();
  cmd->add_option("train2", o.train2, "CSV of group 2 training rows")->required();
  cmd->add_option("--header", o.header, "auto | yes | no")->capture_default_str();
  cmd->add_option("--delta3", o.delta3, "linear | printed")->capture_default_str();
}

struct Fitted {
  TwoSampleSummary summary;
  SampleMoments moments;
};

Fitted fit(const DataOpts& o) {
  const auto mode = header_mode(o.header);
  LabeledSample s1{read_csv(o.train1, mode), 1};
  LabeledSample s2{read_csv(o.train2, mode), 2};
  Fitted f;
  f.summary = pooled_summary(s1, s2);
  f.moments = sample_moments(pooled_centered(s1, s2), f.summary.delta(), f.summary.N1,
                             f.summary.N2);
  return f;
}

// ---- estimate ----

int run_estimate(const DataOpts& o) {
  const auto f = fit(o);
  const auto t = estimate_traces(f.moments);
  const auto d = estimate_deltas(f.moments, t, delta3_form(o.delta3));
  const double k = f.moments.k();
  json j;
  j["N1"] = f.summary.N1;
  j["N2"] = f.summary.N2;
  j["n"] = f.summary.n;
  j["p"] = f.summary.p;
  j["a1"] = t.a1;
  j["a2"] = t.a2;
  j["a3"] = t.a3;
  j["a4"] = t.a4;
  j["delta0"] = d.d0;
  j["delta1"] = d.d1;
  j["delta2"] = d.d2;
  j["delta3"] = d.d3;
  j["U0"] = -d.d0 / 2;
  j["V0"] = d.d1 + k * t.a2;
  std::cout << j.dump(2) << "\n";
  return 0;
}

// ---- calibrate ----

struct CalOpts {
  std::string method = "m1";
  std::optional<double> alpha, eu, beta;
  std::string logit_variance = "delta";
  std::string anchor = "fixed-point";
};

void add_cal_opts(CLI::App* cmd, CalOpts& c) {
  cmd->add_option("--method", c.method, "m1 | m2-normal | m2-logit")->capture_default_str();
  cmd->add_option("--alpha", c.alpha, "target expected error (m1)");
  cmd->add_option("--eu", c.eu, "error upper bound (m2)");
  cmd->add_option("--beta", c.beta, "1 - confidence (m2)");
  cmd->add_option("--logit-variance", c.logit_variance, "delta | printed")
      ->capture_default_str();
  cmd->add_option("--m2-anchor", c.anchor, "fixed-point | target")->capture_default_str();
}

CutoffRequest make_request(const CalOpts& c) {
  CutoffRequest r;
  r.method = parse_method(c.method);
  r.logit_variance = logit_variance(c.logit_variance);
  r.anchor = m2_anchor(c.anchor);
  if (r.method == Method::M1) {
    if (!c.alpha) throw UsageError("--alpha is required for m1");
    r.alpha = *c.alpha;
  } else {
    if (!c.eu) throw UsageError("--eu is required for " + c.method);
    if (!c.beta) throw UsageError("--beta is required for " + c.method);
    r.eu = *c.eu;
    r.beta = *c.beta;
  }
  validate(r);
  return r;
}

json calibrate_json(const Fitted& f, const CutoffRequest& req, Delta3Form form) {
  const auto t = estimate_traces(f.moments);
  const auto d = estimate_deltas(f.moments, t, form);
  const auto lp = limit_params(d, t, Dims{f.summary.N1, f.summary.N2, f.summary.p});
  const auto r = calibrate(lp, d, t, req);
  json j;
  j["c"] = r.c;
  j["variant_used"] = to_string(r.variant_used);
  j["fell_back"] = r.fell_back;
  j["e0"] = r.e0;
  if (req.method == Method::M1) {
    j["gamma"] = nullptr;
    j["tau2"] = asymptotic_law(lp, d, t, r.c, req.logit_variance).tau2;
  } else {
    j["gamma"] = r.gamma;
    j["tau2"] = r.tau2;
    j["a1"] = r.a1;
    j["iterations"] = r.iterations;
  }
  if (r.fell_back)
    std::cerr << "note: normal percentile left (0,1); fell back to the logit cutoff\n";
  return j;
}

int run_calibrate(const DataOpts& o, const CalOpts& c) {
  const auto req = make_request(c);
  const auto f = fit(o);
  std::cout << calibrate_json(f, req, delta3_form(o.delta3)).dump(2) << "\n";
  return 0;
}

// ---- classify ----

int run_classify(const DataOpts& o, const CalOpts& c, const std::string& query,
                 std::optional<double> cutoff) {
  const auto mode = header_mode(o.header);
  const Matrix Q = read_csv(query, mode);
  const auto f = fit(o);
  double cc;
  if (cutoff) {
    cc = *cutoff;
  } else {
    cc = calibrate_json(f, make_request(c), delta3_form(o.delta3))["c"].get<double>();
  }
  if (Q.rows() == 0) return 0;
  if (Q.cols() != f.summary.p)
    throw DataError(query + ": expected " + std::to_string(f.summary.p) + " columns, found " +
                    std::to_string(Q.cols()));
  std::cout << "label,score\n";
  char buf[64];
  for (Eigen::Index i = 0; i < Q.rows(); ++i) {
    const Vector x = Q.row(i).transpose();
    const double s = discriminant_score(x, f.summary);
    std::snprintf(buf, sizeof buf, "%.17g", s);
    std::cout << static_cast<int>(classify_score(s, cc)) << "," << buf << "\n";
  }
  return 0;
}

// ---- simulate ----

struct SimOpts {
  std::string config;
  std::vector<int> N{64};
  std::vector<int> p{64};
  double rho = 0.0;
  int bandwidth = 50;
  int reps = 20000;
  std::uint64_t seed = 1;
  int workers = 1;
  std::string source = "plug-in";
  std::string placement = "sym-sqrt";
  std::string delta3 = "linear";
  std::string out, sidecar;
  CalOpts cal;
};

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      out.push_back(std::stoi(tok));
    } catch (const std::exception&) {
      throw UsageError("bad integer list '" + s + "'");
    }
  }
  return out;
}

// Values from the config file for every key not given on the command line.
void apply_config(CLI::App* cmd, SimOpts& o) {
  if (o.config.empty()) return;
  const auto kv = read_config(o.config);
  auto given = [&](const std::string& flag) { return cmd->count("--" + flag) > 0; };
  auto num = [&](const std::string& k, const std::string& v) {
    try {
      std::size_t pos = 0;
      const double x = std::stod(v, &pos);
      if (pos != v.size()) throw std::invalid_argument(v);
      return x;
    } catch (const std::exception&) {
      throw DataError(o.config + ": bad value for '" + k + "': " + v);
    }
  };
  for (const auto& [k, v] : kv) {
    if (given(k)) continue;
    if (k == "N") o.N = parse_int_list(v);
    else if (k == "p") o.p = parse_int_list(v);
    else if (k == "rho") o.rho = num(k, v);
    else if (k == "bandwidth") o.bandwidth = int(num(k, v));
    else if (k == "reps") o.reps = int(num(k, v));
    else if (k == "seed") o.seed = std::stoull(v);
    else if (k == "workers") o.workers = int(num(k, v));
    else if (k == "cutoff-source") o.source = v;
    else if (k == "mean-placement") o.placement = v;
    else if (k == "delta3") o.delta3 = v;
    else if (k == "method") o.cal.method = v;
    else if (k == "alpha") o.cal.alpha = num(k, v);
    else if (k == "eu") o.cal.eu = num(k, v);
    else if (k == "beta") o.cal.beta = num(k, v);
    else if (k == "logit-variance") o.cal.logit_variance = v;
    else if (k == "m2-anchor") o.cal.anchor = v;
    else if (k == "out") o.out = v;
    else if (k == "sidecar") o.sidecar = v;
    else throw DataError(o.config + ": unknown key '" + k + "'");
  }
}

std::string utc_now() {
  const auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

int run_simulate(CLI::App* cmd, SimOpts& o) {
  apply_config(cmd, o);
  if (o.reps < 1) throw UsageError("--reps must be >= 1");
  if (o.N.empty() || o.p.empty()) throw UsageError("--N and --p need at least one value");
  const auto req = make_request(o.cal);
  const bool m2 = req.method != Method::M1;

  std::ostringstream table;
  table << (m2 ? "N,p,acl,ae\n" : "N,p,ae\n");
  json cells = json::array();
  const auto started = utc_now();
  for (int N : o.N) {
    for (int p : o.p) {
      SimConfig cfg;
      cfg.p = p;
      cfg.N1 = N / 2;
      cfg.N2 = N - N / 2;
      cfg.rho = o.rho;
      cfg.bandwidth = o.bandwidth;
      cfg.reps = o.reps;
      cfg.seed = o.seed;
      cfg.request = req;
      cfg.workers = o.workers;
      cfg.source = cutoff_source(o.source);
      cfg.placement = mean_placement(o.placement);
      cfg.delta3 = delta3_form(o.delta3);
      const auto design = make_design(cfg);
      const auto recs = run_trials(cfg, design);
      check_exclusions(recs);
      const auto ae = attained_error_rate(recs);
      long fell = 0;
      for (const auto& r : recs) fell += r.feasible && r.fell_back;
      json cell{{"N", N},           {"N1", cfg.N1},        {"N2", cfg.N2},
                {"p", p},           {"ae", ae.value},      {"ae_se", ae.se},
                {"used", ae.used},  {"excluded", ae.excluded}, {"fell_back", fell}};
      table << N << "," << p << ",";
      if (m2) {
        const auto acl = attained_confidence_level(recs, req.eu);
        cell["acl"] = acl.value;
        cell["acl_se"] = acl.se;
        table << format_sig(acl.value) << ",";
      }
      table << format_sig(ae.value) << "\n";
      if (design.population_cutoff) cell["population_cutoff"] = design.population_cutoff->c;
      cells.push_back(cell);
    }
  }

  if (o.out.empty()) {
    std::cout << table.str();
  } else {
    write_file_atomic(o.out, table.str());
  }
  const std::string sidecar = !o.sidecar.empty() ? o.sidecar
                              : !o.out.empty()   ? o.out + ".json"
                                                 : std::string();
  if (!sidecar.empty()) {
    json cfg{{"N", o.N},
             {"p", o.p},
             {"rho", o.rho},
             {"bandwidth", o.bandwidth},
             {"reps", o.reps},
             {"seed", o.seed},
             {"workers", o.workers},
             {"cutoff-source", o.source},
             {"mean-placement", o.placement},
             {"delta3", o.delta3},
             {"method", o.cal.method},
             {"logit-variance", o.cal.logit_variance},
             {"m2-anchor", o.cal.anchor}};
    if (m2) {
      cfg["eu"] = req.eu;
      cfg["beta"] = req.beta;
    } else {
      cfg["alpha"] = req.alpha;
    }
    json manifest{{"command", "simulate"},
                  {"version", kVersion},
                  {"config", cfg},
                  {"seed", o.seed},
                  {"started", started},
                  {"finished", utc_now()},
                  {"outputs", {{"table", o.out.empty() ? "<stdout>" : o.out}, {"sidecar", sidecar}}},
                  {"cells", cells}};
    write_file_atomic(sidecar, manifest.dump(2) + "\n");
  }
  return 0;
}

// ---- verify-moments ----

int run_verify(const std::string& suite, int p, int n, long draws, std::uint64_t seed,
               const std::string& coefficients) {
  Coefficients coef;
  if (coefficients == "corrected") coef = Coefficients::Corrected;
  else if (coefficients == "printed") coef = Coefficients::AsPrinted;
  else throw UsageError("--coefficients must be corrected or printed");
  std::vector<MomentCheck> checks;
  if (suite == "exact") {
    if (n < 1) throw UsageError("--n must be >= 1");
    checks = verify_moments_exact(n, coef);
  } else if (suite == "mc") {
    if (p < 1) throw UsageError("--p must be >= 1");
    if (n < 1) throw UsageError("--n must be >= 1");
    if (draws < 2) throw UsageError("--draws must be >= 2");
    checks = verify_moments_mc(p, n, draws, seed, 5.0, coef);
  } else {
    throw UsageError("--suite must be exact or mc");
  }
  bool all = true;
  std::printf("%-36s %18s %18s %12s  %s\n", "check", "formula", "reference", "se", "result");
  for (const auto& c : checks) {
    std::printf("%-36s %18.10g %18.10g %12.4g  %s\n", c.name.c_str(), c.expected, c.observed,
                c.se, c.pass ? "PASS" : "FAIL");
    all = all && c.pass;
  }
  return all ? 0 : 3;
}

int default_workers() {
  if (const char* e = std::getenv("EDDR_WORKERS")) {
    const int w = std::atoi(e);
    if (w >= 1) return w;
  }
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bias-corrected Euclidean distance discriminant: estimation, calibration, simulation"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  DataOpts data;
  CalOpts cal;

  auto* est = app.add_subcommand("estimate", "print the trace and signal estimates as JSON");
  add_data_opts(est, data);

  auto* calc = app.add_subcommand("calibrate", "compute a cutoff (c scale) as JSON");
  add_data_opts(calc, data);
  add_cal_opts(calc, cal);

  std::string query;
  std::optional<double> cutoff;
  auto* cls = app.add_subcommand("classify", "label query rows; prints label,score CSV");
  add_data_opts(cls, data);
  cls->add_option("query", query, "CSV of rows to classify")->required();
  cls->add_option("--cutoff", cutoff, "use this c instead of calibrating");
  add_cal_opts(cls, cal);

  SimOpts sim;
  sim.workers = default_workers();
  std::string Nlist, plist;
  auto* simc = app.add_subcommand("simulate", "Monte Carlo ae / acl over an (N, p) grid");
  simc->add_option("--config", sim.config, "flat key = value file; flags override it");
  simc->add_option("--N", Nlist, "total training sizes, comma separated (N1 = N2 = N/2)");
  simc->add_option("--p", plist, "dimensions, comma separated");
  simc->add_option("--rho", sim.rho)->capture_default_str();
  simc->add_option("--bandwidth", sim.bandwidth)->capture_default_str();
  simc->add_option("--reps", sim.reps)->capture_default_str();
  simc->add_option("--seed", sim.seed)->capture_default_str();
  simc->add_option("--workers", sim.workers, "OpenMP threads (default $EDDR_WORKERS or 1)")
      ->capture_default_str();
  simc->add_option("--cutoff-source", sim.source, "plug-in | population")->capture_default_str();
  simc->add_option("--mean-placement", sim.placement, "sym-sqrt | identity")
      ->capture_default_str();
  simc->add_option("--delta3", sim.delta3, "linear | printed")->capture_default_str();
  simc->add_option("--out", sim.out, "table CSV path (stdout if omitted)");
  simc->add_option("--sidecar", sim.sidecar, "JSON sidecar path (default <out>.json)");
  add_cal_opts(simc, sim.cal);

  std::string suite = "exact", coefficients = "corrected";
  int vp = 3, vn = 0;
  long draws = 1000000;
  std::uint64_t vseed = 1;
  auto* ver = app.add_subcommand("verify-moments", "check the Wishart moment formulas");
  ver->add_option("--suite", suite, "exact | mc")->capture_default_str();
  ver->add_option("--p", vp, "dimension (mc)")->capture_default_str();
  ver->add_option("--n", vn, "degrees of freedom (mc, default 10) or n_max (exact, default 20)");
  ver->add_option("--draws", draws)->capture_default_str();
  ver->add_option("--seed", vseed)->capture_default_str();
  ver->add_option("--coefficients", coefficients, "corrected | printed")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (*est) return run_estimate(data);
    if (*calc) return run_calibrate(data, cal);
    if (*cls) return run_classify(data, cal, query, cutoff);
    if (*simc) {
      if (!Nlist.empty()) sim.N = parse_int_list(Nlist);
      if (!plist.empty()) sim.p = parse_int_list(plist);
      return run_simulate(simc, sim);
    }
    if (*ver) {
      if (vn == 0) vn = suite == "exact" ? 20 : 10;
      return run_verify(suite, vp, vn, draws, vseed, coefficients);
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return 2;
  } catch (const InfeasibleError& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
