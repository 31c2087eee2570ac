// Command-line runner for the greedy approximation engines: single runs on
// built-in or JSON instances, the two-dimensional stall experiment, and
// randomized verification of every convergence bound.

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <limits>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "greedy/analysis.hpp"
#include "greedy/engines.hpp"
#include "greedy/instances.hpp"
#include "greedy/serialize.hpp"

namespace {

using namespace greedy;

// Parallelism degree for independent verification trials: GREEDY_THREADS if
// set to a positive integer, otherwise the hardware concurrency.
int thread_count() {
  if (const char* env = std::getenv("GREEDY_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1 && v <= 1024) return static_cast<int>(v);
  }
  const unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

Algorithm parse_algorithm(const std::string& name) {
  if (name == "pga") return Algorithm::PGA;
  if (name == "rga") return Algorithm::RGA;
  if (name == "prga") return Algorithm::PRGA;
  if (name == "crga") return Algorithm::CRGA;
  throw std::invalid_argument("unknown algorithm: " + name);
}

// Strict numeric field parse: the whole token must be consumed, so trailing
// garbage ("b=0.4junk") is rejected rather than silently truncated.
double parse_double_field(const std::string& text, const char* what) {
  try {
    std::size_t pos = 0;
    const double value = std::stod(text, &pos);
    if (pos == text.size()) return value;
  } catch (const std::exception&) {
  }
  throw std::invalid_argument(std::string(what) + " must be a number, got: " + text);
}

int parse_int_field(const std::string& text, const char* what) {
  try {
    std::size_t pos = 0;
    const int value = std::stoi(text, &pos);
    if (pos == text.size()) return value;
  } catch (const std::exception&) {
  }
  throw std::invalid_argument(std::string(what) + " must be an integer, got: " + text);
}

// Instance descriptors: "counterexample:b=0.4", "lowerbound:m=3",
// "file:inst.json".
Instance resolve_instance(const std::string& descriptor) {
  const auto colon = descriptor.find(':');
  if (colon == std::string::npos) {
    throw std::invalid_argument(
        "instance must be counterexample:b=<x>, lowerbound:m=<k>, or file:<path>, got: " +
        descriptor);
  }
  const std::string kind = descriptor.substr(0, colon);
  const std::string rest = descriptor.substr(colon + 1);
  if (kind == "file") return load_instance(rest);
  if (kind == "counterexample") {
    if (rest.rfind("b=", 0) != 0) {
      throw std::invalid_argument("counterexample needs b=<x>, got: " + descriptor);
    }
    return counterexample_instance(parse_double_field(rest.substr(2), "counterexample b"));
  }
  if (kind == "lowerbound") {
    if (rest.rfind("m=", 0) != 0) {
      throw std::invalid_argument("lowerbound needs m=<k>, got: " + descriptor);
    }
    return lower_bound_instance(parse_int_field(rest.substr(2), "lowerbound m"));
  }
  throw std::invalid_argument("unknown instance kind: " + kind);
}

// Residual curve (one l2 value per iteration) for each of `trials` seeded
// random instances, computed in parallel but stored by trial index so the
// result is independent of scheduling.
std::vector<std::vector<double>> residual_curves(Algorithm kind, double alpha, int trials,
                                                 int dim, int atoms, int m, std::uint64_t seed) {
  std::vector<std::vector<double>> curves(static_cast<std::size_t>(trials));
  std::atomic<int> next{0};
  auto worker = [&]() {
    for (int t = next.fetch_add(1); t < trials; t = next.fetch_add(1)) {
      const Instance inst = random_a1_instance(dim, atoms, trial_seed(seed, t));
      AlgorithmConfig cfg;
      cfg.kind = kind;
      cfg.alpha = alpha;
      cfg.max_iterations = m;
      cfg.stop_epsilon = 0.0;  // the bounds are claims about every iterate, so never stop early
      const Trace trace = run(inst.element.vector, inst.dict, cfg);
      std::vector<double>& out = curves[static_cast<std::size_t>(t)];
      out.reserve(trace.records.size());
      for (const IterationRecord& rec : trace.records) out.push_back(rec.residual_l2);
    }
  };
  const int n_threads = std::min(thread_count(), std::max(trials, 1));
  if (n_threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(n_threads));
    for (int i = 0; i < n_threads; ++i) pool.emplace_back(worker);
    for (std::thread& th : pool) th.join();
  }
  return curves;
}

// Worst case across trials at each m: the per-m maximum residual, compared
// against the shared rate bound.
BoundReport aggregate_upper(std::string name, const std::vector<std::vector<double>>& curves,
                            int m, const std::function<double(int)>& bound_at) {
  BoundReport report;
  report.name = std::move(name);
  report.worst_margin = std::numeric_limits<double>::infinity();
  for (int mi = 1; mi <= m; ++mi) {
    double observed = 0.0;
    for (const std::vector<double>& curve : curves) {
      if (static_cast<int>(curve.size()) >= mi) observed = std::max(observed, curve[mi - 1]);
    }
    const double bound = bound_at(mi);
    const bool satisfied = observed <= bound + kBoundTolerance;
    report.per_m.push_back({mi, observed, bound, satisfied});
    report.all_satisfied = report.all_satisfied && satisfied;
    report.worst_margin = std::min(report.worst_margin, bound - observed);
  }
  if (report.per_m.empty()) report.worst_margin = 0.0;
  return report;
}

void write_report_file(const BoundReport& report, const std::string& path,
                       const std::string& format, const std::vector<std::string>& preamble,
                       const std::vector<std::pair<std::string, std::string>>& extra) {
  write_text_file(path, format == "json" ? report_json(report, extra)
                                         : report_csv(report, preamble));
}

// Prints the verdict, writes the report, and maps it to the exit code.
// `floor_direction` selects which side of the bound counts as a violation
// when reporting the worst offender.
int finish_verify(const BoundReport& report, bool floor_direction, const std::string& path,
                  const std::string& format, const std::vector<std::string>& preamble,
                  const std::vector<std::pair<std::string, std::string>>& extra) {
  write_report_file(report, path, format, preamble, extra);
  if (report.all_satisfied) {
    std::printf("%s: all %zu checks satisfied (worst margin %.6g)\n", report.name.c_str(),
                report.per_m.size(), report.worst_margin);
    std::printf("wrote %s\n", path.c_str());
    return 0;
  }
  int worst_m = -1;
  double worst_violation = -std::numeric_limits<double>::infinity();
  double worst_observed = 0.0;
  double worst_bound = 0.0;
  for (const BoundEntry& e : report.per_m) {
    if (e.satisfied) continue;
    const double violation = floor_direction ? e.bound - e.observed : e.observed - e.bound;
    if (violation > worst_violation) {
      worst_violation = violation;
      worst_m = e.m;
      worst_observed = e.observed;
      worst_bound = e.bound;
    }
  }
  std::printf("FAIL %s: bound violated at m=%d (observed=%s, bound=%s)\n", report.name.c_str(),
              worst_m, format_g17(worst_observed).c_str(), format_g17(worst_bound).c_str());
  std::printf("wrote %s\n", path.c_str());
  return 1;
}

struct RunOptions {
  std::string alg;
  std::string instance;
  std::string out;
  std::string format = "csv";
  double alpha = 1.0;
  int m = 100;
  double stop_epsilon = 1e-14;
};

int cmd_run(const RunOptions& opt) {
  AlgorithmConfig cfg;
  cfg.kind = parse_algorithm(opt.alg);
  cfg.alpha = opt.alpha;
  cfg.max_iterations = opt.m;
  cfg.stop_epsilon = opt.stop_epsilon;
  const Instance inst = resolve_instance(opt.instance);
  Trace trace = run(inst.element.vector, inst.dict, cfg);
  trace.instance_label = opt.instance;

  const std::string path =
      opt.out.empty() ? (opt.format == "json" ? "trace.json" : "trace.csv") : opt.out;
  write_text_file(path, opt.format == "json" ? trace_json(trace) : trace_csv(trace));

  const int final_m = trace.records.empty() ? 0 : trace.records.back().m;
  const double final_error =
      trace.records.empty() ? norm_l2(inst.element.vector) : trace.records.back().residual_l2;
  std::printf("Final Error ||f - T_%d|| = %.6f\n", final_m, final_error);
  std::printf("wrote %s\n", path.c_str());
  return 0;
}

struct ReproduceOptions {
  std::string out_dir = ".";
  int m = 500;
};

// Power-relaxed runs on f = (1/2, 1/2) over the canonical basis of R^2, the
// experiment whose final errors separate alpha <= 1 from alpha > 1.
int cmd_reproduce(const ReproduceOptions& opt) {
  const Dictionary dict = canonical_dictionary(2);
  const A1Element element = build_a1_element(dict, {{0, 1, 0.5}, {1, 1, 0.5}}, 1.0);

  std::string block = "--- Results of the simulation ---\n";
  std::vector<std::string> written;
  for (const double alpha : {1.1, 1.5, 2.0}) {
    AlgorithmConfig cfg;
    cfg.kind = Algorithm::PRGA;
    cfg.alpha = alpha;
    cfg.max_iterations = opt.m;
    cfg.stop_epsilon = 0.0;
    const Trace trace = run_prga(element.vector, dict, cfg);

    char line[96];
    std::snprintf(line, sizeof line, "Alpha=%.1f: Final Error ||f - T_%d|| = %.6f\n", alpha,
                  opt.m, trace.records.back().residual_l2);
    block += line;

    char name[64];
    std::snprintf(name, sizeof name, "reproduce_alpha_%.1f.csv", alpha);
    const std::string path = opt.out_dir + "/" + name;
    write_text_file(path, trace_csv(trace));
    written.push_back(path);
  }
  std::fputs(block.c_str(), stdout);
  for (const std::string& path : written) std::printf("wrote %s\n", path.c_str());
  return 0;
}

struct VerifyOptions {
  std::string bound;
  std::string out;
  std::string format = "csv";
  int trials = 100;
  int dim = 16;
  int atoms = 0;  // 0 -> 2*dim
  int m = -1;     // -1 -> per-bound default
  std::uint64_t seed = 7;
  double alpha = -1.0;  // -1 -> per-bound default
  double b = 0.4;
};

std::string default_report_path(const std::string& bound, const std::string& format) {
  std::string name = bound;
  std::replace(name.begin(), name.end(), '-', '_');
  return "verify_" + name + (format == "json" ? ".json" : ".csv");
}

int verify_random_suite(const VerifyOptions& opt, Algorithm kind, const std::string& name,
                        const std::function<double(int)>& bound_at, double alpha,
                        const std::string& bound_label) {
  const int m = opt.m > 0 ? opt.m : 200;
  const int atoms = opt.atoms > 0 ? opt.atoms : 2 * opt.dim;
  const auto curves = residual_curves(kind, alpha, opt.trials, opt.dim, atoms, m, opt.seed);
  const BoundReport report = aggregate_upper(name, curves, m, bound_at);

  char params[160];
  std::snprintf(params, sizeof params, "trials=%d dim=%d atoms=%d m=%d", opt.trials, opt.dim,
                atoms, m);
  const std::vector<std::string> preamble = {
      std::string("generator: ") + kGeneratorId + " seed=" + std::to_string(opt.seed),
      std::string("params: ") + params,
      "bound: " + bound_label,
      "observed: max residual_l2 over trials at each m",
  };
  const std::vector<std::pair<std::string, std::string>> extra = {
      {"generator", kGeneratorId},
      {"seed", std::to_string(opt.seed)},
      {"params", params},
      {"bound", bound_label},
  };
  const std::string path = opt.out.empty() ? default_report_path(opt.bound, opt.format) : opt.out;
  return finish_verify(report, /*floor_direction=*/false, path, opt.format, preamble, extra);
}

int verify_divergence_floor(const VerifyOptions& opt) {
  const double alpha = opt.alpha > 0 ? opt.alpha : 2.0;
  const int m = opt.m > 0 ? opt.m : 10000;
  if (!(alpha > 1.0)) {
    throw std::invalid_argument("divergence-floor requires --alpha > 1");
  }
  const Instance inst = counterexample_instance(opt.b);

  AlgorithmConfig cfg;
  cfg.kind = Algorithm::PRGA;
  cfg.alpha = alpha;
  cfg.max_iterations = m;
  cfg.stop_epsilon = 0.0;
  const Trace trace = run_prga(inst.element.vector, inst.dict, cfg);
  const BoundReport report = check_divergence_floor(trace, opt.b, alpha);

  // The per-m floors decrease toward b*P_alpha/sqrt(2); certify that the
  // limit itself is positive and that the final residual clears it.
  const ProductBound pb = product_with_tail(alpha, 1000000);
  const double limit_floor = opt.b * pb.lower / std::sqrt(2.0);
  const double final_residual = trace.records.back().residual_l2;
  const bool above_limit = limit_floor > 0.0 && final_residual > limit_floor;

  char detail[200];
  std::snprintf(detail, sizeof detail,
                "final residual %.6f vs limit floor %.6f (infinite product in [%.9f, %.9f])",
                final_residual, limit_floor, pb.lower, pb.upper);
  const std::vector<std::string> preamble = {
      "instance: counterexample b=" + format_g17(opt.b) + " alpha=" + format_g17(alpha),
      "floor: b*prod_{k=2}^m(1-k^-alpha)/sqrt(2)",
      detail,
  };
  const std::vector<std::pair<std::string, std::string>> extra = {
      {"instance", "counterexample b=" + format_g17(opt.b) + " alpha=" + format_g17(alpha)},
      {"limit_floor", format_g17(limit_floor)},
      {"final_residual", format_g17(final_residual)},
      {"product_lower", format_g17(pb.lower)},
      {"product_upper", format_g17(pb.upper)},
  };
  const std::string path = opt.out.empty() ? default_report_path(opt.bound, opt.format) : opt.out;
  const int rc = finish_verify(report, /*floor_direction=*/true, path, opt.format, preamble, extra);
  std::printf("%s\n", detail);
  if (!above_limit) {
    std::printf("FAIL %s: final residual does not clear the limit floor\n", report.name.c_str());
    return 1;
  }
  return rc;
}

int verify_lower_bound(const VerifyOptions& opt) {
  const int m = opt.m > 0 ? opt.m : 3;
  const Instance inst = lower_bound_instance(m);
  const double observed = best_m_term_error(inst.element.vector, inst.dict, m);
  const double floor = 1.0 / (2.0 * std::sqrt(static_cast<double>(m)));
  const bool satisfied = observed >= floor - kBoundTolerance;

  BoundReport report;
  report.name = "m-term-lower-bound";
  report.per_m.push_back({m, observed, floor, satisfied});
  report.all_satisfied = satisfied;
  report.worst_margin = observed - floor;

  std::printf("Best %d-term error = %.6f (floor 1/(2*sqrt(%d)) = %.6f)\n", m, observed, m, floor);
  const std::vector<std::string> preamble = {
      "instance: f = (1/2m) * sum of the canonical basis of R^(2m), m=" + std::to_string(m),
      "observed: brute-force best m-term error over all supports",
  };
  const std::vector<std::pair<std::string, std::string>> extra = {
      {"instance", "canonical R^" + std::to_string(2 * m) + " with uniform coefficients"},
      {"observed", format_g17(observed)},
      {"floor", format_g17(floor)},
  };
  const std::string path = opt.out.empty() ? default_report_path(opt.bound, opt.format) : opt.out;
  return finish_verify(report, /*floor_direction=*/true, path, opt.format, preamble, extra);
}

int cmd_verify(const VerifyOptions& opt) {
  if (opt.bound == "rga") {
    return verify_random_suite(opt, Algorithm::RGA, "rga-upper-bound",
                               [](int mi) { return rga_bound(mi); }, 1.0, "2/sqrt(m)");
  }
  if (opt.bound == "prga") {
    const double alpha = opt.alpha > 0 ? opt.alpha : 0.5;
    prga_bound(1, alpha);  // reject exponents with no rate bound before running trials
    char label[48];
    std::snprintf(label, sizeof label, "2/m^(%g/2)", alpha);
    return verify_random_suite(
        opt, Algorithm::PRGA, "prga-upper-bound",
        [alpha](int mi) { return prga_bound(mi, alpha); }, alpha, label);
  }
  if (opt.bound == "crga") {
    return verify_random_suite(opt, Algorithm::CRGA, "crga-upper-bound",
                               [](int mi) { return crga_bound(mi); }, 1.0, "2/sqrt(m+4)");
  }
  if (opt.bound == "divergence-floor") return verify_divergence_floor(opt);
  if (opt.bound == "lowerbound") return verify_lower_bound(opt);
  throw std::invalid_argument("unknown bound: " + opt.bound);
}

int guarded(const std::function<int()>& fn) {
  try {
    return fn();
  } catch (const std::exception& err) {
    std::fprintf(stderr, "error: %s\n", err.what());
    return 2;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Greedy approximation over finite symmetric dictionaries: pure, relaxed, "
      "power-relaxed, and line-search engines with convergence-bound verification."};
  app.require_subcommand(1);
  int rc = 0;

  RunOptions run_opt;
  CLI::App* run_cmd = app.add_subcommand("run", "Run one algorithm on an instance and write its trace");
  run_cmd->add_option("--alg", run_opt.alg, "Algorithm: pga | rga | prga | crga")
      ->required()
      ->check(CLI::IsMember({"pga", "rga", "prga", "crga"}));
  run_cmd->add_option("--instance", run_opt.instance,
                      "counterexample:b=<x> | lowerbound:m=<k> | file:<path>")
      ->required();
  run_cmd->add_option("--alpha", run_opt.alpha, "Relaxation exponent for prga (step 1/m^alpha)");
  run_cmd->add_option("--m", run_opt.m, "Number of iterations");
  run_cmd->add_option("--stop-epsilon", run_opt.stop_epsilon,
                      "Stop once the residual l2 norm falls below this");
  run_cmd->add_option("--out", run_opt.out, "Output path (default trace.csv / trace.json)");
  run_cmd->add_option("--format", run_opt.format, "csv | json")
      ->check(CLI::IsMember({"csv", "json"}));
  run_cmd->callback([&] { rc = guarded([&] { return cmd_run(run_opt); }); });

  ReproduceOptions rep_opt;
  CLI::App* rep_cmd = app.add_subcommand(
      "reproduce",
      "Power-relaxed runs on f=(1/2,1/2) in R^2 for alpha in {1.1, 1.5, 2.0}: prints the "
      "final-error block and writes per-iteration CSV files");
  rep_cmd->add_option("--out-dir", rep_opt.out_dir, "Directory for the per-alpha CSV files");
  rep_cmd->add_option("--m", rep_opt.m, "Number of iterations");
  rep_cmd->callback([&] { rc = guarded([&] { return cmd_reproduce(rep_opt); }); });

  VerifyOptions ver_opt;
  CLI::App* ver_cmd = app.add_subcommand("verify", "Check a convergence bound and write a report");
  ver_cmd->add_option("bound", ver_opt.bound,
                      "rga | prga | crga | divergence-floor | lowerbound")
      ->required()
      ->check(CLI::IsMember({"rga", "prga", "crga", "divergence-floor", "lowerbound"}));
  ver_cmd->add_option("--trials", ver_opt.trials, "Random instances per suite")
      ->check(CLI::PositiveNumber);
  ver_cmd->add_option("--dim", ver_opt.dim, "Ambient dimension for random instances")
      ->check(CLI::PositiveNumber);
  ver_cmd->add_option("--atoms", ver_opt.atoms, "Atoms per random dictionary (default 2*dim)");
  ver_cmd->add_option("--m", ver_opt.m,
                      "Iterations (default 200; divergence-floor 10000; lowerbound 3)");
  ver_cmd->add_option("--seed", ver_opt.seed, "Base seed for trial derivation");
  ver_cmd->add_option("--alpha", ver_opt.alpha,
                      "Relaxation exponent (default 0.5 for prga, 2 for divergence-floor)");
  ver_cmd->add_option("--b", ver_opt.b, "Stall-instance parameter, in (0, 1/2)");
  ver_cmd->add_option("--out", ver_opt.out, "Report path (default verify_<bound>.csv)");
  ver_cmd->add_option("--format", ver_opt.format, "csv | json")
      ->check(CLI::IsMember({"csv", "json"}));
  ver_cmd->callback([&] { rc = guarded([&] { return cmd_verify(ver_opt); }); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  return rc;
}
