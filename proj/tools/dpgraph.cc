// Copyright 2026 The dpgraph Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// dpgraph command-line front end.

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dpgraph/audit.h"
#include "dpgraph/bench.h"
#include "dpgraph/continual.h"
#include "dpgraph/driver.h"
#include "dpgraph/evaluation.h"
#include "dpgraph/generators.h"
#include "dpgraph/io.h"
#include "dpgraph/mechanisms.h"
#include "dpgraph/random.h"
#include "dpgraph/report.h"

namespace fs = std::filesystem;
using namespace dpgraph;

namespace {

constexpr int kUsageExit = 2;

struct Globals {
  std::optional<std::uint64_t> seed;
  std::string out;
  bool quiet = false;
};

double Millis(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now() - since)
      .count();
}

// Writes to --out atomically, or to stdout when it is empty or "-".
void Emit(const std::string& path,
          const std::function<void(std::ostream&)>& write) {
  if (path.empty() || path == "-") {
    write(std::cout);
    std::cout.flush();
  } else {
    WriteFileAtomically(path, write);
  }
}

void WriteSketch(std::ostream& out, const LaplacianSketch& sketch) {
  out << "n " << sketch.n << '\n';
  for (Vertex u = 0; u < sketch.n; ++u) {
    for (Vertex v = u; v < sketch.n; ++v) {
      out << u << '\t' << v << '\t' << FormatWeight(sketch.matrix(u, v)) << '\n';
    }
  }
}

// --- gen ----------------------------------------------------------------

struct GenArgs {
  Vertex n = 100;
  double avg_degree = 4;
  std::string weight_scale = "1";
  std::string weight_dist = "uniform";
};

int RunGen(const Globals& globals, const GenArgs& args) {
  const std::uint64_t seed = ResolveSeed(globals.seed);
  NoiseSource src = NoiseSource::Seeded(seed, 0);
  WeightModel model{ResolveWeightScale(args.weight_scale, args.n),
                    ParseWeightDistribution(args.weight_dist)};
  const WeightedGraph g = ConstantDegreeGraph(args.n, args.avg_degree, model, src);
  Emit(globals.out, [&](std::ostream& out) { WriteGraph(out, g); });
  if (!globals.quiet) {
    std::cerr << "generated n=" << g.n() << " edges=" << g.edge_count()
              << " seed=" << seed << '\n';
  }
  return 0;
}

// --- release ------------------------------------------------------------

struct ReleaseArgs {
  std::string input;
  std::string mech;
  double eps = 1.0;
  std::optional<double> delta;
  std::optional<double> beta;
  double mixing_mult = 1.0;
  std::optional<std::uint64_t> jl_r;
  double jl_eta = 0.1;
  std::string report;
  Vertex max_cut_vertices = 16;
  bool no_spectral = false;
};

int RunRelease(const Globals& globals, const ReleaseArgs& args) {
  const std::uint64_t seed = ResolveSeed(globals.seed);
  const auto init_start = std::chrono::steady_clock::now();
  const WeightedGraph g = ReadGraphFile(args.input);
  const double init_ms = Millis(init_start);

  MechanismConfig config{PrivacyBudget(args.eps, args.delta.value_or(DefaultDelta(g.n())))};
  config.beta = args.beta;
  config.mixing_multiplier = args.mixing_mult;
  config.jl_dimension = args.jl_r;
  config.jl_eta = args.jl_eta;
  config.Validate();

  NoiseSource src = NoiseSource::Seeded(seed, 0);
  MetricOptions options;
  options.spectral = !args.no_spectral;
  options.max_cut_vertices = args.max_cut_vertices;
  options.spectral_seed = seed;
  ReleaseOutcome outcome =
      ReleaseAndEvaluate(ParseMechanism(args.mech), g, config, src, options);
  outcome.report.seed = seed;
  outcome.report.init_ms = init_ms;

  if (outcome.sketch) {
    Emit(globals.out, [&](std::ostream& out) { WriteSketch(out, *outcome.sketch); });
  } else {
    Emit(globals.out, [&](std::ostream& out) { WriteGraph(out, *outcome.graph); });
  }
  std::string report_path = args.report;
  if (report_path.empty() && !globals.out.empty() && globals.out != "-") {
    report_path = globals.out + ".report.json";
  }
  const std::string json = outcome.report.ToJson().dump(2) + "\n";
  if (!report_path.empty()) {
    WriteFileAtomically(report_path, [&](std::ostream& out) { out << json; });
  } else if (!globals.quiet) {
    std::cerr << json;
  }
  return 0;
}

// --- stream -------------------------------------------------------------

struct StreamArgs {
  std::string input;
  std::string mech = "filter";
  double eps = 1.0;
  std::optional<double> delta;
  double mixing_mult = 1.0;
  std::uint64_t every = 1;
};

int RunStream(const Globals& globals, const StreamArgs& args) {
  if (globals.out.empty() || globals.out == "-") {
    throw CLI::ValidationError("--out", "stream needs an output directory");
  }
  if (args.every < 1) throw CLI::ValidationError("--every", "must be >= 1");
  const std::uint64_t seed = ResolveSeed(globals.seed);
  const StreamSpec stream = ReadStreamFile(args.input);
  const double delta = args.delta.value_or(DefaultDelta(stream.n));
  const ContinualBudget budget =
      ContinualBudgetFor(args.eps, delta, std::max<std::uint64_t>(stream.rounds, 1));
  StaticMechanism mechanism;
  if (args.mech == "identity") {
    mechanism = IdentityMechanism();
  } else if (args.mech == "filter") {
    mechanism = FilterMechanism(PrivacyBudget(budget.eps0, budget.delta0));
  } else {
    mechanism = WalkMechanism(PrivacyBudget(budget.eps0, budget.delta0),
                              args.mixing_mult);
  }

  const fs::path dir(globals.out);
  fs::create_directories(dir);
  NoiseSource src = NoiseSource::Seeded(seed, 0);
  PartialSumTree tree(stream.n, stream.rounds, mechanism);
  const auto start = std::chrono::steady_clock::now();
  nlohmann::json rounds = nlohmann::json::array();
  for (std::size_t i = 0; i < stream.updates.size(); ++i) {
    const WeightedGraph released = tree.Step(stream.updates[i], src);
    const std::uint64_t t = tree.round();
    if (t % args.every == 0 || i + 1 == stream.updates.size()) {
      std::ostringstream name;
      name << "round_" << std::setw(6) << std::setfill('0') << t << ".tsv";
      WriteFileAtomically(dir / name.str(),
                          [&](std::ostream& out) { WriteGraph(out, released); });
      rounds.push_back({{"round", t}, {"edges", released.edge_count()},
                        {"file", name.str()}});
    }
  }
  std::uint32_t max_inclusions = 0;
  for (std::uint32_t c : tree.inclusions()) max_inclusions = std::max(max_inclusions, c);
  const double t = static_cast<double>(std::max<std::uint64_t>(tree.round(), 2));
  nlohmann::json report = {
      {"mechanism", args.mech},
      {"n", stream.n},
      {"eps", args.eps},
      {"delta", delta},
      {"seed", seed},
      {"parameters", {{"rounds", stream.rounds}, {"eps0", budget.eps0},
                      {"delta0", budget.delta0}}},
      {"metrics", {{"privatize_calls", tree.privatize_calls()},
                   {"max_inclusions", max_inclusions},
                   {"edge_touches", tree.edge_touches()},
                   {"touch_constant", static_cast<double>(tree.edge_touches()) /
                                          (t * std::log2(t))}}},
      {"timings", {{"release_ms", Millis(start)}}},
      {"rounds", rounds},
  };
  WriteFileAtomically(dir / "report.json",
                      [&](std::ostream& out) { out << report.dump(2) << '\n'; });
  if (!globals.quiet) {
    std::cerr << "processed " << tree.round() << " rounds into " << dir << '\n';
  }
  return 0;
}

// --- eval ---------------------------------------------------------------

struct EvalArgs {
  std::string original;
  std::string released;
  Vertex max_cut_vertices = 16;
  bool no_spectral = false;
};

int RunEval(const Globals& globals, const EvalArgs& args) {
  const std::uint64_t seed = ResolveSeed(globals.seed);
  const WeightedGraph g = ReadGraphFile(args.original);
  const WeightedGraph h = ReadGraphFile(args.released);
  if (g.n() != h.n()) {
    throw std::invalid_argument("graphs have different vertex counts");
  }
  ErrorReport report;
  report.mechanism = "eval";
  report.n = g.n();
  report.seed = seed;
  MetricOptions options;
  options.spectral = !args.no_spectral;
  options.max_cut_vertices = args.max_cut_vertices;
  options.spectral_seed = seed;
  const auto start = std::chrono::steady_clock::now();
  FillGraphMetrics(report, g, h, options);
  report.release_ms = Millis(start);
  const std::string json = report.ToJson().dump(2) + "\n";
  Emit(globals.out, [&](std::ostream& out) { out << json; });
  return 0;
}

// --- bench --------------------------------------------------------------

int RunBenchCommand(const Globals& globals, BenchSpec spec) {
  spec.seed = ResolveSeed(globals.seed);
  std::function<void(const std::string&)> log;
  if (!globals.quiet) log = [](const std::string& line) { std::cerr << line << '\n'; };
  const std::vector<BenchRow> rows = RunBench(spec, log);
  Emit(globals.out, [&](std::ostream& out) { WriteBenchCsv(out, rows); });
  return 0;
}

// --- audit --------------------------------------------------------------

int RunAuditCommand(const Globals& globals, AuditConfig config) {
  config.seed = ResolveSeed(globals.seed);
  const AuditResult result = RunAudit(config);
  std::ostringstream text;
  text << "audit N=" << config.ground_size << " k=" << config.k
       << " eps=" << config.eps << " delta=" << config.delta
       << " steps=" << result.steps << " trials=" << config.trials
       << " seed=" << config.seed << '\n';
  for (const AuditCheck& c : result.checks) {
    text << (c.passed ? "PASS " : "FAIL ") << c.name << " value=" << c.value
         << " threshold=" << c.threshold << '\n';
  }
  Emit(globals.out, [&](std::ostream& out) { out << text.str(); });
  return result.passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Differentially private graph release"};
  app.require_subcommand(1);
  Globals globals;
  app.add_option("--seed", globals.seed, "RNG seed (else DPGRAPH_SEED, else random)");
  app.add_option("--out", globals.out, "Output path; stdout when omitted");
  app.add_flag("--quiet", globals.quiet, "Suppress progress on stderr");

  auto mech_check = CLI::IsMember(MechanismNames());

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Sample G(n, c/n) with edge weights");
  gen_cmd->fallthrough();
  gen_cmd->add_option("--n", gen.n, "Vertex count")->check(CLI::Range(1, 1 << 30));
  gen_cmd->add_option("--avg-degree,-c", gen.avg_degree, "Expected average degree")
      ->check(CLI::NonNegativeNumber);
  gen_cmd->add_option("--weight-scale,-W", gen.weight_scale, "1, sqrt_n, n or a number");
  gen_cmd->add_option("--weight-dist", gen.weight_dist, "uniform or fixed")
      ->check(CLI::IsMember({"uniform", "fixed"}));

  ReleaseArgs rel;
  auto* rel_cmd = app.add_subcommand("release", "Release a private graph");
  rel_cmd->fallthrough();
  rel_cmd->add_option("--in", rel.input, "Input graph")->required();
  rel_cmd->add_option("--mech", rel.mech, "Mechanism")->required()->check(mech_check);
  rel_cmd->add_option("--eps", rel.eps, "Privacy epsilon")->check(CLI::PositiveNumber);
  rel_cmd->add_option("--delta", rel.delta, "Privacy delta (default n^-10)");
  rel_cmd->add_option("--beta", rel.beta, "Edge-count failure probability");
  rel_cmd->add_option("--mixing-mult", rel.mixing_mult, "Walk length multiplier")
      ->check(CLI::PositiveNumber);
  rel_cmd->add_option("--jl-r", rel.jl_r, "JL projection dimension");
  rel_cmd->add_option("--jl-eta", rel.jl_eta, "JL distortion");
  rel_cmd->add_option("--report", rel.report, "Report path (default <out>.report.json)");
  rel_cmd->add_option("--max-cut-n", rel.max_cut_vertices,
                      "Brute-force cut error up to this n");
  rel_cmd->add_flag("--no-spectral", rel.no_spectral, "Skip the spectral metric");

  StreamArgs str;
  auto* str_cmd = app.add_subcommand("stream", "Continual release over an update stream");
  str_cmd->fallthrough();
  str_cmd->add_option("--in", str.input, "Stream file")->required();
  str_cmd->add_option("--mech", str.mech, "Per-level mechanism")
      ->check(CLI::IsMember({"identity", "filter", "walk"}));
  str_cmd->add_option("--eps", str.eps, "Total epsilon")->check(CLI::PositiveNumber);
  str_cmd->add_option("--delta", str.delta, "Per-level delta (default n^-10)");
  str_cmd->add_option("--mixing-mult", str.mixing_mult, "Walk length multiplier")
      ->check(CLI::PositiveNumber);
  str_cmd->add_option("--every", str.every, "Write every k-th round");

  EvalArgs ev;
  auto* ev_cmd = app.add_subcommand("eval", "Error metrics between two graphs");
  ev_cmd->fallthrough();
  ev_cmd->add_option("--original", ev.original, "Original graph")->required();
  ev_cmd->add_option("--released", ev.released, "Released graph")->required();
  ev_cmd->add_option("--max-cut-n", ev.max_cut_vertices,
                     "Brute-force cut error up to this n");
  ev_cmd->add_flag("--no-spectral", ev.no_spectral, "Skip the spectral metric");

  BenchSpec bench;
  bench.sizes = {100};
  bench.mechanisms = {"filter", "walk"};
  std::optional<double> bench_delta;
  std::string bench_dist = "uniform";
  bool bench_no_spectral = false;
  auto* bench_cmd = app.add_subcommand("bench", "Benchmark grid to CSV");
  bench_cmd->fallthrough();
  bench_cmd->add_option("--sizes", bench.sizes, "Vertex counts")->delimiter(',');
  bench_cmd->add_option("--mechs", bench.mechanisms, "Mechanisms")
      ->delimiter(',')
      ->check(mech_check);
  bench_cmd->add_option("--weight-scales", bench.weight_scales, "W values")
      ->delimiter(',');
  bench_cmd->add_option("--weight-dist", bench_dist, "uniform or fixed")
      ->check(CLI::IsMember({"uniform", "fixed"}));
  bench_cmd->add_option("--avg-degree,-c", bench.avg_degree, "Expected average degree");
  bench_cmd->add_option("--trials", bench.trials, "Trials per cell");
  bench_cmd->add_option("--eps", bench.eps, "Privacy epsilon")->check(CLI::PositiveNumber);
  bench_cmd->add_option("--delta", bench_delta, "Privacy delta (default n^-10)");
  bench_cmd->add_option("--mixing-mult", bench.mixing_multiplier, "Walk length multiplier");
  bench_cmd->add_option("--spectral-max-n", bench.spectral_max_n,
                        "Skip spectral error above this n");
  bench_cmd->add_flag("--no-spectral", bench_no_spectral, "Skip the spectral metric");
  bench_cmd->add_option("--jobs,-j", bench.jobs, "Worker threads");

  AuditConfig audit;
  auto* audit_cmd = app.add_subcommand("audit", "Check the exchange walk on a small instance");
  audit_cmd->fallthrough();
  audit_cmd->add_option("--N", audit.ground_size, "Ground set size");
  audit_cmd->add_option("--k", audit.k, "Subset size");
  audit_cmd->add_option("--eps", audit.eps, "Epsilon (0 allowed)");
  audit_cmd->add_option("--delta", audit.delta, "Delta");
  audit_cmd->add_option("--trials", audit.trials, "Monte Carlo trials");
  audit_cmd->add_option("--steps", audit.steps, "Override the walk length");
  audit_cmd->add_option("--mixing-mult", audit.mixing_multiplier, "Walk length multiplier");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsageExit;
  }

  try {
    if (*gen_cmd) return RunGen(globals, gen);
    if (*rel_cmd) return RunRelease(globals, rel);
    if (*str_cmd) return RunStream(globals, str);
    if (*ev_cmd) return RunEval(globals, ev);
    if (*bench_cmd) {
      bench.delta = bench_delta;
      bench.weight_distribution = ParseWeightDistribution(bench_dist);
      bench.spectral = !bench_no_spectral;
      return RunBenchCommand(globals, bench);
    }
    if (*audit_cmd) return RunAuditCommand(globals, audit);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsageExit;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid argument: " << e.what() << '\n';
    return kUsageExit;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return kUsageExit;
}
