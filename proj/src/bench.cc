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

#include "dpgraph/bench.h"

#include <atomic>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <ostream>
#include <stdexcept>
#include <thread>
#include <tuple>

#include "dpgraph/driver.h"
#include "dpgraph/io.h"
#include "dpgraph/random.h"

namespace dpgraph {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::uint64_t NameHash(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;  // FNV-1a
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

struct Task {
  Vertex n;
  std::size_t scale_index;
  std::uint64_t trial;
};

double Or(const std::optional<double>& v) { return v.value_or(kNaN); }

}  // namespace

const std::vector<std::string>& BenchMetrics() {
  static const std::vector<std::string> metrics = {
      "release_ms", "l1", "eval", "max_cut", "spectral", "edges_in"};
  return metrics;
}

void BenchSpec::Validate() const {
  if (sizes.empty()) throw std::invalid_argument("bench needs at least one size");
  for (Vertex n : sizes) {
    if (n < 2) throw std::invalid_argument("bench sizes must be >= 2");
  }
  if (mechanisms.empty()) {
    throw std::invalid_argument("bench needs at least one mechanism");
  }
  for (const auto& m : mechanisms) (void)ParseMechanism(m);
  if (weight_scales.empty()) {
    throw std::invalid_argument("bench needs at least one weight scale");
  }
  for (const auto& w : weight_scales) (void)ResolveWeightScale(w, 2);
  if (trials < 1) throw std::invalid_argument("bench trials must be >= 1");
  if (!(avg_degree >= 0)) throw std::invalid_argument("avg degree must be >= 0");
  if (jobs < 1) throw std::invalid_argument("jobs must be >= 1");
}

std::vector<BenchRow> RunBench(
    const BenchSpec& spec, const std::function<void(const std::string&)>& log) {
  spec.Validate();
  std::vector<Task> tasks;
  for (Vertex n : spec.sizes) {
    for (std::size_t w = 0; w < spec.weight_scales.size(); ++w) {
      for (std::uint64_t t = 0; t < spec.trials; ++t) tasks.push_back({n, w, t});
    }
  }
  const auto& metrics = BenchMetrics();
  std::vector<std::vector<BenchRow>> per_task(tasks.size());
  std::mutex log_mutex;

  auto run_task = [&](std::size_t i) {
    const Task& task = tasks[i];
    const std::string& scale_spec = spec.weight_scales[task.scale_index];
    const std::uint64_t graph_seed = DeriveSeed(
        DeriveSeed(DeriveSeed(spec.seed, static_cast<std::uint64_t>(task.n)),
                   NameHash(scale_spec)),
        task.trial);
    NoiseSource gen_src = NoiseSource::Seeded(graph_seed, 0);
    WeightModel model{ResolveWeightScale(scale_spec, task.n),
                      spec.weight_distribution};
    const WeightedGraph g =
        ConstantDegreeGraph(task.n, spec.avg_degree, model, gen_src);
    const double delta = spec.delta.value_or(DefaultDelta(task.n));

    for (const std::string& mech : spec.mechanisms) {
      const std::string label = mech + "/W=" + scale_spec;
      std::vector<double> values(metrics.size(), kNaN);
      try {
        MechanismConfig config{PrivacyBudget(spec.eps, delta)};
        config.mixing_multiplier = spec.mixing_multiplier;
        NoiseSource src = NoiseSource::Seeded(graph_seed, NameHash(mech));
        MetricOptions options;
        options.spectral = spec.spectral && task.n <= spec.spectral_max_n;
        options.spectral_seed = graph_seed;
        const ReleaseOutcome out =
            ReleaseAndEvaluate(ParseMechanism(mech), g, config, src, options);
        const ErrorReport& r = out.report;
        values = {r.release_ms, Or(r.l1),       Or(r.eval_linear),
                  Or(r.max_cut), Or(r.spectral), static_cast<double>(g.edge_count())};
      } catch (const std::exception& e) {
        if (log) {
          std::lock_guard lock(log_mutex);
          log("cell n=" + std::to_string(task.n) + " " + label + " trial " +
              std::to_string(task.trial) + " failed: " + e.what());
        }
      }
      for (std::size_t m = 0; m < metrics.size(); ++m) {
        per_task[i].push_back({task.n, label, metrics[m], values[m], graph_seed});
      }
      if (log) {
        std::lock_guard lock(log_mutex);
        log("n=" + std::to_string(task.n) + " " + label + " trial " +
            std::to_string(task.trial) + " release_ms=" +
            FormatWeight(values[0]));
      }
    }
  };

  const unsigned workers =
      std::min<unsigned>(spec.jobs, static_cast<unsigned>(tasks.size()));
  if (workers <= 1) {
    for (std::size_t i = 0; i < tasks.size(); ++i) run_task(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i; (i = next.fetch_add(1)) < tasks.size();) run_task(i);
      });
    }
    for (auto& t : pool) t.join();
  }

  std::vector<BenchRow> rows;
  // (n, mech, metric) -> (sum, count), in first-seen order.
  std::vector<std::tuple<Vertex, std::string, std::string>> order;
  std::map<std::tuple<Vertex, std::string, std::string>, std::pair<double, std::uint64_t>>
      sums;
  for (auto& block : per_task) {
    for (BenchRow& row : block) {
      auto key = std::make_tuple(row.n, row.mech, row.metric);
      auto [it, fresh] = sums.try_emplace(key, 0.0, 0);
      if (fresh) order.push_back(key);
      it->second.first += row.value;
      it->second.second += 1;
      rows.push_back(std::move(row));
    }
  }
  for (const auto& key : order) {
    const auto& [sum, count] = sums.at(key);
    rows.push_back({std::get<0>(key), std::get<1>(key), "mean_" + std::get<2>(key),
                    sum / static_cast<double>(count), spec.seed});
  }
  return rows;
}

void WriteBenchCsv(std::ostream& out, std::span<const BenchRow> rows) {
  out << "n,mech,metric,value,seed\n";
  for (const BenchRow& row : rows) {
    out << row.n << ',' << row.mech << ',' << row.metric << ','
        << (std::isnan(row.value) ? std::string("nan") : FormatWeight(row.value))
        << ',' << row.seed << '\n';
  }
}

}  // namespace dpgraph
