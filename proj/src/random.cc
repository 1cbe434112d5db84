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

#include "dpgraph/random.h"

#include <cmath>
#include <cstdlib>
#include <string>

namespace dpgraph {
namespace {

std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t DeriveSeed(std::uint64_t seed, std::uint64_t stream) {
  return SplitMix64(SplitMix64(seed) ^ SplitMix64(~stream));
}

double LaplaceFromUniform(double u, double scale) {
  if (u == 0) return 0.0;
  const double sign = u > 0 ? 1.0 : -1.0;
  return -scale * sign * std::log1p(-2.0 * std::abs(u));
}

NoiseSource NoiseSource::Seeded(std::uint64_t seed, std::uint64_t stream) {
  return NoiseSource(DeriveSeed(seed, stream));
}

NoiseSource NoiseSource::Scripted(std::vector<double> script,
                                  std::uint64_t structural_seed) {
  NoiseSource src(DeriveSeed(structural_seed, 0));
  src.script_ = std::move(script);
  return src;
}

double NoiseSource::NextScripted() {
  if (script_pos_ >= script_->size()) {
    throw ScriptExhaustedError("scripted noise exhausted after " +
                               std::to_string(script_pos_) + " draws");
  }
  return (*script_)[script_pos_++];
}

double NoiseSource::Laplace(double scale) {
  if (!(scale > 0)) throw std::invalid_argument("Laplace scale must be > 0");
  if (script_) {
    const double z = NextScripted();
    ++counters_.laplace;
    return z;
  }
  ++counters_.laplace;
  return LaplaceFromUniform(OpenUniform() - 0.5, scale);
}

double NoiseSource::Gaussian(double sigma) {
  if (!(sigma > 0)) throw std::invalid_argument("Gaussian sigma must be > 0");
  if (script_) {
    const double z = NextScripted();
    ++counters_.gaussian;
    return z;
  }
  ++counters_.gaussian;
  if (spare_gaussian_) {
    const double z = *spare_gaussian_;
    spare_gaussian_.reset();
    return sigma * z;
  }
  // Marsaglia polar method.
  double a, b, s;
  do {
    a = 2.0 * Uniform() - 1.0;
    b = 2.0 * Uniform() - 1.0;
    s = a * a + b * b;
  } while (s >= 1.0 || s == 0.0);
  const double f = std::sqrt(-2.0 * std::log(s) / s);
  spare_gaussian_ = b * f;
  return sigma * a * f;
}

double NoiseSource::Uniform() {
  ++counters_.uniform;
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double NoiseSource::OpenUniform() {
  double u;
  do {
    u = Uniform();
  } while (u == 0.0);
  return u;
}

std::uint64_t NoiseSource::UniformIndex(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("UniformIndex bound must be > 0");
  ++counters_.uniform;
  // Lemire's multiply-shift with rejection.
  std::uint64_t x = engine_();
  __uint128_t m = static_cast<__uint128_t>(x) * bound;
  auto low = static_cast<std::uint64_t>(m);
  if (low < bound) {
    const std::uint64_t threshold = -bound % bound;
    while (low < threshold) {
      x = engine_();
      m = static_cast<__uint128_t>(x) * bound;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

std::uint64_t ResolveSeed(std::optional<std::uint64_t> flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("DPGRAPH_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw std::invalid_argument(std::string("DPGRAPH_SEED is not a u64: ") +
                                  env);
    }
  }
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

}  // namespace dpgraph
