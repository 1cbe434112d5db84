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

#ifndef DPGRAPH_RANDOM_H_
#define DPGRAPH_RANDOM_H_

#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

namespace dpgraph {

// Thrown when a scripted NoiseSource runs out of values.
class ScriptExhaustedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// SplitMix64 finalizer applied to (seed, stream). Independent trials derive
// their generators from this so they never share mutable state.
std::uint64_t DeriveSeed(std::uint64_t seed, std::uint64_t stream);

// Inverse-CDF Laplace transform of u in (-1/2, 1/2):
// -b * sign(u) * ln(1 - 2|u|).
double LaplaceFromUniform(double u, double scale);

// Source of every random draw a mechanism makes.
//
// Seeded mode draws everything from a 64-bit Mersenne Twister. Scripted mode
// returns the scripted values verbatim for Laplace and Gaussian draws (and
// throws ScriptExhaustedError when they run out) while structural draws
// (uniform reals and indices used by the walk and by generators) still come
// from a seeded generator. Draw counts are tracked in both modes.
class NoiseSource {
 public:
  struct Counters {
    std::uint64_t laplace = 0;
    std::uint64_t gaussian = 0;
    std::uint64_t uniform = 0;
  };

  static NoiseSource Seeded(std::uint64_t seed, std::uint64_t stream = 0);
  static NoiseSource Scripted(std::vector<double> script,
                              std::uint64_t structural_seed = 0);

  // Throws std::invalid_argument for scale <= 0.
  double Laplace(double scale);
  // Throws std::invalid_argument for sigma <= 0.
  double Gaussian(double sigma);

  // Uniform on [0, 1).
  double Uniform();
  // Uniform on (0, 1).
  double OpenUniform();
  // Uniform on {0, ..., bound - 1}; bound must be positive.
  std::uint64_t UniformIndex(std::uint64_t bound);

  const Counters& counters() const { return counters_; }
  bool scripted() const { return script_.has_value(); }
  std::size_t script_remaining() const {
    return script_ ? script_->size() - script_pos_ : 0;
  }

 private:
  explicit NoiseSource(std::uint64_t seed) : engine_(seed) {}

  double NextScripted();

  std::mt19937_64 engine_;
  std::optional<std::vector<double>> script_;
  std::size_t script_pos_ = 0;
  std::optional<double> spare_gaussian_;
  Counters counters_;
};

// Seed precedence: explicit flag, then the DPGRAPH_SEED environment
// variable, then a fresh seed from std::random_device.
std::uint64_t ResolveSeed(std::optional<std::uint64_t> flag);

}  // namespace dpgraph

#endif  // DPGRAPH_RANDOM_H_
