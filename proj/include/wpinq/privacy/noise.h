// Copyright 2026 The wPINQ Authors
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

#ifndef WPINQ_PRIVACY_NOISE_H_
#define WPINQ_PRIVACY_NOISE_H_

#include <cstdint>
#include <random>

#include "absl/status/statusor.h"

namespace wpinq {

// A seeded stream of uniform variates, or a zero-noise stand-in for tests.
// The stream position is the number of uniforms drawn, so a stream can be
// resumed from (seed, draws).
class NoiseSource {
 public:
  static NoiseSource Seeded(std::uint64_t seed);
  static NoiseSource ZeroNoise();
  static NoiseSource Resume(std::uint64_t seed, std::uint64_t draws);

  // Uniform on the open interval (0, 1), 53 bits of resolution.
  double NextUniform();

  bool zero_noise() const { return zero_noise_; }
  std::uint64_t seed() const { return seed_; }
  std::uint64_t draws() const { return draws_; }

 private:
  NoiseSource() = default;

  std::mt19937_64 engine_;
  std::uint64_t seed_ = 0;
  std::uint64_t draws_ = 0;
  bool zero_noise_ = false;
};

// Inverse CDF of Laplace(0, scale) at u in (0, 1). u = 0.5 maps to 0.
double LaplaceFromUniform(double u, double scale);

// One Laplace(0, scale) variate; exactly 0 in zero-noise mode (no uniform is
// consumed). Fails for nonpositive or non-finite scale.
absl::StatusOr<double> LaplaceSample(double scale, NoiseSource& src);

// Closed-form CDF of Laplace(0, scale).
double LaplaceCdf(double x, double scale);

}  // namespace wpinq

#endif  // WPINQ_PRIVACY_NOISE_H_
