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

#include "wpinq/privacy/noise.h"

#include <cmath>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace wpinq {

NoiseSource NoiseSource::Seeded(std::uint64_t seed) {
  NoiseSource src;
  src.engine_.seed(seed);
  src.seed_ = seed;
  return src;
}

NoiseSource NoiseSource::ZeroNoise() {
  NoiseSource src;
  src.zero_noise_ = true;
  return src;
}

NoiseSource NoiseSource::Resume(std::uint64_t seed, std::uint64_t draws) {
  NoiseSource src = Seeded(seed);
  src.engine_.discard(draws);
  src.draws_ = draws;
  return src;
}

double NoiseSource::NextUniform() {
  ++draws_;
  std::uint64_t bits = engine_() >> 11;
  return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
}

double LaplaceFromUniform(double u, double scale) {
  double c = u - 0.5;
  if (c == 0.0) return 0.0;
  double magnitude = -scale * std::log1p(-2.0 * std::abs(c));
  return c < 0.0 ? -magnitude : magnitude;
}

absl::StatusOr<double> LaplaceSample(double scale, NoiseSource& src) {
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    return absl::InvalidArgumentError(
        absl::StrCat("Laplace scale must be positive and finite, got ", scale));
  }
  if (src.zero_noise()) return 0.0;
  return LaplaceFromUniform(src.NextUniform(), scale);
}

double LaplaceCdf(double x, double scale) {
  if (x < 0.0) return 0.5 * std::exp(x / scale);
  return 1.0 - 0.5 * std::exp(-x / scale);
}

}  // namespace wpinq
