// Copyright 2026 The Vispricer Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <random>
#include <span>

namespace vispricer {

/// Seeded random stream built on mt19937_64 with hand-rolled variate
/// transforms. The std::*_distribution adapters are implementation-defined,
/// which would break cross-toolchain reproducibility of seeded runs; every
/// draw here is specified purely in terms of raw engine outputs.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  /// Engine seeded from (seed, stream) so independent substreams are
  /// decorrelated and schedule-independent.
  static Rng for_stream(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t next_u64();
  /// Uniform on [0, 1) with 53-bit resolution.
  double next_unit();
  /// Uniform on {0, ..., bound-1}, unbiased via rejection. bound must be > 0.
  std::uint64_t next_below(std::uint64_t bound);
  /// Standard normal via Box-Muller (second value cached).
  double next_normal();
  /// Gamma(shape, 1) via Marsaglia-Tsang; shape must be > 0.
  double next_gamma(double shape);
  /// Beta(a, b) as Ga/(Ga+Gb); a, b must be > 0.
  double next_beta(double a, double b);

 private:
  std::mt19937_64 engine_;
  bool has_spare_normal_ = false;
  double spare_normal_ = 0.0;
};

/// In-place uniform shuffle driven by rng (Fisher-Yates).
template <class T>
void shuffle_span(std::span<T> values, Rng& rng) {
  for (std::size_t i = values.size(); i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(rng.next_below(i));
    std::swap(values[i - 1], values[j]);
  }
}

}  // namespace vispricer
