/*
 * Copyright 2026 the projcal authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef PROJCAL_RNG_HPP_
#define PROJCAL_RNG_HPP_

#include <cstdint>
#include <random>

namespace projcal {

using Rng = std::mt19937_64;

namespace detail {

// splitmix64 finalizer; decorrelates nearby stream tags.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

}  // namespace detail

/// Independent RNG stream for (seed, stream). Worker t of a parallel driver
/// owns derive_rng(seed, t); output is then independent of scheduling.
inline Rng derive_rng(std::uint64_t seed, std::uint64_t stream) {
  return Rng(detail::mix64(detail::mix64(seed) ^ detail::mix64(stream + 0x51ed2701ull)));
}

inline double uniform_real(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline double standard_normal(Rng& rng) {
  return std::normal_distribution<double>(0.0, 1.0)(rng);
}

}  // namespace projcal

#endif  // PROJCAL_RNG_HPP_
