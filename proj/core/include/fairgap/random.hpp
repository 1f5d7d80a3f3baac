// Copyright 2026 The fairgap Authors.
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

#ifndef FAIRGAP_RANDOM_HPP_
#define FAIRGAP_RANDOM_HPP_

#include <cstdint>
#include <random>
#include <vector>

namespace fairgap {

// Deterministic random source. std::mt19937_64 output is fixed by the
// standard, but the std distributions are not, so every sampling routine
// we rely on for reproducibility is implemented here by hand. Given the
// same seed, a Rng produces the same stream on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : m_seed(seed), m_engine(seed) {}

  std::uint64_t seed() const { return m_seed; }

  std::uint64_t next_u64() { return m_engine(); }

  // Uniform integer in [0, n). Rejection sampling, so the result is
  // unbiased for every n. Requires n > 0.
  std::uint64_t below(std::uint64_t n);

  // Uniform double in [0, 1) with 53 random bits.
  double unit() { return static_cast<double>(m_engine() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return unit() < p; }

  // Derives an independent generator for a sub-task, without consuming
  // any numbers from this stream. splitmix64 over (seed, key) keeps
  // sibling streams apart even for adjacent keys.
  Rng fork(std::uint64_t key) const {
    std::uint64_t z = m_seed + (key + 1) * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return Rng(z ^ (z >> 31));
  }

  // Fisher-Yates shuffle using below(), back to front.
  template <typename T>
  void shuffle(std::vector<T>& items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(below(i));
      using std::swap;
      swap(items[i - 1], items[j]);
    }
  }

 private:
  std::uint64_t m_seed;
  std::mt19937_64 m_engine;
};

inline std::uint64_t Rng::below(std::uint64_t n) {
  // Reject the tail of the 64-bit range that would bias the modulus.
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n + 1) % n;
  std::uint64_t x = m_engine();
  while (x > limit) x = m_engine();
  return x % n;
}

}  // namespace fairgap

#endif  // FAIRGAP_RANDOM_HPP_
