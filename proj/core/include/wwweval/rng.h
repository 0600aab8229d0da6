// Copyright 2026 The wwweval Authors.
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

// Seeded randomness with a fully specified algorithm: the engine is
// std::mt19937_64, whose output sequence is fixed by the standard, and all
// range reduction is done here rather than through the implementation-defined
// std::uniform_int_distribution. Identical seeds therefore give identical
// pools, permutations and bootstrap samples on every platform.

#ifndef WWWEVAL_RNG_H_
#define WWWEVAL_RNG_H_

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <utility>

namespace wwweval {

using Rng = std::mt19937_64;

// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline Rng make_rng(std::uint64_t seed) { return Rng(mix64(seed)); }

// Independent stream number `stream` of `seed`. Used so that trial b of a
// Monte-Carlo procedure draws the same numbers whichever thread runs it.
inline Rng make_stream_rng(std::uint64_t seed, std::uint64_t stream) {
  return Rng(mix64(mix64(seed) ^ mix64(~stream)));
}

// Uniform integer in [0, bound), bound > 0, by rejection sampling.
inline std::uint64_t uniform_below(Rng &rng, std::uint64_t bound) {
  const std::uint64_t limit = Rng::max() - (Rng::max() % bound + 1) % bound;
  std::uint64_t x;
  do {
    x = rng();
  } while (x > limit);
  return x % bound;
}

// Fisher-Yates, drawing j uniformly from [0, i] for i = n-1 down to 1.
template <typename T>
void shuffle(std::span<T> items, Rng &rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    auto j = static_cast<std::size_t>(uniform_below(rng, i));
    using std::swap;
    swap(items[i - 1], items[j]);
  }
}

}  // namespace wwweval

#endif  // WWWEVAL_RNG_H_
