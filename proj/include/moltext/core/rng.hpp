//
// Project moltext - Copyright 2026 the moltext authors.
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <cstdint>
#include <initializer_list>
#include <vector>

namespace moltext::core {

/// xoshiro256** stream with splitmix64 seeding. All sampling primitives are
/// implemented here rather than through <random> distributions so that a
/// given seed produces the same draws on every platform and toolchain.
class Rng {
public:
  explicit Rng(std::uint64_t seed);

  /// Derives an independent stream from a base seed and a path of stream
  /// identifiers, e.g. derive(seed, {epoch, molecule, view}). Streams with
  /// different paths are decorrelated by repeated splitmix64 absorption.
  static Rng derive(std::uint64_t seed, std::initializer_list<std::uint64_t> path);

  std::uint64_t next_u64();

  /// Uniform in [0, 1) with 53 random bits.
  double next_real01();

  /// Uniform integer in [0, bound), bound > 0. Rejection sampling, unbiased.
  std::uint64_t next_below(std::uint64_t bound);

  /// Standard normal via Box-Muller (second value cached).
  double next_normal();

  template <class T>
  void shuffle(std::vector<T>& items) {
    if (items.size() < 2) return;
    for (std::size_t i = items.size() - 1; i > 0; --i) {
      std::size_t j = static_cast<std::size_t>(next_below(i + 1));
      std::swap(items[i], items[j]);
    }
  }

private:
  Rng() = default;
  std::uint64_t state_[4] = {};
  bool has_spare_ = false;
  double spare_ = 0.0;
};

/// splitmix64 step, exposed for hashing-style seed mixing.
std::uint64_t splitmix64(std::uint64_t& state);

}  // namespace moltext::core
