// Copyright 2026 The qrcsim Authors
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

#ifndef QRC_RNG_HPP
#define QRC_RNG_HPP

#include <cstdint>
#include <random>

namespace qrc {

/// All stochastic code takes an explicit engine reference; nothing reads
/// global state.
using Rng = std::mt19937_64;

/// One splitmix64 step (additive constant plus finalizer). mix64(0) equals
/// the first output of a splitmix64 stream seeded with 0.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Seed for ensemble member `index`: mix64(master_seed + index).
///
/// Derived seeds depend only on (master_seed, index), so realizations can be
/// computed in any order, on any thread, with identical results.
std::uint64_t realization_seed(std::uint64_t master_seed, std::uint64_t index) noexcept;

}  // namespace qrc

#endif  // QRC_RNG_HPP
