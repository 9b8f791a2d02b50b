/*
 * Copyright 2026 The NCoRE Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#ifndef NCORE_COMMON_RNG_H_
#define NCORE_COMMON_RNG_H_

#include <cstdint>
#include <initializer_list>
#include <random>
#include <string_view>

namespace ncore {

using Rng = std::mt19937_64;

// Derives an independent generator for one stochastic site.
//
// Every random draw in the library comes from a generator created here from
// (master seed, site label, integer keys). The derivation feeds the 32-bit
// halves of the master seed, a 64-bit FNV-1a hash of the label and each key
// through std::seed_seq, so streams are stable across runs and platforms that
// share the standard library implementation.
Rng derive_rng(std::uint64_t master_seed, std::string_view label,
               std::initializer_list<std::uint64_t> keys = {});

// Same derivation, returning a 64-bit seed instead of a generator. Used when
// a child component takes a plain seed (e.g. one HPO run's model seed).
std::uint64_t derive_seed(std::uint64_t master_seed, std::string_view label,
                          std::initializer_list<std::uint64_t> keys = {});

}  // namespace ncore

#endif  // NCORE_COMMON_RNG_H_
