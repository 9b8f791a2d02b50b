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
#include "ncore/common/rng.h"

#include <vector>

namespace ncore {
namespace {

std::uint64_t fnv1a(std::string_view text) {
  std::uint64_t hash = 14695981039346656037ULL;
  for (unsigned char c : text) {
    hash ^= c;
    hash *= 1099511628211ULL;
  }
  return hash;
}

void push64(std::vector<std::uint32_t>& words, std::uint64_t value) {
  words.push_back(static_cast<std::uint32_t>(value & 0xffffffffu));
  words.push_back(static_cast<std::uint32_t>(value >> 32));
}

std::seed_seq make_seq(std::uint64_t master_seed, std::string_view label,
                       std::initializer_list<std::uint64_t> keys,
                       std::vector<std::uint32_t>& words) {
  push64(words, master_seed);
  push64(words, fnv1a(label));
  for (std::uint64_t key : keys) push64(words, key);
  return std::seed_seq(words.begin(), words.end());
}

}  // namespace

Rng derive_rng(std::uint64_t master_seed, std::string_view label,
               std::initializer_list<std::uint64_t> keys) {
  std::vector<std::uint32_t> words;
  std::seed_seq seq = make_seq(master_seed, label, keys, words);
  return Rng(seq);
}

std::uint64_t derive_seed(std::uint64_t master_seed, std::string_view label,
                          std::initializer_list<std::uint64_t> keys) {
  std::vector<std::uint32_t> words;
  std::seed_seq seq = make_seq(master_seed, label, keys, words);
  std::uint32_t out[2];
  seq.generate(out, out + 2);
  return (static_cast<std::uint64_t>(out[1]) << 32) | out[0];
}

}  // namespace ncore
