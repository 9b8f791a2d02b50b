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
#ifndef NCORE_DIFFCORE_CHECKPOINT_H_
#define NCORE_DIFFCORE_CHECKPOINT_H_

#include <iosfwd>
#include <map>
#include <string>

#include "ncore/diffcore/param_store.h"

namespace ncore::diffcore {

inline constexpr int kCheckpointVersion = 1;

// Text checkpoint, see docs/checkpoint_format.md:
//
//   ncore-checkpoint 1
//   meta <key> <value>            (zero or more)
//   param <name> <rows> <cols>    (then `rows` lines of `cols` values)
//   end
//
// Values use the shortest round-trip decimal form, so save/load is exact.
struct Checkpoint {
  std::map<std::string, std::string> metadata;
  ParamStore params;
};

void save_checkpoint(std::ostream& out, const ParamStore& params,
                     const std::map<std::string, std::string>& metadata = {});
// Throws ParseError with the offending line number. `source` names the
// stream in error messages.
Checkpoint load_checkpoint(std::istream& in, const std::string& source = "<stream>");

}  // namespace ncore::diffcore

#endif  // NCORE_DIFFCORE_CHECKPOINT_H_
