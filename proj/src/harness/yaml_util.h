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
#ifndef NCORE_HARNESS_YAML_UTIL_H_
#define NCORE_HARNESS_YAML_UTIL_H_

#include <string>

#include <yaml-cpp/yaml.h>

#include "ncore/simcore/types.h"

namespace ncore::harness::internal {

YAML::Node schema_to_yaml(const simcore::CovariateSchema& schema);
// `source` names the document in ParseError messages.
simcore::CovariateSchema schema_from_yaml(const YAML::Node& node,
                                          const std::string& source);

// Doubles are written with the shortest round-trip representation.
YAML::Node number(double value);

template <typename T>
T required(const YAML::Node& node, const std::string& key, const std::string& source);

}  // namespace ncore::harness::internal

#endif  // NCORE_HARNESS_YAML_UTIL_H_
