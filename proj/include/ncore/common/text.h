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
#ifndef NCORE_COMMON_TEXT_H_
#define NCORE_COMMON_TEXT_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ncore {

// Shortest decimal representation that parses back to the same double.
std::string format_double(double value);

// Whole-string parse; nullopt on trailing garbage or overflow.
std::optional<double> parse_double(std::string_view text);
std::optional<long long> parse_int(std::string_view text);

std::vector<std::string_view> split(std::string_view text, char delimiter);
std::string_view trim(std::string_view text);

}  // namespace ncore

#endif  // NCORE_COMMON_TEXT_H_
