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
#include "ncore/diffcore/checkpoint.h"

#include <istream>
#include <ostream>
#include <sstream>

#include "ncore/common/errors.h"
#include "ncore/common/text.h"

namespace ncore::diffcore {

void save_checkpoint(std::ostream& out, const ParamStore& params,
                     const std::map<std::string, std::string>& metadata) {
  out << "ncore-checkpoint " << kCheckpointVersion << '\n';
  for (const auto& [key, value] : metadata) {
    if (key.find_first_of(" \t\n") != std::string::npos ||
        value.find('\n') != std::string::npos) {
      throw ConfigError("checkpoint metadata '" + key +
                        "' must not contain whitespace in the key or newlines");
    }
    out << "meta " << key << ' ' << value << '\n';
  }
  for (std::size_t i = 0; i < params.size(); ++i) {
    const ParamId id{i};
    const Matrix& value = params.value(id);
    out << "param " << params.name(id) << ' ' << value.rows() << ' '
        << value.cols() << '\n';
    for (Eigen::Index r = 0; r < value.rows(); ++r) {
      for (Eigen::Index c = 0; c < value.cols(); ++c) {
        if (c) out << ' ';
        out << format_double(value(r, c));
      }
      out << '\n';
    }
  }
  out << "end\n";
  if (!out) throw IoError("checkpoint: write failed");
}

Checkpoint load_checkpoint(std::istream& in, const std::string& source) {
  Checkpoint checkpoint;
  std::string line;
  std::size_t line_no = 0;
  auto next_line = [&]() -> bool {
    if (!std::getline(in, line)) return false;
    ++line_no;
    return true;
  };

  if (!next_line()) throw ParseError(source, 0, "empty checkpoint");
  {
    std::istringstream header(line);
    std::string magic;
    int version = 0;
    if (!(header >> magic >> version) || magic != "ncore-checkpoint") {
      throw ParseError(source, line_no, "missing 'ncore-checkpoint' header");
    }
    if (version != kCheckpointVersion) {
      throw ParseError(source, line_no,
                       "unsupported checkpoint version " + std::to_string(version));
    }
  }

  bool ended = false;
  while (next_line()) {
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::string tag;
    fields >> tag;
    if (tag == "end") {
      ended = true;
      break;
    }
    if (tag == "meta") {
      std::string key;
      fields >> key;
      std::string value;
      std::getline(fields, value);
      if (!value.empty() && value.front() == ' ') value.erase(0, 1);
      checkpoint.metadata[key] = value;
      continue;
    }
    if (tag != "param") {
      throw ParseError(source, line_no, "unexpected record '" + tag + "'");
    }
    std::string name;
    long long rows = -1;
    long long cols = -1;
    if (!(fields >> name >> rows >> cols) || rows < 0 || cols < 0) {
      throw ParseError(source, line_no, "malformed param header");
    }
    Matrix value(rows, cols);
    for (long long r = 0; r < rows; ++r) {
      if (!next_line()) throw ParseError(source, line_no, "truncated parameter '" + name + "'");
      const auto cells = split(trim(line), ' ');
      if (static_cast<long long>(cells.size()) != cols && cols > 0) {
        throw ParseError(source, line_no,
                         "expected " + std::to_string(cols) + " values");
      }
      for (long long c = 0; c < cols; ++c) {
        const auto parsed = parse_double(cells[static_cast<std::size_t>(c)]);
        if (!parsed) throw ParseError(source, line_no, "bad number");
        value(r, c) = *parsed;
      }
    }
    try {
      checkpoint.params.add(name, std::move(value));
    } catch (const ConfigError& e) {
      throw ParseError(source, line_no, e.what());
    }
  }
  if (!ended) throw ParseError(source, line_no, "missing 'end' record");
  return checkpoint;
}

}  // namespace ncore::diffcore
