// Copyright 2026 The lts authors
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

#ifndef LTS_IO_HPP
#define LTS_IO_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

#include "lts/spectral.hpp"

namespace lts {

/// Shortest round-trippable decimal form (17 significant digits).
std::string format_float(double value);

/// One CSV line from already-formatted cells.
std::string csv_row(const std::vector<std::string> &cells);

/// Write content to path atomically (temp file + rename).
void write_file_atomic(const std::filesystem::path &path,
                       const std::string &content);

/// Complex matrix as a row-major array of [re, im] pairs plus shape.
nlohmann::json matrix_to_json(const Matrix &m);
Matrix matrix_from_json(const nlohmann::json &j);

nlohmann::json real_vector_to_json(const RealVector &v);
RealVector real_vector_from_json(const nlohmann::json &j);

/// FNV-1a 64-bit hash, hex-encoded; used for input manifests.
std::uint64_t fnv1a(const std::string &data);
std::string fnv1a_hex(const std::string &data);

} // namespace lts

#endif
