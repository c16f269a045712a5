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

#include "lts/io.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace lts {

std::string format_float(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

std::string csv_row(const std::vector<std::string> &cells) {
  std::string row;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i)
      row += ',';
    row += cells[i];
  }
  row += '\n';
  return row;
}

void write_file_atomic(const std::filesystem::path &path,
                       const std::string &content) {
  if (path.has_parent_path())
    std::filesystem::create_directories(path.parent_path());
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out)
      throw std::runtime_error("cannot open " + tmp.string());
    out << content;
    if (!out.flush())
      throw std::runtime_error("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

nlohmann::json matrix_to_json(const Matrix &m) {
  nlohmann::json entries = nlohmann::json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      entries.push_back({m(r, c).real(), m(r, c).imag()});
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", entries}};
}

Matrix matrix_from_json(const nlohmann::json &j) {
  const auto rows = j.at("rows").get<Eigen::Index>();
  const auto cols = j.at("cols").get<Eigen::Index>();
  const auto &data = j.at("data");
  if (rows < 0 || cols < 0 ||
      data.size() != static_cast<std::size_t>(rows * cols))
    throw std::invalid_argument("matrix payload does not match its shape");
  Matrix m(rows, cols);
  std::size_t idx = 0;
  for (Eigen::Index r = 0; r < rows; ++r)
    for (Eigen::Index c = 0; c < cols; ++c, ++idx) {
      const auto &pair = data[idx];
      if (!pair.is_array() || pair.size() != 2)
        throw std::invalid_argument("matrix entries must be [re, im] pairs");
      m(r, c) = Complex(pair[0].get<double>(), pair[1].get<double>());
    }
  return m;
}

nlohmann::json real_vector_to_json(const RealVector &v) {
  nlohmann::json out = nlohmann::json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i)
    out.push_back(v(i));
  return out;
}

RealVector real_vector_from_json(const nlohmann::json &j) {
  if (!j.is_array())
    throw std::invalid_argument("expected an array of reals");
  RealVector v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i)
    v(static_cast<Eigen::Index>(i)) = j[i].get<double>();
  return v;
}

std::uint64_t fnv1a(const std::string &data) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string fnv1a_hex(const std::string &data) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(fnv1a(data)));
  return buf;
}

} // namespace lts
