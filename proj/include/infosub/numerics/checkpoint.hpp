/*
 * Copyright 2026 The infosub Authors.
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

#pragma once

// Model checkpoints. Binary layout, all integers and floats little-endian:
//   magic "INFOSUBM" | u32 format version (1) | u32 hidden activation (0 relu, 1 tanh)
//   | u32 number of dims | u64 dims...
//   | per layer: weights row-major (f64), then biases (f64)
// The CSV form has a `# layer_dims=...` header line followed by
// `layer,kind,row,col,value` records.

#include <bit>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>

#include "infosub/numerics/mlp.hpp"

namespace infosub {

namespace detail {

static_assert(std::endian::native == std::endian::little, "checkpoint I/O assumes a little-endian host");

template <typename T>
void write_pod(std::ostream& os, T v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T read_pod(std::istream& is) {
  T v{};
  is.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!is) throw std::runtime_error("checkpoint: truncated file");
  return v;
}

inline constexpr char kCheckpointMagic[8] = {'I', 'N', 'F', 'O', 'S', 'U', 'B', 'M'};

}  // namespace detail

inline void write_checkpoint(std::ostream& os, const MlpModel& model) {
  os.write(detail::kCheckpointMagic, 8);
  detail::write_pod<std::uint32_t>(os, 1);
  detail::write_pod<std::uint32_t>(os, model.hidden_activation == Activation::relu ? 0 : 1);
  detail::write_pod<std::uint32_t>(os, static_cast<std::uint32_t>(model.layer_dims.size()));
  for (Index d : model.layer_dims) detail::write_pod<std::uint64_t>(os, static_cast<std::uint64_t>(d));
  for (std::size_t i = 0; i < model.num_layers(); ++i) {
    os.write(reinterpret_cast<const char*>(model.weights[i].data()),
             static_cast<std::streamsize>(sizeof(double) * model.weights[i].size()));
    os.write(reinterpret_cast<const char*>(model.biases[i].data()),
             static_cast<std::streamsize>(sizeof(double) * model.biases[i].size()));
  }
}

inline MlpModel read_checkpoint(std::istream& is) {
  char magic[8];
  is.read(magic, 8);
  if (!is || std::memcmp(magic, detail::kCheckpointMagic, 8) != 0) {
    throw std::runtime_error("checkpoint: bad magic");
  }
  if (detail::read_pod<std::uint32_t>(is) != 1) throw std::runtime_error("checkpoint: unsupported version");
  MlpModel m;
  m.hidden_activation = detail::read_pod<std::uint32_t>(is) == 0 ? Activation::relu : Activation::tanh;
  const auto ndims = detail::read_pod<std::uint32_t>(is);
  if (ndims < 2) throw std::runtime_error("checkpoint: fewer than two layer dims");
  for (std::uint32_t i = 0; i < ndims; ++i) {
    m.layer_dims.push_back(static_cast<Index>(detail::read_pod<std::uint64_t>(is)));
  }
  for (std::size_t i = 0; i + 1 < m.layer_dims.size(); ++i) {
    Matrix w(m.layer_dims[i], m.layer_dims[i + 1]);
    RowVector b(m.layer_dims[i + 1]);
    is.read(reinterpret_cast<char*>(w.data()), static_cast<std::streamsize>(sizeof(double) * w.size()));
    is.read(reinterpret_cast<char*>(b.data()), static_cast<std::streamsize>(sizeof(double) * b.size()));
    if (!is) throw std::runtime_error("checkpoint: truncated parameters");
    m.weights.push_back(std::move(w));
    m.biases.push_back(std::move(b));
  }
  return m;
}

inline void save_checkpoint(const std::filesystem::path& path, const MlpModel& model) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write checkpoint " + path.string());
  write_checkpoint(os, model);
}

inline MlpModel load_checkpoint(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot read checkpoint " + path.string());
  return read_checkpoint(is);
}

inline void write_checkpoint_csv(std::ostream& os, const MlpModel& model) {
  os << "# layer_dims=";
  for (std::size_t i = 0; i < model.layer_dims.size(); ++i) os << (i ? "," : "") << model.layer_dims[i];
  os << " activation=" << to_string(model.hidden_activation) << "\n";
  os << "layer,kind,row,col,value\n";
  os << std::setprecision(17);
  for (std::size_t l = 0; l < model.num_layers(); ++l) {
    for (Index r = 0; r < model.weights[l].rows(); ++r) {
      for (Index c = 0; c < model.weights[l].cols(); ++c) {
        os << l << ",w," << r << "," << c << "," << model.weights[l](r, c) << "\n";
      }
    }
    for (Index c = 0; c < model.biases[l].size(); ++c) os << l << ",b,0," << c << "," << model.biases[l](c) << "\n";
  }
}

}  // namespace infosub
