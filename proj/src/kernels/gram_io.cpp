// Copyright 2026 the qksvm authors
// SPDX-License-Identifier: Apache-2.0
#include "qksvm/kernels/gram_io.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>
#include <iomanip>

#include "qksvm/util/digest.hpp"
#include "qksvm/util/errors.hpp"

namespace qksvm::kernels {

namespace {
constexpr char kMagic[4] = {'Q', 'K', 'M', '1'};
}

std::uint64_t gram_digest(const KernelSpec& spec, const std::string& row_id,
                          const std::string& col_id) {
  Digest d;
  d.update(spec.id()).update(row_id).update(col_id);
  return d.value();
}

void write_gram_csv(const std::string& path, const KernelMatrix& matrix) {
  std::ofstream out(path);
  require_data(out.good(), "cannot open " + path + " for writing");
  out << std::setprecision(17);
  out << "row_id";
  for (Eigen::Index j = 0; j < matrix.values.cols(); ++j) {
    out << ',' << matrix.col_id << ':' << j;
  }
  out << '\n';
  for (Eigen::Index i = 0; i < matrix.values.rows(); ++i) {
    out << matrix.row_id << ':' << i;
    for (Eigen::Index j = 0; j < matrix.values.cols(); ++j) {
      out << ',' << matrix.values(i, j);
    }
    out << '\n';
  }
  require_data(out.good(), "failed writing " + path);
}

void write_gram_cache(const std::string& path, const KernelMatrix& matrix) {
  std::ofstream out(path, std::ios::binary);
  require_data(out.good(), "cannot open " + path + " for writing");
  const std::uint64_t digest =
      gram_digest(matrix.spec, matrix.row_id, matrix.col_id);
  const std::uint64_t rows = static_cast<std::uint64_t>(matrix.values.rows());
  const std::uint64_t cols = static_cast<std::uint64_t>(matrix.values.cols());
  out.write(kMagic, sizeof kMagic);
  out.write(reinterpret_cast<const char*>(&digest), sizeof digest);
  out.write(reinterpret_cast<const char*>(&rows), sizeof rows);
  out.write(reinterpret_cast<const char*>(&cols), sizeof cols);
  for (Eigen::Index i = 0; i < matrix.values.rows(); ++i) {
    for (Eigen::Index j = 0; j < matrix.values.cols(); ++j) {
      const double v = matrix.values(i, j);
      out.write(reinterpret_cast<const char*>(&v), sizeof v);
    }
  }
  require_data(out.good(), "failed writing " + path);
}

std::optional<Eigen::MatrixXd> read_gram_cache(const std::string& path,
                                               std::uint64_t expected_digest) {
  std::ifstream in(path, std::ios::binary);
  if (!in.good()) return std::nullopt;
  char magic[4];
  std::uint64_t digest = 0, rows = 0, cols = 0;
  in.read(magic, sizeof magic);
  in.read(reinterpret_cast<char*>(&digest), sizeof digest);
  in.read(reinterpret_cast<char*>(&rows), sizeof rows);
  in.read(reinterpret_cast<char*>(&cols), sizeof cols);
  if (!in.good() || std::memcmp(magic, kMagic, sizeof kMagic) != 0 ||
      digest != expected_digest) {
    return std::nullopt;
  }
  Eigen::MatrixXd values(static_cast<Eigen::Index>(rows),
                         static_cast<Eigen::Index>(cols));
  for (Eigen::Index i = 0; i < values.rows(); ++i) {
    for (Eigen::Index j = 0; j < values.cols(); ++j) {
      double v;
      in.read(reinterpret_cast<char*>(&v), sizeof v);
      if (!in.good()) return std::nullopt;
      values(i, j) = v;
    }
  }
  return values;
}

}  // namespace qksvm::kernels
