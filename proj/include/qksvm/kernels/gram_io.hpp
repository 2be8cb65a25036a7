// Copyright 2026 the qksvm authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>

#include "qksvm/kernels/gram.hpp"

namespace qksvm::kernels {

// Cache identity of a kernel matrix: spec id plus the dataset identities.
std::uint64_t gram_digest(const KernelSpec& spec, const std::string& row_id,
                          const std::string& col_id);

// CSV: header row of column ids, then one row per row id.
void write_gram_csv(const std::string& path, const KernelMatrix& matrix);

// Compact binary cache: magic "QKM1", the digest, dimensions, row-major
// 64-bit floats.
void write_gram_cache(const std::string& path, const KernelMatrix& matrix);

// Returns the cached values when the file exists and its digest matches.
std::optional<Eigen::MatrixXd> read_gram_cache(const std::string& path,
                                               std::uint64_t expected_digest);

}  // namespace qksvm::kernels
