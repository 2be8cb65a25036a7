// Copyright 2026 the qksvm authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace qksvm {

// Error taxonomy mirrors the CLI exit codes: config 2, data 3, numerical 4.
enum class ErrorKind { Config = 2, Data = 3, Numerical = 4 };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& msg)
      : std::runtime_error(msg), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

inline void require(bool cond, ErrorKind kind, const std::string& msg) {
  if (!cond) throw Error(kind, msg);
}

inline void require_config(bool cond, const std::string& msg) {
  require(cond, ErrorKind::Config, msg);
}

inline void require_data(bool cond, const std::string& msg) {
  require(cond, ErrorKind::Data, msg);
}

inline void require_numerical(bool cond, const std::string& msg) {
  require(cond, ErrorKind::Numerical, msg);
}

}  // namespace qksvm
