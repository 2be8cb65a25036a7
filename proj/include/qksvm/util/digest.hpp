// Copyright 2026 the qksvm authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <cstring>
#include <string>
#include <vector>

namespace qksvm {

// FNV-1a 64-bit content digest for cache keys and output provenance. Not
// cryptographic; collisions only matter for accidental cache mixups.
class Digest {
 public:
  Digest& update_bytes(const void* data, std::size_t len) {
    auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < len; ++i) {
      h_ ^= p[i];
      h_ *= 0x100000001b3ULL;
    }
    return *this;
  }

  Digest& update(const std::string& s) { return update_bytes(s.data(), s.size()); }

  Digest& update(std::uint64_t v) { return update_bytes(&v, sizeof v); }

  Digest& update(std::int64_t v) { return update_bytes(&v, sizeof v); }

  Digest& update(double v) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, sizeof bits);
    return update(bits);
  }

  Digest& update(const std::vector<double>& v) {
    for (double x : v) update(x);
    return *this;
  }

  std::uint64_t value() const { return h_; }

  std::string hex() const {
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    std::uint64_t v = h_;
    for (int i = 15; i >= 0; --i) {
      out[i] = digits[v & 0xf];
      v >>= 4;
    }
    return out;
  }

 private:
  std::uint64_t h_ = 0xcbf29ce484222325ULL;
};

}  // namespace qksvm
