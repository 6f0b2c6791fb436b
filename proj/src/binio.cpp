//
// Project moltext - Copyright 2026 the moltext authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "moltext/core/binio.hpp"

#include <bit>
#include <istream>
#include <ostream>

#include "moltext/core/error.hpp"

namespace moltext::core {

namespace {

void put_bytes(std::ostream& out, const unsigned char* bytes, std::size_t n) {
  out.write(reinterpret_cast<const char*>(bytes), static_cast<std::streamsize>(n));
  if (!out) throw DataError("binary write failed");
}

void get_bytes(std::istream& in, unsigned char* bytes, std::size_t n) {
  in.read(reinterpret_cast<char*>(bytes), static_cast<std::streamsize>(n));
  if (in.gcount() != static_cast<std::streamsize>(n)) {
    throw DataError("binary read failed: truncated input");
  }
}

}  // namespace

void write_u32(std::ostream& out, std::uint32_t v) {
  unsigned char b[4];
  for (int i = 0; i < 4; ++i) b[i] = static_cast<unsigned char>((v >> (8 * i)) & 0xFF);
  put_bytes(out, b, 4);
}

void write_u64(std::ostream& out, std::uint64_t v) {
  unsigned char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>((v >> (8 * i)) & 0xFF);
  put_bytes(out, b, 8);
}

void write_f32(std::ostream& out, float v) {
  write_u32(out, std::bit_cast<std::uint32_t>(v));
}

void write_f64(std::ostream& out, double v) {
  write_u64(out, std::bit_cast<std::uint64_t>(v));
}

void write_magic(std::ostream& out, const char magic[4]) {
  put_bytes(out, reinterpret_cast<const unsigned char*>(magic), 4);
}

std::uint32_t read_u32(std::istream& in) {
  unsigned char b[4];
  get_bytes(in, b, 4);
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(b[i]) << (8 * i);
  return v;
}

std::uint64_t read_u64(std::istream& in) {
  unsigned char b[8];
  get_bytes(in, b, 8);
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
  return v;
}

float read_f32(std::istream& in) {
  return std::bit_cast<float>(read_u32(in));
}

double read_f64(std::istream& in) {
  return std::bit_cast<double>(read_u64(in));
}

void expect_magic(std::istream& in, const char magic[4], const std::string& what) {
  unsigned char b[4];
  get_bytes(in, b, 4);
  for (int i = 0; i < 4; ++i) {
    if (b[i] != static_cast<unsigned char>(magic[i])) {
      throw DataError("bad magic bytes: not a " + what + " file");
    }
  }
}

std::uint64_t fnv1a64(const std::string& text) {
  std::uint64_t h = 0xCBF29CE484222325ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001B3ull;
  }
  return h;
}

}  // namespace moltext::core
