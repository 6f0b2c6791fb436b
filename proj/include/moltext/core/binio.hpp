//
// Project moltext - Copyright 2026 the moltext authors.
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

namespace moltext::core {

// Little-endian primitives for the binary file formats (MEMB/MSCR/MCKP).
// Byte order is explicit so the files are portable across hosts.

void write_u32(std::ostream& out, std::uint32_t v);
void write_u64(std::ostream& out, std::uint64_t v);
void write_f32(std::ostream& out, float v);
void write_f64(std::ostream& out, double v);
void write_magic(std::ostream& out, const char magic[4]);

std::uint32_t read_u32(std::istream& in);
std::uint64_t read_u64(std::istream& in);
float read_f32(std::istream& in);
double read_f64(std::istream& in);
void expect_magic(std::istream& in, const char magic[4], const std::string& what);

/// FNV-1a 64-bit hash of a byte string; used as the record key in the
/// embedding file format.
std::uint64_t fnv1a64(const std::string& text);

}  // namespace moltext::core
