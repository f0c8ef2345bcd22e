#pragma once

// Binary field files.
//
// Layout (all integers little-endian unsigned 32-bit):
//   bytes 0..3   magic "ZYGF"
//   bytes 4..7   version      = 1
//   bytes 8..11  n            (points per axis)
//   bytes 12..15 dim          (1 or 2)
//   bytes 16..19 dtype        = 0 (complex128: re, im as IEEE-754 doubles)
//   bytes 20..   n^dim complex samples, row-major (first axis slowest),
//                little-endian.

#include <string>

#include "zygwave/grid.hpp"

namespace zyg {

void write_field(const std::string& path, const ScalarField& u);

// errors: unreadable file, bad magic/version/dtype, truncated payload.
ScalarField read_field(const std::string& path);

}  // namespace zyg
