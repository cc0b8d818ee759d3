#pragma once

#include <filesystem>

#include "anisolab/field.hpp"

namespace anisolab {

/// Binary grid-function file, all integers and reals little-endian:
///
///   bytes  0..7   magic "ANISOFLD"
///   u32           format version (1)
///   u32           N, number of axes
///   u32           q, direction split
///   u32           reserved, 0
///   N x i64       cells per axis
///   N x f64       lower corner
///   N x f64       upper corner
///   N x f64       spacing (redundant; checked on read)
///   M x f64       node values, M = prod(cells + 1), linear node order
///                 (last axis fastest)
void write_field(const std::filesystem::path& path, const ScalarField& u);
ScalarField read_field(const std::filesystem::path& path);

}  // namespace anisolab
