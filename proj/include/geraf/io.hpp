#pragma once

#include <string>

#include "geraf/dataset.hpp"

namespace geraf {

/// Reads an fvecs file: repeated [i32 dim][dim x f32], little-endian.
/// Every record must have the same dimension and the file size must be a
/// whole number of records; violations raise FormatError with the byte
/// offset. An empty file yields an empty Dataset.
Dataset load_fvecs(const std::string& path);

/// Reads a bvecs file: repeated [i32 dim][dim x u8], bytes widened to float.
Dataset load_bvecs(const std::string& path);

void save_fvecs(const std::string& path, const Dataset& data);

/// Writes bvecs; every coordinate must be an integer in [0, 255].
void save_bvecs(const std::string& path, const Dataset& data);

} // namespace geraf
