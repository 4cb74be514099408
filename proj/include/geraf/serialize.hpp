#pragma once

#include <iosfwd>
#include <string>

#include "geraf/forest.hpp"

namespace geraf {

/// Index file format, version 1. All integers little-endian.
///
///   "GERF"            4 bytes magic
///   u32 version       (= 1)
///   u32 n, u32 d      dataset shape the index was built for
///   u32 m, u32 t, u32 p
///   u32 flags         bit 0 rotation, bit 1 split perturbation, bit 2 shuffling
///   u64 seed          master seed
///   per tree (m times):
///     u8  has_transform
///     [d x f64]       reflection normal u, when has_transform = 1
///     u32 node_count
///     per node, in array (preorder) order:
///       u8 tag        0 = split, 1 = leaf
///       split: u32 dim, f32 value
///       leaf:  u32 count, [count x u32] point indices
///
/// Child links are not stored: the preorder walk with tagged leaves
/// reconstructs them. The dataset itself is never serialized.
inline constexpr char kIndexMagic[4] = {'G', 'E', 'R', 'F'};
inline constexpr std::uint32_t kIndexVersion = 1;

void save_forest(const Forest& forest, std::ostream& out);
void save_forest(const Forest& forest, const std::string& path);

/// Reads an index and re-attaches it to `data`, which must have the n and
/// d recorded in the header. The top-variance dimension set is recomputed
/// from the dataset and validated against the stored split dimensions, so
/// loading an index against the wrong dataset fails loudly.
///
/// The header does not carry search-time defaults: a loaded forest gets
/// max_leaf_checks = n (budget effectively uncapped) and epsilon = 0
/// until overridden per query.
Forest load_forest(std::istream& in, const Dataset& data);
Forest load_forest(const std::string& path, const Dataset& data);

} // namespace geraf
