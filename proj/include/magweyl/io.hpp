#pragma once

#include <filesystem>
#include <iosfwd>

#include "magweyl/grid.hpp"

namespace magweyl {

/// MWPS array: "MWPS", u32 rank, u32 dim0, u32 dim1, then little-endian re/im float64
/// pairs in row-major order. Rank-1 arrays store dim1 = 1.
void write_mwps(std::ostream& out, const Eigen::Ref<const Eigen::MatrixXcd>& values, int rank);
void write_mwps(const std::filesystem::path& path, const Eigen::Ref<const Eigen::MatrixXcd>& values, int rank);
inline void write_mwps(const std::filesystem::path& path, const GridFunction& f) { write_mwps(path, f.values, 1); }
inline void write_mwps(const std::filesystem::path& path, const PhaseSpaceFunction& f) {
  write_mwps(path, f.values, 2);
}

struct MwpsArray {
  int rank = 0;
  Eigen::MatrixXcd values;
};
MwpsArray read_mwps(std::istream& in);
MwpsArray read_mwps(const std::filesystem::path& path);

/// One row per node: i1.., y1.., re, im.
void write_csv(std::ostream& out, const GridFunction& f);
/// One row per (X, ξ) pair: ix1.., x1.., ik1.., xi1.., re, im.
void write_csv(std::ostream& out, const PhaseSpaceFunction& f);
void write_csv(const std::filesystem::path& path, const GridFunction& f);
void write_csv(const std::filesystem::path& path, const PhaseSpaceFunction& f);

}  // namespace magweyl
