#include "magweyl/io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <iomanip>

namespace magweyl {

namespace {

static_assert(std::endian::native == std::endian::little, "MWPS I/O assumes a little-endian host");

template <typename T>
void put(std::ostream& out, T v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T get(std::istream& in) {
  T v{};
  in.read(reinterpret_cast<char*>(&v), sizeof(T));
  require(static_cast<bool>(in), Errc::io_failure, "truncated MWPS stream");
  return v;
}

std::ofstream open_out(const std::filesystem::path& path, std::ios::openmode mode = std::ios::out) {
  std::ofstream out(path, mode);
  require(static_cast<bool>(out), Errc::io_failure, "cannot write " + path.string());
  return out;
}

void node_columns(std::ostream& out, const GridSpec& g, std::int64_t flat, bool dual) {
  const auto idx = g.unravel(flat);
  for (int a = 0; a < g.dim(); ++a) out << idx[a] << ',';
  for (int a = 0; a < g.dim(); ++a) out << (dual ? g.dual_coordinate(a, idx[a]) : g.coordinate(a, idx[a])) << ',';
}

void header(std::ostream& out, const char* index, const char* coord, int dim) {
  for (int a = 0; a < dim; ++a) out << index << a + 1 << ',';
  for (int a = 0; a < dim; ++a) out << coord << a + 1 << ',';
}

}  // namespace

void write_mwps(std::ostream& out, const Eigen::Ref<const Eigen::MatrixXcd>& values, int rank) {
  require(rank == 1 || rank == 2, Errc::dimension_mismatch, "MWPS rank must be 1 or 2");
  require(rank == 2 || values.cols() == 1, Errc::dimension_mismatch, "rank-1 MWPS array must be a column");
  out.write("MWPS", 4);
  put<std::uint32_t>(out, static_cast<std::uint32_t>(rank));
  put<std::uint32_t>(out, static_cast<std::uint32_t>(values.rows()));
  put<std::uint32_t>(out, static_cast<std::uint32_t>(values.cols()));
  for (Eigen::Index r = 0; r < values.rows(); ++r)
    for (Eigen::Index c = 0; c < values.cols(); ++c) {
      put<double>(out, values(r, c).real());
      put<double>(out, values(r, c).imag());
    }
  require(static_cast<bool>(out), Errc::io_failure, "MWPS write failed");
}

void write_mwps(const std::filesystem::path& path, const Eigen::Ref<const Eigen::MatrixXcd>& values, int rank) {
  auto out = open_out(path, std::ios::out | std::ios::binary);
  write_mwps(out, values, rank);
}

MwpsArray read_mwps(std::istream& in) {
  char magic[4];
  in.read(magic, 4);
  require(in && std::memcmp(magic, "MWPS", 4) == 0, Errc::io_failure, "missing MWPS magic");
  MwpsArray a;
  a.rank = static_cast<int>(get<std::uint32_t>(in));
  require(a.rank == 1 || a.rank == 2, Errc::io_failure, "unsupported MWPS rank");
  const auto rows = get<std::uint32_t>(in);
  const auto cols = get<std::uint32_t>(in);
  a.values.resize(rows, cols);
  for (std::uint32_t r = 0; r < rows; ++r)
    for (std::uint32_t c = 0; c < cols; ++c) {
      const double re = get<double>(in);
      a.values(r, c) = cd(re, get<double>(in));
    }
  return a;
}

MwpsArray read_mwps(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  require(static_cast<bool>(in), Errc::io_failure, "cannot open " + path.string());
  return read_mwps(in);
}

void write_csv(std::ostream& out, const GridFunction& f) {
  const GridSpec& g = f.grid;
  out << std::setprecision(17);
  header(out, "i", "y", g.dim());
  out << "re,im\n";
  for (std::int64_t k = 0; k < g.size(); ++k) {
    node_columns(out, g, k, false);
    out << f.values(k).real() << ',' << f.values(k).imag() << '\n';
  }
}

void write_csv(std::ostream& out, const PhaseSpaceFunction& f) {
  const int n = f.position.dim();
  out << std::setprecision(17);
  header(out, "ix", "x", n);
  header(out, "ik", "xi", n);
  out << "re,im\n";
  for (Eigen::Index r = 0; r < f.values.rows(); ++r)
    for (Eigen::Index c = 0; c < f.values.cols(); ++c) {
      node_columns(out, f.position, r, false);
      node_columns(out, f.fourier, c, true);
      out << f.values(r, c).real() << ',' << f.values(r, c).imag() << '\n';
    }
}

void write_csv(const std::filesystem::path& path, const GridFunction& f) {
  auto out = open_out(path);
  write_csv(out, f);
}

void write_csv(const std::filesystem::path& path, const PhaseSpaceFunction& f) {
  auto out = open_out(path);
  write_csv(out, f);
}

}  // namespace magweyl
