#pragma once

// Matrix cache files: line-oriented text, `rows cols` header then
// `row col num/den` entries in row-major order.  Writes go through a
// temporary file and a rename so readers never see partial files.

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "hairycalc/linalg.hpp"

namespace hairycalc {

inline std::string matrix_to_text(const SparseMatrix& m) {
  std::ostringstream out;
  out << m.rows << ' ' << m.cols << '\n';
  for (const auto& [rc, v] : m.entries)
    out << rc.first << ' ' << rc.second << ' ' << numerator(v) << '/' << denominator(v) << '\n';
  return out.str();
}

inline SparseMatrix matrix_from_text(std::istream& in) {
  SparseMatrix m;
  if (!(in >> m.rows >> m.cols))
    throw std::invalid_argument("matrix cache: missing 'rows cols' header");
  if (m.rows < 0 || m.cols < 0)
    throw std::invalid_argument("matrix cache: negative dimensions");
  int r = 0, c = 0;
  std::string frac;
  while (in >> r >> c >> frac) {
    auto slash = frac.find('/');
    if (slash == std::string::npos)
      throw std::invalid_argument("matrix cache: entry is not of the form num/den");
    Rat v(Int(frac.substr(0, slash)), Int(frac.substr(slash + 1)));
    m.set(r, c, v);
  }
  if (!in.eof() && in.fail() && !in.bad()) {
    // trailing garbage after the last parsed entry
    in.clear();
    std::string rest;
    if (in >> rest) throw std::invalid_argument("matrix cache: malformed entry line");
  }
  return m;
}

inline void atomic_write(const std::filesystem::path& path, const std::string& content) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open for writing: " + tmp.string());
    out << content;
    if (!out.flush()) throw std::runtime_error("write failed: " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

inline void write_matrix_file(const std::filesystem::path& path, const SparseMatrix& m) {
  atomic_write(path, matrix_to_text(m));
}

inline SparseMatrix read_matrix_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open matrix cache file: " + path.string());
  return matrix_from_text(in);
}

}  // namespace hairycalc
