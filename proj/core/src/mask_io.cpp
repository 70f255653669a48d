// SPDX-License-Identifier: Apache-2.0
#include "caplab/mask_io.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace caplab {

namespace {

void write_mask_body(std::ostream& os, const GridShape& shape,
                     const std::vector<std::uint8_t>& mask) {
  for (int i = 0; i < shape.n[0]; ++i) {
    if (i > 0) os << '\n';
    for (int j = 0; j < shape.n[1]; ++j) {
      for (int k = 0; k < shape.n[2]; ++k)
        os << (mask[shape.index(i, j, k)] ? '1' : '0');
      os << '\n';
    }
  }
}

void write_header(std::ostream& os, const GridShape& shape, double h) {
  os << "DMASK 1\n" << shape.dim << ' ' << format_double(h) << '\n';
  os << shape.n[0] << ' ' << shape.n[1];
  if (shape.dim == 3) os << ' ' << shape.n[2];
  os << '\n';
}

std::string next_line(std::istream& is, const char* what) {
  std::string line;
  if (!std::getline(is, line))
    throw std::runtime_error(std::string("DMASK: unexpected end of file reading ") + what);
  return line;
}

} // namespace

std::string format_double(double v) {
  char buf[40];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void write_dmask(std::ostream& os, const GridDomain& d) {
  write_header(os, d.shape, d.h);
  write_mask_body(os, d.shape, d.mask);
}

void write_dmask(std::ostream& os, const Region& r, double h) {
  write_header(os, r.parent_shape, h);
  write_mask_body(os, r.parent_shape, r.mask);
}

DmaskData read_dmask(std::istream& is) {
  if (next_line(is, "magic") != "DMASK 1")
    throw std::runtime_error("DMASK: bad magic line (expected \"DMASK 1\")");
  DmaskData out;
  {
    std::istringstream hs(next_line(is, "dim/h"));
    std::string htok;
    if (!(hs >> out.shape.dim >> htok))
      throw std::runtime_error("DMASK: malformed dim/h line");
    auto res = std::from_chars(htok.data(), htok.data() + htok.size(), out.h);
    if (res.ec != std::errc{})
      throw std::runtime_error("DMASK: cannot parse h");
  }
  if (out.shape.dim != 2 && out.shape.dim != 3)
    throw std::runtime_error("DMASK: dim must be 2 or 3");
  {
    std::istringstream cs(next_line(is, "counts"));
    cs >> out.shape.n[0] >> out.shape.n[1];
    if (out.shape.dim == 3)
      cs >> out.shape.n[2];
    else
      out.shape.n[2] = 1;
    if (!cs || out.shape.n[0] <= 0 || out.shape.n[1] <= 0 || out.shape.n[2] <= 0)
      throw std::runtime_error("DMASK: malformed counts line");
  }
  out.mask.assign(out.shape.cell_count(), 0);
  for (int i = 0; i < out.shape.n[0]; ++i) {
    if (i > 0) {
      const std::string blank = next_line(is, "block separator");
      if (!blank.empty())
        throw std::runtime_error("DMASK: expected blank line between blocks");
    }
    for (int j = 0; j < out.shape.n[1]; ++j) {
      const std::string row = next_line(is, "mask row");
      if (static_cast<int>(row.size()) != out.shape.n[2])
        throw std::runtime_error("DMASK: row length does not match counts");
      for (int k = 0; k < out.shape.n[2]; ++k) {
        if (row[k] != '0' && row[k] != '1')
          throw std::runtime_error("DMASK: mask characters must be 0 or 1");
        out.mask[out.shape.index(i, j, k)] = row[k] == '1';
      }
    }
  }
  return out;
}

GridDomain read_dmask_domain(std::istream& is, std::string label) {
  DmaskData data = read_dmask(is);
  GridDomain d;
  d.shape = data.shape;
  d.h = data.h;
  d.mask = std::move(data.mask);
  d.origin = {0, 0, 0};
  d.label = std::move(label);
  return d;
}

Region read_dmask_region(std::istream& is, std::string label) {
  DmaskData data = read_dmask(is);
  Region r;
  r.parent_shape = data.shape;
  r.mask = std::move(data.mask);
  r.label = std::move(label);
  return r;
}

void write_dvec(std::ostream& os, const Eigen::MatrixXd& vectors,
                const std::string& dmask_ref) {
  os << "DVEC 1\n"
     << vectors.rows() << ' ' << vectors.cols() << ' ' << dmask_ref << '\n';
  for (Eigen::Index j = 0; j < vectors.cols(); ++j)
    for (Eigen::Index i = 0; i < vectors.rows(); ++i) {
      const double v = vectors(i, j);
      os.write(reinterpret_cast<const char*>(&v), sizeof v);
    }
}

Eigen::MatrixXd read_dvec(std::istream& is, std::string* dmask_ref) {
  if (next_line(is, "magic") != "DVEC 1")
    throw std::runtime_error("DVEC: bad magic line");
  long n_values = 0, n_vectors = 0;
  std::string ref;
  {
    std::istringstream hs(next_line(is, "header"));
    if (!(hs >> n_values >> n_vectors))
      throw std::runtime_error("DVEC: malformed header");
    std::getline(hs, ref);
    if (!ref.empty() && ref.front() == ' ') ref.erase(0, 1);
  }
  if (dmask_ref) *dmask_ref = ref;
  Eigen::MatrixXd out(n_values, n_vectors);
  for (long j = 0; j < n_vectors; ++j)
    for (long i = 0; i < n_values; ++i) {
      double v = 0;
      if (!is.read(reinterpret_cast<char*>(&v), sizeof v))
        throw std::runtime_error("DVEC: truncated payload");
      out(i, j) = v;
    }
  return out;
}

} // namespace caplab
