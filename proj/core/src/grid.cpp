// SPDX-License-Identifier: Apache-2.0
#include "caplab/grid.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <stdexcept>

namespace caplab {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::uint64_t fnv1a(const void* data, std::size_t len, std::uint64_t seed) {
  const auto* p = static_cast<const unsigned char*>(data);
  std::uint64_t hash = seed;
  for (std::size_t i = 0; i < len; ++i) {
    hash ^= p[i];
    hash *= 1099511628211ull;
  }
  return hash;
}

std::uint64_t mask_hash(int dim, const GridShape& shape, double h,
                        const std::vector<std::uint8_t>& mask) {
  std::uint64_t hv = 14695981039346656037ull;
  hv = fnv1a(&dim, sizeof dim, hv);
  hv = fnv1a(shape.n.data(), sizeof shape.n, hv);
  hv = fnv1a(&h, sizeof h, hv);
  hv = fnv1a(mask.data(), mask.size(), hv);
  return hv;
}

std::string hash_suffix(std::uint64_t hv) {
  char buf[20];
  std::snprintf(buf, sizeof buf, "#%016llx", static_cast<unsigned long long>(hv));
  return buf;
}

// Generic predicate-driven generator. `half_extent` is the physical
// half-extent of the bounding region per axis; the grid is sized so that one
// inactive margin cell surrounds the shape and the grid center sits at the
// physical origin of the predicate's coordinates.
GridDomain from_predicate(int dim, const std::array<double, 3>& half_extent,
                          double h,
                          const std::function<bool(double, double, double)>& inside,
                          std::string label) {
  GridDomain d;
  d.shape.dim = dim;
  d.h = h;
  for (int a = 0; a < 3; ++a) {
    if (a >= dim) {
      d.shape.n[a] = 1;
      d.origin[a] = 0.0;
      continue;
    }
    const int half_cells = static_cast<int>(std::ceil(half_extent[a] / h)) + 1;
    d.shape.n[a] = 2 * half_cells + 1; // odd count: one cell centered at 0
    d.origin[a] = -(half_cells + 0.5) * h;
  }
  d.mask.assign(d.shape.cell_count(), 0);
  for (int i = 0; i < d.shape.n[0]; ++i)
    for (int j = 0; j < d.shape.n[1]; ++j)
      for (int k = 0; k < d.shape.n[2]; ++k) {
        const auto c = d.cell_center(i, j, k);
        if (inside(c[0], c[1], c[2])) d.mask[d.shape.index(i, j, k)] = 1;
      }
  d.label = std::move(label);
  return d;
}

void check_same_grid(const GridShape& a, const GridShape& b, const char* op) {
  if (!(a == b))
    throw std::invalid_argument(std::string(op) + ": grids differ in shape");
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

} // namespace

long GridDomain::active_count() const {
  long n = 0;
  for (auto m : mask) n += m != 0;
  return n;
}

bool GridDomain::connected() const {
  const long total = active_count();
  if (total == 0) return false;
  std::vector<std::uint8_t> seen(mask.size(), 0);
  std::vector<long> stack;
  long start = 0;
  while (start < static_cast<long>(mask.size()) && !mask[start]) ++start;
  stack.push_back(start);
  seen[start] = 1;
  long visited = 0;
  const int n1 = shape.n[1], n2 = shape.n[2];
  while (!stack.empty()) {
    const long c = stack.back();
    stack.pop_back();
    ++visited;
    const int k = static_cast<int>(c % n2);
    const int j = static_cast<int>((c / n2) % n1);
    const int i = static_cast<int>(c / (static_cast<long>(n1) * n2));
    auto push = [&](int ii, int jj, int kk) {
      if (!shape.in_bounds(ii, jj, kk)) return;
      const long q = shape.index(ii, jj, kk);
      if (mask[q] && !seen[q]) {
        seen[q] = 1;
        stack.push_back(q);
      }
    };
    push(i - 1, j, k);
    push(i + 1, j, k);
    push(i, j - 1, k);
    push(i, j + 1, k);
    if (shape.dim == 3) {
      push(i, j, k - 1);
      push(i, j, k + 1);
    }
  }
  return visited == total;
}

std::string GridDomain::id() const {
  return label + hash_suffix(mask_hash(shape.dim, shape, h, mask));
}

void GridDomain::validate(bool require_connected) const {
  if (shape.dim != 2 && shape.dim != 3)
    throw std::invalid_argument("GridDomain: dim must be 2 or 3");
  if (h <= 0.0) throw std::invalid_argument("GridDomain: spacing h must be > 0");
  if (static_cast<long>(mask.size()) != shape.cell_count())
    throw std::invalid_argument("GridDomain: mask size does not match shape");
  if (active_count() == 0)
    throw std::invalid_argument("GridDomain: no active cell");
  // one-cell inactive margin
  for (int i = 0; i < shape.n[0]; ++i)
    for (int j = 0; j < shape.n[1]; ++j)
      for (int k = 0; k < shape.n[2]; ++k) {
        const bool edge = i == 0 || i == shape.n[0] - 1 || j == 0 ||
                          j == shape.n[1] - 1 ||
                          (shape.dim == 3 && (k == 0 || k == shape.n[2] - 1));
        if (edge && mask[shape.index(i, j, k)])
          throw std::invalid_argument(
              "GridDomain: active cell on the bounding-box edge (margin violated)");
      }
  if (require_connected && !connected())
    throw std::invalid_argument("GridDomain: active set is not face-connected");
}

long Region::active_count() const {
  long n = 0;
  for (auto m : mask) n += m != 0;
  return n;
}

bool Region::covers(const Region& other) const {
  if (!(parent_shape == other.parent_shape)) return false;
  for (std::size_t i = 0; i < mask.size(); ++i)
    if (other.mask[i] && !mask[i]) return false;
  return true;
}

std::string Region::id() const {
  return label + hash_suffix(mask_hash(parent_shape.dim, parent_shape, 0.0, mask));
}

GridDomain make_box(int dim, const std::vector<double>& side_lengths, double h) {
  if (dim != 2 && dim != 3) throw std::invalid_argument("make_box: dim must be 2 or 3");
  if (h <= 0.0) throw std::invalid_argument("make_box: h must be > 0");
  if (static_cast<int>(side_lengths.size()) != dim)
    throw std::invalid_argument("make_box: need one side length per axis");
  for (double s : side_lengths)
    if (!(s >= 4 * h))
      throw std::invalid_argument("make_box: side lengths must be >= 4h");

  // n_active = round(side/h) - 1 cells per axis reproduces the classical
  // N-point Dirichlet chain: for side=1, h=1/N the discrete eigenvalues are
  // exactly (2/h^2) sum_j (1 - cos(m_j pi h)).
  GridDomain d;
  d.shape.dim = dim;
  d.h = h;
  std::array<int, 3> n_active{1, 1, 1};
  for (int a = 0; a < dim; ++a) {
    n_active[a] = static_cast<int>(std::lround(side_lengths[a] / h)) - 1;
    d.shape.n[a] = n_active[a] + 2;
    d.origin[a] = -0.5 * h; // first active cell center at h, boundary at 0
  }
  if (dim == 2) d.shape.n[2] = 1;
  d.mask.assign(d.shape.cell_count(), 0);
  for (int i = 1; i <= n_active[0]; ++i)
    for (int j = 1; j <= n_active[1]; ++j)
      for (int k = (dim == 3 ? 1 : 0); k <= (dim == 3 ? n_active[2] : 0); ++k)
        d.mask[d.shape.index(i, j, k)] = 1;
  d.label = "box(" + fmt(side_lengths[0]) + "x" + fmt(side_lengths[1]) +
            (dim == 3 ? "x" + fmt(side_lengths[2]) : "") + ",h=" + fmt(h) + ")";
  d.validate(true);
  return d;
}

GridDomain make_ball(int dim, double radius, double h) {
  if (h <= 0.0) throw std::invalid_argument("make_ball: h must be > 0");
  if (!(radius >= 4 * h))
    throw std::invalid_argument("make_ball: radius must be >= 4h (too coarse)");
  const double r2 = radius * radius;
  auto d = from_predicate(
      dim, {radius, radius, radius}, h,
      [&](double x, double y, double z) { return x * x + y * y + z * z < r2; },
      "ball" + std::to_string(dim) + "d(r=" + fmt(radius) + ",h=" + fmt(h) + ")");
  d.validate(true);
  return d;
}

GridDomain make_ellipsoid(int dim, const std::vector<double>& semiaxes, double h) {
  if (static_cast<int>(semiaxes.size()) != dim)
    throw std::invalid_argument("make_ellipsoid: need one semiaxis per axis");
  for (double a : semiaxes)
    if (!(a >= 4 * h))
      throw std::invalid_argument("make_ellipsoid: semiaxes must be >= 4h");
  std::array<double, 3> ax{semiaxes[0], semiaxes[1], dim == 3 ? semiaxes[2] : 1.0};
  auto d = from_predicate(
      dim, {ax[0], ax[1], ax[2]}, h,
      [&](double x, double y, double z) {
        double s = (x / ax[0]) * (x / ax[0]) + (y / ax[1]) * (y / ax[1]);
        if (dim == 3) s += (z / ax[2]) * (z / ax[2]);
        return s < 1.0;
      },
      "ellipsoid(" + fmt(ax[0]) + "," + fmt(ax[1]) +
          (dim == 3 ? "," + fmt(ax[2]) : "") + ",h=" + fmt(h) + ")");
  d.validate(true);
  return d;
}

GridDomain spiked_ball(int dim, double radius, double spike_len,
                       double spike_width, double h) {
  if (!(radius >= 4 * h)) throw std::invalid_argument("spiked_ball: radius < 4h");
  if (!(spike_width >= 2 * h))
    throw std::invalid_argument("spiked_ball: spike_width < 2h is unresolvable");
  if (spike_len < 0) throw std::invalid_argument("spiked_ball: negative spike_len");
  const double r2 = radius * radius, hw = 0.5 * spike_width;
  auto d = from_predicate(
      dim, {radius + spike_len, radius, radius}, h,
      [&](double x, double y, double z) {
        if (x * x + y * y + z * z < r2) return true;
        return x >= 0.0 && x < radius + spike_len && std::abs(y) < hw &&
               (dim == 2 || std::abs(z) < hw);
      },
      "spiked_ball" + std::to_string(dim) + "d(r=" + fmt(radius) + ",len=" +
          fmt(spike_len) + ",w=" + fmt(spike_width) + ",h=" + fmt(h) + ")");
  d.validate(true);
  return d;
}

GridDomain random_blob(std::uint64_t seed, int dim, double h) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double core_r = 0.3;
  struct Bump {
    std::array<double, 3> c;
    double r;
  };
  std::vector<Bump> bumps;
  const int n_bumps = 4 + static_cast<int>(rng() % 5);
  for (int b = 0; b < n_bumps; ++b) {
    // rejection-sample a center inside radius 0.25 so every bump overlaps the core
    std::array<double, 3> c{0, 0, 0};
    for (;;) {
      double s = 0;
      for (int a = 0; a < dim; ++a) {
        c[a] = 0.5 - unit(rng);
        s += c[a] * c[a];
      }
      if (s <= 0.25 * 0.25) break;
    }
    bumps.push_back({c, 0.08 + 0.10 * unit(rng)});
  }
  const double ext = 0.25 + 0.18 + 2 * h;
  auto d = from_predicate(
      dim, {ext, ext, ext}, h,
      [&](double x, double y, double z) {
        if (x * x + y * y + z * z < core_r * core_r) return true;
        for (const auto& b : bumps) {
          const double dx = x - b.c[0], dy = y - b.c[1],
                       dz = dim == 3 ? z - b.c[2] : 0.0;
          if (dx * dx + dy * dy + dz * dz < b.r * b.r) return true;
        }
        return false;
      },
      "blob(seed=" + std::to_string(seed) + ",h=" + fmt(h) + ")");
  d.validate(true);
  return d;
}

GridDomain embed(const GridDomain& d, const std::array<int, 3>& pad_lo,
                 const std::array<int, 3>& pad_hi) {
  GridDomain out;
  out.shape.dim = d.shape.dim;
  out.h = d.h;
  for (int a = 0; a < 3; ++a) {
    const int lo = a < d.dim() ? pad_lo[a] : 0;
    const int hi = a < d.dim() ? pad_hi[a] : 0;
    out.shape.n[a] = d.shape.n[a] + lo + hi;
    out.origin[a] = d.origin[a] - lo * d.h;
  }
  out.mask.assign(out.shape.cell_count(), 0);
  for (int i = 0; i < d.shape.n[0]; ++i)
    for (int j = 0; j < d.shape.n[1]; ++j)
      for (int k = 0; k < d.shape.n[2]; ++k)
        if (d.mask[d.shape.index(i, j, k)])
          out.mask[out.shape.index(i + pad_lo[0], j + pad_lo[1],
                                   k + (d.dim() == 3 ? pad_lo[2] : 0))] = 1;
  out.label = d.label;
  return out;
}

Region empty_region(const GridDomain& d) {
  Region r;
  r.parent_shape = d.shape;
  r.mask.assign(d.shape.cell_count(), 0);
  r.label = "empty";
  return r;
}

Region full_region(const GridDomain& d) {
  Region r;
  r.parent_shape = d.shape;
  r.mask = d.mask;
  r.label = "all(" + d.label + ")";
  return r;
}

Region ball_region(const GridDomain& d, const std::array<double, 3>& center,
                   double radius) {
  Region r;
  r.parent_shape = d.shape;
  r.mask.assign(d.shape.cell_count(), 0);
  const double r2 = radius * radius;
  for (int i = 0; i < d.shape.n[0]; ++i)
    for (int j = 0; j < d.shape.n[1]; ++j)
      for (int k = 0; k < d.shape.n[2]; ++k) {
        const auto c = d.cell_center(i, j, k);
        const double dx = c[0] - center[0], dy = c[1] - center[1],
                     dz = d.dim() == 3 ? c[2] - center[2] : 0.0;
        if (dx * dx + dy * dy + dz * dz < r2) r.mask[d.shape.index(i, j, k)] = 1;
      }
  r.label = "ball_region(r=" + fmt(radius) + ")";
  return r;
}

Region annulus_region(const GridDomain& d, const std::array<double, 3>& center,
                      double r_in, double r_out) {
  if (!(0 <= r_in && r_in < r_out))
    throw std::invalid_argument("annulus_region: need 0 <= r_in < r_out");
  Region r;
  r.parent_shape = d.shape;
  r.mask.assign(d.shape.cell_count(), 0);
  for (int i = 0; i < d.shape.n[0]; ++i)
    for (int j = 0; j < d.shape.n[1]; ++j)
      for (int k = 0; k < d.shape.n[2]; ++k) {
        const auto c = d.cell_center(i, j, k);
        const double dx = c[0] - center[0], dy = c[1] - center[1],
                     dz = d.dim() == 3 ? c[2] - center[2] : 0.0;
        const double dist = std::sqrt(dx * dx + dy * dy + dz * dz);
        if (dist >= r_in && dist < r_out) r.mask[d.shape.index(i, j, k)] = 1;
      }
  r.label = "annulus(" + fmt(r_in) + "," + fmt(r_out) + ")";
  return r;
}

Region annulus_region(const GridDomain& d, double r_in, double r_out) {
  return annulus_region(d, d.grid_center(), r_in, r_out);
}

Region region_union(const Region& a, const Region& b) {
  check_same_grid(a.parent_shape, b.parent_shape, "region_union");
  Region r = a;
  for (std::size_t i = 0; i < r.mask.size(); ++i) r.mask[i] = a.mask[i] || b.mask[i];
  r.label = a.label + "|" + b.label;
  return r;
}

Region region_intersect(const Region& a, const Region& b) {
  check_same_grid(a.parent_shape, b.parent_shape, "region_intersect");
  Region r = a;
  for (std::size_t i = 0; i < r.mask.size(); ++i) r.mask[i] = a.mask[i] && b.mask[i];
  r.label = a.label + "&" + b.label;
  return r;
}

Region region_from_mask(const GridDomain& d, std::vector<std::uint8_t> mask,
                        std::string label) {
  if (static_cast<long>(mask.size()) != d.shape.cell_count())
    throw std::invalid_argument("region_from_mask: mask size mismatch");
  Region r;
  r.parent_shape = d.shape;
  r.mask = std::move(mask);
  r.label = std::move(label);
  return r;
}

GridDomain excise(const GridDomain& domain, const Region& region) {
  check_same_grid(domain.shape, region.parent_shape, "excise");
  GridDomain out = domain;
  for (std::size_t i = 0; i < out.mask.size(); ++i)
    out.mask[i] = domain.mask[i] && !region.mask[i];
  if (out.active_count() == 0)
    throw std::invalid_argument("excise: excision removes every active cell");
  out.label = domain.label + "\\" + region.label;
  return out;
}

GridDomain union_ball(const GridDomain& domain,
                      const std::array<double, 3>& center, double radius) {
  // the ball plus a one-cell margin must fit inside the bounding box
  std::array<int, 3> pad_needed{0, 0, 0};
  bool fits = true;
  for (int a = 0; a < domain.dim(); ++a) {
    const double lo = center[a] - radius, hi = center[a] + radius;
    const double grid_lo = domain.origin[a] + 1.5 * domain.h;
    const double grid_hi =
        domain.origin[a] + (domain.shape.n[a] - 1.5) * domain.h;
    if (lo < grid_lo - 1e-12) {
      pad_needed[a] = std::max(
          pad_needed[a], static_cast<int>(std::ceil((grid_lo - lo) / domain.h)));
      fits = false;
    }
    if (hi > grid_hi + 1e-12) {
      pad_needed[a] = std::max(
          pad_needed[a], static_cast<int>(std::ceil((hi - grid_hi) / domain.h)));
      fits = false;
    }
  }
  if (!fits)
    throw std::invalid_argument(
        "union_ball: ball exceeds the grid; pad by at least (" +
        std::to_string(pad_needed[0]) + "," + std::to_string(pad_needed[1]) +
        "," + std::to_string(pad_needed[2]) + ") cells per axis");
  GridDomain out = domain;
  const double r2 = radius * radius;
  for (int i = 0; i < out.shape.n[0]; ++i)
    for (int j = 0; j < out.shape.n[1]; ++j)
      for (int k = 0; k < out.shape.n[2]; ++k) {
        const auto c = out.cell_center(i, j, k);
        const double dx = c[0] - center[0], dy = c[1] - center[1],
                     dz = out.dim() == 3 ? c[2] - center[2] : 0.0;
        if (dx * dx + dy * dy + dz * dz < r2) out.mask[out.shape.index(i, j, k)] = 1;
      }
  out.label = domain.label + "+ball(r=" + fmt(radius) + ")";
  return out;
}

GridDomain domain_union(const GridDomain& a, const GridDomain& b) {
  check_same_grid(a.shape, b.shape, "domain_union");
  GridDomain out = a;
  for (std::size_t i = 0; i < out.mask.size(); ++i) out.mask[i] = a.mask[i] || b.mask[i];
  out.label = a.label + "|" + b.label;
  return out;
}

GridDomain domain_intersect(const GridDomain& a, const GridDomain& b) {
  check_same_grid(a.shape, b.shape, "domain_intersect");
  GridDomain out = a;
  for (std::size_t i = 0; i < out.mask.size(); ++i) out.mask[i] = a.mask[i] && b.mask[i];
  if (out.active_count() == 0)
    throw std::invalid_argument("domain_intersect: empty intersection");
  out.label = a.label + "&" + b.label;
  return out;
}

Measure measure(const GridDomain& d) {
  Measure m;
  long faces = 0;
  for (int i = 0; i < d.shape.n[0]; ++i)
    for (int j = 0; j < d.shape.n[1]; ++j)
      for (int k = 0; k < d.shape.n[2]; ++k) {
        if (!d.active(i, j, k)) continue;
        auto boundary_face = [&](int ii, int jj, int kk) {
          return !d.shape.in_bounds(ii, jj, kk) || !d.active(ii, jj, kk);
        };
        faces += boundary_face(i - 1, j, k) + boundary_face(i + 1, j, k) +
                 boundary_face(i, j - 1, k) + boundary_face(i, j + 1, k);
        if (d.dim() == 3)
          faces += boundary_face(i, j, k - 1) + boundary_face(i, j, k + 1);
      }
  m.volume = static_cast<double>(d.active_count()) * std::pow(d.h, d.dim());
  m.perimeter = static_cast<double>(faces) * std::pow(d.h, d.dim() - 1);
  return m;
}

double corrected_perimeter(const GridDomain& d) {
  const double raw = measure(d).perimeter;
  return d.dim() == 2 ? raw * (kPi / 4.0) : raw * (2.0 / 3.0);
}

double unit_ball_volume(int dim) {
  if (dim == 2) return kPi;
  if (dim == 3) return 4.0 * kPi / 3.0;
  throw std::invalid_argument("unit_ball_volume: dim must be 2 or 3");
}

} // namespace caplab
