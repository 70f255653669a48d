// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace caplab {

/// Shape of a uniform grid; axis 2 has extent 1 for 2D grids.
/// Linear indices are row-major with the last axis fastest.
struct GridShape {
  int dim = 2;
  std::array<int, 3> n{1, 1, 1};

  long cell_count() const { return static_cast<long>(n[0]) * n[1] * n[2]; }
  long index(int i, int j, int k = 0) const {
    return (static_cast<long>(i) * n[1] + j) * n[2] + k;
  }
  bool in_bounds(int i, int j, int k = 0) const {
    return i >= 0 && i < n[0] && j >= 0 && j < n[1] && k >= 0 && k < n[2];
  }
  bool operator==(const GridShape&) const = default;
};

struct Measure {
  double volume = 0.0;    // active cell count * h^dim
  double perimeter = 0.0; // boundary face count * h^(dim-1), raw staircase value
};

/// A bounded open set discretized as active cells on a uniform grid.
///
/// Cells are h-cubes; a cell is inside the domain iff its center passes the
/// generator's membership test (no sub-cell boundary fitting). All generators
/// enforce a one-cell inactive margin so Dirichlet data is always imposable
/// on the discrete boundary.
class GridDomain {
 public:
  GridShape shape;
  double h = 0.0;
  std::array<double, 3> origin{0, 0, 0}; // corner of cell (0,0,0)
  std::vector<std::uint8_t> mask;        // 1 = active
  std::string label;

  int dim() const { return shape.dim; }
  long cell_count() const { return shape.cell_count(); }
  long active_count() const;
  bool active(int i, int j, int k = 0) const {
    return mask[shape.index(i, j, k)] != 0;
  }
  /// Physical coordinates of a cell center.
  std::array<double, 3> cell_center(int i, int j, int k = 0) const {
    return {origin[0] + (i + 0.5) * h, origin[1] + (j + 0.5) * h,
            shape.dim == 3 ? origin[2] + (k + 0.5) * h : 0.0};
  }
  /// Physical center of the grid bounding box. Generators place their
  /// reference point (ball center, box center) here.
  std::array<double, 3> grid_center() const {
    return {origin[0] + 0.5 * shape.n[0] * h, origin[1] + 0.5 * shape.n[1] * h,
            shape.dim == 3 ? origin[2] + 0.5 * shape.n[2] * h : 0.0};
  }

  /// Face-connectivity of the active set.
  bool connected() const;

  /// Stable identifier: label plus a content hash of (dim, shape, h, mask).
  std::string id() const;

  /// Throws std::invalid_argument when a domain invariant fails: no active
  /// cell, active cells touching the bounding box, or (when required)
  /// a disconnected active set.
  void validate(bool require_connected) const;
};

/// A subset of a parent grid, used as the excision set A. The mask may
/// reach outside the parent domain and may touch the discrete boundary;
/// both are allowed (excision handles A not contained in Omega).
class Region {
 public:
  GridShape parent_shape;
  std::vector<std::uint8_t> mask;
  std::string label;

  long active_count() const;
  bool covers(const Region& other) const; // cellwise superset
  std::string id() const;
};

// -- generators ------------------------------------------------------------

GridDomain make_box(int dim, const std::vector<double>& side_lengths, double h);
GridDomain make_ball(int dim, double radius, double h);
GridDomain make_ellipsoid(int dim, const std::vector<double>& semiaxes, double h);

/// Ball of radius R with a thin box spike of length `spike_len` and square
/// cross-section `spike_width` glued along the +x axis.
GridDomain spiked_ball(int dim, double radius, double spike_len,
                       double spike_width, double h);

/// Reproducible bumpy domain: a core ball plus a seed-determined union of
/// overlapping balls. Same seed gives a bit-identical mask.
GridDomain random_blob(std::uint64_t seed, int dim, double h);

/// Copy a domain into an enlarged grid with `pad_lo`/`pad_hi` extra cells per
/// axis; physical coordinates are preserved.
GridDomain embed(const GridDomain& d, const std::array<int, 3>& pad_lo,
                 const std::array<int, 3>& pad_hi);

// -- region builders --------------------------------------------------------

Region empty_region(const GridDomain& d);
Region full_region(const GridDomain& d); // all active cells of d
Region ball_region(const GridDomain& d, const std::array<double, 3>& center,
                   double radius);
/// Cells whose center distance from `center` lies in [r_in, r_out). The
/// center defaults to the grid center (the ball center for make_ball grids).
Region annulus_region(const GridDomain& d, double r_in, double r_out);
Region annulus_region(const GridDomain& d, const std::array<double, 3>& center,
                      double r_in, double r_out);
Region region_union(const Region& a, const Region& b);
Region region_intersect(const Region& a, const Region& b);
/// Region from an arbitrary mask (size checked against the parent grid).
Region region_from_mask(const GridDomain& d, std::vector<std::uint8_t> mask,
                        std::string label);

// -- operations --------------------------------------------------------------

/// Omega \ A: active cells of `domain` minus cells of `region`. The result
/// may be disconnected (reported by GridDomain::connected, not required).
/// Throws when the result has no active cells.
GridDomain excise(const GridDomain& domain, const Region& region);

/// Omega ∪ B(center, radius). The ball must fit in the bounding box with a
/// one-cell margin; the exception message reports the padding needed.
GridDomain union_ball(const GridDomain& domain,
                      const std::array<double, 3>& center, double radius);

/// Union of two domains on the same grid.
GridDomain domain_union(const GridDomain& a, const GridDomain& b);
/// Intersection of two domains on the same grid (throws if empty).
GridDomain domain_intersect(const GridDomain& a, const GridDomain& b);

Measure measure(const GridDomain& domain);

/// Staircase perimeter corrected for the digitization bias of smooth shapes:
/// the raw face-count estimator converges to the l1 perimeter, which for
/// isotropic boundaries overestimates by 4/pi in 2D and 3/2 in 3D. Used by
/// the Hall-deficit harness so both sides of a comparison carry the same
/// estimator.
double corrected_perimeter(const GridDomain& domain);

/// Volume of the unit ball in dimension 2 or 3.
double unit_ball_volume(int dim);

} // namespace caplab
