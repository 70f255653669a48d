// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <string>

#include <Eigen/Core>

#include "caplab/grid.hpp"

namespace caplab {

/// DMASK v1 — plain-text mask exchange format.
///
///   line 1: "DMASK 1"
///   line 2: "<dim> <h>"            (h in shortest round-trip decimal)
///   line 3: per-axis cell counts
///   then one block per grid slab (fixed axis-0 index; a single block in 2D),
///   each block a run of rows of '0'/'1' characters, last axis fastest,
///   blocks separated by one blank line.
///
/// write(read(f)) is byte-identical for files produced by this writer.
void write_dmask(std::ostream& os, const GridDomain& d);
void write_dmask(std::ostream& os, const Region& r, double h);

struct DmaskData {
  GridShape shape;
  double h = 0.0;
  std::vector<std::uint8_t> mask;
};
DmaskData read_dmask(std::istream& is);

/// Reads a DMASK file as a domain (origin at the grid default, label from
/// `label`); validation is the caller's choice.
GridDomain read_dmask_domain(std::istream& is, std::string label = "dmask");
Region read_dmask_region(std::istream& is, std::string label = "dmask");

/// Binary sidecar for cell-vector data (eigenfunctions, potentials):
///   line 1: "DVEC 1"
///   line 2: "<n_values> <n_vectors> <dmask reference>"
///   then n_vectors * n_values little-endian 64-bit floats, vector-major,
///   each vector listing active-cell values in row-major cell order.
void write_dvec(std::ostream& os, const Eigen::MatrixXd& vectors,
                const std::string& dmask_ref);
Eigen::MatrixXd read_dvec(std::istream& is, std::string* dmask_ref = nullptr);

/// Shortest decimal string that round-trips the double exactly.
std::string format_double(double v);

} // namespace caplab
