#pragma once

// Level surfaces of correlation measures over the (c1, c2, c3) cube at fixed
// Bloch components (r, s), and the Bell-diagonal region predicates.

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string_view>
#include <vector>

#include "xdiscord/state.hpp"

namespace xdiscord {

using Point3 = std::array<double, 3>;

struct GridSpec {
  int n = 32;  // points per axis
  double r = 0.0;
  double s = 0.0;
  double lower = -1.0;
  double upper = 1.0;

  /// Coordinate of grid index i. Symmetric grids (lower == -upper) satisfy
  /// coord(n-1-i) == -coord(i) exactly.
  double coord(int i) const noexcept;
  double spacing() const noexcept { return (upper - lower) / (n - 1); }
  void validate() const;
};

enum class Measure { Discord, Concurrence, Classical };

std::string_view to_string(Measure m) noexcept;
Measure parse_measure(std::string_view text);

/// Pointwise evaluator used both for grid sampling and for refining mesh
/// vertices along cell edges.
using FieldFunction = std::function<double(const Point3&)>;

struct ScalarField3 {
  GridSpec grid;
  /// n^3 values, index i + n*(j + n*k) for (c1, c2, c3) = (coord i, j, k).
  /// Masked points hold NaN.
  std::vector<double> values;
  std::vector<std::uint8_t> mask;  // 1 = physical
  FieldFunction evaluate;

  std::size_t index(int i, int j, int k) const noexcept {
    const auto n = static_cast<std::size_t>(grid.n);
    return static_cast<std::size_t>(i) + n * (static_cast<std::size_t>(j) + n * static_cast<std::size_t>(k));
  }
  Point3 point(int i, int j, int k) const noexcept {
    return {grid.coord(i), grid.coord(j), grid.coord(k)};
  }
  bool physical(int i, int j, int k) const noexcept { return mask[index(i, j, k)] != 0; }
  double value(int i, int j, int k) const noexcept { return values[index(i, j, k)]; }
};

/// Correlation measure of the state (spec.r, spec.s, c1, c2, c3), masked by
/// validate_physical.
ScalarField3 sample_field(const GridSpec& spec, Measure measure);

/// Generic sampler. An empty `is_physical` leaves every point unmasked. Both
/// callables are invoked concurrently from several threads.
ScalarField3 sample_field(const GridSpec& spec, FieldFunction evaluate,
                          const std::function<bool(const Point3&)>& is_physical = {});

struct TriangleMesh {
  std::vector<Point3> vertices;
  std::vector<std::array<std::uint32_t, 3>> triangles;
  /// Cells with both physical and nonphysical corners; skipped by meshing.
  std::size_t boundary_cells = 0;

  bool empty() const noexcept { return triangles.empty(); }
};

inline constexpr double kVertexTolerance = 1e-4;

/// Marching cubes over cells whose eight corners are all physical. Each
/// vertex sits on a cell edge and is refined by bisection of
/// (evaluate - level) until the bracket is at most `vertex_tol` long. Faces
/// with two diagonal inside corners are resolved by the field value at the
/// face centre, which keeps neighbouring cells consistent. Vertices are
/// shared through their grid-edge key.
TriangleMesh extract_isosurface(const ScalarField3& field, double level,
                                double vertex_tol = kVertexTolerance);

/// Number of edge-connected triangle components.
std::size_t count_components(const TriangleMesh& mesh);

struct RegionMembership {
  bool in_tetrahedron = false;
  bool in_octahedron = false;
};

/// Tetrahedron: (0, 0, c1, c2, c3) is a state. Octahedron: |c1|+|c2|+|c3| ≤ 1.
RegionMembership region_predicates(double c1, double c2, double c3);

/// ASCII Wavefront OBJ, 1-based face indices.
void write_obj(std::ostream& out, const TriangleMesh& mesh);

/// Columns c1,c2,c3,physical,value; masked values are written as "nan".
void write_grid_csv(std::ostream& out, const ScalarField3& field);

}  // namespace xdiscord
