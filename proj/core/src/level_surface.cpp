#include "xdiscord/level_surface.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>
#include <thread>
#include <unordered_map>

#include "xdiscord/correlations.hpp"

namespace xdiscord {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Cube corner c sits at offset (c & 1, (c >> 1) & 1, (c >> 2) & 1).
constexpr int corner_offset(int corner, int axis) { return (corner >> axis) & 1; }

struct LocalEdge {
  int from;  // corner with the lower coordinate along `axis`
  int to;
  int axis;
};

constexpr std::array<LocalEdge, 12> kEdges = {{
    {0, 1, 0}, {2, 3, 0}, {4, 5, 0}, {6, 7, 0},
    {0, 2, 1}, {1, 3, 1}, {4, 6, 1}, {5, 7, 1},
    {0, 4, 2}, {1, 5, 2}, {2, 6, 2}, {3, 7, 2},
}};

constexpr int edge_between(int a, int b) {
  for (int e = 0; e < 12; ++e) {
    if ((kEdges[e].from == a && kEdges[e].to == b) || (kEdges[e].from == b && kEdges[e].to == a)) {
      return e;
    }
  }
  return -1;
}

struct Face {
  int axis;
  int side;
  std::array<int, 4> corners;  // cyclic order around the face
  std::array<int, 4> edges;    // edges[k] joins corners[k] and corners[k + 1]
};

constexpr std::array<Face, 6> make_faces() {
  std::array<Face, 6> faces{};
  int f = 0;
  for (int axis = 0; axis < 3; ++axis) {
    const int u = (axis + 1) % 3;
    const int w = (axis + 2) % 3;
    for (int side = 0; side < 2; ++side) {
      Face face{axis, side, {}, {}};
      const int uw[4][2] = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
      for (int k = 0; k < 4; ++k) {
        face.corners[k] = (side << axis) | (uw[k][0] << u) | (uw[k][1] << w);
      }
      for (int k = 0; k < 4; ++k) {
        face.edges[k] = edge_between(face.corners[k], face.corners[(k + 1) % 4]);
      }
      faces[f++] = face;
    }
  }
  return faces;
}

constexpr auto kFaces = make_faces();

Point3 lerp(const Point3& a, const Point3& b, double t) {
  return {a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1]), a[2] + t * (b[2] - a[2])};
}

bool inside(double value, double level) { return value >= level; }

class MeshBuilder {
public:
  MeshBuilder(const ScalarField3& field, double level, double vertex_tol)
      : field_(field), level_(level), vertex_tol_(vertex_tol) {}

  TriangleMesh run() {
    const int n = field_.grid.n;
    for (int k = 0; k + 1 < n; ++k) {
      for (int j = 0; j + 1 < n; ++j) {
        for (int i = 0; i + 1 < n; ++i) {
          process_cell(i, j, k);
        }
      }
    }
    return std::move(mesh_);
  }

private:
  struct Cell {
    int i, j, k;
    std::array<double, 8> values;
    std::array<bool, 8> in;
  };

  std::array<int, 3> corner_index(const Cell& cell, int corner) const {
    return {cell.i + corner_offset(corner, 0), cell.j + corner_offset(corner, 1),
            cell.k + corner_offset(corner, 2)};
  }

  Point3 corner_point(const Cell& cell, int corner) const {
    const auto [a, b, c] = corner_index(cell, corner);
    return field_.point(a, b, c);
  }

  void process_cell(int i, int j, int k) {
    Cell cell{i, j, k, {}, {}};
    int physical = 0;
    for (int c = 0; c < 8; ++c) {
      const auto [a, b, d] = corner_index(cell, c);
      if (field_.physical(a, b, d)) ++physical;
      cell.values[c] = field_.value(a, b, d);
      cell.in[c] = inside(cell.values[c], level_);
    }
    if (physical != 8) {
      if (physical != 0) ++mesh_.boundary_cells;
      return;
    }
    const int inside_count = static_cast<int>(std::count(cell.in.begin(), cell.in.end(), true));
    if (inside_count == 0 || inside_count == 8) return;

    // Each crossed edge lies on two faces and picks up one segment from each,
    // so the segments form closed loops.
    std::array<std::array<int, 2>, 12> links;
    for (auto& l : links) l = {-1, -1};
    const auto link = [&](int e0, int e1) {
      (links[e0][0] < 0 ? links[e0][0] : links[e0][1]) = e1;
      (links[e1][0] < 0 ? links[e1][0] : links[e1][1]) = e0;
    };

    for (const Face& face : kFaces) {
      std::array<int, 4> crossed{};
      int count = 0;
      for (int q = 0; q < 4; ++q) {
        if (cell.in[face.corners[q]] != cell.in[face.corners[(q + 1) % 4]]) {
          crossed[count++] = q;
        }
      }
      if (count == 2) {
        link(face.edges[crossed[0]], face.edges[crossed[1]]);
      } else if (count == 4) {
        // Saddle face: cut off the corners that are not joined through the
        // face centre.
        const bool centre_in = face_centre_inside(cell, face);
        for (int q = 0; q < 4; ++q) {
          if (cell.in[face.corners[q]] != centre_in) {
            link(face.edges[(q + 3) % 4], face.edges[q]);
          }
        }
      }
    }

    std::array<bool, 12> visited{};
    for (int start = 0; start < 12; ++start) {
      if (visited[start] || links[start][0] < 0) continue;
      std::vector<int> loop;
      int prev = -1;
      int current = start;
      while (!visited[current]) {
        visited[current] = true;
        loop.push_back(current);
        const int next = links[current][0] != prev ? links[current][0] : links[current][1];
        prev = current;
        current = next;
      }
      emit_loop(cell, loop);
    }
  }

  bool face_centre_inside(const Cell& cell, const Face& face) const {
    const Point3 a = corner_point(cell, face.corners[0]);
    const Point3 b = corner_point(cell, face.corners[2]);
    const Point3 centre = lerp(a, b, 0.5);
    double value = kNaN;
    if (field_.evaluate) value = field_.evaluate(centre);
    if (std::isnan(value)) {
      value = 0.25 * (cell.values[face.corners[0]] + cell.values[face.corners[1]] +
                      cell.values[face.corners[2]] + cell.values[face.corners[3]]);
    }
    return inside(value, level_);
  }

  std::uint32_t vertex_on(const Cell& cell, int local_edge) {
    const LocalEdge& e = kEdges[local_edge];
    const auto [a, b, c] = corner_index(cell, e.from);
    const std::uint64_t key = static_cast<std::uint64_t>(field_.index(a, b, c)) * 3 + e.axis;
    if (const auto it = vertex_ids_.find(key); it != vertex_ids_.end()) return it->second;

    const Point3 p0 = corner_point(cell, e.from);
    const Point3 p1 = corner_point(cell, e.to);
    double g0 = cell.values[e.from] - level_;
    double g1 = cell.values[e.to] - level_;
    double lo = 0.0, hi = 1.0;
    if (field_.evaluate) {
      const double length = field_.grid.spacing();
      while ((hi - lo) * length > vertex_tol_) {
        const double mid = 0.5 * (lo + hi);
        const double gm = field_.evaluate(lerp(p0, p1, mid)) - level_;
        if ((gm >= 0.0) == (g0 >= 0.0)) {
          lo = mid;
          g0 = gm;
        } else {
          hi = mid;
          g1 = gm;
        }
      }
    }
    double t = 0.5 * (lo + hi);
    if (std::isfinite(g0) && std::isfinite(g1) && g0 != g1) {
      t = std::clamp(lo + (hi - lo) * g0 / (g0 - g1), lo, hi);
    }

    const auto id = static_cast<std::uint32_t>(mesh_.vertices.size());
    mesh_.vertices.push_back(lerp(p0, p1, t));
    vertex_ids_.emplace(key, id);
    return id;
  }

  void emit_loop(const Cell& cell, const std::vector<int>& loop) {
    std::vector<std::uint32_t> ids;
    ids.reserve(loop.size());
    for (int e : loop) ids.push_back(vertex_on(cell, e));

    // Wind each loop so its normal points down the field gradient, i.e. out
    // of the region where the measure exceeds the level.
    Point3 normal{0.0, 0.0, 0.0};
    for (std::size_t q = 0; q < ids.size(); ++q) {
      const Point3& a = mesh_.vertices[ids[q]];
      const Point3& b = mesh_.vertices[ids[(q + 1) % ids.size()]];
      normal[0] += (a[1] - b[1]) * (a[2] + b[2]);
      normal[1] += (a[2] - b[2]) * (a[0] + b[0]);
      normal[2] += (a[0] - b[0]) * (a[1] + b[1]);
    }
    Point3 gradient{0.0, 0.0, 0.0};
    for (int c = 0; c < 8; ++c) {
      for (int axis = 0; axis < 3; ++axis) {
        gradient[axis] += corner_offset(c, axis) ? cell.values[c] : -cell.values[c];
      }
    }
    const double alignment =
        normal[0] * gradient[0] + normal[1] * gradient[1] + normal[2] * gradient[2];
    if (alignment > 0.0) std::reverse(ids.begin() + 1, ids.end());

    for (std::size_t q = 1; q + 1 < ids.size(); ++q) {
      mesh_.triangles.push_back({ids[0], ids[q], ids[q + 1]});
    }
  }

  const ScalarField3& field_;
  double level_;
  double vertex_tol_;
  TriangleMesh mesh_;
  std::unordered_map<std::uint64_t, std::uint32_t> vertex_ids_;
};

}  // namespace

double GridSpec::coord(int i) const noexcept {
  const double half_span = 0.5 * (upper - lower);
  const double centre = 0.5 * (upper + lower);
  return centre + half_span * static_cast<double>(2 * i - (n - 1)) / static_cast<double>(n - 1);
}

void GridSpec::validate() const {
  if (n < 2) throw std::invalid_argument("grid needs at least 2 points per axis");
  if (!(lower < upper)) throw std::invalid_argument("grid bounds must satisfy lower < upper");
  if (!(std::abs(r) <= 1.0) || !(std::abs(s) <= 1.0)) {
    throw std::domain_error("grid Bloch components must lie in [-1, 1]");
  }
}

std::string_view to_string(Measure m) noexcept {
  switch (m) {
    case Measure::Discord: return "discord";
    case Measure::Concurrence: return "concurrence";
    case Measure::Classical: return "classical";
  }
  return "?";
}

Measure parse_measure(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
  if (lower == "discord") return Measure::Discord;
  if (lower == "concurrence") return Measure::Concurrence;
  if (lower == "classical") return Measure::Classical;
  throw std::invalid_argument("unknown measure '" + std::string(text) +
                              "' (expected discord, concurrence or classical)");
}

ScalarField3 sample_field(const GridSpec& spec, FieldFunction evaluate,
                          const std::function<bool(const Point3&)>& is_physical) {
  spec.validate();
  ScalarField3 field;
  field.grid = spec;
  const auto total = static_cast<std::size_t>(spec.n) * spec.n * spec.n;
  field.values.assign(total, kNaN);
  field.mask.assign(total, 0);
  field.evaluate = std::move(evaluate);
  const auto fill_slices = [&](int k_begin, int k_end) {
    for (int k = k_begin; k < k_end; ++k) {
      for (int j = 0; j < spec.n; ++j) {
        for (int i = 0; i < spec.n; ++i) {
          const Point3 pt = field.point(i, j, k);
          if (is_physical && !is_physical(pt)) continue;
          const auto idx = field.index(i, j, k);
          field.mask[idx] = 1;
          field.values[idx] = field.evaluate(pt);
        }
      }
    }
  };
  // Slices are disjoint, so the result does not depend on the thread count.
  const int workers =
      std::clamp(static_cast<int>(std::thread::hardware_concurrency()), 1, spec.n);
  const int per = (spec.n + workers - 1) / workers;
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) {
    const int begin = w * per;
    if (begin >= spec.n) break;
    pool.emplace_back(fill_slices, begin, std::min(spec.n, begin + per));
  }
  fill_slices(0, std::min(spec.n, per));
  for (auto& t : pool) t.join();
  return field;
}

ScalarField3 sample_field(const GridSpec& spec, Measure measure) {
  const double r = spec.r, s = spec.s;
  const auto state_at = [r, s](const Point3& c) {
    return XStateParams{.r = r, .s = s, .c1 = c[0], .c2 = c[1], .c3 = c[2]};
  };
  FieldFunction evaluate = [state_at, measure](const Point3& c) -> double {
    const XStateParams p = state_at(c);
    if (!validate_physical(p)) return kNaN;
    switch (measure) {
      case Measure::Discord: return quantum_discord(p);
      case Measure::Concurrence: return concurrence(p);
      case Measure::Classical: return classical_correlation(p);
    }
    return kNaN;
  };
  return sample_field(spec, std::move(evaluate),
                      [state_at](const Point3& c) { return validate_physical(state_at(c)); });
}

TriangleMesh extract_isosurface(const ScalarField3& field, double level, double vertex_tol) {
  if (!(vertex_tol > 0.0)) throw std::invalid_argument("vertex tolerance must be positive");
  if (field.grid.n < 2) throw std::invalid_argument("field grid is too small");
  return MeshBuilder(field, level, vertex_tol).run();
}

std::size_t count_components(const TriangleMesh& mesh) {
  std::vector<std::uint32_t> parent(mesh.vertices.size());
  std::iota(parent.begin(), parent.end(), 0u);
  const auto find = [&](std::uint32_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  for (const auto& t : mesh.triangles) {
    const auto a = find(t[0]);
    parent[find(t[1])] = a;
    parent[find(t[2])] = a;
  }
  std::vector<bool> seen(mesh.vertices.size(), false);
  std::size_t components = 0;
  for (const auto& t : mesh.triangles) {
    const auto root = find(t[0]);
    if (!seen[root]) {
      seen[root] = true;
      ++components;
    }
  }
  return components;
}

RegionMembership region_predicates(double c1, double c2, double c3) {
  RegionMembership out;
  out.in_tetrahedron = validate_physical(XStateParams{.c1 = c1, .c2 = c2, .c3 = c3});
  out.in_octahedron = std::abs(c1) + std::abs(c2) + std::abs(c3) <= 1.0 + kPhysicalTol;
  return out;
}

void write_obj(std::ostream& out, const TriangleMesh& mesh) {
  char line[128];
  out << "# xdiscord level surface: " << mesh.vertices.size() << " vertices, "
      << mesh.triangles.size() << " triangles\n";
  for (const auto& v : mesh.vertices) {
    std::snprintf(line, sizeof line, "v %.12g %.12g %.12g\n", v[0], v[1], v[2]);
    out << line;
  }
  for (const auto& t : mesh.triangles) {
    out << "f " << t[0] + 1 << ' ' << t[1] + 1 << ' ' << t[2] + 1 << '\n';
  }
}

void write_grid_csv(std::ostream& out, const ScalarField3& field) {
  char line[160];
  out << "c1,c2,c3,physical,value\n";
  const int n = field.grid.n;
  for (int k = 0; k < n; ++k) {
    for (int j = 0; j < n; ++j) {
      for (int i = 0; i < n; ++i) {
        const Point3 pt = field.point(i, j, k);
        const bool physical = field.physical(i, j, k);
        if (physical) {
          std::snprintf(line, sizeof line, "%.12g,%.12g,%.12g,1,%.12g\n", pt[0], pt[1], pt[2],
                        field.value(i, j, k));
        } else {
          std::snprintf(line, sizeof line, "%.12g,%.12g,%.12g,0,nan\n", pt[0], pt[1], pt[2]);
        }
        out << line;
      }
    }
  }
}

}  // namespace xdiscord
