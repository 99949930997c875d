#include <cmath>
#include <map>
#include <sstream>

#include <gtest/gtest.h>

#include "reference.hpp"
#include "xdiscord/correlations.hpp"
#include "xdiscord/level_surface.hpp"

namespace xdiscord {
namespace {

TEST(GridSpec, SymmetricCoordinates) {
  for (int n : {2, 9, 32, 33}) {
    const GridSpec g{.n = n};
    EXPECT_EQ(g.coord(0), -1.0);
    EXPECT_EQ(g.coord(n - 1), 1.0);
    for (int i = 0; i < n; ++i) EXPECT_EQ(g.coord(n - 1 - i), -g.coord(i));
  }
  EXPECT_THROW((GridSpec{.n = 1}.validate()), std::invalid_argument);
  EXPECT_THROW((GridSpec{.n = 8, .r = 1.5}.validate()), std::domain_error);
}

TEST(SampleField, CornersAndSpecialPoints) {
  const auto corners = sample_field(GridSpec{.n = 2}, Measure::Discord);
  EXPECT_FALSE(corners.physical(1, 1, 1));         // (1, 1, 1)
  EXPECT_TRUE(std::isnan(corners.value(1, 1, 1)));
  EXPECT_TRUE(corners.physical(1, 0, 1));          // (1, -1, 1): Bell state
  EXPECT_NEAR(corners.value(1, 0, 1), 1.0, 1e-14);

  const auto centre = sample_field(GridSpec{.n = 9, .r = 0.3, .s = 0.3}, Measure::Discord);
  EXPECT_NEAR(centre.value(4, 4, 4), 0.0, 1e-14);  // product state at c = 0
}

TEST(SampleField, MaskMatchesValidatePhysical) {
  const GridSpec g{.n = 12, .r = 0.5, .s = 0.5};
  const auto field = sample_field(g, Measure::Concurrence);
  for (int k = 0; k < g.n; ++k)
    for (int j = 0; j < g.n; ++j)
      for (int i = 0; i < g.n; ++i) {
        const bool expected = validate_physical({0.5, 0.5, g.coord(i), g.coord(j), g.coord(k)});
        ASSERT_EQ(field.physical(i, j, k), expected);
        ASSERT_EQ(std::isnan(field.value(i, j, k)), !expected);
      }
}

TEST(SampleField, BellDiagonalDiscordSymmetricUnderPairedFlips) {
  const int n = 17;
  const auto field = sample_field(GridSpec{.n = n}, Measure::Discord);
  const auto flip = [n](int i) { return n - 1 - i; };
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) {
        if (!field.physical(i, j, k)) continue;
        const double v = field.value(i, j, k);
        ASSERT_TRUE(field.physical(flip(i), flip(j), k));
        ASSERT_NEAR(field.value(flip(i), flip(j), k), v, 1e-10);
        ASSERT_NEAR(field.value(flip(i), j, flip(k)), v, 1e-10);
        ASSERT_NEAR(field.value(i, flip(j), flip(k)), v, 1e-10);
      }
}

TEST(ExtractIsosurface, SyntheticSphere) {
  const GridSpec g{.n = 32};
  const auto field = sample_field(g, [](const Point3& c) {
    return c[0] * c[0] + c[1] * c[1] + c[2] * c[2];
  });
  const auto mesh = extract_isosurface(field, 0.25);
  ASSERT_FALSE(mesh.empty());
  EXPECT_EQ(mesh.boundary_cells, 0u);
  EXPECT_EQ(count_components(mesh), 1u);
  for (const auto& v : mesh.vertices) {
    const double radius = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
    EXPECT_NEAR(radius, 0.5, 2.0 * g.spacing());
    EXPECT_NEAR(radius, 0.5, 1e-4);  // vertices are refined on the edges
  }
  for (const auto& t : mesh.triangles) {
    for (auto idx : t) ASSERT_LT(idx, mesh.vertices.size());
  }
}

TEST(ExtractIsosurface, SphereIsWatertight) {
  const auto field = sample_field(GridSpec{.n = 20}, [](const Point3& c) {
    return c[0] * c[0] + c[1] * c[1] + c[2] * c[2];
  });
  const auto mesh = extract_isosurface(field, 0.3);
  // Every undirected edge is shared by exactly two triangles.
  std::map<std::pair<std::uint32_t, std::uint32_t>, int> edge_use;
  for (const auto& t : mesh.triangles) {
    for (int e = 0; e < 3; ++e) {
      auto a = t[e], b = t[(e + 1) % 3];
      if (a > b) std::swap(a, b);
      ++edge_use[{a, b}];
    }
  }
  for (const auto& [edge, uses] : edge_use) ASSERT_EQ(uses, 2);
  // Euler characteristic of a sphere.
  const long chi = static_cast<long>(mesh.vertices.size()) -
                   static_cast<long>(edge_use.size()) +
                   static_cast<long>(mesh.triangles.size());
  EXPECT_EQ(chi, 2);
}

TEST(ExtractIsosurface, SaddleFacesStayWatertight) {
  // Two touching blobs produce ambiguous faces; the shared face-centre rule
  // must still give a closed surface.
  const auto field = sample_field(GridSpec{.n = 15}, [](const Point3& c) {
    return std::cos(4.0 * c[0]) * std::cos(4.0 * c[1]) * std::cos(4.0 * c[2]);
  });
  const auto mesh = extract_isosurface(field, 0.05);
  ASSERT_FALSE(mesh.empty());
  std::map<std::pair<std::uint32_t, std::uint32_t>, int> edge_use;
  for (const auto& t : mesh.triangles) {
    for (int e = 0; e < 3; ++e) {
      auto a = t[e], b = t[(e + 1) % 3];
      if (a > b) std::swap(a, b);
      ++edge_use[{a, b}];
    }
  }
  // Boundary edges only occur on the outer faces of the grid.
  for (const auto& [edge, uses] : edge_use) {
    ASSERT_LE(uses, 2);
    if (uses == 1) {
      const auto& a = mesh.vertices[edge.first];
      const auto& b = mesh.vertices[edge.second];
      bool on_boundary = false;
      for (int axis = 0; axis < 3; ++axis) {
        on_boundary |= (std::abs(std::abs(a[axis]) - 1.0) < 1e-12 &&
                        std::abs(std::abs(b[axis]) - 1.0) < 1e-12);
      }
      ASSERT_TRUE(on_boundary);
    }
  }
}

TEST(ExtractIsosurface, LevelAboveMaximumIsEmpty) {
  const auto field = sample_field(GridSpec{.n = 16}, Measure::Discord);
  const auto mesh = extract_isosurface(field, 1.0 + 1e-9);
  EXPECT_TRUE(mesh.empty());
  EXPECT_GT(mesh.boundary_cells, 0u);
}

TEST(ExtractIsosurface, DiscordVerticesReevaluateToLevel) {
  const GridSpec g{.n = 32, .r = 0.3, .s = 0.3};
  const auto field = sample_field(g, Measure::Discord);
  const auto mesh = extract_isosurface(field, 0.03);
  ASSERT_FALSE(mesh.empty());
  for (const auto& v : mesh.vertices) {
    ASSERT_GE(v[0], -1.0);
    ASSERT_LE(v[0], 1.0);
    const double q = quantum_discord({0.3, 0.3, v[0], v[1], v[2]});
    ASSERT_NEAR(q, 0.03, 5e-3);
  }
}

TEST(ExtractIsosurface, Deterministic) {
  const auto field = sample_field(GridSpec{.n = 16, .r = 0.3, .s = 0.3}, Measure::Discord);
  const auto a = extract_isosurface(field, 0.15);
  const auto b = extract_isosurface(field, 0.15);
  EXPECT_EQ(a.vertices, b.vertices);
  EXPECT_EQ(a.triangles, b.triangles);
}

TEST(RegionPredicates, Examples) {
  const auto vertex = region_predicates(1, -1, 1);
  EXPECT_TRUE(vertex.in_tetrahedron);
  EXPECT_FALSE(vertex.in_octahedron);
  const auto face = region_predicates(0.5, 0.25, 0.25);
  EXPECT_TRUE(face.in_tetrahedron);
  EXPECT_TRUE(face.in_octahedron);
  const auto outside = region_predicates(1, 1, 1);
  EXPECT_FALSE(outside.in_tetrahedron);
  EXPECT_FALSE(outside.in_octahedron);
}

TEST(RegionPredicates, OctahedronInsideTetrahedronAndSeparable) {
  testing::StateSampler sampler(59);
  for (int i = 0; i < 10000; ++i) {
    const double c1 = sampler.coord(), c2 = sampler.coord(), c3 = sampler.coord();
    const auto m = region_predicates(c1, c2, c3);
    ASSERT_EQ(m.in_tetrahedron, x_spectrum({0, 0, c1, c2, c3}).min() >= -kPhysicalTol);
    if (m.in_octahedron) {
      ASSERT_TRUE(m.in_tetrahedron);
      ASSERT_EQ(concurrence({0, 0, c1, c2, c3}), 0.0);
    }
  }
}

TEST(Writers, ObjIsOneBased) {
  TriangleMesh mesh;
  mesh.vertices = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}};
  mesh.triangles = {{0, 1, 2}};
  std::ostringstream out;
  write_obj(out, mesh);
  EXPECT_NE(out.str().find("v 1 0 0\n"), std::string::npos);
  EXPECT_NE(out.str().find("f 1 2 3\n"), std::string::npos);
}

TEST(Writers, GridCsv) {
  const auto field = sample_field(GridSpec{.n = 2}, Measure::Discord);
  std::ostringstream out;
  write_grid_csv(out, field);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "c1,c2,c3,physical,value");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, 8);
  EXPECT_NE(out.str().find("1,1,1,0,nan"), std::string::npos);
  EXPECT_NE(out.str().find("1,-1,1,1,"), std::string::npos);
}

}  // namespace
}  // namespace xdiscord
