#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "cmc1/catalog.hpp"
#include "cmc1/mesh.hpp"

using namespace cmc1;

namespace {

CatalogEntry entry(const std::string& key, const Params& p = {}) { return catalog_lookup(key, p); }

double quadric_error(const SurfaceMesh& m) {
  const double target = m.ambient == Ambient::H3 ? -1.0 : 1.0;
  double worst = 0.0;
  for (const auto& v : m.vertices) worst = std::max(worst, std::abs(v.lorentz_norm() - target));
  return worst;
}

double dist3(const std::array<double, 3>& a, const std::array<double, 3>& b) {
  return std::sqrt((a[0] - b[0]) * (a[0] - b[0]) + (a[1] - b[1]) * (a[1] - b[1]) + (a[2] - b[2]) * (a[2] - b[2]));
}

}  // namespace

TEST(DomainGrid, PolarLayoutAndValidation) {
  DomainGrid g;
  g.n1 = 5;
  g.n2 = 8;
  EXPECT_EQ(g.rows(), 5);
  EXPECT_EQ(g.cols(), 9);
  EXPECT_NEAR(std::abs(g.vertex(0, 0)), g.r0, 1e-15);
  EXPECT_NEAR(std::abs(g.vertex(4, 3)), g.r1, 1e-12);
  EXPECT_LT(std::abs(g.vertex(2, 0) - g.vertex(2, 8)), 1e-12);
  g.r1 = 0.1;
  EXPECT_THROW(g.validate(), std::invalid_argument);
  DomainGrid c;
  c.chart = DomainGrid::Chart::Cartesian;
  c.n1 = 3;
  c.n2 = 4;
  EXPECT_EQ(c.rows(), 4);
  EXPECT_EQ(c.cols(), 3);
  EXPECT_LT(std::abs(c.vertex(0, 0) - Complex(-1, -1)), 1e-15);
  EXPECT_LT(std::abs(c.vertex(3, 2) - Complex(1, 1)), 1e-15);
}

TEST(BuildMesh, CatenoidCousinClosesUp) {
  const auto e = entry("catenoid-cousin");
  const SurfaceMesh m = build_mesh(e.data, e.grid);
  EXPECT_TRUE(m.warnings.empty());
  EXPECT_EQ(static_cast<int>(m.vertices.size()), e.grid.rows() * e.grid.cols());
  EXPECT_LT(seam_mismatch(m), 1e-6);
  EXPECT_LT(quadric_error(m), 1e-6);
  for (const auto& v : m.vertices) EXPECT_GT(v.minkowski[0], 0.0);
}

TEST(BuildMesh, FacesAndOrdering) {
  const auto e = entry("catenoid-cousin");
  DomainGrid g = e.grid;
  g.n1 = 6;
  g.n2 = 10;
  const SurfaceMesh m = build_mesh(e.data, g);
  const int nv = static_cast<int>(m.vertices.size());
  EXPECT_EQ(m.faces.size(), static_cast<std::size_t>((g.rows() - 1) * (g.cols() - 1)));
  for (const auto& f : m.faces)
    for (int i : f) {
      EXPECT_GE(i, 0);
      EXPECT_LT(i, nv);
    }
  for (int i = 1; i < nv; ++i) EXPECT_LT(m.index[i - 1], m.index[i]);
  EXPECT_EQ(m.find(2, 3), 2 * g.cols() + 3);
  EXPECT_EQ(m.find(-1, 0), -1);
}

TEST(BuildMesh, EllipticCatenoidSingularBand) {
  const auto e = entry("elliptic-catenoid");
  const SurfaceMesh m = build_mesh(e.data, e.grid);
  EXPECT_EQ(m.ambient, Ambient::S31);
  EXPECT_LT(quadric_error(m), 1e-6);
  ASSERT_FALSE(m.singular_vertices.empty());
  const double step = std::log(e.grid.r1 / e.grid.r0) / (e.grid.rows() - 1);
  std::vector<bool> column_hit(static_cast<std::size_t>(e.grid.cols()), false);
  for (int v : m.singular_vertices) {
    EXPECT_LE(std::abs(std::log(std::abs(m.z[v]))), step + 1e-12) << m.z[v];
    EXPECT_TRUE(m.vertices[v].singular);
    column_hit[static_cast<std::size_t>(m.index[v][1])] = true;
  }
  for (bool hit : column_hit) EXPECT_TRUE(hit);
}

TEST(BuildMesh, EnneperCousinDualOnSquare) {
  const auto e = entry("enneper-cousin-dual");
  const SurfaceMesh m = build_mesh(e.data, e.grid);
  EXPECT_TRUE(m.warnings.empty());
  EXPECT_FALSE(m.empty());
  EXPECT_LT(quadric_error(m), 1e-6);
}

TEST(BuildMesh, DualRouteWhenSecondaryMapIsMissing) {
  for (const char* key : {"voss-k3", "power-n", "prop27-surface"}) {
    const auto e = entry(key);
    const SurfaceMesh m = build_mesh(e.data, e.grid);
    EXPECT_EQ(m.route, FrameRoute::Dual) << key;
    EXPECT_TRUE(m.warnings.empty()) << key;
    EXPECT_LT(quadric_error(m), 1e-6) << key;
  }
}

TEST(BuildMesh, VerticesAvoidPunctures) {
  const auto e = entry("voss-k3");
  const SurfaceMesh m = build_mesh(e.data, e.grid);
  for (const Complex z : m.z)
    for (const auto& p : e.data.M.punctures)
      if (!p.is_infinity()) EXPECT_GE(std::abs(z - p.approx().value()), e.grid.exclusion);
}

TEST(BuildMesh, TreeRootDoesNotMoveVertices) {
  const auto e = entry("enneper-cousin-dual");
  DomainGrid a = e.grid, b = e.grid;
  a.basepoint = Complex(-1, -1);
  b.basepoint = Complex(0.7, 0.9);
  const SurfaceMesh ma = build_mesh(e.data, a), mb = build_mesh(e.data, b);
  ASSERT_EQ(ma.vertices.size(), mb.vertices.size());
  double worst = 0.0;
  for (std::size_t i = 0; i < ma.vertices.size(); ++i)
    for (int k = 0; k < 4; ++k) worst = std::max(worst, std::abs(ma.vertices[i].minkowski[k] - mb.vertices[i].minkowski[k]));
  EXPECT_LT(worst, 1e-6);
}

TEST(BuildMesh, BallPointsApproachEndLimits) {
  const auto e = entry("catenoid-cousin");
  DomainGrid g = e.grid;
  g.r0 = 1e-3;
  g.r1 = 1e3;
  g.n1 = 31;
  g.n2 = 16;
  g.exclusion = 5e-4;
  const SurfaceMesh m = build_mesh(e.data, g);
  ASSERT_TRUE(m.warnings.empty());

  // the limit of the hyperbolic Gauss map read off a frame developed deep
  // into each end
  const Connection A(e.data, FrameRoute::Primary);
  auto limit = [&](double factor) {
    PathSpec p;
    Complex z = e.data.basepoint;
    for (int k = 0; k < 7; ++k, z *= factor) p.segments.push_back(Segment::line(z, z * factor));
    p.clearance = std::min(std::abs(z), 1.0) / 2;
    const FrameState s = continue_frame(A, p, initial_frame(A, e.data.basepoint));
    return ideal_point(frame_gauss_map(s.F, A.gauss(s.z, s.branch, nullptr)));
  };
  const auto at0 = limit(0.1), atinf = limit(10.0);
  for (int col = 0; col < g.cols(); ++col) {
    const auto inner = *m.vertices[m.find(0, col)].ball;
    const auto outer = *m.vertices[m.find(g.rows() - 1, col)].ball;
    EXPECT_LT(dist3(inner, at0), 0.05) << col;
    EXPECT_LT(dist3(outer, atinf), 0.05) << col;
  }
  for (const auto& v : m.vertices) {
    const auto& b = *v.ball;
    EXPECT_LT(b[0] * b[0] + b[1] * b[1] + b[2] * b[2], 1.0);
  }
}

TEST(Export, ObjBallModelStaysInsideUnitBall) {
  const auto e = entry("catenoid-cousin");
  const SurfaceMesh m = build_mesh(e.data, e.grid);
  std::stringstream out;
  write_mesh(m, MeshFormat::OBJ, MeshModel::Ball, out);
  std::string line;
  int nv = 0, nf = 0;
  while (std::getline(out, line)) {
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    if (tag == "v") {
      double x, y, z;
      ls >> x >> y >> z;
      EXPECT_LT(x * x + y * y + z * z, 1.0);
      ++nv;
    } else if (tag == "f") {
      int a, b, c, d;
      ls >> a >> b >> c >> d;
      EXPECT_GE(std::min({a, b, c, d}), 1);
      EXPECT_LE(std::max({a, b, c, d}), static_cast<int>(m.vertices.size()));
      ++nf;
    }
  }
  EXPECT_EQ(nv, static_cast<int>(m.vertices.size()));
  EXPECT_EQ(nf, static_cast<int>(m.faces.size()));
}

TEST(Export, PlyCarriesSingularFlag) {
  const auto e = entry("elliptic-catenoid");
  const SurfaceMesh m = build_mesh(e.data, e.grid);
  std::stringstream out;
  write_mesh(m, MeshFormat::PLY, MeshModel::Minkowski, out);
  std::string line;
  std::getline(out, line);
  EXPECT_EQ(line, "ply");
  bool has_flag = false, has_x0 = false;
  while (std::getline(out, line) && line != "end_header") {
    has_flag = has_flag || line == "property uchar singular";
    has_x0 = has_x0 || line == "property double x0";
  }
  EXPECT_TRUE(has_flag);
  EXPECT_TRUE(has_x0);
  int flagged = 0;
  for (std::size_t i = 0; i < m.vertices.size(); ++i) {
    std::getline(out, line);
    std::istringstream ls(line);
    double x, y, z, x0;
    int s;
    ls >> x >> y >> z >> x0 >> s;
    EXPECT_NEAR(-x0 * x0 + x * x + y * y + z * z, 1.0, 1e-6);
    flagged += s;
  }
  EXPECT_EQ(flagged, static_cast<int>(m.singular_vertices.size()));
}

TEST(Export, Errors) {
  std::stringstream out;
  EXPECT_THROW(write_mesh(SurfaceMesh{}, MeshFormat::OBJ, MeshModel::Ball, out), std::invalid_argument);
  const auto e = entry("elliptic-catenoid");
  DomainGrid g = e.grid;
  g.n1 = 4;
  g.n2 = 6;
  const SurfaceMesh m = build_mesh(e.data, g);
  EXPECT_THROW(write_mesh(m, MeshFormat::OBJ, MeshModel::Ball, out), std::invalid_argument);
  EXPECT_THROW(export_mesh(m, MeshFormat::OBJ, MeshModel::Minkowski, "/nonexistent-dir/x.obj"), std::runtime_error);
}
