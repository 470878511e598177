#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include "cmc1/develop.hpp"

namespace cmc1 {

/// Polar grids use radii r0..r1 (geometric spacing) and angles theta0 plus
/// a full turn; the last angular column duplicates the first across the
/// seam. Cartesian grids cover [x0, x1] x [y0, y1].
struct DomainGrid {
  enum class Chart { Polar, Cartesian };
  Chart chart = Chart::Polar;
  Complex center{};
  double r0 = 0.2, r1 = 5.0, theta0 = 0.0;
  double x0 = -1.0, x1 = 1.0, y0 = -1.0, y1 = 1.0;
  int n1 = 21;  // radial or x count
  int n2 = 32;  // angular cells or y count
  double exclusion = 0.05;
  /// The tree root is the grid vertex nearest this point.
  Complex basepoint{1.0, 0.0};
  double singular_threshold = 1e-3;

  int rows() const;
  int cols() const;
  Complex vertex(int row, int col) const;
  /// Throws std::invalid_argument on bad sizes or radii.
  void validate() const;
};

struct SurfaceMesh {
  std::string name;
  Ambient ambient = Ambient::H3;
  DomainGrid grid;
  FrameRoute route = FrameRoute::Primary;
  std::vector<AmbientPoint> vertices;
  std::vector<Complex> z;
  std::vector<std::array<int, 2>> index;  // (row, col) per vertex
  std::vector<std::array<int, 4>> faces;
  std::vector<int> singular_vertices;
  std::vector<std::string> warnings;

  bool empty() const { return vertices.empty(); }
  /// Vertex number of a grid position, or -1 when dropped.
  int find(int row, int col) const;
};

/// Develops the frame over a spanning tree of grid edges and maps each
/// vertex into the ambient space. Failed edges are retried from other tree
/// neighbours; vertices that stay unreachable are dropped with a warning.
SurfaceMesh build_mesh(const SurfaceData& data, const DomainGrid& grid, const DevelopOptions& opts = {});

/// Largest Minkowski distance between the first and the duplicated last
/// angular column of a polar mesh.
double seam_mismatch(const SurfaceMesh& mesh);

enum class MeshFormat { OBJ, PLY };
enum class MeshModel { Ball, Minkowski };

/// Ball writes Poincare-ball coordinates (H3 only); Minkowski writes
/// (x1, x2, x3). PLY additionally stores x0 and the singular flag.
void write_mesh(const SurfaceMesh& mesh, MeshFormat format, MeshModel model, std::ostream& out);
/// Throws std::invalid_argument for an empty mesh and std::runtime_error on
/// I/O failure.
void export_mesh(const SurfaceMesh& mesh, MeshFormat format, MeshModel model, const std::string& path);

}  // namespace cmc1
