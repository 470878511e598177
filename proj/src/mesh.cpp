#include "cmc1/mesh.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <optional>
#include <ostream>
#include <queue>
#include <stdexcept>

namespace cmc1 {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Node {
  bool valid = false;
  std::optional<FrameState> frame;
  Complex g{};
};

}  // namespace

int DomainGrid::rows() const { return chart == Chart::Polar ? n1 : n2; }

int DomainGrid::cols() const { return chart == Chart::Polar ? n2 + 1 : n1; }

Complex DomainGrid::vertex(int row, int col) const {
  if (chart == Chart::Polar) {
    const double r = n1 == 1 ? r0 : r0 * std::pow(r1 / r0, static_cast<double>(row) / (n1 - 1));
    return center + std::polar(r, theta0 + kTwoPi * col / n2);
  }
  const double x = n1 == 1 ? x0 : x0 + (x1 - x0) * col / (n1 - 1);
  const double y = n2 == 1 ? y0 : y0 + (y1 - y0) * row / (n2 - 1);
  return {x, y};
}

void DomainGrid::validate() const {
  if (n1 < 2 || n2 < 2) throw std::invalid_argument("grid needs at least 2 points per direction");
  if (!(exclusion > 0)) throw std::invalid_argument("exclusion radius must be positive");
  if (chart == Chart::Polar) {
    if (!(r0 > 0) || !(r1 > r0)) throw std::invalid_argument("polar grid needs 0 < r0 < r1");
    if (n2 < 3) throw std::invalid_argument("polar grid needs at least 3 angular cells");
  } else if (!(x1 > x0) || !(y1 > y0)) {
    throw std::invalid_argument("empty cartesian rectangle");
  }
}

int SurfaceMesh::find(int row, int col) const {
  for (std::size_t k = 0; k < index.size(); ++k)
    if (index[k][0] == row && index[k][1] == col) return static_cast<int>(k);
  return -1;
}

SurfaceMesh build_mesh(const SurfaceData& data, const DomainGrid& grid, const DevelopOptions& opts_in) {
  grid.validate();
  DevelopOptions opts = opts_in;
  if (!data.g) opts.route = FrameRoute::Dual;
  const Connection A(data, opts.route);

  SurfaceMesh mesh;
  mesh.name = data.name;
  mesh.ambient = data.ambient;
  mesh.grid = grid;
  mesh.route = opts.route;

  const int R = grid.rows(), C = grid.cols();
  auto id = [C](int r, int c) { return static_cast<std::size_t>(r * C + c); };
  std::vector<Node> nodes(static_cast<std::size_t>(R * C));
  for (int r = 0; r < R; ++r)
    for (int c = 0; c < C; ++c) {
      const Complex z = grid.vertex(r, c);
      bool ok = std::isfinite(z.real()) && std::isfinite(z.imag());
      for (const auto& q : A.singular()) ok = ok && std::abs(z - q) >= grid.exclusion;
      nodes[id(r, c)].valid = ok;
    }

  // root: nearest valid vertex to the requested basepoint
  int root = -1;
  double best = std::numeric_limits<double>::infinity();
  for (int r = 0; r < R; ++r)
    for (int c = 0; c < C; ++c) {
      if (!nodes[id(r, c)].valid) continue;
      const double d = std::abs(grid.vertex(r, c) - grid.basepoint);
      if (d < best) {
        best = d;
        root = r * C + c;
      }
    }
  if (root < 0) throw std::invalid_argument("grid has no vertex outside the exclusion zones");

  const double clearance = 0.5 * grid.exclusion;
  auto edge_path = [&](int ra, int ca, int rb, int cb) {
    PathSpec p;
    p.clearance = clearance;
    const Complex a = grid.vertex(ra, ca), b = grid.vertex(rb, cb);
    if (grid.chart == DomainGrid::Chart::Polar && ra == rb) {
      const double r = std::abs(a - grid.center);
      p.segments.push_back(Segment::arc(grid.center, r, grid.theta0 + kTwoPi * ca / grid.n2,
                                        grid.theta0 + kTwoPi * cb / grid.n2));
    } else {
      p.segments.push_back(Segment::line(a, b));
    }
    return p;
  };

  {
    const int rr = root / C, rc = root % C;
    FrameState s = initial_frame(A, data.basepoint);
    const Complex target = grid.vertex(rr, rc);
    if (std::abs(target - data.basepoint) > 0) {
      PathSpec p = PathSpec::line(data.basepoint, target);
      p.clearance = clearance;
      s = continue_frame(A, p, s, opts);
    }
    nodes[static_cast<std::size_t>(root)].frame = s;
  }

  std::queue<int> queue;
  queue.push(root);
  const int dr[4] = {0, 0, -1, 1};
  const int dc[4] = {-1, 1, 0, 0};
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop();
    const int ur = u / C, uc = u % C;
    for (int k = 0; k < 4; ++k) {
      const int vr = ur + dr[k], vc = uc + dc[k];
      if (vr < 0 || vr >= R || vc < 0 || vc >= C) continue;
      Node& v = nodes[id(vr, vc)];
      if (!v.valid || v.frame) continue;
      try {
        v.frame = continue_frame(A, edge_path(ur, uc, vr, vc), *nodes[static_cast<std::size_t>(u)].frame, opts);
        queue.push(vr * C + vc);
      } catch (const std::exception& e) {
        mesh.warnings.push_back("edge (" + std::to_string(ur) + "," + std::to_string(uc) + ")->(" +
                                std::to_string(vr) + "," + std::to_string(vc) + "): " + e.what());
      }
    }
  }

  std::vector<int> number(static_cast<std::size_t>(R * C), -1);
  for (int r = 0; r < R; ++r)
    for (int c = 0; c < C; ++c) {
      Node& n = nodes[id(r, c)];
      if (!n.valid) continue;
      if (!n.frame) {
        mesh.warnings.push_back("vertex (" + std::to_string(r) + "," + std::to_string(c) + ") unreachable; dropped");
        continue;
      }
      n.g = A.gauss(n.frame->z, n.frame->branch, nullptr);
      AmbientPoint p = data.ambient == Ambient::H3 ? point_h3(n.frame->F)
                                                   : point_s31(n.frame->F, n.g, grid.singular_threshold);
      number[id(r, c)] = static_cast<int>(mesh.vertices.size());
      mesh.vertices.push_back(p);
      mesh.z.push_back(n.frame->z);
      mesh.index.push_back({r, c});
    }

  if (data.ambient == Ambient::S31) {
    // |g| - 1 changes sign across an edge: flag the endpoint on the side of
    // the crossing found by one midpoint bisection
    for (int r = 0; r < R; ++r)
      for (int c = 0; c < C; ++c)
        for (int k : {1, 3}) {
          const int r2 = r + dr[k], c2 = c + dc[k];
          if (r2 >= R || c2 >= C) continue;
          const int a = number[id(r, c)], b = number[id(r2, c2)];
          if (a < 0 || b < 0) continue;
          const Node &na = nodes[id(r, c)], &nb = nodes[id(r2, c2)];
          const double fa = std::abs(na.g) - 1.0, fb = std::abs(nb.g) - 1.0;
          if ((fa < 0) == (fb < 0)) continue;
          double fm = fa;
          try {
            const Complex mid = 0.5 * (na.frame->z + nb.frame->z);
            fm = std::abs(A.gauss(mid, na.frame->branch, nullptr)) - 1.0;
          } catch (const std::domain_error&) {
          }
          const int flagged = (fm < 0) == (fa < 0) ? b : a;
          mesh.vertices[static_cast<std::size_t>(flagged)].singular = true;
        }
    for (std::size_t k = 0; k < mesh.vertices.size(); ++k)
      if (mesh.vertices[k].singular) mesh.singular_vertices.push_back(static_cast<int>(k));
  }

  for (int r = 0; r + 1 < R; ++r)
    for (int c = 0; c + 1 < C; ++c) {
      const std::array<int, 4> f = {number[id(r, c)], number[id(r, c + 1)], number[id(r + 1, c + 1)],
                                    number[id(r + 1, c)]};
      if (f[0] < 0 || f[1] < 0 || f[2] < 0 || f[3] < 0) continue;
      mesh.faces.push_back(f);
    }
  return mesh;
}

double seam_mismatch(const SurfaceMesh& mesh) {
  if (mesh.grid.chart != DomainGrid::Chart::Polar) throw std::invalid_argument("seam is defined for polar grids");
  double worst = 0.0;
  const int last = mesh.grid.cols() - 1;
  for (int r = 0; r < mesh.grid.rows(); ++r) {
    const int a = mesh.find(r, 0), b = mesh.find(r, last);
    if (a < 0 || b < 0) continue;
    const auto& x = mesh.vertices[static_cast<std::size_t>(a)].minkowski;
    const auto& y = mesh.vertices[static_cast<std::size_t>(b)].minkowski;
    double d = 0.0;
    for (int k = 0; k < 4; ++k) d = std::max(d, std::abs(x[static_cast<std::size_t>(k)] - y[static_cast<std::size_t>(k)]));
    worst = std::max(worst, d);
  }
  return worst;
}

void write_mesh(const SurfaceMesh& mesh, MeshFormat format, MeshModel model, std::ostream& out) {
  if (mesh.empty()) throw std::invalid_argument("cannot export an empty mesh");
  if (model == MeshModel::Ball && mesh.ambient != Ambient::H3)
    throw std::invalid_argument("the ball model needs an H3 mesh");
  auto xyz = [&](const AmbientPoint& p) -> std::array<double, 3> {
    if (model == MeshModel::Ball) return *p.ball;
    return {p.minkowski[1], p.minkowski[2], p.minkowski[3]};
  };
  out.precision(12);
  if (format == MeshFormat::OBJ) {
    out << "# " << mesh.name << " " << to_string(mesh.ambient) << "\n";
    for (const auto& p : mesh.vertices) {
      const auto v = xyz(p);
      out << "v " << v[0] << " " << v[1] << " " << v[2] << "\n";
    }
    for (const auto& f : mesh.faces) out << "f " << f[0] + 1 << " " << f[1] + 1 << " " << f[2] + 1 << " " << f[3] + 1 << "\n";
  } else {
    out << "ply\nformat ascii 1.0\ncomment " << mesh.name << " " << to_string(mesh.ambient) << "\n";
    out << "element vertex " << mesh.vertices.size() << "\n";
    out << "property double x\nproperty double y\nproperty double z\nproperty double x0\nproperty uchar singular\n";
    out << "element face " << mesh.faces.size() << "\nproperty list uchar int vertex_indices\nend_header\n";
    for (const auto& p : mesh.vertices) {
      const auto v = xyz(p);
      out << v[0] << " " << v[1] << " " << v[2] << " " << p.minkowski[0] << " " << (p.singular ? 1 : 0) << "\n";
    }
    for (const auto& f : mesh.faces) out << "4 " << f[0] << " " << f[1] << " " << f[2] << " " << f[3] << "\n";
  }
  if (!out) throw std::runtime_error("mesh write failed");
}

void export_mesh(const SurfaceMesh& mesh, MeshFormat format, MeshModel model, const std::string& path) {
  if (mesh.empty()) throw std::invalid_argument("cannot export an empty mesh");
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  write_mesh(mesh, format, model, f);
  f.close();
  if (!f) throw std::runtime_error("error writing " + path);
}

}  // namespace cmc1
