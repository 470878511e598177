#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cmc1/json_io.hpp"

using namespace cmc1;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  std::string surface;
  std::string file;
  std::vector<std::string> params;
  std::string out;
  bool exact = false;
  std::uint64_t seed = 1;
};

Params parse_params(const std::vector<std::string>& items) {
  Params p;
  for (const auto& s : items) {
    const auto eq = s.find('=');
    if (eq == std::string::npos || eq == 0) throw UsageError("--param expects name=value, got " + s);
    p[s.substr(0, eq)] = s.substr(eq + 1);
  }
  return p;
}

Json read_json_arg(const std::string& text) {
  std::string body = text;
  if (!text.empty() && text.front() != '{' && text.front() != '[') {
    std::ifstream f(text);
    if (!f) throw UsageError("cannot read " + text);
    std::stringstream ss;
    ss << f.rdbuf();
    body = ss.str();
  }
  try {
    return Json::parse(body);
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("invalid JSON: ") + e.what());
  }
}

CatalogEntry resolve(const Common& c) {
  if (!c.file.empty()) {
    if (!c.surface.empty()) throw UsageError("give --surface or --file, not both");
    CatalogEntry e;
    try {
      e.data = surface_from_json(read_json_arg(c.file));
    } catch (const std::invalid_argument& ex) {
      throw UsageError(ex.what());
    }
    e.key = e.data.name;
    e.grid.basepoint = e.data.basepoint;
    return e;
  }
  if (c.surface.empty()) throw UsageError("--surface or --file is required");
  try {
    return catalog_lookup(c.surface, parse_params(c.params));
  } catch (const std::out_of_range& ex) {
    throw UsageError(ex.what());
  } catch (const std::invalid_argument& ex) {
    throw UsageError(ex.what());
  }
}

void emit(const Json& j, const std::string& out) {
  if (out.empty()) {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::ofstream f(out);
  if (!f) throw std::runtime_error("cannot open " + out);
  f << j.dump(2) << "\n";
}

void add_common(CLI::App* app, Common& c, bool with_surface = true) {
  if (with_surface) {
    app->add_option("--surface", c.surface, "catalog key");
    app->add_option("--file", c.file, "surface JSON file");
    app->add_option("--param", c.params, "catalog parameter name=value (repeatable)");
  }
  app->add_option("--out", c.out, "write output here instead of stdout");
  app->add_flag("--exact", c.exact, "exact Gaussian-rational arithmetic where available");
  app->add_option("--seed", c.seed, "seed for randomized sampling");
}

FrameRoute pick_route(const std::string& r, const SurfaceData& d) {
  if (r == "primary") return FrameRoute::Primary;
  if (r == "dual") return FrameRoute::Dual;
  if (r == "auto") return d.g ? FrameRoute::Primary : FrameRoute::Dual;
  throw UsageError("--route must be auto, primary or dual");
}

std::vector<Rational> parse_scan(const std::string& spec) {
  std::vector<Rational> v;
  std::stringstream ss(spec);
  std::string part;
  while (std::getline(ss, part, ':')) v.push_back(parse_rational(part));
  if (v.size() != 3) throw UsageError("--theta-scan expects a:b:step");
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cmc1: value distribution and construction of CMC-1 surfaces and faces"};
  app.require_subcommand(1);
  Common c;
  std::string route = "auto", path_arg, scan, format = "obj", model = "auto";
  int around = 0, n1 = 0, n2 = 0;
  double rtol = 1e-10, atol = 1e-12;

  auto* cat = app.add_subcommand("catalog", "list the built-in surfaces");
  add_common(cat, c, false);
  cat->add_option("--surface", c.surface, "show one entry");
  cat->add_option("--param", c.params, "catalog parameter name=value");

  auto* ana = app.add_subcommand("analyze", "ramification, ends and nondegeneracy report");
  add_common(ana, c);

  auto* fro = app.add_subcommand("frobenius", "indicial roots and log terms at the ends");
  add_common(fro, c);
  fro->add_option("--theta-scan", scan, "scan the theta parameter over a:b:step");

  auto* dev = app.add_subcommand("develop", "integrate the frame along a path");
  add_common(dev, c);
  dev->add_option("--path", path_arg, "path JSON (inline or file)")->required();
  dev->add_option("--route", route, "auto, primary (g, Q/dg) or dual (G, omega#)");
  dev->add_option("--rtol", rtol);
  dev->add_option("--atol", atol);

  auto* mon = app.add_subcommand("monodromy", "frame monodromy around one end");
  add_common(mon, c);
  mon->add_option("--around", around, "index into the puncture list")->required();
  mon->add_option("--route", route, "auto, primary or dual");
  mon->add_option("--rtol", rtol);
  mon->add_option("--atol", atol);

  auto* msh = app.add_subcommand("mesh", "develop a grid and report mesh invariants");
  add_common(msh, c);
  msh->add_option("--n1", n1, "radial (polar) or x (cartesian) count");
  msh->add_option("--n2", n2, "angular cells (polar) or y count");

  auto* exp = app.add_subcommand("export", "write a mesh as OBJ or PLY");
  add_common(exp, c);
  exp->add_option("--format", format, "obj or ply");
  exp->add_option("--model", model, "auto, ball or minkowski (auto: ball for H3)");
  exp->add_option("--n1", n1);
  exp->add_option("--n2", n2);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (cat->parsed()) {
      Json out = Json::array();
      if (!c.surface.empty()) {
        out = to_json(resolve(c));
      } else {
        for (const auto& e : catalog_list()) out.push_back(to_json(e));
      }
      emit(out, c.out);
      return 0;
    }

    const CatalogEntry entry = resolve(c);
    const SurfaceData& data = entry.data;

    if (ana->parsed()) {
      const AnalysisReport r = c.file.empty() ? analyze(entry, c.exact) : analyze(data, std::nullopt, c.exact);
      Json j = to_json(r);
      if (data.g) {
        const SchwarzResidual s = verify_schwarz(data, 50, 1e-8, c.seed);
        j["schwarz"] = {{"max_residual", s.max_residual}, {"samples", s.samples}, {"pass", s.pass}};
      }
      emit(j, c.out);
      return r.pass() ? 0 : 1;
    }

    if (fro->parsed()) {
      if (!scan.empty()) {
        if (c.surface.empty() || !entry.params.count("theta"))
          throw UsageError("--theta-scan needs a catalog surface with a theta parameter");
        const auto v = parse_scan(scan);
        Params base = entry.params;
        auto family = [&](const Rational& t) {
          Params p = base;
          p["theta"] = to_string(t);
          return catalog_lookup(entry.key, p).data;
        };
        Json out = Json::array();
        for (const auto& s : theta_scan(family, v[0], v[1], v[2])) out.push_back(to_json(s));
        emit(out, c.out);
        return 0;
      }
      Json j{{"name", data.name}, {"mode", c.exact ? "exact" : "float"}};
      Json reps = Json::array();
      if (c.exact) {
        const auto e = e0_coefficient(data.G, data.Q);
        for (const auto& p : data.M.punctures)
          if (!p.is_infinity()) reps.push_back(to_json(frobenius_report(e, p)));
      } else {
        const auto e = e0_coefficient(data.G.to_complex(), FloatDifferential{data.Q.coeff.to_complex(), 2});
        for (const auto& p : data.M.punctures)
          if (!p.is_infinity()) reps.push_back(to_json(frobenius_report(e, p.approx())));
      }
      j["ends"] = reps;
      j["classification"] = to_json(classify_reducibility(data));
      emit(j, c.out);
      return 0;
    }

    if (dev->parsed()) {
      PathSpec path;
      try {
        path = path_from_json(read_json_arg(path_arg));
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
      DevelopOptions o;
      o.route = pick_route(route, data);
      o.rtol = rtol;
      o.atol = atol;
      const Connection A(data, o.route);
      FrameState s = initial_frame(A, data.basepoint);
      if (!path.segments.empty() && std::abs(path.start() - data.basepoint) > 0) {
        PathSpec lead = PathSpec::line(data.basepoint, path.start());
        lead.clearance = path.clearance;
        s = continue_frame(A, lead, s, o);
      }
      s = continue_frame(A, path, s, o);
      Json j = to_json(s);
      if (data.ambient == Ambient::H3) {
        const auto p = point_h3(s.F);
        j["point"] = {{"minkowski", p.minkowski}, {"ball", *p.ball}};
      } else {
        const auto p = point_s31(s.F, A.gauss(s.z, s.branch, nullptr), 1e-3);
        j["point"] = {{"minkowski", p.minkowski}, {"singular", p.singular}};
      }
      emit(j, c.out);
      return 0;
    }

    if (mon->parsed()) {
      if (around < 0 || around >= static_cast<int>(data.M.punctures.size()))
        throw UsageError("--around must index the puncture list (0.." + std::to_string(data.M.punctures.size() - 1) + ")");
      DevelopOptions o;
      o.route = pick_route(route, data);
      o.rtol = rtol;
      o.atol = atol;
      const auto m = monodromy(data, data.basepoint, data.M.punctures[static_cast<std::size_t>(around)], o);
      Json j = to_json(m);
      j["around"] = data.M.punctures[static_cast<std::size_t>(around)].str();
      j["route"] = o.route == FrameRoute::Primary ? "primary" : "dual";
      emit(j, c.out);
      return 0;
    }

    DomainGrid grid = entry.grid;
    if (n1 > 0) grid.n1 = n1;
    if (n2 > 0) grid.n2 = n2;
    const SurfaceMesh mesh = build_mesh(data, grid);

    if (msh->parsed()) {
      Json j = to_json(mesh);
      double worst = 0.0;
      const double target = data.ambient == Ambient::H3 ? -1.0 : 1.0;
      for (const auto& v : mesh.vertices) worst = std::max(worst, std::abs(v.lorentz_norm() - target));
      j["quadric_error"] = worst;
      if (grid.chart == DomainGrid::Chart::Polar) j["seam_mismatch"] = seam_mismatch(mesh);
      emit(j, c.out);
      return 0;
    }

    if (exp->parsed()) {
      if (c.out.empty()) throw UsageError("export needs --out");
      MeshFormat f;
      if (format == "obj")
        f = MeshFormat::OBJ;
      else if (format == "ply")
        f = MeshFormat::PLY;
      else
        throw UsageError("--format must be obj or ply");
      MeshModel m;
      if (model == "auto")
        m = data.ambient == Ambient::H3 ? MeshModel::Ball : MeshModel::Minkowski;
      else if (model == "ball")
        m = MeshModel::Ball;
      else if (model == "minkowski")
        m = MeshModel::Minkowski;
      else
        throw UsageError("--model must be auto, ball or minkowski");
      export_mesh(mesh, f, m, c.out);
      Json j = to_json(mesh);
      j["written"] = c.out;
      std::cout << j.dump(2) << "\n";
      return 0;
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
