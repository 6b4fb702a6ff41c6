#include "cmclab/io.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <fmt/format.h>

#include "json.hpp"

namespace cmclab::io {

using json = nlohmann::ordered_json;

namespace {

Branch parse_branch(const std::string& name) {
  if (name == "Oscillatory") return Branch::Oscillatory;
  if (name == "Hyperbolic") return Branch::Hyperbolic;
  if (name == "Parabolic") return Branch::Parabolic;
  throw Error(ErrorCode::IoError, fmt::format("unknown branch '{}'", name));
}

json params_json(const DelaunayParams& p) {
  return json{{"c", p.c},
              {"H", p.H},
              {"n", p.n},
              {"a", p.a},
              {"u0", p.u0},
              {"C", p.C},
              {"branch", to_string(p.branch)},
              {"D", p.D},
              {"discriminant", p.discriminant()}};
}

DelaunayParams params_from(const json& j) {
  DelaunayParams p;
  p.c = j.at("c").get<double>();
  p.H = j.at("H").get<double>();
  p.n = j.at("n").get<int>();
  p.a = j.at("a").get<int>();
  p.u0 = j.at("u0").get<double>();
  p.C = j.at("C").get<double>();
  p.branch = parse_branch(j.at("branch").get<std::string>());
  p.D = j.at("D").get<double>();
  return p;
}

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

template <typename F>
auto guarded(const std::string& what, F&& f) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::IoError, fmt::format("malformed {}: {}", what, e.what()));
  }
}

void append_row(std::string& out, std::initializer_list<double> values) {
  bool first = true;
  for (double v : values) {
    if (!first) out += ',';
    out += format_number(v);
    first = false;
  }
  out += '\n';
}

}  // namespace

Chart parse_chart(std::string_view name) {
  if (name == "projective" || name == "gnomonic" || name == "klein") return Chart::Projective;
  if (name == "stereographic" || name == "poincare") return Chart::Stereographic;
  throw Error(ErrorCode::OutOfDomain, fmt::format("unknown chart '{}'", name));
}

std::array<double, 3> chart_point(const SpaceForm& sf, const Vec4& x, Chart chart) {
  if (sf.model() == Model::Euclidean) return {x[0], x[1], x[2]};
  const double k = sf.k();
  const double scale = chart == Chart::Projective ? 1.0 / (k * x[0]) : 2.0 / (1.0 + k * x[0]);
  return {x[1] * scale, x[2] * scale, x[3] * scale};
}

std::string to_obj(const TriMesh& mesh, const SpaceForm& sf, Chart chart) {
  std::string out = fmt::format("# cmclab mesh, c = {}\n", format_number(sf.c()));
  for (const auto& v : mesh.vertices) {
    const auto p = chart_point(sf, v, chart);
    out += fmt::format("v {} {} {}\n", format_number(p[0]), format_number(p[1]), format_number(p[2]));
  }
  const bool with_normals = sf.model() == Model::Euclidean && mesh.normals.size() == mesh.vertices.size();
  if (with_normals) {
    for (const auto& n : mesh.normals) {
      out += fmt::format("vn {} {} {}\n", format_number(n[0]), format_number(n[1]), format_number(n[2]));
    }
  }
  for (const auto& t : mesh.triangles) {
    if (with_normals) {
      out += fmt::format("f {0}//{0} {1}//{1} {2}//{2}\n", t[0] + 1, t[1] + 1, t[2] + 1);
    } else {
      out += fmt::format("f {} {} {}\n", t[0] + 1, t[1] + 1, t[2] + 1);
    }
  }
  return out;
}

std::string format_number(double v) { return fmt::format("{:.17g}", v); }

std::string to_json(const DelaunayParams& p) { return params_json(p).dump(2); }

std::string to_json(const USolution& sol) {
  json j{{"params", params_json(sol.params)},
         {"source", to_string(sol.source)},
         {"s", sol.s},
         {"u", sol.u},
         {"uprime", sol.uprime},
         {"breakdown_s", sol.breakdown_s ? json(*sol.breakdown_s) : json(nullptr)}};
  return j.dump(2);
}

USolution parse_usolution(const std::string& text) {
  return guarded("USolution JSON", [&] {
    const json j = json::parse(text);
    USolution sol;
    sol.params = params_from(j.at("params"));
    const auto source = j.at("source").get<std::string>();
    sol.source = source == "ClosedForm" ? Source::ClosedForm : Source::Numeric;
    sol.s = j.at("s").get<std::vector<double>>();
    sol.u = j.at("u").get<std::vector<double>>();
    sol.uprime = j.at("uprime").get<std::vector<double>>();
    if (!j.at("breakdown_s").is_null()) sol.breakdown_s = j.at("breakdown_s").get<double>();
    if (sol.s.size() != sol.u.size() || sol.s.size() != sol.uprime.size()) {
      throw Error(ErrorCode::IoError, "s, u and uprime arrays differ in length");
    }
    return sol;
  });
}

std::string to_csv(const USolution& sol) {
  std::string out = "s,u,uprime,lambda,mu,residual\n";
  for (std::size_t i = 0; i < sol.s.size(); ++i) {
    const auto [lambda, mu] = principal_from_u(sol.u[i], sol.params.a, sol.params.H);
    append_row(out, {sol.s[i], sol.u[i], sol.uprime[i], lambda, mu,
                     first_integral_residual(sol.u[i], sol.uprime[i], sol.params)});
  }
  return out;
}

std::string to_csv(const SampleGrid& grid) {
  std::string out = "s,theta,r,lambda1,lambda2,H,phi_sq,K,grad_nu_f\n";
  for (const auto& s : grid.samples) {
    append_row(out, {s.s, s.theta, s.r, s.lambda1, s.lambda2, s.H, s.phi_sq, s.K, s.grad_nu_f});
  }
  return out;
}

std::string to_csv(const PinchReport& report) {
  std::string out =
      "s,theta,r,lambda1,lambda2,H,phi_sq,K,grad_nu_f,f,df,d2f,lhs,rhs,margin,detL,trL,trace_half,"
      "hess1,hess2\n";
  for (const auto& p : report.samples) {
    const auto& b = p.base;
    append_row(out, {b.s, b.theta, b.r, b.lambda1, b.lambda2, b.H, b.phi_sq, b.K, b.grad_nu_f, p.f,
                     p.df, p.d2f, p.lhs, p.rhs, p.margin, p.detL, p.trL, p.trace_half,
                     p.hess_sigma_diag.first, p.hess_sigma_diag.second});
  }
  return out;
}

PieceRecord make_record(const FreeBoundaryPiece& piece, const BoundaryCurvature& kappa,
                        const GaussBonnetAudit& gb, std::size_t gb_n_s) {
  PieceRecord r;
  r.kind = to_string(piece.kind);
  r.topology = to_string(piece.topology);
  r.c = piece.c;
  r.H = piece.H;
  if (piece.params) {
    r.u0 = piece.params->u0;
    r.a = piece.params->a;
  }
  r.R = piece.R;
  r.s_star = piece.s_star;
  r.residuals = {piece.r_residual, piece.orth_residual};
  r.kappa_g = kappa.analytic;
  r.kappa_g_fd = kappa.finite_difference;
  r.gauss_bonnet = gb;
  r.gauss_bonnet_n_s = gb_n_s;
  return r;
}

std::string to_json(const PieceRecord& r) {
  json j{{"kind", r.kind},
         {"topology", r.topology},
         {"c", r.c},
         {"H", r.H},
         {"u0", r.u0 ? json(*r.u0) : json(nullptr)},
         {"a", r.a ? json(*r.a) : json(nullptr)},
         {"R", r.R},
         {"s_star", r.s_star},
         {"residuals", {r.residuals[0], r.residuals[1]}},
         {"kappa_g", r.kappa_g},
         {"kappa_g_fd", r.kappa_g_fd},
         {"gauss_bonnet",
          {{"interior", r.gauss_bonnet.interior},
           {"boundary", r.gauss_bonnet.boundary},
           {"chi", r.gauss_bonnet.chi},
           {"defect", r.gauss_bonnet.defect},
           {"n_s", r.gauss_bonnet_n_s}}}};
  return j.dump(2);
}

PieceRecord parse_piece(const std::string& text) {
  return guarded("piece JSON", [&] {
    const json j = json::parse(text);
    PieceRecord r;
    r.kind = j.at("kind").get<std::string>();
    r.topology = j.at("topology").get<std::string>();
    r.c = j.at("c").get<double>();
    r.H = j.at("H").get<double>();
    if (!j.at("u0").is_null()) r.u0 = j.at("u0").get<double>();
    if (!j.at("a").is_null()) r.a = j.at("a").get<int>();
    r.R = j.at("R").get<double>();
    r.s_star = j.at("s_star").get<double>();
    r.residuals = {j.at("residuals").at(0).get<double>(), j.at("residuals").at(1).get<double>()};
    r.kappa_g = j.at("kappa_g").get<double>();
    r.kappa_g_fd = j.at("kappa_g_fd").get<double>();
    const json& gb = j.at("gauss_bonnet");
    r.gauss_bonnet.interior = gb.at("interior").get<double>();
    r.gauss_bonnet.boundary = gb.at("boundary").get<double>();
    r.gauss_bonnet.chi = gb.at("chi").get<int>();
    r.gauss_bonnet.defect = gb.at("defect").get<double>();
    r.gauss_bonnet_n_s = gb.at("n_s").get<std::size_t>();
    return r;
  });
}

PinchSummary summarize(const PinchReport& report, const FreeBoundaryPiece& piece) {
  PinchSummary s;
  s.c = piece.c;
  s.H = piece.H;
  if (piece.params) {
    s.u0 = piece.params->u0;
    s.a = piece.params->a;
  }
  s.R = piece.R;
  s.topology = to_string(piece.topology);
  s.tol = report.tol;
  s.n_samples = report.samples.size();
  s.min_margin = report.min_margin;
  if (!report.samples.empty()) {
    const auto& b = report.samples[report.argmin].base;
    s.argmin = {b.s, b.theta};
  }
  for (std::size_t idx : report.equality_points) {
    const auto& b = report.samples[idx].base;
    s.equality_points.push_back({b.s, b.theta});
  }
  s.umbilic = to_string(report.umbilic.kind);
  s.umbilic_clusters = report.umbilic.clusters.size();
  s.min_r_locus = to_string(report.min_r.shape);
  s.sign = to_string(sign_analysis(report, piece.c));
  s.verdict = to_string(report.verdict);
  return s;
}

std::string to_json(const PinchSummary& s) {
  json eq = json::array();
  for (const auto& e : s.equality_points) eq.push_back({{"s", e[0]}, {"theta", e[1]}});
  json j{{"params",
          {{"c", s.c},
           {"H", s.H},
           {"u0", s.u0 ? json(*s.u0) : json(nullptr)},
           {"a", s.a ? json(*s.a) : json(nullptr)},
           {"R", s.R},
           {"topology", s.topology},
           {"tol_eq", s.tol.eq},
           {"tol_umb", s.tol.umb},
           {"tol_r", s.tol.r}}},
         {"n_samples", s.n_samples},
         {"min_margin", s.min_margin},
         {"argmin", {{"s", s.argmin[0]}, {"theta", s.argmin[1]}}},
         {"equality_points", eq},
         {"umbilic", s.umbilic},
         {"umbilic_clusters", s.umbilic_clusters},
         {"min_r_locus", s.min_r_locus},
         {"sign", s.sign},
         {"verdict", s.verdict}};
  return j.dump(2);
}

PinchSummary parse_pinch(const std::string& text) {
  return guarded("pinch JSON", [&] {
    const json j = json::parse(text);
    PinchSummary s;
    const json& p = j.at("params");
    s.c = p.at("c").get<double>();
    s.H = p.at("H").get<double>();
    if (!p.at("u0").is_null()) s.u0 = p.at("u0").get<double>();
    if (!p.at("a").is_null()) s.a = p.at("a").get<int>();
    s.R = p.at("R").get<double>();
    s.topology = p.at("topology").get<std::string>();
    s.tol.eq = p.at("tol_eq").get<double>();
    s.tol.umb = p.at("tol_umb").get<double>();
    s.tol.r = p.at("tol_r").get<double>();
    s.n_samples = j.at("n_samples").get<std::size_t>();
    s.min_margin = j.at("min_margin").get<double>();
    s.argmin = {j.at("argmin").at("s").get<double>(), j.at("argmin").at("theta").get<double>()};
    for (const auto& e : j.at("equality_points")) {
      s.equality_points.push_back({e.at("s").get<double>(), e.at("theta").get<double>()});
    }
    s.umbilic = j.at("umbilic").get<std::string>();
    s.umbilic_clusters = j.at("umbilic_clusters").get<std::size_t>();
    s.min_r_locus = j.at("min_r_locus").get<std::string>();
    s.sign = j.at("sign").get<std::string>();
    s.verdict = j.at("verdict").get<std::string>();
    return s;
  });
}

std::string to_json(const ScanRecord& rec) {
  json scan = json::array();
  for (const auto& [u0, R] : rec.scan) scan.push_back({{"u0", u0}, {"R", number_or_null(R)}});
  json j{{"R_target", rec.R_target}, {"u0", rec.u0}, {"iterations", rec.iterations}, {"scan", scan}};
  return j.dump(2);
}

std::size_t CsvTable::column(std::string_view name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  throw Error(ErrorCode::IoError, fmt::format("CSV has no column '{}'", name));
}

CsvTable parse_csv(const std::string& text) {
  CsvTable table;
  std::istringstream in(text);
  std::string line;
  auto split = [](const std::string& l) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(l);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!l.empty() && l.back() == ',') cells.emplace_back();
    return cells;
  };
  if (!std::getline(in, line)) throw Error(ErrorCode::IoError, "empty CSV");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  table.header = split(line);
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto cells = split(line);
    if (cells.size() != table.header.size()) {
      throw Error(ErrorCode::IoError, fmt::format("CSV line {} has {} cells, expected {}", line_no,
                                                  cells.size(), table.header.size()));
    }
    std::vector<double> row;
    row.reserve(cells.size());
    for (const auto& c : cells) {
      try {
        std::size_t used = 0;
        row.push_back(std::stod(c, &used));
        if (used != c.size()) throw std::invalid_argument(c);
      } catch (const std::exception&) {
        throw Error(ErrorCode::IoError, fmt::format("CSV line {}: '{}' is not a number", line_no, c));
      }
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, fmt::format("cannot open '{}'", path.string()));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::filesystem::path& path, const std::string& content) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, fmt::format("cannot write '{}'", path.string()));
  out << content;
  if (!out) throw Error(ErrorCode::IoError, fmt::format("write to '{}' failed", path.string()));
}

}  // namespace cmclab::io
