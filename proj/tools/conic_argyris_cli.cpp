// Command-line driver: mesh generation and validation, Hermite
// interpolation, continuity checks, and convergence studies on domains
// bounded by conic arcs.

#include <cstdlib>
#include <iostream>

#include <CLI11.hpp>

#include "conic_argyris/conic_argyris.hpp"

namespace ca = conic_argyris;

namespace {

int resolve_threads(int flag_value) {
  if (flag_value > 0) return flag_value;
  if (const char* env = std::getenv("CONIC_ARGYRIS_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  return 1;
}

struct CheckSummary {
  double residual_tol = 1e-8;
  bool ok = true;

  void line(const std::string& label, double value, double tol) {
    const bool pass = value <= tol;
    ok = ok && pass;
    std::cout << (pass ? "[pass] " : "[FAIL] ") << label << " = "
              << ca::format_double(value) << " (tol " << ca::format_double(tol)
              << ")\n";
  }
};

int cmd_mesh(const std::string& domain_arg, int n, const std::string& out,
             const std::string& report_path) {
  const ca::Domain domain = ca::load_domain(domain_arg);
  const ca::Mesh mesh = ca::generate_disk_mesh(domain, n);
  const ca::ValidationReport rep = ca::validate(mesh);
  std::cout << rep.summary();
  int n_pie = 0, n_buf = 0, n_ord = 0;
  for (const auto& t : mesh.triangles) {
    if (t.cls == ca::TriClass::pie) ++n_pie;
    else if (t.cls == ca::TriClass::buffer) ++n_buf;
    else ++n_ord;
  }
  std::cout << "triangles: " << mesh.triangles.size() << " (pie " << n_pie
            << ", buffer " << n_buf << ", ordinary " << n_ord << ")\n"
            << "h = "
            << ca::format_double(*std::max_element(mesh.diameters.begin(),
                                                   mesh.diameters.end()))
            << ", shape regularity R = "
            << ca::format_double(ca::shape_regularity(mesh)) << "\n";
  if (!out.empty()) ca::save_json_file(out, ca::mesh_to_json(mesh));
  if (!report_path.empty()) {
    ca::json j;
    j["all_pass"] = rep.all_pass();
    j["items"] = ca::json::array();
    for (const auto& item : rep.items) {
      ca::json e;
      e["condition"] = item.condition;
      e["pass"] = item.pass;
      e["offenders"] = item.offenders;
      j["items"].push_back(e);
    }
    ca::save_json_file(report_path, j);
  }
  return rep.all_pass() ? 0 : 1;
}

int cmd_interpolate(const std::string& mesh_path, const std::string& fn_id,
                    const std::string& out, double tol, int threads) {
  const ca::Mesh mesh = ca::mesh_from_json(ca::load_json_file(mesh_path));
  const ca::TestFunction fn = ca::make_test_function(fn_id, mesh.domain);
  if (!fn.vanishes_on_boundary) {
    std::cerr << "error: test function '" << fn_id
              << "' does not vanish on the boundary\n";
    return 2;
  }
  if (!ca::self_check(fn, ca::interior_probe_points(mesh.domain, 100))) {
    std::cerr << "error: test function failed its derivative self-check\n";
    return 2;
  }
  const ca::Spline s = ca::interpolate(mesh, fn.data, threads);
  if (!out.empty()) ca::save_json_file(out, ca::spline_to_json(s));

  const auto cond = ca::check_interpolation_conditions(mesh, s, fn.data);
  const auto [jump_v, jump_d] = ca::max_c1_jump(mesh, s);
  CheckSummary sum;
  sum.line("max vertex-derivative residual", cond.vertex_partials, tol);
  sum.line("max edge-normal residual", cond.edge_normals, tol);
  sum.line("max pie-center residual", cond.pie_centers, tol);
  sum.line("max buffer-center residual", cond.buffer_centers, tol);
  sum.line("max C1 value jump", jump_v, tol);
  sum.line("max C1 normal-derivative jump", jump_d, tol);
  return sum.ok ? 0 : 1;
}

int cmd_check(const std::string& mesh_path, const std::string& spline_path,
              double tol) {
  const ca::Mesh mesh = ca::mesh_from_json(ca::load_json_file(mesh_path));
  const ca::Spline s = ca::spline_from_json(ca::load_json_file(spline_path));
  if (s.pieces.size() != mesh.triangles.size()) {
    std::cerr << "error: spline has " << s.pieces.size()
              << " pieces for a mesh with " << mesh.triangles.size()
              << " triangles\n";
    return 2;
  }
  CheckSummary sum;
  double jv = 0.0, jd = 0.0;
  int worst_edge = -1;
  for (int e = 0; e < static_cast<int>(mesh.edges.size()); ++e) {
    if (mesh.edges[static_cast<std::size_t>(e)].count != 2) continue;
    const auto [v, d] = ca::c1_jump(mesh, s, e);
    if (std::max(v, d) > std::max(jv, jd)) worst_edge = e;
    jv = std::max(jv, v);
    jd = std::max(jd, d);
  }
  sum.line("max C1 value jump", jv, tol);
  sum.line("max C1 normal-derivative jump", jd, tol);
  if (!sum.ok && worst_edge >= 0) {
    const auto& E = mesh.edges[static_cast<std::size_t>(worst_edge)];
    std::cout << "  worst edge: (" << E.a << "," << E.b << ") between triangles "
              << E.tris[0] << " and " << E.tris[1] << "\n";
  }
  const double sup = ca::sup_norm_estimate(mesh, s);
  sum.line("max boundary trace / sup norm",
           ca::boundary_trace_max(mesh, s) / std::max(sup, 1e-300),
           ca::tolerance::boundary_trace);
  sum.line("max vertex order-2 mismatch",
           ca::max_vertex_second_order_mismatch(mesh, s), tol);
  return sum.ok ? 0 : 1;
}

int cmd_convergence(const std::string& domain_arg, std::vector<int> levels,
                    const std::string& fn_id, const std::string& out,
                    double margin, const std::string& format, int threads) {
  ca::StudyConfig cfg;
  cfg.domain = ca::load_domain(domain_arg);
  cfg.levels = std::move(levels);
  cfg.fn_id = fn_id;
  cfg.order_margin = margin;
  cfg.threads = threads;
  const ca::StudyResult res = ca::run_convergence_study(cfg);
  const std::string csv = ca::study_csv(res);
  std::cout << csv;
  for (std::size_t i = 0; i < res.levels.size(); ++i)
    std::cout << "# level " << (i + 1) << ": R = "
              << ca::format_double(res.levels[i].shape_regularity)
              << ", triangles = " << res.levels[i].n_triangles << "\n";
  std::cout << "# expected orders 6, 5, 4; pass threshold margin "
            << ca::format_double(res.order_margin) << "\n"
            << (res.pass ? "# PASS" : "# FAIL") << "\n";
  if (!out.empty()) {
    if (format == "json")
      ca::save_json_file(out, ca::study_to_json(res));
    else {
      std::ofstream f(out);
      if (!f) throw std::runtime_error("cannot write " + out);
      f << csv;
    }
  }
  return res.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"C1 Hermite interpolation by Argyris-type splines on "
               "conic-bounded domains"};
  app.require_subcommand(1);

  std::string domain_arg = "circle";
  std::string mesh_path, spline_path, fn_id = "circle_sin", out, report_path;
  std::string format = "csv";
  std::vector<int> levels;
  double tol = 1e-8, margin = 0.5;
  int threads = 0;

  auto* mesh_cmd = app.add_subcommand("mesh", "generate and validate a mesh");
  mesh_cmd->add_option("--domain", domain_arg,
                       "domain file or builtin name (circle, ellipse)");
  mesh_cmd->add_option("--levels", levels, "boundary vertex count (one value)")
      ->required();
  mesh_cmd->add_option("--out", out, "mesh JSON output path");
  mesh_cmd->add_option("--report", report_path, "validation report JSON path");

  auto* interp_cmd =
      app.add_subcommand("interpolate", "interpolate a test function");
  interp_cmd->add_option("mesh", mesh_path, "mesh JSON file")->required();
  interp_cmd->add_option("--fn", fn_id, "test function id");
  interp_cmd->add_option("--out", out, "spline JSON output path");
  interp_cmd->add_option("--tol", tol, "residual tolerance");
  interp_cmd->add_option("--threads", threads,
                         "worker threads (or CONIC_ARGYRIS_THREADS)");

  auto* check_cmd =
      app.add_subcommand("check", "continuity/boundary checks of a spline");
  check_cmd->add_option("mesh", mesh_path, "mesh JSON file")->required();
  check_cmd->add_option("spline", spline_path, "spline JSON file")->required();
  check_cmd->add_option("--tol", tol, "jump tolerance");

  auto* conv_cmd =
      app.add_subcommand("convergence", "interpolation convergence study");
  conv_cmd->add_option("--domain", domain_arg,
                       "domain file or builtin name (circle, ellipse)");
  conv_cmd->add_option("--levels", levels,
                       "boundary vertex counts, strictly increasing")
      ->required();
  conv_cmd->add_option("--fn", fn_id, "test function id");
  conv_cmd->add_option("--out", out, "report output path");
  conv_cmd->add_option("--tol", margin, "order pass margin (expected - margin)");
  conv_cmd->add_option("--format", format, "output format: csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  conv_cmd->add_option("--threads", threads,
                       "worker threads (or CONIC_ARGYRIS_THREADS)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (mesh_cmd->parsed()) {
      if (levels.size() != 1) {
        std::cerr << "error: mesh takes exactly one --levels value\n";
        return 2;
      }
      return cmd_mesh(domain_arg, levels[0], out, report_path);
    }
    if (interp_cmd->parsed())
      return cmd_interpolate(mesh_path, fn_id, out, tol,
                             resolve_threads(threads));
    if (check_cmd->parsed()) return cmd_check(mesh_path, spline_path, tol);
    if (conv_cmd->parsed())
      return cmd_convergence(domain_arg, levels, fn_id, out, margin, format,
                             resolve_threads(threads));
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
