// amoeba: command-line front end.
//
// Exit codes: 0 success, 1 input error, 2 numerical failure, 3 verification
// failure.  Errors are reported as JSON on stderr.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "amoeba/amoeba.hpp"
#include "amoeba/checks.hpp"
#include "amoeba/cycles.hpp"
#include "amoeba/error.hpp"
#include "amoeba/harnack.hpp"
#include "amoeba/newton.hpp"
#include "amoeba/poly.hpp"
#include "amoeba/render.hpp"
#include "amoeba/report.hpp"
#include "amoeba/ronkin.hpp"

namespace {

using namespace amoeba;

struct RunConfig {
  std::string command;
  std::string poly_text, poly_file;
  std::string window, res, format;
  int n_theta = 0;  // 0: per-command default
  int grid_n = 256;
  double band = 0.0;  // 0: per-command default
  std::uint64_t seed = 0;
  std::string out, json_path;
};

std::vector<double> split_numbers(const std::string& s, const char* what) {
  std::vector<double> v;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double d = 0.0;
    try {
      d = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size() || !std::isfinite(d))
      throw input_error("bad_flag", std::string("cannot read ") + what + " '" + s + "'");
    v.push_back(d);
  }
  return v;
}

class Runner {
 public:
  explicit Runner(RunConfig c) : cfg_(std::move(c)) {}

  int run() {
    const std::string& c = cfg_.command;
    if (c == "selftest") return selftest();
    load_poly();
    Json doc;
    doc["polynomial"] = render(poly_);
    std::string summary;
    int code = 0;
    if (c == "parse") summary = cmd_parse(doc);
    else if (c == "newton") summary = cmd_newton(doc);
    else if (c == "raster") summary = cmd_raster(doc);
    else if (c == "coamoeba") summary = cmd_coamoeba(doc);
    else if (c == "components") summary = cmd_components(doc);
    else if (c == "order") summary = cmd_order(doc);
    else if (c == "ronkin") summary = cmd_ronkin(doc);
    else if (c == "harnack") summary = cmd_harnack(doc);
    else if (c == "cycles") summary = cmd_cycles(doc, code);
    else if (c == "render") summary = cmd_render(doc);
    else throw input_error("bad_command", "unknown subcommand '" + c + "'");
    emit(doc, summary);
    return code;
  }

 private:
  RunConfig cfg_;
  LaurentPoly2 poly_{{Term{{0, 0}, 1.0}}};

  void load_poly() {
    if (!cfg_.poly_text.empty() && !cfg_.poly_file.empty())
      throw input_error("bad_flag", "give either --poly or --poly-file, not both");
    std::string text = cfg_.poly_text;
    if (!cfg_.poly_file.empty()) {
      std::ifstream in(cfg_.poly_file);
      if (!in) throw input_error("io", "cannot read " + cfg_.poly_file);
      std::stringstream ss;
      ss << in.rdbuf();
      text = ss.str();
      while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.pop_back();
    }
    if (text.empty()) throw input_error("bad_flag", "a polynomial is required (--poly or --poly-file)");
    poly_ = parse_poly(text);
  }

  int n_theta(int fallback) const {
    const int n = cfg_.n_theta > 0 ? cfg_.n_theta : fallback;
    if (n < 8) throw input_error("bad_flag", "--ntheta must be at least 8");
    return n;
  }

  double band(int nt, double fallback) const {
    if (cfg_.band < 0.0 || !std::isfinite(cfg_.band)) throw input_error("bad_flag", "--band must be positive");
    return cfg_.band > 0.0 ? cfg_.band : fallback > 0.0 ? fallback : default_band(nt);
  }

  GridWindow window(double half = 6.0, int res = 400) const {
    GridWindow w;
    w.x0 = w.y0 = -half;
    w.x1 = w.y1 = half;
    w.nx = w.ny = res;
    if (!cfg_.window.empty()) {
      const auto v = split_numbers(cfg_.window, "--window");
      if (v.size() != 4) throw input_error("bad_flag", "--window takes x0,x1,y0,y1");
      w.x0 = v[0], w.x1 = v[1], w.y0 = v[2], w.y1 = v[3];
    }
    if (!cfg_.res.empty()) {
      const auto v = split_numbers(cfg_.res, "--res");
      if (v.empty() || v.size() > 2) throw input_error("bad_flag", "--res takes N or NX,NY");
      for (double d : v)
        if (d != std::floor(d) || d < 2 || d > 20000) throw input_error("bad_flag", "--res out of range");
      w.nx = static_cast<int>(v[0]);
      w.ny = static_cast<int>(v.size() == 2 ? v[1] : v[0]);
    }
    w.validate();
    return w;
  }

  void emit(const Json& doc, const std::string& summary) const {
    const std::string text = doc.dump(2) + "\n";
    if (!cfg_.json_path.empty()) {
      std::ofstream f(cfg_.json_path, std::ios::binary);
      if (!f) throw input_error("io", "cannot write " + cfg_.json_path);
      f << text;
      std::cout << summary << "\n";
    } else {
      std::cout << text;
    }
  }

  std::ofstream open_out() const {
    std::ofstream f(cfg_.out, std::ios::binary);
    if (!f) throw input_error("io", "cannot write " + cfg_.out);
    return f;
  }

  std::string format(const char* fallback) const {
    const std::string f = cfg_.format.empty() ? fallback : cfg_.format;
    if (f != "ppm" && f != "pgm" && f != "svg") throw input_error("bad_flag", "--format is ppm, pgm or svg");
    return f;
  }

  // --- subcommands -------------------------------------------------------

  std::string cmd_parse(Json& doc) {
    Json terms = Json::array();
    for (const auto& t : poly_.terms())
      terms.push_back({{"exponent", to_json(LatticePoint{t.exp.a1, t.exp.a2})}, {"coef", to_json(t.coef)}});
    doc["terms"] = terms;
    doc["real"] = is_real(poly_, 0.0);
    return "parsed " + std::to_string(poly_.size()) + " terms: " + render(poly_);
  }

  std::string cmd_newton(Json& doc) {
    const NewtonPolygon np = newton_polygon(poly_);
    doc["newton"] = to_json(np);
    Json cones = Json::array();
    for (const auto& q : lattice_points(np))
      cones.push_back({{"nu", to_json(q)}, {"location", static_cast<int>(locate(np, q).where)},
                       {"cone", to_json(dual_cone(np, q))}});
    doc["cones"] = cones;
    return "Newton polygon with " + std::to_string(np.vertices.size()) + " vertices, twice-area " +
           std::to_string(np.area2);
  }

  AmoebaRaster raster(int default_res = 400) const {
    const int nt = n_theta(256);
    return rasterize(poly_, window(6.0, default_res), nt, band(nt, 0.0));
  }

  static Json raster_json(const AmoebaRaster& r) {
    const AreaEstimate a = amoeba_area(r);
    return {{"window", to_json(r.window)},
            {"n_theta", r.n_theta},
            {"band", r.band},
            {"cells", {{"amoeba", r.count(CellState::Amoeba)},
                       {"complement", r.count(CellState::Complement)},
                       {"uncertain", r.count(CellState::Uncertain)}}},
            {"area", {{"estimate", a.estimate}, {"half_width", a.half_width}, {"truncated", a.truncated}}}};
  }

  std::string cmd_raster(Json& doc) {
    const AmoebaRaster r = raster();
    doc["raster"] = raster_json(r);
    if (!cfg_.out.empty()) {
      const std::string f = format("ppm");
      if (f == "pgm") throw input_error("bad_flag", "raster writes ppm or svg; use coamoeba for pgm");
      auto out = open_out();
      if (f == "ppm") write_ppm(r, out);
      else write_svg(r, find_components(poly_, r), out);
    }
    return std::to_string(r.count(CellState::Amoeba)) + " amoeba cells of " +
           std::to_string(r.cells.size());
  }

  CoamoebaRaster coamoeba() const {
    CoamoebaOptions o;
    if (!cfg_.res.empty()) o.resolution = window().nx;
    o.n_theta = n_theta(o.n_theta);
    return coamoeba_raster(poly_, o);
  }

  std::string cmd_coamoeba(Json& doc) {
    const CoamoebaRaster c = coamoeba();
    doc["coamoeba"] = {{"resolution", c.resolution}, {"nonzero", c.nonzero()},
                       {"fraction", static_cast<double>(c.nonzero()) / c.hits.size()}};
    if (!cfg_.out.empty()) {
      if (format("pgm") != "pgm") throw input_error("bad_flag", "coamoeba writes pgm");
      auto out = open_out();
      write_pgm(c, out);
    }
    return std::to_string(c.nonzero()) + " nonzero coamoeba cells";
  }

  std::vector<ComponentInfo> components(Json& doc) {
    const AmoebaRaster r = raster();
    const auto cs = find_components(poly_, r);
    doc["newton"] = to_json(newton_polygon(poly_));
    doc["raster"] = raster_json(r);
    Json arr = Json::array();
    for (const auto& c : cs) arr.push_back(to_json(c));
    doc["components"] = arr;
    return cs;
  }

  static std::string ord_list(const std::vector<ComponentInfo>& cs) {
    std::string s;
    for (const auto& c : cs)
      s += " (" + std::to_string(c.ord.x) + "," + std::to_string(c.ord.y) + ")";
    return s;
  }

  std::string cmd_components(Json& doc) {
    const auto cs = components(doc);
    return std::to_string(cs.size()) + " components:" + ord_list(cs);
  }

  // Root-counting order at each component seed, sampled and refined.
  std::string cmd_order(Json& doc) {
    const auto cs = components(doc);
    const int nt = n_theta(256);
    int agree = 0;
    for (std::size_t k = 0; k < cs.size(); ++k) {
      const MembershipResult m = membership(poly_, cs[k].seed_x, cs[k].seed_y, nt, band(nt, 0.0));
      const ExactState e = exact_state(poly_, cs[k].seed_x, cs[k].seed_y);
      Json o = {{"state", m.state == CellState::Complement ? "complement"
                          : m.state == CellState::Amoeba   ? "amoeba"
                                                           : "uncertain"},
                {"ord", m.state == CellState::Complement ? to_json(m.ord) : Json(nullptr)},
                {"refined_ord", e.amoeba ? Json(nullptr) : to_json(e.ord)}};
      agree += m.state == CellState::Complement && !e.amoeba && m.ord == e.ord;
      doc["components"][k]["order"] = o;
    }
    return std::to_string(agree) + "/" + std::to_string(cs.size()) + " seeds with consistent order";
  }

  std::string cmd_ronkin(Json& doc) {
    const auto cs = components(doc);
    if (cfg_.grid_n < 16) throw input_error("bad_flag", "--grid must be at least 16");
    int match = 0;
    for (std::size_t k = 0; k < cs.size(); ++k) {
      const auto& c = cs[k];
      const RonkinValue v = ronkin_value(poly_, c.seed_x, c.seed_y, cfg_.grid_n);
      const Gradient g = ronkin_gradient(poly_, c.seed_x, c.seed_y, cfg_.grid_n);
      const ArgEstimate a = arg_map_estimate(poly_, c.seed_x, c.seed_y, cfg_.grid_n);
      const LatticePoint rounded{static_cast<int>(std::lround(g.gx)), static_cast<int>(std::lround(g.gy))};
      match += rounded == c.ord;
      doc["components"][k]["ronkin"] = {
          {"value", v.value},
          {"singular_fraction", v.singular_fraction},
          {"gradient", Json::array({g.gx, g.gy})},
          {"rounded", to_json(rounded)},
          {"matches_ord", rounded == c.ord},
          {"arg_estimate", {{"plus", Json::array({a.plus_z, a.plus_w})},
                            {"minus", Json::array({a.minus_z, a.minus_w})}}}};
    }
    doc["grid_n"] = cfg_.grid_n;
    return std::to_string(match) + "/" + std::to_string(cs.size()) + " rounded gradients match ord";
  }

  std::string cmd_harnack(Json& doc) {
    const int nt = n_theta(512);
    const GridWindow w = window(7.0, 800);
    const HarnackReport h = harnack_area_test(poly_, w, {nt, band(nt, kAreaBand)});
    doc["newton"] = to_json(newton_polygon(poly_));
    doc["harnack"] = to_json(h);
    doc["harnack"]["window"] = to_json(w);
    doc["harnack"]["n_theta"] = nt;
    Json tt = nullptr;
    try {
      const AmoebaRaster r = rasterize(poly_, w, nt, default_band(nt));
      tt = to_json(two_to_one_stats(poly_, r, 200, cfg_.seed));
    } catch (const Error& e) {
      if (e.code() != "insufficient_samples") throw;
    }
    doc["harnack"]["two_to_one"] = tt;
    char buf[160];
    std::snprintf(buf, sizeof buf, "ratio %.4f, verdict %s", h.ratio, h.verdict ? "true" : "false");
    return buf;
  }

  std::string cmd_cycles(Json& doc, int& code) {
    const auto cs = components(doc);
    const RealnessTransform rt = realness_transform(poly_, 1e-9);
    doc["realness"] = to_json(rt);
    const ThetaReport th = theta_points(poly_, cs, 32, rt);
    bool ok = true;
    for (std::size_t k = 0; k < cs.size(); ++k) {
      const CycleSpec s = construct_cycle(poly_, cs[k], rt);
      auto& j = doc["components"][k];
      j["theta"] = to_json(th.entries[k].center);
      j["cycle"] = to_json(s);
      ok &= closes_up(s);
      if (!cs[k].bounded) {
        const ClosureReport cl = verify_closure(poly_, cs[k], s);
        j["cycle"]["closure"] = to_json(cl);
        ok &= cl.passed;
      }
    }
    const int nt = n_theta(256);
    const LinkMatrix m = linking_matrix(poly_, cs, nt, band(nt, 0.0));
    doc["link_matrix"] = to_json(m);
    const bool ident = is_identity(m);
    doc["link_identity"] = ident;
    doc["closure_ok"] = ok;
    if (!ident || !ok) code = 3;
    return std::to_string(cs.size()) + " cycles, link matrix " + (ident ? "identity" : "NOT identity") +
           ", closure " + (ok ? "ok" : "FAILED");
  }

  std::string cmd_render(Json& doc) {
    if (cfg_.out.empty()) throw input_error("bad_flag", "render needs --out");
    const std::string f = format("ppm");
    if (f == "pgm") {
      const CoamoebaRaster c = coamoeba();
      auto out = open_out();
      write_pgm(c, out);
      doc["coamoeba"] = {{"resolution", c.resolution}, {"nonzero", c.nonzero()}};
      return "wrote coamoeba " + cfg_.out;
    }
    const AmoebaRaster r = raster();
    doc["raster"] = raster_json(r);
    auto out = open_out();
    if (f == "ppm") {
      write_ppm(r, out);
    } else {
      const auto cs = find_components(poly_, r);
      std::vector<std::vector<std::pair<double, double>>> loops;
      for (const auto& c : cs)
        if (c.bounded) {
          auto pts = trace_boundary(poly_, c, 64, 1e-6);
          pts.push_back(pts.front());
          loops.push_back(std::move(pts));
        }
      write_svg(r, cs, out, loops);
    }
    return "wrote " + f + " " + cfg_.out;
  }

  int selftest() const {
    const checks::Scale s{true};
    int failed = 0, id = 0;
    for (auto fn : checks::all()) {
      const checks::Result r = checks::run(fn, s, ++id);
      std::cout << (r.passed ? "[PASS] " : "[FAIL] ") << r.id << " " << r.name << ": " << r.detail << "\n"
                << std::flush;
      failed += !r.passed;
    }
    std::cout << (id - failed) << "/" << id << " checks passed\n";
    return failed ? 3 : 0;
  }
};

void report_error(const Json& j) { std::cerr << j.dump() << "\n"; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Amoebas, coamoebas and dual toric cycles of curves in (C*)^2", "amoeba"};
  app.fallthrough();
  app.require_subcommand(1);
  RunConfig cfg;
  app.add_option("--poly", cfg.poly_text, "Laurent polynomial in z, w");
  app.add_option("--poly-file", cfg.poly_file, "file holding the polynomial");
  app.add_option("--window", cfg.window, "x0,x1,y0,y1");
  app.add_option("--res", cfg.res, "N or NX,NY");
  app.add_option("--ntheta", cfg.n_theta, "angles per fiber");
  app.add_option("--grid", cfg.grid_n, "Ronkin quadrature grid size");
  app.add_option("--band", cfg.band, "boundary band in log units");
  app.add_option("--seed", cfg.seed, "random seed");
  app.add_option("--out", cfg.out, "image output path");
  app.add_option("--json", cfg.json_path, "JSON output path");
  app.add_option("--format", cfg.format, "ppm, pgm or svg");
  const std::vector<std::pair<const char*, const char*>> commands = {
      {"parse", "parse and print the canonical polynomial"},
      {"newton", "Newton polygon, lattice points and dual cones"},
      {"raster", "amoeba membership raster"},
      {"coamoeba", "coamoeba hit raster"},
      {"components", "complement components and their orders"},
      {"order", "order map at component seeds"},
      {"ronkin", "Ronkin function and gradient at component seeds"},
      {"harnack", "Harnack area test"},
      {"cycles", "dual cycles, closure checks and linking matrix"},
      {"render", "write an image of the amoeba or coamoeba"},
      {"selftest", "run the verification checks at reduced size"},
  };
  for (const auto& [name, help] : commands) app.add_subcommand(name, help);
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    report_error({{"error", {{"class", "input"}, {"code", "bad_flag"}, {"message", e.what()}}}});
    return 1;
  }
  cfg.command = app.get_subcommands().front()->get_name();
  try {
    return Runner(cfg).run();
  } catch (const Error& e) {
    report_error(error_json(e));
    return exit_code(e.error_class());
  } catch (const std::exception& e) {
    report_error({{"error", {{"class", "numerical"}, {"code", "internal"}, {"message", e.what()}}}});
    return 2;
  }
}
