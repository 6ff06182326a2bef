// tilebound: boundary dimension of self-affine tiles from the command line.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "tilebound/error.hpp"
#include "tilebound/geometry.hpp"
#include "tilebound/render.hpp"
#include "tilebound/report.hpp"

using namespace tilebound;

namespace {

enum Exit { kOk = 0, kParse = 2, kValidation = 3, kBudget = 4, kInternal = 5 };

struct Flags {
  std::string spec;
  std::optional<unsigned> k;
  unsigned k_min = 2;
  unsigned k_max = 6;
  std::vector<std::string> balls;
  std::string out;
  std::uint64_t budget = 100000000;
  double tol = 1e-9;
  std::string format = "json";
  unsigned threads = 0;
  int width = 800;
  int height = 800;
};

Ball parse_ball(const std::string& text, std::size_t n) {
  std::vector<long double> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      v.push_back(std::stold(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ParseError("--ball: cannot read '" + item + "' as a number");
    }
  }
  if (v.size() != n + 1) throw ParseError("--ball expects " + std::to_string(n) + " center coordinates and a radius");
  Ball b;
  b.radius = v.back();
  v.pop_back();
  b.center = std::move(v);
  if (!(b.radius > 0)) throw ParseError("--ball radius must be positive");
  return b;
}

void emit(const Json& j, const Flags& f) {
  const std::string body = f.format == "text" ? to_text(j) : dump(j);
  if (f.out.empty()) {
    std::cout << body;
    return;
  }
  std::ofstream o(f.out);
  if (!o) throw std::runtime_error("cannot open " + f.out + " for writing");
  o << body;
}

GeometryOptions geometry_options(const Flags& f) {
  GeometryOptions g;
  g.budget = f.budget;
  g.threads = f.threads;
  return g;
}

int run_validate(const Flags& f) {
  const PairSpec spec = read_spec(f.spec);
  const ValidationReport rep = validate(spec.matrix, spec.digits);
  Json j = validation_json(rep);
  j["warnings"] = spec.warnings;
  emit(j, f);
  return rep.pass() ? kOk : kValidation;
}

int run_analysis(const Flags& f, bool with_dimension) {
  const PairSpec spec = read_spec(f.spec);
  SpectrumOptions opts;
  opts.interval_tol = f.tol;
  const Analysis a = analyze(make_pair(spec), opts);
  emit(analysis_json(spec, a, with_dimension), f);
  return kOk;
}

unsigned require_k(const Flags& f) {
  if (!f.k) throw ParseError("--k is required for this command");
  return *f.k;
}

int run_boundary(const Flags& f) {
  const StandardPair pair = parse_spec(f.spec);
  const unsigned k = require_k(f);
  const ContactSystem cs = contact_system(pair);
  const BoundaryPointSet delta = delta_k(pair, cs.S, k, geometry_options(f));
  if (f.out.empty()) {
    write_point_cloud(std::cout, k, delta.n, delta.coords);
  } else {
    std::ofstream o(f.out);
    if (!o) throw std::runtime_error("cannot open " + f.out + " for writing");
    write_point_cloud(o, k, delta.n, delta.coords);
  }
  return kOk;
}

int run_render(const Flags& f) {
  const StandardPair pair = parse_spec(f.spec);
  const unsigned k = require_k(f);
  if (f.out.empty()) throw ParseError("--out is required for render");
  if (pair.dim() != 2) throw ParseError("render needs a planar pair (n = 2)");
  const ContactSystem cs = contact_system(pair);
  const GeometryOptions g = geometry_options(f);
  const ScaledPointSet gamma = gamma_k(pair, k, g);
  const BoundaryPointSet delta = delta_k(pair, cs.S, gamma, g);
  RasterImage img = rasterize(gamma, pair, f.width, f.height, 0.05);
  overlay(img, delta, pair);
  write_pnm(img, f.out);
  return kOk;
}

int run_estimate(const Flags& f) {
  const PairSpec spec = read_spec(f.spec);
  const StandardPair pair = make_pair(spec);
  const ContactSystem cs = contact_system(pair);
  const GeometryOptions g = geometry_options(f);
  std::vector<Ball> balls;
  for (const auto& b : f.balls) balls.push_back(parse_ball(b, pair.dim()));

  Json j;
  j["pair"] = pair_json(pair);
  j["growth"] = growth_json(growth_rate_estimate(pair, cs.S, f.k_min, f.k_max, std::nullopt, g), std::nullopt);
  j["growth_in_balls"] = Json::array();
  for (const auto& b : balls) {
    try {
      j["growth_in_balls"].push_back(growth_json(growth_rate_estimate(pair, cs.S, f.k_min, f.k_max, b, g), b));
    } catch (const std::domain_error& e) {
      Json err = growth_json(GrowthEstimate{}, b);
      err["error"] = e.what();
      j["growth_in_balls"].push_back(err);
    }
  }
  if (pair.dim() == 2) {
    const unsigned k = f.k.value_or(f.k_max);
    const BoundaryPointSet delta = delta_k(pair, cs.S, k, g);
    try {
      j["box_count"] = box_count_json(box_counting_estimate(delta, pair), k, delta.size());
    } catch (const std::domain_error& e) {
      j["box_count"] = {{"k", k}, {"points", delta.size()}, {"error", e.what()}};
    }
  } else {
    j["box_count"] = nullptr;
  }
  j["warnings"] = spec.warnings;
  emit(j, f);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Boundary dimension of self-affine tiles"};
  app.require_subcommand(1);
  Flags f;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("spec", f.spec, "Pair specification (JSON)")->required();
    sub->add_option("--out", f.out, "Output path (default: stdout)");
    sub->add_option("--format", f.format, "json or text")->check(CLI::IsMember({"json", "text"}));
    sub->add_option("--budget", f.budget, "Largest m^k to expand");
    sub->add_option("--tol", f.tol, "Special-eigenvalue interval tolerance");
    sub->add_option("--threads", f.threads, "Worker threads (0 = all cores)");
  };
  CLI::App* validate_cmd = app.add_subcommand("validate", "Check the standard-pair conditions");
  CLI::App* dimension_cmd = app.add_subcommand("dimension", "Full spectral analysis and dimension report");
  CLI::App* spectrum_cmd = app.add_subcommand("spectrum", "Contact matrices and eigen data only");
  CLI::App* boundary_cmd = app.add_subcommand("boundary", "Export the level-k boundary points");
  CLI::App* render_cmd = app.add_subcommand("render", "Write a PPM of level k with the boundary overlaid");
  CLI::App* estimate_cmd = app.add_subcommand("estimate", "Empirical growth rate and box-counting estimates");
  for (CLI::App* sub : {validate_cmd, dimension_cmd, spectrum_cmd, boundary_cmd, render_cmd, estimate_cmd})
    add_common(sub);
  for (CLI::App* sub : {boundary_cmd, render_cmd, estimate_cmd}) sub->add_option("--k", f.k, "Level");
  estimate_cmd->add_option("--k-min", f.k_min, "First level of the growth fit");
  estimate_cmd->add_option("--k-max", f.k_max, "Last level of the growth fit");
  estimate_cmd->add_option("--ball", f.balls, "Ball cx,cy,...,r restricting the count (repeatable)");
  render_cmd->add_option("--width", f.width, "Image width")->check(CLI::PositiveNumber);
  render_cmd->add_option("--height", f.height, "Image height")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kParse;
  }

  try {
    if (validate_cmd->parsed()) return run_validate(f);
    if (dimension_cmd->parsed()) return run_analysis(f, true);
    if (spectrum_cmd->parsed()) return run_analysis(f, false);
    if (boundary_cmd->parsed()) return run_boundary(f);
    if (render_cmd->parsed()) return run_render(f);
    if (estimate_cmd->parsed()) return run_estimate(f);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kParse;
  } catch (const ValidationError& e) {
    std::cerr << "validation failed: " << e.what() << "\n";
    return kValidation;
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return kBudget;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kInternal;
}
