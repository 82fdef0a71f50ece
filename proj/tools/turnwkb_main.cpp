// Command-line front end: single solves and the experiment studies
// (convergence, blow-up, benchmark, interface-approximation sweep).
#include <cmath>
#include <complex>
#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "turnwkb/errors.hpp"
#include "turnwkb/experiments.hpp"
#include "turnwkb/hybrid.hpp"

namespace {

// Accepts plain floating-point literals and the shorthand "b^k" (e.g. 2^-8).
double parse_real(const std::string& s) {
  const auto caret = s.find('^');
  std::size_t used = 0;
  double value;
  if (caret == std::string::npos) {
    value = std::stod(s, &used);
    if (used != s.size()) throw turnwkb::DomainError("bad number: " + s);
    return value;
  }
  const double base = parse_real(s.substr(0, caret));
  const double expo = parse_real(s.substr(caret + 1));
  value = std::pow(base, expo);
  return value;
}

// Flattens space-separated option repeats and comma-separated sublists.
std::vector<double> parse_list(const std::vector<std::string>& tokens) {
  std::vector<double> out;
  for (const std::string& tok : tokens) {
    std::stringstream ss(tok);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (!item.empty()) out.push_back(parse_real(item));
    }
  }
  return out;
}

void apply_potential(turnwkb::StudyConfig& cfg, const std::string& sel) {
  if (sel == "airy-linear") {
    cfg.potential = turnwkb::StudyConfig::Potential::airy_linear;
  } else if (sel == "pcf-quadratic") {
    cfg.potential = turnwkb::StudyConfig::Potential::pcf_quadratic;
  } else {
    cfg.potential = turnwkb::StudyConfig::Potential::file;
    cfg.coefficient_path = sel;
  }
}

std::vector<double> default_eps() {
  std::vector<double> v;
  for (int k = 4; k <= 10; ++k) v.push_back(std::ldexp(1.0, -k));
  return v;
}

int run(int argc, char** argv) {
  CLI::App app{
      "Hybrid solver for eps^2 psi'' + a(x) psi = 0 on [0, 1] with a "
      "first-order turning point at x = 0: analytic turning-point solution "
      "on [0, x1], second-order WKB marching on [x1, 1]."};
  app.require_subcommand(1);
  // free the short flag -h: the grammar uses --h for the step-size list
  app.set_help_flag("--help", "print this help message and exit");

  std::string potential = "airy-linear";
  std::vector<std::string> eps_tokens, h_tokens, x1_list_tokens;
  double x1 = 0.1;
  double x0 = -0.5;
  std::string phase = "exact";
  std::string out;
  std::string format = "csv";
  int repeats = 5;

  auto add_common = [&](CLI::App* sub) {
    sub->set_help_flag("--help", "print this help message and exit");
    sub->add_option("--potential", potential,
                    "airy-linear | pcf-quadratic | <coefficient config path>");
    sub->add_option("--eps", eps_tokens,
                    "epsilon values, e.g. --eps 1e-3 0.01 2^-8 "
                    "(default 2^-4 ... 2^-10)");
    sub->add_option("--h", h_tokens, "grid step sizes (default 1e-3)");
    sub->add_option("--x1", x1, "turning-region edge in (0, 1)")
        ->capture_default_str();
    sub->add_option("--phase", phase, "exact | simpson:<m> | adaptive:<tol>")
        ->capture_default_str();
    sub->add_option("--out", out, "output path")->required();
    sub->add_option("--format", format, "csv | json")
        ->capture_default_str()
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--repeats", repeats, "timed repeats after one warm-up")
        ->capture_default_str();
    return sub;
  };

  CLI::App* solve = add_common(app.add_subcommand(
      "solve", "one solve; writes the sampled solution (CSV + JSON header)"));
  CLI::App* conv = add_common(app.add_subcommand(
      "convergence", "error sweep over (eps, h) with order fits"));
  CLI::App* blow = add_common(app.add_subcommand(
      "blowup", "solution maxima vs eps with blow-up law fits"));
  CLI::App* bench = add_common(app.add_subcommand(
      "bench", "marcher vs adaptive RK baseline at matched accuracy"));
  CLI::App* approx = add_common(app.add_subcommand(
      "approx", "turning-region approximation error sweep over (eps, x1)"));
  approx->add_option("--x1-list", x1_list_tokens,
                     "interface sweep (default 0.02 0.05 0.1 0.15 0.2)");
  approx
      ->add_option("--x0", x0,
                   "left endpoint of the composite potential (documented "
                   "config value; the sampled window is [0, 1])")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  turnwkb::StudyConfig cfg;
  apply_potential(cfg, potential);
  cfg.eps_list = eps_tokens.empty() ? default_eps() : parse_list(eps_tokens);
  cfg.h_list = h_tokens.empty() ? std::vector<double>{1e-3}
                                : parse_list(h_tokens);
  cfg.x1 = x1;
  cfg.phase = turnwkb::PhaseMethod::parse(phase);
  cfg.repeats = repeats;
  cfg.x1_list = parse_list(x1_list_tokens);
  cfg.x0 = x0;

  if (solve->parsed()) {
    if (cfg.eps_list.size() != 1 || cfg.h_list.size() != 1) {
      throw turnwkb::DomainError(
          "solve requires exactly one --eps and one --h value");
    }
    const turnwkb::Coefficient c = cfg.make_coefficient();
    const turnwkb::HybridSolution sol = turnwkb::solve_potential(
        c, cfg.eps_list[0], turnwkb::uniform_grid(c.x1(), cfg.h_list[0]),
        cfg.phase);
    turnwkb::write_solution(sol, out);
    const turnwkb::Complex a = sol.basis_alpha();
    std::printf("solve: eps=%g h=%g x1=%g alpha=%.*g%+.*gi |alpha|=%.6g\n",
                sol.eps, cfg.h_list[0], sol.x1, 6, a.real(), 6, a.imag(),
                std::abs(a));
    std::printf("wrote %s\n", out.c_str());
  } else if (conv->parsed()) {
    const turnwkb::ConvergenceResult r = turnwkb::run_convergence(cfg);
    turnwkb::write_convergence(r, cfg, out, format);
    for (const turnwkb::OrderFit& f : r.h_orders) {
      std::printf("h-order at eps=%g: %.3f +- %.3f (%d points)\n",
                  f.fixed_value, f.fit.slope, f.fit.half_width, f.fit.points);
    }
    for (const turnwkb::OrderFit& f : r.eps_orders) {
      std::printf("eps-order at h=%g: %.3f +- %.3f (%d points)\n",
                  f.fixed_value, f.fit.slope, f.fit.half_width, f.fit.points);
    }
    std::printf("wrote %s\n", out.c_str());
  } else if (blow->parsed()) {
    const turnwkb::BlowupResult r = turnwkb::run_blowup(cfg);
    std::printf("max|psi| slope vs eps: %.4f +- %.4f (expected -1/6)\n",
                r.psi_slope.slope, r.psi_slope.half_width);
    std::printf("max eps|psi'| slope: %.4f; max/min ratio: %.4f\n",
                r.eps_dpsi_slope.slope, r.eps_dpsi_ratio);
    turnwkb::write_blowup(r, cfg, out, format);
    std::printf("wrote %s\n", out.c_str());
  } else if (bench->parsed()) {
    const turnwkb::BenchResult r = turnwkb::run_bench(cfg);
    for (const turnwkb::BenchRow& row : r.rows) {
      std::printf(
          "eps=%-10g march: err=%.3e t=%.3es | dp45(tol=%.2e): err=%.3e "
          "t=%.3es steps=%ld+%ld\n",
          row.eps, row.march_err, row.march_runtime_s, row.dp45_tol,
          row.dp45_err, row.dp45_runtime_s, row.dp45_accepted,
          row.dp45_rejected);
    }
    turnwkb::write_bench(r, cfg, out, format);
    std::printf("wrote %s\n", out.c_str());
  } else if (approx->parsed()) {
    const turnwkb::ApproxResult r = turnwkb::run_approx_study(cfg);
    std::printf("max|E| exponents: x1 %.3f +- %.3f, eps %.3f +- %.3f\n",
                r.x1_slope.slope, r.x1_slope.half_width, r.eps_slope.slope,
                r.eps_slope.half_width);
    turnwkb::write_approx(r, cfg, out, format);
    std::printf("wrote %s\n", out.c_str());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const turnwkb::AssumptionError& e) {
    std::cerr << "assumption violated: " << e.what() << '\n';
    return 2;
  } catch (const turnwkb::PrecisionError& e) {
    std::cerr << "precision not certified: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
