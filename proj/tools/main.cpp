#include <cmath>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"

using namespace airyspec::cli;

namespace {

struct RawFlags {
  double c = NAN, s = NAN, alpha = NAN, tol = NAN;
  std::string k = "1", j = "0", grid, xi_grid, format;
};

void add_common(CLI::App* sub, RunConfig& cfg, RawFlags& raw) {
  sub->add_option("--out", cfg.out, "Output file ('-' for stdout)");
  sub->add_option("--format", raw.format, "csv or json (default from --out extension)")
      ->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--threads", cfg.threads, "Worker threads for grid evaluations")->check(CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Eigen-decomposition of the Airy integral operator, Tracy-Widom distributions and Airy beams"};
  app.require_subcommand(1);
  RunConfig cfg;
  RawFlags raw;

  auto* spectrum = app.add_subcommand("spectrum", "chi_j, lambda_j and psi_j(0) for j = 0..n");
  spectrum->add_option("--c", raw.c, "Operator parameter")->required();
  spectrum->add_option("--n", cfg.n, "Highest index");

  auto* eigfun = app.add_subcommand("eigfun", "Sample psi_j on a grid");
  eigfun->add_option("--c", raw.c, "Operator parameter")->required();
  eigfun->add_option("--j", raw.j, "Comma-separated eigenfunction indices");
  eigfun->add_option("--grid", raw.grid, "min:max:count (default 0:10:201)");

  CLI::App* dist[2];
  const char* dist_names[2] = {"cdf", "pdf"};
  const char* dist_help[2] = {"F_beta(k; s)", "d/ds F_beta(k; s)"};
  for (int i = 0; i < 2; ++i) {
    dist[i] = app.add_subcommand(dist_names[i], dist_help[i]);
    dist[i]->add_option("--beta", cfg.beta, "1, 2 or 4");
    dist[i]->add_option("--k", raw.k, "Comma-separated levels (default 1)");
    dist[i]->add_option("--s", raw.s, "Single point instead of a grid");
    dist[i]->add_option("--grid", raw.grid, "min:max:count (default -8:4:121)");
    dist[i]->add_option("--tol", raw.tol, "Spectral truncation tolerance (default 1e-18)");
  }

  auto* table = app.add_subcommand("table", "CDF and PDF at the reference (k, s) rows, with timings");
  table->add_option("--beta", cfg.beta, "1, 2 or 4");
  table->add_option("--tol", raw.tol, "Spectral truncation tolerance (default 1e-18)");

  auto* beam = app.add_subcommand("beam", "Propagate a beam and write |Phi|^2 on an (xi, s) grid");
  beam->add_option("--kind", cfg.kind, "finite, eigen or infinite")->check(CLI::IsMember({"finite", "eigen", "infinite"}));
  beam->add_option("--alpha", raw.alpha, "Aperture of the finite Airy beam (default 0.202)");
  beam->add_option("--c", raw.c, "Parameter of the eigenfunction beam (default -2)");
  beam->add_option("--grid", raw.grid, "s grid min:max:count (default -60:30:4096)");
  beam->add_option("--xi-grid", raw.xi_grid, "xi grid min:max:count (default 0:12:256)");

  auto* selftest = app.add_subcommand("selftest", "Run the identity and reference-value checks");
  selftest->add_flag("--golden-only", cfg.golden_only, "Only the fast reference rows");
  selftest->add_flag("--perturb-lambda0", cfg.perturb_lambda0, "Add 1e-8 to lambda_0 before the identity checks");

  for (auto* sub : {spectrum, eigfun, dist[0], dist[1], table, beam}) add_common(sub, cfg, raw);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    cfg.command = app.get_subcommands().front()->get_name();
    if (!std::isnan(raw.c)) cfg.c = raw.c;
    if (!std::isnan(raw.s)) cfg.s = raw.s;
    if (!std::isnan(raw.alpha)) cfg.alpha = raw.alpha;
    if (!std::isnan(raw.tol)) {
      if (!(raw.tol > 0)) throw UsageError("--tol must be positive");
      cfg.tol = raw.tol;
    }
    cfg.k = parse_int_list(raw.k);
    cfg.j = parse_int_list(raw.j);
    if (!raw.grid.empty()) cfg.grid = parse_grid(raw.grid);
    if (!raw.xi_grid.empty()) cfg.xi_grid = parse_grid(raw.xi_grid);
    if (raw.format == "json" || (raw.format.empty() && cfg.out.size() >= 5 && cfg.out.ends_with(".json")))
      cfg.format = Format::json;

    if (cfg.command == "selftest") return cmd_selftest(cfg) == 0 ? 0 : 2;

    Table t;
    if (cfg.command == "spectrum") t = cmd_spectrum(cfg);
    else if (cfg.command == "eigfun") t = cmd_eigfun(cfg);
    else if (cfg.command == "cdf") t = cmd_cdf(cfg);
    else if (cfg.command == "pdf") t = cmd_pdf(cfg);
    else if (cfg.command == "table") t = cmd_table(cfg);
    else t = cmd_beam(cfg);
    write_table(t, cfg.out, cfg.format);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
