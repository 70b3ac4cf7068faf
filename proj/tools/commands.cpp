#include "commands.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

#include "airyspec/beams.hpp"
#include "airyspec/distributions.hpp"
#include "airyspec/eigfun.hpp"
#include "airyspec/spectrum.hpp"

namespace airyspec::cli {

using nlohmann::json;

std::vector<double> GridSpec::points() const {
  std::vector<double> p(count);
  for (int i = 0; i < count; ++i) p[i] = i + 1 == count ? max : min + (max - min) * i / (count - 1);
  return p;
}

GridSpec parse_grid(const std::string& text) {
  GridSpec g;
  std::stringstream ss(text);
  std::string a, b, n;
  if (!std::getline(ss, a, ':') || !std::getline(ss, b, ':') || !std::getline(ss, n) || a.empty() || b.empty() || n.empty())
    throw UsageError("grid must look like min:max:count, got '" + text + "'");
  try {
    size_t pos = 0;
    g.min = std::stod(a, &pos);
    if (pos != a.size()) throw std::invalid_argument(a);
    g.max = std::stod(b, &pos);
    if (pos != b.size()) throw std::invalid_argument(b);
    g.count = std::stoi(n, &pos);
    if (pos != n.size()) throw std::invalid_argument(n);
  } catch (const std::logic_error&) {
    throw UsageError("grid must look like min:max:count, got '" + text + "'");
  }
  if (g.count < 2) throw UsageError("grid count must be at least 2");
  if (!(g.min < g.max)) throw UsageError("grid min must be below max");
  return g;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    try {
      size_t pos = 0;
      out.push_back(std::stoi(item, &pos));
      if (pos != item.size()) throw std::invalid_argument(item);
    } catch (const std::logic_error&) {
      throw UsageError("expected a comma-separated integer list, got '" + text + "'");
    }
  }
  if (out.empty()) throw UsageError("empty integer list");
  return out;
}

void parallel_for(int count, int threads, const std::function<void(int)>& body) {
  threads = std::max(1, std::min(threads, count));
  if (threads == 1) {
    for (int i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex m;
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (int i; !failed && (i = next++) < count;) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard lock(m);
          if (!error) error = std::current_exception();
          failed = true;
        }
      }
    });
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

namespace {

double require(const std::optional<double>& v, const char* flag) {
  if (!v) throw UsageError(std::string("missing required flag ") + flag);
  return *v;
}

void check_beta_k(const RunConfig& cfg) {
  if (cfg.beta != 1 && cfg.beta != 2 && cfg.beta != 4) throw UsageError("--beta must be 1, 2 or 4");
  for (int k : cfg.k)
    if (k < 1) throw UsageError("--k values must be at least 1");
}

json grid_json(const GridSpec& g) { return {{"min", g.min}, {"max", g.max}, {"count", g.count}}; }

DistValue eval_dist(bool pdf, int k, const SpectralFactors& f) {
  if (f.beta == 2) return pdf ? pdf_gue(k, f) : cdf_gue(k, f);
  return pdf ? pdf_beta(k, f) : cdf_beta(k, f);
}

Table distribution(const RunConfig& cfg, bool pdf) {
  check_beta_k(cfg);
  std::vector<double> s_points;
  json params = {{"beta", cfg.beta}, {"k", cfg.k}, {"kind", pdf ? "pdf" : "cdf"}};
  if (cfg.s) {
    s_points = {*cfg.s};
    params["s"] = *cfg.s;
  } else {
    GridSpec g = cfg.grid.value_or(GridSpec{-8, 4, 121});
    s_points = g.points();
    params["grid"] = grid_json(g);
  }
  const double tol = cfg.tol.value_or(1e-18);
  params["tol"] = tol;
  const int nk = static_cast<int>(cfg.k.size()), ns = static_cast<int>(s_points.size());
  std::vector<std::vector<double>> rows(nk * ns);
  parallel_for(ns, cfg.threads, [&](int i) {
    SpectralFactors f = spectral_factors(s_points[i], cfg.beta, tol);
    for (int q = 0; q < nk; ++q) {
      DistValue v = eval_dist(pdf, cfg.k[q], f);
      rows[q * ns + i] = {double(cfg.k[q]), s_points[i], v.value, v.log_value, double(v.sign), v.est_abs_err};
    }
  });
  Table t;
  t.params = std::move(params);
  t.columns = {"k", "s", "value", "log_value", "sign", "est_abs_err"};
  t.rows = std::move(rows);
  return t;
}

}  // namespace

Table cmd_spectrum(const RunConfig& cfg) {
  const double c = require(cfg.c, "--c");
  if (cfg.n < 0) throw UsageError("--n must be nonnegative");
  AirySpectrum sp = full_spectrum(c, cfg.n);
  Table t;
  const auto& p = sp.params;
  t.params = {{"c", c}, {"n", cfg.n}, {"a", p.a}, {"N", p.N}, {"Nprime", p.Nprime}};
  t.columns = {"j", "chi", "sign", "log_abs_lambda", "lambda", "psi0"};
  for (int j = 0; j <= cfg.n; ++j)
    t.rows.push_back({double(j), sp.chi[j], double(sp.lambda_sign[j]), sp.lambda_log[j], sp.lambda[j], sp.psi0[j]});
  return t;
}

Table cmd_eigfun(const RunConfig& cfg) {
  const double c = require(cfg.c, "--c");
  for (int j : cfg.j)
    if (j < 0) throw UsageError("--j values must be nonnegative");
  const int jmax = *std::max_element(cfg.j.begin(), cfg.j.end());
  GridSpec g = cfg.grid.value_or(GridSpec{0, 10, 201});
  const auto xs = g.points();
  // Negative x needs the continuation, which needs the eigenvalues.
  const bool negative = g.min < 0;
  AirySpectrum sp = negative ? full_spectrum(c, jmax) : compute_eigenfunctions(c, jmax);
  Table t;
  t.params = {{"c", c}, {"j", cfg.j}, {"grid", grid_json(g)}, {"a", sp.params.a}, {"N", sp.params.N}};
  t.params["chi"] = sp.chi;
  t.columns = {"x"};
  for (int j : cfg.j) t.columns.push_back("psi_" + std::to_string(j));
  t.rows.assign(xs.size(), {});
  parallel_for(static_cast<int>(xs.size()), cfg.threads, [&](int i) {
    std::vector<double> row{xs[i]};
    for (int j : cfg.j)
      row.push_back(xs[i] >= 0 ? eval_psi(sp.expansions[j], xs[i]) : psi_continuation(sp, j, xs[i]));
    t.rows[i] = std::move(row);
  });
  return t;
}

Table cmd_cdf(const RunConfig& cfg) { return distribution(cfg, false); }
Table cmd_pdf(const RunConfig& cfg) { return distribution(cfg, true); }

Table cmd_table(const RunConfig& cfg) {
  check_beta_k(cfg);
  // (k, s) pairs spanning both tails for k = 1, 2, 3.
  static const std::vector<std::pair<int, double>> rows = {
      {1, 50}, {1, 25}, {1, 10}, {1, 5},  {1, 2},   {1, 0},   {1, -2},  {1, -5}, {1, -10}, {1, -20}, {2, 30},
      {2, 0},  {2, -4}, {2, -6}, {2, -10}, {2, -12}, {3, 15}, {3, 4},  {3, -4}, {3, -8},  {3, -10}, {3, -13}};
  const double tol = cfg.tol.value_or(1e-18);
  Table t;
  t.params = {{"beta", cfg.beta}, {"tol", tol}};
  t.columns = {"k", "s", "factors", "cdf", "cdf_log", "cdf_err", "pdf", "pdf_log", "pdf_err", "seconds"};
  t.rows.assign(rows.size(), {});
  parallel_for(static_cast<int>(rows.size()), cfg.threads, [&](int i) {
    auto [k, s] = rows[i];
    auto t0 = std::chrono::steady_clock::now();
    SpectralFactors f = spectral_factors(s, cfg.beta, tol);
    DistValue F = eval_dist(false, k, f), P = eval_dist(true, k, f);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    t.rows[i] = {double(k), s, double(f.count), F.value, F.log_value, F.est_abs_err,
                 P.value, P.log_value, P.est_abs_err, secs};
  });
  return t;
}

Table cmd_beam(const RunConfig& cfg) {
  BeamKind kind;
  double param = 0;
  json params = {{"kind", cfg.kind}};
  if (cfg.kind == "finite") {
    kind = BeamKind::finite;
    param = cfg.alpha.value_or(0.202);
    if (!(param > 0)) throw UsageError("--alpha must be positive");
    params["alpha"] = param;
  } else if (cfg.kind == "eigen") {
    kind = BeamKind::eigen;
    param = cfg.c.value_or(-2.0);
    params["c"] = param;
  } else if (cfg.kind == "infinite") {
    kind = BeamKind::infinite;
  } else {
    throw UsageError("--kind must be finite, eigen or infinite");
  }
  GridSpec sg = cfg.grid.value_or(GridSpec{-60, 30, 4096});
  GridSpec xg = cfg.xi_grid.value_or(GridSpec{0, 12, 256});
  if (sg.min < -60 || sg.max > 300) throw UsageError("--grid must lie within [-60, 300]");
  const auto s = sg.points(), xi = xg.points();

  InitialProfile init = initial_profile(kind, param, s);
  BeamProfile beam = propagate(init.values, s, xi);

  double drift = 0;
  for (size_t r = 0; r < xi.size(); ++r) drift = std::max(drift, std::abs(beam.row_energy(r) - beam.energy) / beam.energy);
  params["grid"] = grid_json(sg);
  params["xi_grid"] = grid_json(xg);
  params["removed_energy"] = init.removed_energy;
  params["energy"] = beam.energy;
  params["spectral_tail"] = beam.spectral_tail;
  params["max_norm_drift"] = drift;

  Table t;
  t.columns = {"xi", "s", "re", "im", "intensity"};
  const size_t M = s.size();
  t.rows.reserve(xi.size() * M);
  const bool want_json = cfg.format == Format::json;
  json jrows = json::array();
  std::vector<double> re(M), im(M);
  for (size_t i = 0; i < M; ++i) {
    re[i] = init.values[i].real();
    im[i] = init.values[i].imag();
  }
  params["s"] = s;
  params["initial_profile"] = {{"re", re}, {"im", im}};
  for (size_t r = 0; r < xi.size(); ++r) {
    std::vector<double> inten(M);
    for (size_t i = 0; i < M; ++i) {
      const cplx& v = beam.at(r, i);
      inten[i] = std::norm(v);
      t.rows.push_back({xi[r], s[i], v.real(), v.imag(), inten[i]});
    }
    if (want_json) jrows.push_back({{"xi", xi[r]}, {"intensity", std::move(inten)}});
  }
  t.params = std::move(params);
  if (want_json) t.json_rows = std::move(jrows);
  return t;
}

}  // namespace airyspec::cli
