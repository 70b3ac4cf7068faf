#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "airyspec/banded.hpp"
#include "airyspec/distributions.hpp"
#include "airyspec/eigfun.hpp"
#include "airyspec/spectrum.hpp"
#include "commands.hpp"

namespace airyspec::cli {

namespace {

struct Report {
  int failures = 0;
  void check(bool ok, const std::string& name, const std::string& detail) {
    if (!ok) ++failures;
    std::printf("%s  %-34s %s\n", ok ? "PASS" : "FAIL", name.c_str(), detail.c_str());
    std::fflush(stdout);
  }
};

std::string err_detail(double err, double tol) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "max rel err %.2e (tol %.0e)", err, tol);
  return buf;
}

double dot(const std::vector<double>& x, const std::vector<double>& y) {
  long double s = 0;
  for (size_t i = 0; i < std::min(x.size(), y.size()); ++i) s += (long double)x[i] * y[i];
  return double(s);
}

// <x f, g> for coefficient vectors in the basis h_k^a: a x h_k = (2k+1) h_k - (k+1) h_{k+1} - k h_{k-1}.
double x_inner(double a, const std::vector<double>& f, const std::vector<double>& g) {
  const int n = static_cast<int>(f.size());
  long double s = 0;
  for (int k = 0; k < n; ++k) {
    long double v = (long double)(2 * k + 1) * f[k];
    if (k + 1 < n) v -= (long double)(k + 1) * f[k + 1];
    if (k > 0) v -= (long double)k * f[k - 1];
    s += v * g[k];
  }
  return double(s / a);
}

double rel(double got, double want) { return std::abs(got - want) / std::abs(want); }

// Coefficients of d psi_n / dc with the basis held fixed: solves the
// differentiated eigen-equation (A - chi) y = -(A' - chi') beta, y orthogonal to beta.
std::vector<double> dpsi_dc(const AirySpectrum& sp, int n) {
  FiveDiagonal A = assemble_A(sp.params);
  OperatorParams p1 = sp.params;
  p1.c += 1;
  FiveDiagonal A1 = assemble_A(p1);  // entries are affine in c
  const int dim = A.dim();
  const auto& b = sp.expansions[n].coeffs;
  std::vector<double> dAb(dim, 0.0);
  for (int i = 0; i < dim; ++i)
    for (int j = std::max(0, i - 2); j <= std::min(dim - 1, i + 2); ++j) dAb[i] += (A1.get(i, j) - A.get(i, j)) * b[j];
  const double chip = dot(b, dAb);
  std::vector<double> y(dim);
  for (int i = 0; i < dim; ++i) y[i] = -(dAb[i] - chip * b[i]);
  BandLU(A, sp.chi[n], 1e-300).solve(y);
  const double pr = dot(y, b);
  for (int i = 0; i < dim; ++i) y[i] -= pr * b[i];
  return y;
}

void identity_suite(Report& rep, double c, bool perturb) {
  const int n_max = 5;
  AirySpectrum sp = full_spectrum(c, n_max);
  if (perturb) sp.lambda[0] += 1e-8;
  const double a = sp.params.a, sa = std::sqrt(a);
  std::vector<std::vector<double>> d(n_max + 1), d2(n_max + 1);
  std::vector<double> p0(n_max + 1), p1(n_max + 1);
  for (int j = 0; j <= n_max; ++j) {
    d[j] = diff_expansion(sp.expansions[j]);
    d2[j] = diff_expansion({a, d[j]});
    p0[j] = sp.psi0[j];
    long double s = 0;
    for (double v : d[j]) s += v;
    p1[j] = double(sa * s);
  }
  double e1 = 0, e2 = 0, e3 = 0, e4 = 0, r3 = 0;
  for (int n = 0; n <= n_max; ++n) {
    r3 = std::max(r3, std::abs(sp.chi[n] * p0[n] + p1[n]) / std::abs(sp.chi[n] * p0[n]));
    auto dc = dpsi_dc(sp, n);
    for (int m = 0; m <= n_max; ++m) {
      const double ln = sp.lambda[n], lm = sp.lambda[m];
      const auto& bm = sp.expansions[m].coeffs;
      e1 = std::max(e1, rel(dot(d[n], bm), -lm / (ln + lm) * p0[n] * p0[m]));
      if (m == n) continue;
      const double w = p1[n] * p0[m] - p0[n] * p1[m];
      e2 = std::max(e2, rel(dot(d2[n], bm), lm / (ln - lm) * w));
      e3 = std::max(e3, rel(x_inner(a, sp.expansions[n].coeffs, bm), ln * lm / (ln * ln - lm * lm) * w));
      e4 = std::max(e4, rel(dot(dc, bm), ln * lm / (lm * lm - ln * ln) * p0[m] * p0[n]));
    }
  }
  char tag[32];
  std::snprintf(tag, sizeof tag, " c=%g", c);
  rep.check(e1 <= 1e-10, std::string("identity es1") + tag, err_detail(e1, 1e-10));
  rep.check(e2 <= 1e-10, std::string("identity es2") + tag, err_detail(e2, 1e-10));
  rep.check(e3 <= 1e-10, std::string("identity es3") + tag, err_detail(e3, 1e-10));
  rep.check(e4 <= 1e-10, std::string("identity es4") + tag, err_detail(e4, 1e-10));
  rep.check(r3 <= 1e-9, std::string("identity rec3") + tag, err_detail(r3, 1e-9));

  // Derivatives in c against central differences.
  const double h = 1e-5;
  AirySpectrum lo = full_spectrum(c - h, n_max), hi = full_spectrum(c + h, n_max);
  double el = 0, ec = 0;
  for (int j = 0; j <= n_max; ++j) {
    el = std::max(el, rel((hi.lambda[j] - lo.lambda[j]) / (2 * h), dlambda_dc(sp, j)));
    const auto& b = sp.expansions[j].coeffs;
    ec = std::max(ec, rel((hi.chi[j] - lo.chi[j]) / (2 * h), x_inner(a, b, b)));
  }
  rep.check(el <= 1e-6, std::string("dlambda/dc vs differences") + tag, err_detail(el, 1e-6));
  rep.check(ec <= 1e-6, std::string("dchi/dc vs differences") + tag, err_detail(ec, 1e-6));
}

struct Golden {
  bool pdf;
  int k;
  double s;
  double value;  // 6 significant digits
};

// Agreement to the six printed digits: within half a unit in the last place.
bool six_digits(double got, double want) {
  const double e = std::floor(std::log10(std::abs(want)));
  return std::abs(got - want) <= 0.5 * std::pow(10.0, e - 5) * (1 + 1e-9);
}

void golden_rows(Report& rep, bool quick) {
  // The k=1, s=-2 distribution value is 4.13224e-1; a widely reproduced
  // table prints 4.41322e-1 (digits shifted).  The Fredholm oracle in the
  // unit tests confirms the former.
  static const std::vector<Golden> fast = {
      {false, 1, 0, 9.69373e-1},   {false, 1, -2, 4.13224e-1},  {false, 2, -4, 3.35602e-1},
      {false, 3, -4, 9.59838e-1},  {true, 1, 0, 6.69753e-2},    {true, 1, -2, 4.41382e-1},
      {true, 2, 0, 1.21766e-5},    {true, 3, -4, 1.25051e-1},   {true, 1, 10, 1.90064e-21},
      {true, 1, 25, 6.56096e-76},  {true, 1, 5, 2.52106e-9},    {true, 3, 15, 2.48166e-126},
      {true, 3, 4, 5.50657e-33},   {false, 2, 0, 9.99998e-1},   {false, 1, 2, 9.99888e-1}};
  static const std::vector<Golden> slow = {
      {false, 1, -5, 2.13600e-5},  {true, 1, -5, 1.34039e-4},   {false, 2, -6, 3.69221e-4},
      {true, 2, -6, 2.10626e-3},   {false, 3, -8, 2.09567e-6},  {true, 3, -8, 1.76988e-5},
      {false, 1, -10, 4.21226e-37}};
  auto run = [&](const std::vector<Golden>& rows) {
    for (const auto& g : rows) {
      DistValue v = g.pdf ? pdf_gue(g.k, g.s) : cdf_gue(g.k, g.s);
      char name[64], detail[96];
      std::snprintf(name, sizeof name, "%s k=%d s=%g", g.pdf ? "pdf" : "cdf", g.k, g.s);
      std::snprintf(detail, sizeof detail, "got %.6e want %.5e", v.value, g.value);
      rep.check(six_digits(v.value, g.value), name, detail);
    }
  };
  run(fast);
  if (quick) return;
  run(slow);
  // Deep left tail: only the leading digits survive.
  DistValue v = cdf_gue(1, -20);
  double r = std::abs(std::expm1(v.log_value - std::log(1.77182e-290)));
  char detail[96];
  std::snprintf(detail, sizeof detail, "log-space rel err %.2e (tol 5e-3)", r);
  rep.check(r <= 5e-3, "cdf k=1 s=-20 (log space)", detail);
}

}  // namespace

int cmd_selftest(const RunConfig& cfg) {
  Report rep;
  auto t0 = std::chrono::steady_clock::now();
  if (!cfg.golden_only) {
    identity_suite(rep, 0.5, cfg.perturb_lambda0);
    identity_suite(rep, 2.0, cfg.perturb_lambda0);
  }
  golden_rows(rep, cfg.golden_only);
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("%d failure(s), %.2f s\n", rep.failures, secs);
  return rep.failures;
}

}  // namespace airyspec::cli
