#include "airyspec/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "airyspec/eigfun.hpp"
#include "airyspec/specfun.hpp"
#include "airyspec/spectrum.hpp"

namespace airyspec {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Below this, 1 - lambda^2 from the eigenvalue itself has lost too many digits.
constexpr double kDeficitSwitch = 1e-3;

void check_k(int k) {
  if (k < 1) throw std::invalid_argument("k must be a positive integer");
}

void check_beta(int beta) {
  if (beta != 1 && beta != 2 && beta != 4) throw std::invalid_argument("beta must be 1, 2 or 4");
}

// m * exp(L) with the log taken apart so that deep tails survive.
DistValue make_value(double m, double L, double rel_err, double abs_floor = 0) {
  DistValue r;
  if (m == 0 || !std::isfinite(L)) {
    r.value = 0;
    r.log_value = kNegInf;
    r.sign = 1;
    r.est_abs_err = abs_floor;
    return r;
  }
  r.sign = m > 0 ? 1 : -1;
  r.log_value = std::log(std::fabs(m)) + L;
  r.value = r.sign * std::exp(r.log_value);
  r.est_abs_err = rel_err * std::fabs(r.value) + abs_floor;
  return r;
}

// Sum of m_i exp(L_i) as (mantissa, log scale).
struct LogAcc {
  double m = 0, L = kNegInf;
  void add(double mi, double Li) {
    if (mi == 0 || !std::isfinite(Li)) return;
    if (m == 0) {
      m = mi;
      L = Li;
    } else if (Li > L) {
      m = m * std::exp(L - Li) + mi;
      L = Li;
    } else {
      m += mi * std::exp(Li - L);
    }
  }
};

// Coefficients of prod_i (q_i + l2_i t + w_i u), degree < k in t and < 2 in u.
// A[j] ~ t^j, B[j] ~ t^j u, both times exp(L).  Every term is nonnegative.
struct GueTable {
  std::vector<double> A, B;
  double L = 0;
};

GueTable gue_table(int k, const std::vector<double>& l2, const std::vector<double>& q, const std::vector<double>* w) {
  GueTable t;
  t.A.assign(k, 0.0);
  t.B.assign(k, 0.0);
  t.A[0] = 1;
  for (size_t i = 0; i < q.size(); ++i) {
    for (int j = k - 1; j >= 0; --j) {
      if (w) t.B[j] = q[i] * t.B[j] + (j > 0 ? l2[i] * t.B[j - 1] : 0.0) + (*w)[i] * t.A[j];
      t.A[j] = q[i] * t.A[j] + (j > 0 ? l2[i] * t.A[j - 1] : 0.0);
    }
    double mx = 0;
    for (int j = 0; j < k; ++j) mx = std::max({mx, std::fabs(t.A[j]), std::fabs(t.B[j])});
    if (mx == 0) break;
    for (int j = 0; j < k; ++j) {
      t.A[j] /= mx;
      t.B[j] /= mx;
    }
    t.L += std::log(mx);
  }
  return t;
}

// log_t: the lambda^2 and w passed in were divided by exp(log_t).
DistValue gue_cdf_core(int k, const std::vector<double>& l2, const std::vector<double>& q, double log_t,
                       double trunc) {
  GueTable t = gue_table(k, l2, q, nullptr);
  LogAcc acc;
  for (int j = 0; j < k; ++j) acc.add(t.A[j], t.L + j * log_t);
  return make_value(acc.m, acc.L, 4 * kEps * (q.size() + k) + trunc);
}

DistValue gue_pdf_core(int k, const std::vector<double>& l2, const std::vector<double>& q,
                       const std::vector<double>& w, double log_t, double trunc) {
  GueTable t = gue_table(k, l2, q, &w);
  return make_value(t.B[k - 1], t.L + k * log_t, 4 * kEps * (q.size() + k) + trunc);
}

struct Dual {
  double v = 0, d = 0;
};
Dual operator+(Dual a, Dual b) { return {a.v + b.v, a.d + b.d}; }
Dual operator*(Dual a, Dual b) { return {a.v * b.v, a.v * b.d + a.d * b.v}; }
Dual operator*(double s, Dual a) { return {s * a.v, s * a.d}; }

// Truncated power series in delta = z - 1 with dual coefficients, times exp(L).
struct Series {
  std::vector<Dual> c;
  double L = 0;
};

std::vector<double> binomial_series(double alpha, int K, double x_sign, int x_power) {
  // (1 + x_sign * delta^x_power)^alpha through delta^K
  std::vector<double> out(K + 1, 0.0);
  double b = 1, sg = 1;
  for (int m = 0; m * x_power <= K; ++m) {
    out[m * x_power] = b * sg;
    b = b * (alpha - m) / (m + 1);
    sg *= x_sign;
  }
  return out;
}

std::vector<double> mul(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> r(a.size(), 0.0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; i + j < a.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

void mul_factor(Series& s, const std::vector<Dual>& f) {
  const int K = static_cast<int>(s.c.size()) - 1;
  std::vector<Dual> r(K + 1);
  for (int i = 0; i <= K; ++i)
    for (int j = 0; i + j <= K; ++j) r[i + j] = r[i + j] + s.c[i] * f[j];
  double mx = 0;
  for (const Dual& x : r) mx = std::max({mx, std::fabs(x.v), std::fabs(x.d)});
  if (mx > 0) {
    for (Dual& x : r) x = (1 / mx) * x;
    s.L += std::log(mx);
  }
  s.c = std::move(r);
}

// prod_i (1 + sign * lambda_i r(delta)), sign = -1 or +1.
Series det_series(const SpectralFactors& f, const std::vector<double>& r, int sign) {
  const int K = static_cast<int>(r.size()) - 1;
  Series s;
  s.c.assign(K + 1, Dual{});
  s.c[0] = {1, 0};
  std::vector<Dual> fac(K + 1);
  for (int i = 0; i < f.count; ++i) {
    double lam = f.lam[i], dl = f.dlam_ds[i];
    // 1 -/+ lambda at delta = 0, without cancellation when |lambda| ~ 1.
    double base;
    if (sign < 0)
      base = lam > 0 ? f.q[i] / (1 + lam) : 1 - lam;
    else
      base = lam < 0 ? f.q[i] / (1 - lam) : 1 + lam;
    fac[0] = {base, sign * dl};
    for (int m = 1; m <= K; ++m) fac[m] = {sign * lam * r[m], sign * dl * r[m]};
    mul_factor(s, fac);
  }
  return s;
}

// F_beta(k; s) value (want_derivative = false) or its s-derivative.
DistValue beta_core(int k, const SpectralFactors& f, bool want_derivative) {
  const int K = k - 1;
  std::vector<double> r, pplus, pminus;
  if (f.beta == 4) {
    r = binomial_series(0.5, K, 1, 1);  // sqrt(1 + delta)
    pplus.assign(K + 1, 0.0);
    pplus[0] = 1;
    pminus = pplus;
  } else {
    r = binomial_series(0.5, K, -1, 2);  // sqrt(1 - delta^2)
    // sqrt(z / (2 - z)) = sqrt(1 + delta) (1 - delta)^{-1/2}
    std::vector<double> ratio = mul(binomial_series(0.5, K, 1, 1), binomial_series(-0.5, K, -1, 1));
    pplus = ratio;
    pminus = ratio;
    for (int m = 0; m <= K; ++m) {
      pplus[m] = (m == 0 ? 1 : 0) + ratio[m];
      pminus[m] = (m == 0 ? 1 : 0) - ratio[m];
    }
  }
  Series dm = det_series(f, r, -1), dp = det_series(f, r, +1);
  // G = p+ D- + p- D+ ; F = 1/2 sum_{j<k} (-1)^j G_j
  const double Lmax = std::max(dm.L, dp.L);
  const double sm = std::exp(dm.L - Lmax), sp = std::exp(dp.L - Lmax);
  double total = 0, mag = 0;
  for (int j = 0; j <= K; ++j) {
    double gj = 0;
    for (int m = 0; m <= j; ++m) {
      double a = want_derivative ? dm.c[j - m].d : dm.c[j - m].v;
      double b = want_derivative ? dp.c[j - m].d : dp.c[j - m].v;
      double t1 = pplus[m] * a * sm, t2 = pminus[m] * b * sp;
      gj += t1 + t2;
      mag += std::fabs(t1) + std::fabs(t2);
    }
    total += (j % 2 ? -0.5 : 0.5) * gj;
  }
  double rel = 4 * kEps * (f.count + k);
  DistValue out = make_value(total, Lmax, rel);
  // Cancellation between the alternating terms shows up as an absolute error.
  out.est_abs_err += 4 * kEps * (f.count + k) * 0.5 * mag * std::exp(Lmax);
  return out;
}

double truncation_estimate(const SpectralFactors& f) {
  if (f.count == 0) return 0;
  return f.lam2.back() / std::max(f.q.back(), 1e-300);
}

}  // namespace

std::vector<double> eigenvalue_deficits(double c, int imax) {
  if (imax < 0) return {};
  static const QuadratureRule gl = gauss_legendre(20);
  std::vector<double> I(imax + 1, 0.0), part(imax + 1);
  double hi = c;
  const double width = 1.0;
  for (int p = 0; p < 400; ++p) {
    std::fill(part.begin(), part.end(), 0.0);
    double lo = hi - width;
    for (size_t n = 0; n < gl.nodes.size(); ++n) {
      double t = lo + 0.5 * width * (gl.nodes[n] + 1);
      AirySpectrum sp = compute_eigenfunctions(t, imax);
      for (int i = 0; i <= imax; ++i) part[i] += 0.5 * width * gl.weights[n] * sp.psi0[i] * sp.psi0[i];
    }
    bool done = true;
    for (int i = 0; i <= imax; ++i) {
      I[i] += part[i];
      if (part[i] > 1e-17 * I[i]) done = false;
    }
    if (done) break;
    hi = lo;
  }
  std::vector<double> q(imax + 1);
  for (int i = 0; i <= imax; ++i) q[i] = -std::expm1(-I[i]);
  return q;
}

SpectralFactors spectral_factors(double s, int beta, double tol, int n_cap) {
  check_beta(beta);
  if (!(tol > 0)) throw std::invalid_argument("spectral_factors: tol must be positive");
  SpectralFactors f;
  f.s = s;
  f.beta = beta;
  f.c = beta == 2 ? s : 0.5 * s;
  const double g = beta == 2 ? 1.0 : 0.5;  // dc/ds
  int n = std::min(20, n_cap);
  AirySpectrum sp;
  for (;;) {
    sp = full_spectrum(f.c, n);
    if (2 * (sp.lambda_log[n] - sp.lambda_log[0]) < std::log(tol)) break;
    if (n >= n_cap)
      throw std::runtime_error("spectral_factors: eigenvalues have not decayed by n=" + std::to_string(n_cap));
    n = std::min(2 * n, n_cap);
  }
  const int m = n + 1;
  f.count = m;
  f.lam.resize(m);
  f.lam2.resize(m);
  f.lam2_log.resize(m);
  f.q.resize(m);
  f.psi0 = sp.psi0;
  f.dlam_ds.resize(m);
  f.dlam2_ds.resize(m);
  int imax = -1;
  for (int i = 0; i < m; ++i) {
    double ll = std::min(sp.lambda_log[i], 0.0);
    f.lam[i] = sp.lambda_sign[i] * std::exp(ll);
    f.lam2[i] = std::exp(2 * ll);
    f.lam2_log[i] = 2 * ll;
    f.q[i] = -std::expm1(2 * ll);
    if (f.q[i] < kDeficitSwitch) imax = i;
    double p2 = f.psi0[i] * f.psi0[i];
    f.dlam_ds[i] = -0.5 * g * f.lam[i] * p2;
    f.dlam2_ds[i] = -g * f.lam2[i] * p2;
  }
  if (imax >= 0) {
    std::vector<double> q = eigenvalue_deficits(f.c, imax);
    for (int i = 0; i <= imax; ++i) {
      f.q[i] = q[i];
      f.lam2[i] = 1 - q[i];
      f.lam2_log[i] = std::log1p(-q[i]);
    }
  }
  return f;
}

DistValue gue_series_cdf(int k, const std::vector<double>& lam2, const std::vector<double>& q) {
  check_k(k);
  if (lam2.size() != q.size()) throw std::invalid_argument("gue_series_cdf: size mismatch");
  return gue_cdf_core(k, lam2, q, 0.0, 0.0);
}

DistValue gue_series_pdf(int k, const std::vector<double>& lam2, const std::vector<double>& q,
                         const std::vector<double>& w) {
  check_k(k);
  if (lam2.size() != q.size() || w.size() != q.size()) throw std::invalid_argument("gue_series_pdf: size mismatch");
  return gue_pdf_core(k, lam2, q, w, 0.0, 0.0);
}

namespace {

// lambda^2 and w = -d lambda^2/ds rescaled by lambda_0^2 so that right-tail
// values far below the double range still come out in log form.
struct ScaledGue {
  std::vector<double> l2, w;
  double log_t = 0;
};

ScaledGue scaled_gue(const SpectralFactors& f) {
  if (f.beta != 2) throw std::invalid_argument("GUE evaluation needs beta = 2 factors");
  ScaledGue r;
  r.l2.resize(f.count);
  r.w.resize(f.count);
  // Rescale only when lambda_0^2 is small enough to matter.
  double lt = f.lam2_log.empty() ? 0.0 : f.lam2_log[0];
  if (lt > std::log(1e-100)) lt = 0;
  r.log_t = lt;
  for (int i = 0; i < f.count; ++i) {
    r.l2[i] = std::exp(f.lam2_log[i] - lt);
    r.w[i] = r.l2[i] * f.psi0[i] * f.psi0[i];
  }
  return r;
}

}  // namespace

DistValue cdf_gue(int k, const SpectralFactors& f) {
  check_k(k);
  ScaledGue g = scaled_gue(f);
  return gue_cdf_core(k, g.l2, f.q, g.log_t, truncation_estimate(f));
}

DistValue pdf_gue(int k, const SpectralFactors& f) {
  check_k(k);
  ScaledGue g = scaled_gue(f);
  return gue_pdf_core(k, g.l2, f.q, g.w, g.log_t, truncation_estimate(f));
}

DistValue cdf_beta(int k, const SpectralFactors& f) {
  check_k(k);
  if (f.beta != 1 && f.beta != 4) throw std::invalid_argument("cdf_beta: beta must be 1 or 4");
  return beta_core(k, f, false);
}

DistValue pdf_beta(int k, const SpectralFactors& f) {
  check_k(k);
  if (f.beta != 1 && f.beta != 4) throw std::invalid_argument("pdf_beta: beta must be 1 or 4");
  return beta_core(k, f, true);
}

DistValue cdf_gue(int k, double s) {
  check_k(k);
  return cdf_gue(k, spectral_factors(s, 2));
}

DistValue pdf_gue(int k, double s) {
  check_k(k);
  return pdf_gue(k, spectral_factors(s, 2));
}

DistValue cdf_beta(int beta, int k, double s) {
  check_k(k);
  if (beta != 1 && beta != 4) throw std::invalid_argument("cdf_beta: beta must be 1 or 4");
  return cdf_beta(k, spectral_factors(s, beta));
}

DistValue pdf_beta(int beta, int k, double s) {
  check_k(k);
  if (beta != 1 && beta != 4) throw std::invalid_argument("pdf_beta: beta must be 1 or 4");
  return pdf_beta(k, spectral_factors(s, beta));
}

}  // namespace airyspec
