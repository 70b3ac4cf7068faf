#include "airyspec/spectrum.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <stdexcept>
#include <string>

#include "airyspec/specfun.hpp"

namespace airyspec {

namespace {

double zeta(double t) { return 2.0 / 3.0 * t * std::sqrt(t); }

// Integrand decay exponent relative to y = 0, for s >= 0.
double decay(double a, double s, double y) { return zeta(s + y) - zeta(s) + 0.5 * a * y; }

// Cutoff where the integrand has dropped below ~1e-17 of its value at y = 0.
double cutoff(double a, double s) {
  constexpr double kTarget = 40.0;
  double hi = 1;
  while (decay(a, s, hi) < kTarget) hi *= 2;
  double lo = 0;
  for (int i = 0; i < 60; ++i) {
    double mid = 0.5 * (lo + hi);
    (decay(a, s, mid) < kTarget ? lo : hi) = mid;
  }
  return hi;
}

// int_lo^hi f with 24-point panels of width at most 1.
template <class F>
double panels(F f, double lo, double hi) {
  if (hi <= lo) return 0;
  const auto& gl = gauss_legendre_24();
  int m = std::min(400, std::max(1, static_cast<int>(std::ceil(hi - lo))));
  double w = (hi - lo) / m, sum = 0;
  for (int p = 0; p < m; ++p) {
    double part = 0, base = lo + p * w;
    for (size_t i = 0; i < gl.nodes.size(); ++i) part += gl.weights[i] * f(base + 0.5 * w * (gl.nodes[i] + 1));
    sum += 0.5 * w * part;
  }
  return sum;
}

// sqrt(a) int_0^inf Ai(y + s) e^{-ay/2} dy * e^{zeta(s)}, s >= 0.
double h0_nonneg_scaled(double a, double s) {
  double ymax = cutoff(a, s);
  double zs = zeta(s);
  auto f = [&](double y) { return airy_ai_scaled(s + y) * std::exp(zs - zeta(s + y) - 0.5 * a * y); };
  return std::sqrt(a) * panels(f, 0, ymax);
}

}  // namespace

double eval_point(double c) { return c >= 0 ? 0.0 : -c; }

FiveDiagonal assemble_B(const OperatorParams& p, double x) {
  const double a = p.a, s = x + p.c, a3 = a * a * a;
  const int M = p.Nprime;
  FiveDiagonal B(M + 1, false);
  B.set(0, 0, DBL_MIN);
  for (int k = 1; k <= M; ++k) {
    if (k >= 2) B.set(k, k - 2, k - 1);
    B.set(k, k - 1, -(4.0 * k - 1 + a * s - 0.25 * a3));
    B.set(k, k, 6.0 * k + 3 + 2 * a * s + 0.5 * a3);
    if (k + 1 <= M) B.set(k, k + 1, -(4.0 * k + 5 + a * s - 0.25 * a3));
    if (k + 2 <= M) B.set(k, k + 2, k + 2);
  }
  return B;
}

double h0_integral_scaled(double a, double s) {
  if (!(a > 0)) throw std::invalid_argument("h0_integral: a must be positive");
  if (s >= 0) return h0_nonneg_scaled(a, s);
  // Oscillatory stretch up to the zero of the argument, then the decaying tail.
  double head = std::sqrt(a) * panels([&](double y) { return airy_ai(y + s) * std::exp(-0.5 * a * y); }, 0, -s);
  return head + std::exp(0.5 * a * s) * h0_nonneg_scaled(a, 0);
}

double h0_integral(double a, double s) {
  double v = h0_integral_scaled(a, s);
  return s > 0 ? v * std::exp(-zeta(s)) : v;
}

HValues compute_H_scaled(const OperatorParams& p) { return compute_H_scaled(p, eval_point(p.c)); }

HValues compute_H_scaled(const OperatorParams& p, double x) {
  const double s = x + p.c;
  std::vector<double> v = inverse_power_null(assemble_B(p, x));
  if (v[0] == 0) throw std::runtime_error("compute_H: null vector has zero first entry");
  HValues H;
  double scale = h0_integral_scaled(p.a, s) / v[0];
  H.values.assign(v.begin(), v.begin() + p.N + 1);
  for (double& h : H.values) h *= scale;
  H.log_scale = s > 0 ? -zeta(s) : 0.0;
  H.x = x;
  return H;
}

std::vector<double> compute_H(const OperatorParams& p) {
  HValues H = compute_H_scaled(p);
  double f = std::exp(H.log_scale);
  for (double& h : H.values) h *= f;
  return H.values;
}

double LogValue::value() const { return sign * std::exp(log_abs); }

LogValue lambda_0(const AirySpectrum& spec, const HValues& H) {
  const auto& e = spec.expansions.at(0);
  const int N = static_cast<int>(e.coeffs.size()) - 1;
  std::vector<double> h = laguerre_h_all(N, e.a, H.x);
  double num = 0, den = 0;
  for (int k = 0; k <= N; ++k) {
    num += e.coeffs[k] * H.values[k];
    den += e.coeffs[k] * h[k];
  }
  if (den == 0 || !std::isfinite(den)) throw std::runtime_error("lambda_0: psi_0(x) underflowed");
  if (num == 0) throw std::runtime_error("lambda_0: numerator underflowed");
  double r = num / den;
  return {std::log(std::fabs(r)) + H.log_scale, r > 0 ? 1 : -1};
}

double lambda0_point(const AirySpectrum& spec) {
  const auto& e = spec.expansions.at(0);
  const double c = spec.params.c;
  const int N = static_cast<int>(e.coeffs.size()) - 1;
  auto conditioned = [&](double x, double* val) {
    std::vector<double> h = laguerre_h_all(N, e.a, x);
    double v = 0, env = 0;
    for (int k = 0; k <= N; ++k) {
      v += e.coeffs[k] * h[k];
      env += std::fabs(e.coeffs[k] * h[k]);
    }
    *val = std::fabs(v);
    return std::fabs(v) >= 1e-2 * env;
  };
  double x = eval_point(c), v;
  if (c >= 0 || conditioned(x, &v)) return x;
  double best = -1, xbest = x;
  for (int i = 0; i <= 64; ++i) {
    double xi = -c * i / 64;
    if (conditioned(xi, &v) && v > best) {
      best = v;
      xbest = xi;
    }
  }
  return xbest;
}

std::vector<double> eigenvalue_ratios(const AirySpectrum& spec) {
  const int n = spec.size() - 1;
  std::vector<double> out(std::max(n, 0));
  if (n < 1) return out;
  std::vector<double> dprev = diff_expansion(spec.expansions[0]);
  for (int j = 0; j < n; ++j) {
    const auto& bj = spec.expansions[j].coeffs;
    const auto& bj1 = spec.expansions[j + 1].coeffs;
    std::vector<double> dnext = diff_expansion(spec.expansions[j + 1]);
    double num = 0, den = 0;
    for (size_t k = 0; k < bj.size(); ++k) {
      num += dprev[k] * bj1[k];
      den += bj[k] * dnext[k];
    }
    if (den == 0) throw std::runtime_error("eigenvalue_ratios: zero denominator at j=" + std::to_string(j));
    out[j] = num / den;
    dprev = std::move(dnext);
  }
  return out;
}

AirySpectrum full_spectrum(double c, int n) {
  AirySpectrum s = compute_eigenfunctions(c, n);
  LogValue l0 = lambda_0(s, compute_H_scaled(s.params, lambda0_point(s)));
  std::vector<double> r = eigenvalue_ratios(s);
  s.lambda_log.resize(n + 1);
  s.lambda_sign.resize(n + 1);
  s.lambda.resize(n + 1);
  s.lambda_log[0] = l0.log_abs;
  s.lambda_sign[0] = l0.sign;
  for (int j = 1; j <= n; ++j) {
    s.lambda_log[j] = s.lambda_log[j - 1] + std::log(std::fabs(r[j - 1]));
    s.lambda_sign[j] = s.lambda_sign[j - 1] * (r[j - 1] > 0 ? 1 : -1);
  }
  for (int j = 0; j <= n; ++j) s.lambda[j] = s.lambda_sign[j] * std::exp(s.lambda_log[j]);
  return s;
}

double dlambda_dc(const AirySpectrum& spec, int j) {
  return -0.5 * spec.lambda.at(j) * spec.psi0.at(j) * spec.psi0.at(j);
}

double dlambda2_dc(const AirySpectrum& spec, int j) {
  double l = spec.lambda.at(j), p = spec.psi0.at(j);
  return -l * l * p * p;
}

}  // namespace airyspec
