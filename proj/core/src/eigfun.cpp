#include "airyspec/eigfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "airyspec/specfun.hpp"

namespace airyspec {

namespace {

double chi_model(double c, int n) {
  double nn = n;
  return 19.3 * c + 11.1 * nn + 1.19e-2 * nn * nn + 7.4e-5 * c * nn * nn;
}

bool tail_ok(const std::vector<LaguerreExpansion>& ex, int N) {
  for (const auto& e : ex)
    for (int k = std::max(0, N - 10); k <= N; ++k)
      if (std::fabs(e.coeffs[k]) > 1e-12) return false;
  return true;
}

AirySpectrum solve_for(const OperatorParams& p) {
  FiveDiagonal A = assemble_A(p);
  std::vector<double> est = fivediag_eigenvalues(A);
  AirySpectrum s;
  s.params = p;
  s.chi.resize(p.n + 1);
  s.expansions.resize(p.n + 1);
  s.psi0.resize(p.n + 1);
  for (int j = 0; j <= p.n; ++j) {
    EigenPair ep = shifted_inverse_power(A, est[j]);
    refine_eigenpair(A, ep);
    double gap = INFINITY;
    if (j > 0) gap = std::min(gap, est[j] - est[j - 1]);
    if (j + 1 < static_cast<int>(est.size())) gap = std::min(gap, est[j + 1] - est[j]);
    if (std::fabs(ep.value - est[j]) > 0.5 * gap)
      throw std::runtime_error("compute_eigenfunctions: inverse iteration left eigenvalue " + std::to_string(j));
    double sum = 0;
    for (double b : ep.vector) sum += b;
    if (sum < 0)
      for (double& b : ep.vector) b = -b;
    s.chi[j] = ep.value;
    s.expansions[j] = {p.a, std::move(ep.vector)};
  }
  for (int j = 1; j <= p.n; ++j)
    if (!(s.chi[j] > s.chi[j - 1])) throw std::runtime_error("compute_eigenfunctions: chi not strictly increasing");
  return s;
}

using ld = long double;

// Regular solution u of (x u')' = (x^2 + c x - chi) u with u(0) = 1, from 0 to xm.
ld regular_solution(double chi, double c, double xm) {
  const ld C = c, X = chi;
  // Frobenius series at the regular singular point:
  // (m+1)^2 p_{m+1} = p_{m-2} + c p_{m-1} - chi p_m.
  ld x1 = std::min<ld>(xm, 0.25L / (1 + std::sqrt(std::fabs(X)) + std::sqrt(std::fabs(C))));
  ld pm2 = 0, pm1 = 0, pm = 1;
  ld u = 1, up = 0, xp = 1;  // xp = x1^m
  for (int m = 0; m < 400; ++m) {
    ld pn = (pm2 + C * pm1 - X * pm) / ((m + 1) * (m + 1));
    ld dterm = (m + 1) * pn * xp;
    xp *= x1;
    ld vterm = pn * xp;
    u += vterm;
    up += dterm;
    pm2 = pm1;
    pm1 = pm;
    pm = pn;
    if (m > 6 && std::fabs(vterm) + std::fabs(dterm) < 1e-24L * (std::fabs(u) + std::fabs(up) * x1)) break;
  }
  // Local Taylor steps: with x = x0 + t, V = V0 + V1 t + t^2,
  // b_{k+2} = (V0 b_k + V1 b_{k-1} + b_{k-2} - (k+1)^2 b_{k+1}) / (x0 (k+2)(k+1)).
  ld x0 = x1;
  while (x0 < xm) {
    ld V0 = x0 * x0 + C * x0 - X, V1 = 2 * x0 + C;
    ld kappa = std::sqrt(std::fabs(V0) / x0) + 1e-3L;
    ld h = std::min({ld(0.5) * x0, ld(3) / kappa, ld(xm) - x0});
    ld bm2 = 0, bm1 = 0, b0 = u, b1 = up;
    ld val = b0 + b1 * h, der = b1, hp = h;
    for (int k = 0; k < 200; ++k) {
      ld b2 = (V0 * b0 + V1 * bm1 + bm2 - ld(k + 1) * (k + 1) * b1) / (x0 * (k + 2) * (k + 1));
      ld dterm = (k + 2) * b2 * hp;
      hp *= h;
      ld vterm = b2 * hp;
      val += vterm;
      der += dterm;
      bm2 = bm1;
      bm1 = b0;
      b0 = b1;
      b1 = b2;
      if (k > 6 && std::fabs(vterm) + std::fabs(dterm) * h < 1e-24L * std::fabs(val)) break;
    }
    u = val;
    up = der;
    x0 += h;
  }
  return u;
}

double envelope(const LaguerreExpansion& e, double x, std::vector<double>& h) {
  int N = static_cast<int>(e.coeffs.size()) - 1;
  laguerre_h_all(N, e.a, x, h);
  double s = 0;
  for (int k = 0; k <= N; ++k) s += std::fabs(e.coeffs[k] * h[k]);
  return s;
}

ld boundary_value_ld(const LaguerreExpansion& e, double chi, double c);

}  // namespace

OperatorParams select_basis(double c, int n) {
  if (n < 0) throw std::invalid_argument("select_basis: n must be nonnegative");
  OperatorParams p;
  p.c = c;
  p.n = n;
  int na = n;
  double disc = c * c + 4 * chi_model(c, na);
  // The model can go negative for strongly negative c; fall back to a higher
  // index, whose eigenvalue is always large enough.
  while (disc < 0) {
    na += 100;
    disc = c * c + 4 * chi_model(c, na);
  }
  p.a = 4.0 * (2 * na + 1) / (-c + std::sqrt(disc));
  p.N = static_cast<int>(std::ceil(1.1 * n + std::fabs(c) + 100 - 1e-9));
  p.Nprime = p.N + 40;
  return p;
}

FiveDiagonal assemble_A(const OperatorParams& p) {
  const double a = p.a, c = p.c, a2 = a * a, a3 = a2 * a;
  FiveDiagonal A(p.N + 1, true);
  for (int k = 0; k <= p.N; ++k) {
    double kk = k;
    A.set(k, k, (8 + a3 + 4 * a * c + 24 * kk + 2 * a3 * kk + 8 * a * c * kk + 24 * kk * kk) / (4 * a2));
    if (k + 1 <= p.N) A.set(k, k + 1, (kk + 1) * (a3 - 4 * a * c - 16 * (kk + 1)) / (4 * a2));
    if (k + 2 <= p.N) A.set(k, k + 2, (kk + 1) * (kk + 2) / a2);
  }
  return A;
}

namespace {

// Basis used when the fitted one fails: a matched to the turning point of
// eigenfunction n + 100.  Below the fitted range of c the model is replaced by
// the harmonic-oscillator limit chi_m ~ (2m+1) sqrt(-c/2) - c^2/4.
double fallback_scaling(double c, int n) {
  int m = n + 100;
  double chi;
  if (c < -50) {
    chi = (2 * m + 1) * std::sqrt(-0.5 * c) - 0.25 * c * c;
  } else {
    chi = chi_model(c, m);
    while (c * c + 4 * chi < 0) chi = chi_model(c, m += 100);
  }
  return 4.0 * (2 * m + 1) / (-c + std::sqrt(c * c + 4 * chi));
}

}  // namespace

AirySpectrum compute_eigenfunctions(double c, int n) {
  OperatorParams p = select_basis(c, n);
  std::vector<OperatorParams> tries;
  if (std::isfinite(p.a) && p.a > 0) {
    tries.push_back(p);
    tries.push_back(p);
    tries.back().N *= 2;
  }
  tries.push_back(p);
  tries.back().a = fallback_scaling(c, n);
  tries.back().N *= 2;
  std::string why;
  for (auto& t : tries) {
    t.Nprime = t.N + 40;
    try {
      AirySpectrum s = solve_for(t);
      if (!tail_ok(s.expansions, t.N)) {
        why = "expansion coefficients do not decay";
        continue;
      }
      // The sum of coefficients only fixes the sign when psi(0) is not lost
      // in cancellation; the boundary value settles it in every case.
      for (int j = 0; j <= n; ++j) {
        ld v = boundary_value_ld(s.expansions[j], s.chi[j], c);
        if (v == 0) throw std::logic_error("compute_eigenfunctions: psi(0) evaluated to exactly zero");
        if (v < 0) {
          for (double& b : s.expansions[j].coeffs) b = -b;
          v = -v;
        }
        s.psi0[j] = static_cast<double>(v);
      }
      return s;
    } catch (const std::runtime_error& e) {
      why = e.what();
    }
  }
  throw std::runtime_error("compute_eigenfunctions: no adequate basis for c=" + std::to_string(c) +
                           ", n=" + std::to_string(n) + ": " + why);
}

double eval_laguerre_series(double a, const std::vector<double>& coeffs, double x) {
  if (coeffs.empty()) return 0.0;
  int N = static_cast<int>(coeffs.size()) - 1;
  thread_local std::vector<double> h;
  h.resize(N + 1);
  laguerre_h_all(N, a, x, h);
  double s = 0;
  for (int k = N; k >= 0; --k) s += coeffs[k] * h[k];
  return s;
}

double eval_psi(const LaguerreExpansion& e, double x) {
  if (x < 0) throw std::domain_error("eval_psi: x must be nonnegative");
  return eval_laguerre_series(e.a, e.coeffs, x);
}

std::vector<double> eval_psi(const LaguerreExpansion& e, const std::vector<double>& xs) {
  std::vector<double> out(xs.size());
  for (size_t i = 0; i < xs.size(); ++i) out[i] = eval_psi(e, xs[i]);
  return out;
}

std::vector<double> diff_expansion(const LaguerreExpansion& e) {
  const auto& b = e.coeffs;
  const int n = static_cast<int>(b.size());
  std::vector<double> d(n);
  double suffix = 0;  // sum_{j>k} beta_j
  for (int k = n - 1; k >= 0; --k) {
    d[k] = -0.5 * e.a * b[k] - e.a * suffix;
    suffix += b[k];
  }
  return d;
}

double psi_extent(const LaguerreExpansion& e, double chi, double c, double threshold) {
  double disc = c * c + 4 * chi;
  double xt = disc > 0 ? std::max(0.0, 0.5 * (-c + std::sqrt(disc))) : 0.0;
  double peak = 0;
  const int M = 64;
  for (int i = 0; i <= M; ++i) peak = std::max(peak, std::fabs(eval_psi(e, xt * i / M)));
  double dx = std::max(xt, 1.0) / 32;
  double limit = 2 * (4.0 * e.coeffs.size() + 2) / e.a + 10;
  double x = xt;
  while (x < limit) {
    x += dx;
    double v = std::fabs(eval_psi(e, x));
    peak = std::max(peak, v);
    if (v < threshold * peak) break;
  }
  return x;
}

namespace {

// Long double so that the sign survives when psi(0) underflows a double
// (c around -150 and below).
ld boundary_value_ld(const LaguerreExpansion& e, double chi, double c) {
  double s = 0, sabs = 0;
  for (double b : e.coeffs) {
    s += b;
    sabs += std::fabs(b);
  }
  const double direct = std::sqrt(e.a) * s;
  if (sabs <= 1e3 * std::fabs(s)) return direct;
  double disc = c * c + 4 * chi;
  if (!(chi < 0) || c >= 0 || disc <= 0) return direct;
  const double xt = 0.5 * (-c - std::sqrt(disc));  // edge of the forbidden zone at 0

  // Matching point: the smallest sample where the expansion is well conditioned.
  std::vector<double> h(e.coeffs.size());
  const int M = 64;
  double xm = -1, psim = 0;
  for (int i = M; i >= 1; --i) {
    double x = xt * i / M;
    double env = envelope(e, x, h);
    double v = eval_psi(e, x);
    if (std::fabs(v) >= 1e-3 * env) {
      xm = x;
      psim = v;
    } else if (xm > 0) {
      break;
    }
  }
  if (xm <= 0) return direct;
  ld u = regular_solution(chi, c, xm);
  return ld(psim) / u;
}

}  // namespace

double boundary_value(const LaguerreExpansion& e, double chi, double c) {
  return static_cast<double>(boundary_value_ld(e, chi, c));
}

double psi_continuation(const AirySpectrum& spec, int j, double x) {
  if (j < 0 || j >= spec.size()) throw std::out_of_range("psi_continuation: index out of range");
  if (spec.lambda_log.size() != spec.chi.size())
    throw std::invalid_argument("psi_continuation: spectrum has no eigenvalues");
  if (spec.lambda_log[j] < std::log(1e-300))
    throw std::domain_error("psi_continuation: |lambda| below 1e-300");
  const double c = spec.params.c;
  const double s0 = x + c;
  if (s0 < -60) throw std::domain_error("psi_continuation: x + c below the Airy range");
  const auto& e = spec.expansions[j];
  // Beyond Ai argument 150 the kernel is below 1e-300 times its peak.
  double top = std::min(psi_extent(e, spec.chi[j], c), 150.0 - s0);
  if (top <= 0) return 0.0;
  const auto& gl = gauss_legendre_24();
  int panels = static_cast<int>(std::ceil(top));
  double width = top / panels;
  double sum = 0;
  for (int p = 0; p < panels; ++p) {
    double lo = p * width;
    for (size_t i = 0; i < gl.nodes.size(); ++i) {
      double y = lo + 0.5 * width * (gl.nodes[i] + 1);
      sum += 0.5 * width * gl.weights[i] * airy_ai(s0 + y) * eval_psi(e, y);
    }
  }
  return sum * spec.lambda_sign[j] * std::exp(-spec.lambda_log[j]);
}

}  // namespace airyspec
