#include "airyspec/beams.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "airyspec/specfun.hpp"
#include "airyspec/spectrum.hpp"

namespace airyspec {

namespace {

// Smooth step: 0 for t <= 0, 1 for t >= 1, all derivatives continuous.
double smooth_step(double t) {
  if (t <= 0) return 0;
  if (t >= 1) return 1;
  double a = std::exp(-1 / t), b = std::exp(-1 / (1 - t));
  return a / (a + b);
}

struct FftwPlan {
  int n;
  fftw_complex* buf;
  fftw_plan fwd, bwd;
  explicit FftwPlan(int n_) : n(n_) {
    buf = fftw_alloc_complex(n);
    fwd = fftw_plan_dft_1d(n, buf, buf, FFTW_FORWARD, FFTW_ESTIMATE);
    bwd = fftw_plan_dft_1d(n, buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  ~FftwPlan() {
    fftw_destroy_plan(fwd);
    fftw_destroy_plan(bwd);
    fftw_free(buf);
  }
  FftwPlan(const FftwPlan&) = delete;
  FftwPlan& operator=(const FftwPlan&) = delete;
  cplx get(int i) const { return {buf[i][0], buf[i][1]}; }
  void set(int i, cplx v) {
    buf[i][0] = v.real();
    buf[i][1] = v.imag();
  }
};

}  // namespace

double BeamProfile::row_energy(size_t xi_index) const {
  const size_t M = s_grid.size();
  double ds = M > 1 ? s_grid[1] - s_grid[0] : 0, e = 0;
  for (size_t i = 0; i < M; ++i) e += std::norm(at(xi_index, i));
  return e * ds;
}

std::vector<double> uniform_grid(double lo, double hi, int count) {
  if (count < 2 || !(lo < hi)) throw std::invalid_argument("uniform_grid: need count >= 2 and lo < hi");
  std::vector<double> g(count);
  for (int i = 0; i < count; ++i) g[i] = lo + (hi - lo) * i / (count - 1);
  return g;
}

double finite_airy_initial(double alpha, double s) {
  if (!(alpha > 0)) throw std::invalid_argument("finite_airy_initial: alpha must be positive");
  return std::pow(8 * std::numbers::pi * alpha, 0.25) * airy_ai(s) * std::exp(-alpha * alpha * alpha / 3 + alpha * s);
}

namespace {

// Point past which |sigma| stays below 1e-17 of its maximum.
double density_extent(const LaguerreExpansion& sigma) {
  const int N = static_cast<int>(sigma.coeffs.size()) - 1;
  const double xmax = 2 * (4.0 * N + 2) / sigma.a + 10;
  const double step = 0.25;
  std::vector<double> vals;
  double peak = 0;
  for (double x = 0; x <= xmax; x += step) {
    vals.push_back(std::abs(eval_psi(sigma, x)));
    peak = std::max(peak, vals.back());
  }
  size_t last = 0;
  for (size_t i = 0; i < vals.size(); ++i)
    if (vals[i] > 1e-17 * peak) last = i;
  return std::min(xmax, (last + 4) * step);
}

}  // namespace

std::vector<double> airy_transform(const LaguerreExpansion& sigma, const std::vector<double>& s) {
  if (s.empty()) return {};
  const double smin = *std::min_element(s.begin(), s.end());
  if (smin < -60) throw std::domain_error("airy_transform: s below -60");
  const double extent = density_extent(sigma);
  const auto& gl = gauss_legendre_24();
  // Panels resolve the Airy oscillation at the most negative argument.
  double width = std::min(1.0, 4.0 / std::sqrt(std::max(1.0, -smin)));
  const int panels = static_cast<int>(std::ceil(extent / width));
  width = extent / panels;
  std::vector<double> nodes, weights;
  for (int p = 0; p < panels; ++p)
    for (size_t i = 0; i < gl.nodes.size(); ++i) {
      double v = p * width + 0.5 * width * (gl.nodes[i] + 1);
      nodes.push_back(v);
      weights.push_back(0.5 * width * gl.weights[i] * eval_psi(sigma, v));
    }
  std::vector<double> out(s.size());
  for (size_t j = 0; j < s.size(); ++j) {
    double sum = 0;
    for (size_t i = 0; i < nodes.size(); ++i) {
      double arg = s[j] + nodes[i];
      if (arg > 150) break;  // Ai below 1e-300
      sum += weights[i] * airy_ai(arg);
    }
    out[j] = sum;
  }
  return out;
}

double airy_transform(const LaguerreExpansion& sigma, double s) { return airy_transform(sigma, std::vector<double>{s})[0]; }

double eigen_beam_initial(const AirySpectrum& spec, double s) {
  if (spec.lambda.empty()) throw std::invalid_argument("eigen_beam_initial: spectrum has no eigenvalues");
  const double c = spec.params.c;
  if (s >= c) return spec.lambda[0] * eval_psi(spec.expansions[0], s - c);
  return airy_transform(spec.expansions[0], s);
}

double eigen_beam_initial(double c, double s) { return eigen_beam_initial(full_spectrum(c, 0), s); }

std::vector<double> eigen_beam_initial(const AirySpectrum& spec, const std::vector<double>& s) {
  if (spec.lambda.empty()) throw std::invalid_argument("eigen_beam_initial: spectrum has no eigenvalues");
  const double c = spec.params.c;
  std::vector<double> out(s.size()), left;
  std::vector<size_t> left_idx;
  for (size_t i = 0; i < s.size(); ++i) {
    if (s[i] >= c) {
      out[i] = spec.lambda[0] * eval_psi(spec.expansions[0], s[i] - c);
    } else {
      left.push_back(s[i]);
      left_idx.push_back(i);
    }
  }
  auto tr = airy_transform(spec.expansions[0], left);
  for (size_t i = 0; i < left_idx.size(); ++i) out[left_idx[i]] = tr[i];
  return out;
}

double energy_fraction(const LaguerreExpansion& sigma, double c) {
  if (c < -60) throw std::domain_error("energy_fraction: c below -60");
  double norm2 = 0;
  for (double b : sigma.coeffs) norm2 += b * b;
  if (norm2 == 0) throw std::invalid_argument("energy_fraction: zero density");
  // The transform decays like Ai(s) to the right; Ai(30)^2 ~ 1e-96.
  const double hi = std::max(c, 0.0) + 30;
  const auto& gl = gauss_legendre_24();
  const int panels = static_cast<int>(std::ceil((hi - c) / 0.5));
  const double w = (hi - c) / panels;
  std::vector<double> nodes, weights;
  for (int p = 0; p < panels; ++p)
    for (size_t i = 0; i < gl.nodes.size(); ++i) {
      nodes.push_back(c + p * w + 0.5 * w * (gl.nodes[i] + 1));
      weights.push_back(0.5 * w * gl.weights[i]);
    }
  auto v = airy_transform(sigma, nodes);
  double sum = 0;
  for (size_t i = 0; i < v.size(); ++i) sum += weights[i] * v[i] * v[i];
  return sum / norm2;
}

double apodize(std::vector<cplx>& profile, const std::vector<double>& s_grid, double left, double right) {
  if (profile.size() != s_grid.size()) throw std::invalid_argument("apodize: size mismatch");
  if (s_grid.empty()) return 0;
  const double lo = s_grid.front(), hi = s_grid.back();
  double before = 0, after = 0;
  for (size_t i = 0; i < profile.size(); ++i) {
    double s = s_grid[i], w = 1;
    if (left > 0) w *= smooth_step((s - lo) / left);
    if (right > 0) w *= smooth_step((hi - s) / right);
    before += std::norm(profile[i]);
    profile[i] *= w;
    after += std::norm(profile[i]);
  }
  return before > 0 ? (before - after) / before : 0;
}

InitialProfile initial_profile(BeamKind kind, double param, const std::vector<double>& s_grid) {
  if (s_grid.size() < 2) throw std::invalid_argument("initial_profile: grid too small");
  InitialProfile out;
  out.values.resize(s_grid.size());
  switch (kind) {
    case BeamKind::finite:
      for (size_t i = 0; i < s_grid.size(); ++i) out.values[i] = finite_airy_initial(param, s_grid[i]);
      break;
    case BeamKind::eigen: {
      auto v = eigen_beam_initial(full_spectrum(param, 0), s_grid);
      std::copy(v.begin(), v.end(), out.values.begin());
      break;
    }
    case BeamKind::infinite:
      for (size_t i = 0; i < s_grid.size(); ++i) out.values[i] = airy_ai(s_grid[i]);
      break;
  }
  const double span = s_grid.back() - s_grid.front();
  out.removed_energy = apodize(out.values, s_grid, std::min(30.0, span / 3), std::min(5.0, span / 10));
  return out;
}

BeamProfile propagate(const std::vector<cplx>& initial, const std::vector<double>& s_grid,
                      const std::vector<double>& xi_grid, double decay_tol, double resolution_tol) {
  const int M = static_cast<int>(s_grid.size());
  if (M < 4 || initial.size() != s_grid.size()) throw std::invalid_argument("propagate: need matching grids of >= 4 points");
  if (xi_grid.empty()) throw std::invalid_argument("propagate: empty xi grid");
  const double ds = s_grid[1] - s_grid[0];
  if (!(ds > 0)) throw std::invalid_argument("propagate: s grid must be increasing");

  double peak = 0;
  for (const cplx& v : initial) peak = std::max(peak, std::abs(v));
  if (peak == 0) throw std::invalid_argument("propagate: zero initial profile");
  if (std::abs(initial.front()) > decay_tol * peak || std::abs(initial.back()) > decay_tol * peak)
    throw std::domain_error("propagate: initial profile does not decay at the grid ends (wraparound)");

  FftwPlan plan(M);
  for (int i = 0; i < M; ++i) plan.set(i, initial[i]);
  fftw_execute(plan.fwd);
  std::vector<cplx> modes(M);
  for (int i = 0; i < M; ++i) modes[i] = plan.get(i);

  BeamProfile out;
  out.s_grid = s_grid;
  out.xi_grid = xi_grid;

  double mode_max = 0, tail = 0;
  for (int m = 0; m < M; ++m) {
    int f = m <= M / 2 ? m : M - m;  // |frequency index|
    double a = std::abs(modes[m]);
    mode_max = std::max(mode_max, a);
    if (8 * f > 7 * (M / 2)) tail = std::max(tail, a);
  }
  out.spectral_tail = tail / mode_max;
  if (out.spectral_tail > resolution_tol)
    throw std::domain_error("propagate: initial profile is under-resolved on this grid");

  const double L = M * ds;
  std::vector<double> q2(M);
  for (int m = 0; m < M; ++m) {
    double q = 2 * std::numbers::pi * (m <= M / 2 ? m : m - M) / L;
    q2[m] = q * q;
  }
  out.amplitude.resize(xi_grid.size() * M);
  for (size_t r = 0; r < xi_grid.size(); ++r) {
    const double xi = xi_grid[r];
    for (int m = 0; m < M; ++m) plan.set(m, modes[m] * std::polar(1.0, -0.5 * q2[m] * xi));
    fftw_execute(plan.bwd);
    for (int i = 0; i < M; ++i) out.amplitude[r * M + i] = plan.get(i) / double(M);
  }
  out.energy = out.row_energy(0);
  return out;
}

double uncertainty_bound(double a, double b) {
  // The inner integral depends on u = x + a only: the bound is
  // int_{a+b}^inf J(u) du with J(u) = int_u^inf Ai(t)^2 dt.
  const double u0 = a + b;
  if (u0 < -60) throw std::domain_error("uncertainty_bound: a + b below -60");
  const double base = std::max(u0, 0.0);
  double umax = base + 1;
  while (4.0 / 3.0 * (std::pow(umax, 1.5) - std::pow(base, 1.5)) < 80 && umax < 150) umax += 1;
  const auto& gl = gauss_legendre_24();
  const double width = 0.5;
  const int panels = static_cast<int>(std::ceil((umax - u0) / width));
  const double w = (umax - u0) / panels;
  auto ai2 = [&gl](double lo, double hi) {
    double sum = 0;
    for (size_t i = 0; i < gl.nodes.size(); ++i) {
      double x = lo + 0.5 * (hi - lo) * (gl.nodes[i] + 1);
      double v = airy_ai(x);
      sum += gl.weights[i] * v * v;
    }
    return 0.5 * (hi - lo) * sum;
  };
  // Walk panels from the right, carrying J at the panel's right end.
  double J_right = 0, total = 0;
  for (int p = panels - 1; p >= 0; --p) {
    double lo = u0 + p * w, hi = lo + w, part = 0;
    for (size_t i = 0; i < gl.nodes.size(); ++i) {
      double u = lo + 0.5 * w * (gl.nodes[i] + 1);
      part += gl.weights[i] * (J_right + ai2(u, hi));
    }
    total += 0.5 * w * part;
    J_right += ai2(lo, hi);
  }
  return total;
}

}  // namespace airyspec
