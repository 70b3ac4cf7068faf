#include "airyspec/specfun.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace airyspec {

namespace {

using ld = long double;

constexpr ld kAi0 = 0.355028053887817239260063186004183176L;
constexpr ld kAip0 = -0.258819403792806798405183560189203963L;
constexpr ld kPi = 3.141592653589793238462643383279502884L;

constexpr double kMinX = -60.0;
constexpr double kMaxX = 300.0;

// Anchors for local Taylor expansion cover [-kTaylorEdge, kTaylorEdge];
// outside, the asymptotic expansions are accurate to well below 1e-18.
constexpr double kTaylorEdge = 10.0;
constexpr double kAnchorStep = 0.25;
constexpr int kAnchors = 81;

void check_range(double x) {
  if (!(x >= kMinX && x <= kMaxX))
    throw std::domain_error("airy: argument outside [-60, 300]: " + std::to_string(x));
}

struct AiryPair {
  ld ai;
  ld aip;
};

// Taylor step for y'' = x y from x0 by h.
AiryPair taylor_step(ld x0, AiryPair y, ld h) {
  ld am1 = 0, a0 = y.ai, a1 = y.aip;
  ld val = a0 + a1 * h, der = a1;
  ld hp = h;  // h^(k+1) for the term a_{k+2} h^{k+2}
  ld prev = 0;
  for (int k = 0; k < 80; ++k) {
    ld a2 = (x0 * a0 + am1) / ((k + 2) * (k + 1));
    ld dterm = (k + 2) * a2 * hp;
    hp *= h;
    ld vterm = a2 * hp;
    val += vterm;
    der += dterm;
    am1 = a0;
    a0 = a1;
    a1 = a2;
    ld mag = std::fabs(vterm) + std::fabs(dterm);
    if (k > 4 && mag + prev < 1e-24L * (std::fabs(val) + std::fabs(der))) break;
    prev = mag;
  }
  return {val, der};
}

// u_k of the Airy asymptotic expansions and v_k = -(6k+1)/(6k-1) u_k.
struct AsymCoeffs {
  static constexpr int K = 60;
  std::array<ld, K> u{}, v{};
  AsymCoeffs() {
    u[0] = 1;
    v[0] = 1;
    for (int k = 1; k < K; ++k) {
      u[k] = u[k - 1] * ld((6 * k - 5) * (6 * k - 3) * (6 * k - 1)) / (ld(216) * k * (2 * k - 1));
      v[k] = -u[k] * ld(6 * k + 1) / ld(6 * k - 1);
    }
  }
};

const AsymCoeffs& asym() {
  static const AsymCoeffs c;
  return c;
}

// Sum of sign^k c_k z^k over the given parity, stopping at the smallest term.
ld asym_sum(const std::array<ld, AsymCoeffs::K>& c, ld zeta, int start, int stride, ld sign) {
  ld z = 1 / zeta, sum = 0, zk = std::pow(z, start), sk = 1, last = std::numeric_limits<ld>::max();
  ld zs = std::pow(z, stride);
  for (int k = start; k < AsymCoeffs::K; k += stride) {
    ld term = sk * c[k] * zk;
    if (std::fabs(term) > last) break;
    sum += term;
    if (std::fabs(term) < 1e-22L * std::fabs(sum)) break;
    last = std::fabs(term);
    zk *= zs;
    sk *= sign;
  }
  return sum;
}

// exp(zeta)-scaled values for x >= kTaylorEdge.
AiryPair asym_positive_scaled(ld x) {
  const auto& c = asym();
  ld zeta = ld(2) / 3 * x * std::sqrt(x);
  ld q = std::sqrt(std::sqrt(x));
  ld pre = 1 / (2 * std::sqrt(kPi));
  return {pre / q * asym_sum(c.u, zeta, 0, 1, -1), -pre * q * asym_sum(c.v, zeta, 0, 1, -1)};
}

AiryPair asym_negative(ld x) {
  const auto& c = asym();
  ld X = -x;
  ld zeta = ld(2) / 3 * X * std::sqrt(X);
  ld q = std::sqrt(std::sqrt(X));
  ld th = zeta - kPi / 4;
  ld cs = std::cos(th), sn = std::sin(th);
  ld ue = asym_sum(c.u, zeta, 0, 2, -1), uo = asym_sum(c.u, zeta, 1, 2, -1);
  ld ve = asym_sum(c.v, zeta, 0, 2, -1), vo = asym_sum(c.v, zeta, 1, 2, -1);
  ld rp = 1 / std::sqrt(kPi);
  return {rp / q * (cs * ue + sn * uo), rp * q * (sn * ve - cs * vo)};
}

// Ai, Ai' at x_i = -10 + 0.25 i.  The negative side is integrated forward from
// the exact values at 0 (neutrally stable); the positive side backward from the
// asymptotic values at +10 (the stable direction for the decaying solution).
struct Anchors {
  std::array<AiryPair, kAnchors> p{};
  Anchors() {
    const int mid = kAnchors / 2;
    p[mid] = {kAi0, kAip0};
    for (int i = mid - 1; i >= 0; --i)
      p[i] = taylor_step(ld(-kTaylorEdge) + ld(kAnchorStep) * (i + 1), p[i + 1], -ld(kAnchorStep));
    ld e = std::exp(-ld(2) / 3 * ld(kTaylorEdge) * std::sqrt(ld(kTaylorEdge)));
    AiryPair top = asym_positive_scaled(kTaylorEdge);
    p[kAnchors - 1] = {top.ai * e, top.aip * e};
    for (int i = kAnchors - 2; i > mid; --i)
      p[i] = taylor_step(ld(-kTaylorEdge) + ld(kAnchorStep) * (i + 1), p[i + 1], -ld(kAnchorStep));
  }
};

const Anchors& anchors() {
  static const Anchors a;
  return a;
}

AiryPair airy_taylor(double x) {
  int i = static_cast<int>(std::lround((x + kTaylorEdge) / kAnchorStep));
  if (i < 0) i = 0;
  if (i >= kAnchors) i = kAnchors - 1;
  ld x0 = ld(-kTaylorEdge) + ld(kAnchorStep) * i;
  return taylor_step(x0, anchors().p[i], ld(x) - x0);
}

AiryPair airy_eval(double x, bool scaled) {
  check_range(x);
  if (x <= -kTaylorEdge) return asym_negative(x);
  if (x >= kTaylorEdge) {
    AiryPair s = asym_positive_scaled(x);
    if (scaled) return s;
    ld e = std::exp(-ld(2) / 3 * ld(x) * std::sqrt(ld(x)));
    return {s.ai * e, s.aip * e};
  }
  AiryPair t = airy_taylor(x);
  if (scaled && x > 0) {
    ld e = std::exp(ld(2) / 3 * ld(x) * std::sqrt(ld(x)));
    t.ai *= e;
    t.aip *= e;
  }
  return t;
}

}  // namespace

double airy_ai(double x) { return static_cast<double>(airy_eval(x, false).ai); }

double airy_ai_prime(double x) { return static_cast<double>(airy_eval(x, false).aip); }

double airy_ai_scaled(double x) {
  if (x < 0) throw std::domain_error("airy_ai_scaled: x must be nonnegative");
  return static_cast<double>(airy_eval(x, true).ai);
}

double airy_ai_prime_scaled(double x) {
  if (x < 0) throw std::domain_error("airy_ai_prime_scaled: x must be nonnegative");
  return static_cast<double>(airy_eval(x, true).aip);
}

void laguerre_h_all(int N, double a, double x, std::span<double> out) {
  if (!(a > 0)) throw std::invalid_argument("laguerre_h_all: a must be positive");
  if (N < 0 || x < 0) throw std::invalid_argument("laguerre_h_all: need N >= 0 and x >= 0");
  if (out.size() < static_cast<size_t>(N) + 1) throw std::invalid_argument("laguerre_h_all: output too short");

  const double y = a * x;
  const double sa = std::sqrt(a);
  // L_k(y) is carried as value * exp(log_scale); the recurrence is rescaled
  // whenever it grows, and the Gaussian-free prefactor exp(-y/2) is folded in
  // at output time so that tails stay representable.
  constexpr double kBig = 1e200;
  const double kLogBig = std::log(kBig);
  double log_scale = 0;
  double pre = (y <= 1400) ? sa * std::exp(-0.5 * y) : 0.0;
  auto emit = [&](int k, double L) {
    out[k] = (log_scale == 0 && pre != 0) ? pre * L : sa * L * std::exp(log_scale - 0.5 * y);
  };

  double lm1 = 1.0, l = 1.0 - y;
  emit(0, lm1);
  if (N >= 1) emit(1, l);
  for (int k = 1; k < N; ++k) {
    double lp1 = ((2 * k + 1 - y) * l - k * lm1) / (k + 1);
    lm1 = l;
    l = lp1;
    if (std::fabs(l) > kBig) {
      l /= kBig;
      lm1 /= kBig;
      log_scale += kLogBig;
    }
    emit(k + 1, l);
  }
}

std::vector<double> laguerre_h_all(int N, double a, double x) {
  if (N < 0) throw std::invalid_argument("laguerre_h_all: N must be nonnegative");
  std::vector<double> out(static_cast<size_t>(N) + 1);
  laguerre_h_all(N, a, x, out);
  return out;
}

double hermite_phi(int n, double a, double x) {
  if (n < 0 || !(a > 0)) throw std::invalid_argument("hermite_phi: need n >= 0 and a > 0");
  const double y = a * x;
  // Normalized recurrence phi_{k+1} = sqrt(2/(k+1)) y phi_k - sqrt(k/(k+1)) phi_{k-1},
  // run on the polynomial part with the Gaussian carried in log form.
  double log_scale = 0.5 * std::log(a) - 0.25 * std::log(std::numbers::pi) - 0.5 * y * y;
  double pm1 = 0.0, p = 1.0;
  for (int k = 0; k < n; ++k) {
    double pp1 = std::sqrt(2.0 / (k + 1)) * y * p - std::sqrt(double(k) / (k + 1)) * pm1;
    pm1 = p;
    p = pp1;
    if (std::fabs(p) > 1e200) {
      p *= 1e-200;
      pm1 *= 1e-200;
      log_scale += 200 * std::log(10.0);
    }
  }
  return p * std::exp(log_scale);
}

QuadratureRule gauss_legendre(int n) {
  if (n < 1 || n > 500) throw std::invalid_argument("gauss_legendre: n must be in [1, 500]");
  QuadratureRule r;
  r.nodes.resize(n);
  r.weights.resize(n);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1, p1 = z;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2 * k - 1) * z * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      double pn = (n == 1) ? z : p1;
      double pnm1 = (n == 1) ? 1.0 : p0;
      dp = n * (z * pn - pnm1) / (z * z - 1);
      double dz = pn / dp;
      z -= dz;
      if (std::fabs(dz) < 1e-16) {
        // one more evaluation of the derivative at the converged node
        p0 = 1;
        p1 = z;
        for (int k = 2; k <= n; ++k) {
          double p2 = ((2 * k - 1) * z * p1 - (k - 1) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        pn = (n == 1) ? z : p1;
        pnm1 = (n == 1) ? 1.0 : p0;
        dp = n * (z * pn - pnm1) / (z * z - 1);
        break;
      }
    }
    double w = 2 / ((1 - z * z) * dp * dp);
    r.nodes[i] = -z;
    r.nodes[n - 1 - i] = z;
    r.weights[i] = w;
    r.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) r.nodes[n / 2] = 0.0;
  return r;
}

const QuadratureRule& gauss_legendre_24() {
  static const QuadratureRule rule = gauss_legendre(24);
  return rule;
}

}  // namespace airyspec
