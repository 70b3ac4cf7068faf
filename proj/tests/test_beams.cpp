#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "airyspec/beams.hpp"
#include "airyspec/specfun.hpp"
#include "airyspec/spectrum.hpp"
#include "oracles.hpp"

using namespace airyspec;

namespace {

size_t nearest(const std::vector<double>& g, double x) {
  return static_cast<size_t>(std::min_element(g.begin(), g.end(),
                                              [&](double a, double b) { return std::abs(a - x) < std::abs(b - x); }) -
                             g.begin());
}

// First maximum of Ai, the main lobe of the infinite Airy beam.
constexpr double kAiPeak = -1.0187929716474710;

}  // namespace

TEST(UniformGrid, Endpoints) {
  auto g = uniform_grid(-2, 3, 11);
  ASSERT_EQ(g.size(), 11u);
  EXPECT_EQ(g.front(), -2);
  EXPECT_EQ(g.back(), 3);
  EXPECT_NEAR(g[1] - g[0], 0.5, 1e-15);
  EXPECT_THROW(uniform_grid(0, 1, 1), std::invalid_argument);
}

TEST(FiniteAiryInitial, NormAndValues) {
  double n2 = oracle::panels([](double s) { double v = finite_airy_initial(0.202, s); return v * v; }, -60, 10, 0.25);
  EXPECT_NEAR(n2, 1, 1e-6);
  const double a = 0.108;
  EXPECT_NEAR(finite_airy_initial(a, 0), std::pow(8 * std::numbers::pi * a, 0.25) * airy_ai(0) * std::exp(-a * a * a / 3),
              1e-15);
  EXPECT_LT(finite_airy_initial(0.202, 20), finite_airy_initial(0.202, 0));
}

TEST(EigenBeam, EnergyFractionIsLambdaSquared) {
  for (double c : {-2.0, -1.0, 0.0, 1.5}) {
    auto spec = full_spectrum(c, 0);
    double lam2 = spec.lambda[0] * spec.lambda[0];
    EXPECT_NEAR(energy_fraction(spec.expansions[0], c), lam2, 1e-8) << c;
  }
}

TEST(EigenBeam, BeatsRandomDensities) {
  const double c = -1;
  auto spec = full_spectrum(c, 0);
  double best = energy_fraction(spec.expansions[0], c);
  oracle::Rng rng(2718);
  for (int t = 0; t < 20; ++t) {
    LaguerreExpansion e{rng.uniform(0.5, 4), std::vector<double>(rng.integer(1, 12))};
    for (double& b : e.coeffs) b = rng.uniform(-1, 1);
    EXPECT_LT(energy_fraction(e, c), best) << t;
  }
}

TEST(EigenBeam, MatchesEigenfunctionOnRightAndPeaksNearMinusOnePointFive) {
  const double c = -2;
  auto spec = full_spectrum(c, 0);
  for (double s : {-2.0, -1.0, 0.5, 3.0}) {
    double direct = airy_transform(spec.expansions[0], s);
    EXPECT_NEAR(eigen_beam_initial(spec, s), direct, 1e-10) << s;
    EXPECT_NEAR(direct, spec.lambda[0] * eval_psi(spec.expansions[0], s - c), 1e-10) << s;
  }
  auto g = uniform_grid(-10, 5, 1501);
  auto v = eigen_beam_initial(spec, g);
  size_t k = 0;
  for (size_t i = 0; i < v.size(); ++i)
    if (std::abs(v[i]) > std::abs(v[k])) k = i;
  EXPECT_NEAR(g[k], -1.5, 0.3);
  EXPECT_DOUBLE_EQ(eigen_beam_initial(c, 0.7), eigen_beam_initial(spec, 0.7));
}

TEST(EigenBeam, TurningPointBound) {
  const double c = -1;
  auto spec = full_spectrum(c, 0);
  const auto& e = spec.expansions[0];
  double l1 = oracle::panels([&](double v) { return std::abs(eval_psi(e, v)); }, 0, psi_extent(e, spec.chi[0], c), 0.5);
  for (double s = 0; s <= 12; s += 0.5)
    EXPECT_LE(std::abs(eigen_beam_initial(spec, s)), airy_ai(s) * l1 * (1 + 1e-10)) << s;
}

// The transform is unitary, but the profile decays only algebraically to the
// left; over [-60, 30] a few percent of the energy is out of reach.
TEST(EigenBeam, EnergyOnWideGrid) {
  auto spec = full_spectrum(-2, 0);
  double e = oracle::panels([&](double s) { double v = eigen_beam_initial(spec, s); return v * v; }, -60, 30, 0.5, 24);
  EXPECT_LT(e, 1);
  EXPECT_GT(e, 0.95);
}

TEST(Propagate, NormPreservedAndInitialRowIntact) {
  auto s = uniform_grid(-60, 30, 4096);
  auto xi = uniform_grid(0, 12, 25);
  for (BeamKind kind : {BeamKind::finite, BeamKind::eigen, BeamKind::infinite}) {
    auto ip = initial_profile(kind, kind == BeamKind::finite ? 0.202 : -2.0, s);
    auto B = propagate(ip.values, s, xi);
    for (size_t r = 0; r < xi.size(); ++r) EXPECT_NEAR(B.row_energy(r) / B.energy, 1, 1e-12);
    for (size_t i = 0; i < s.size(); i += 97) EXPECT_NEAR(std::abs(B.at(0, i) - ip.values[i]), 0, 1e-13);
    EXPECT_LE(B.spectral_tail, 1e-12);
    EXPECT_GE(ip.removed_energy, 0);
    // Ai itself is not square integrable, so only the decaying kinds lose little.
    if (kind != BeamKind::infinite) EXPECT_LT(ip.removed_energy, 0.05);
  }
}

TEST(Propagate, GaussianClosedForm) {
  const double sig = 2;
  auto s = uniform_grid(-40, 40, 1024);
  std::vector<cplx> init(s.size());
  for (size_t i = 0; i < s.size(); ++i) init[i] = std::exp(-s[i] * s[i] / (2 * sig * sig));
  std::vector<double> xi = {0, 1, 2.5, 5};
  auto B = propagate(init, s, xi);
  for (size_t r = 0; r < xi.size(); ++r) {
    cplx w = sig * sig + cplx(0, xi[r]);
    for (size_t i = 0; i < s.size(); i += 13) {
      cplx want = std::sqrt(sig * sig / w) * std::exp(-s[i] * s[i] / (2.0 * w));
      EXPECT_NEAR(std::abs(B.at(r, i) - want), 0, 1e-10) << xi[r] << " " << s[i];
    }
    // |Phi|^2 keeps a Gaussian shape of variance sig^2 + xi^2 / sig^2
    double m2 = 0, m0 = 0, ds = s[1] - s[0];
    for (size_t i = 0; i < s.size(); ++i) {
      double p = std::norm(B.at(r, i));
      m0 += p * ds;
      m2 += p * s[i] * s[i] * ds;
    }
    EXPECT_NEAR(m2 / m0, 0.5 * (sig * sig + xi[r] * xi[r] / (sig * sig)), 1e-8);
  }
}

TEST(Propagate, EigenBeamMatchesDirectQuadrature) {
  const double c = -1;
  auto s = uniform_grid(-60, 30, 4096);
  auto ip = initial_profile(BeamKind::eigen, c, s);
  auto B = propagate(ip.values, s, {0.0, 2.0});
  size_t i0 = nearest(s, 0);
  ASSERT_EQ(s[i0], 0);
  auto spec = full_spectrum(c, 0);
  const auto& e = spec.expansions[0];
  const double x = s[i0], X = 2;
  auto integrand = [&](double v, bool imag) {
    double ph = -X * X * X / 12 + (x + v) * X / 2;
    double amp = airy_ai(x + v - X * X / 4) * eval_psi(e, v);
    return amp * (imag ? std::sin(ph) : std::cos(ph));
  };
  double top = psi_extent(e, spec.chi[0], c);
  cplx want(oracle::simpson([&](double v) { return integrand(v, false); }, 0, top, 1e-13),
            oracle::simpson([&](double v) { return integrand(v, true); }, 0, top, 1e-13));
  EXPECT_NEAR(std::abs(B.at(1, i0) - want), 0, 1e-6);
}

// Fast oscillations from the left window travel off the grid and wrap around;
// the wide right margin keeps them out of [-10, 10] up to xi = 4.
TEST(Propagate, InfiniteAiryBeam) {
  auto s = uniform_grid(-60, 70, 8192);
  auto xi = uniform_grid(0, 4, 17);
  auto ip = initial_profile(BeamKind::infinite, 0, s);
  auto B = propagate(ip.values, s, xi);
  const double ds = s[1] - s[0];
  for (size_t r = 0; r < xi.size(); ++r) {
    double shift = xi[r] * xi[r] / 4;
    double worst = 0;
    for (size_t i = 0; i < s.size(); ++i)
      if (s[i] >= -10 && s[i] <= 10) worst = std::max(worst, std::abs(std::abs(B.at(r, i)) - std::abs(airy_ai(s[i] - shift))));
    EXPECT_LE(worst, 2e-3) << xi[r];
    size_t k = 0;
    for (size_t i = 0; i < s.size(); ++i)
      if (std::abs(B.at(r, i)) > std::abs(B.at(r, k))) k = i;
    EXPECT_LE(std::abs(s[k] - (kAiPeak + shift)), ds) << xi[r];
  }
}

TEST(Propagate, RejectsTruncatedOrUnderResolvedProfiles) {
  auto s = uniform_grid(-10, 10, 256);
  std::vector<cplx> ai(s.size());
  for (size_t i = 0; i < s.size(); ++i) ai[i] = airy_ai(s[i]);
  EXPECT_THROW(propagate(ai, s, {0.0, 1.0}), std::domain_error);

  auto coarse = uniform_grid(-20, 20, 64);
  std::vector<cplx> narrow(coarse.size());
  for (size_t i = 0; i < coarse.size(); ++i) narrow[i] = std::exp(-coarse[i] * coarse[i] / (2 * 0.4 * 0.4));
  EXPECT_THROW(propagate(narrow, coarse, {0.0}), std::domain_error);
}

TEST(Apodize, WindowShape) {
  auto s = uniform_grid(0, 10, 101);
  std::vector<cplx> p(s.size(), 1.0);
  double removed = apodize(p, s, 2, 1);
  EXPECT_EQ(p.front(), 0.0);
  EXPECT_EQ(p.back(), 0.0);
  EXPECT_EQ(p[50], 1.0);
  EXPECT_GT(removed, 0);
  EXPECT_LT(removed, 0.2);
  for (size_t i = 1; i <= 20; ++i) EXPECT_GE(std::abs(p[i]), std::abs(p[i - 1]));
}

// int_b^inf int_a^inf Ai(x + y)^2 dy dx depends on z = a + b only:
// (2/3) z^2 Ai^2 - (2/3) z Ai'^2 - (1/3) Ai Ai'.
TEST(UncertaintyBound, ClosedForm) {
  for (auto [a, b] : {std::pair{0.0, 0.0}, std::pair{-1.0, 0.0}, std::pair{0.0, 1.0}, std::pair{2.0, 3.0},
                      std::pair{0.0, 5.0}, std::pair{-8.0, 1.0}}) {
    double z = a + b, ai = airy_ai(z), aip = airy_ai_prime(z);
    double want = 2.0 / 3 * z * z * ai * ai - 2.0 / 3 * z * aip * aip - 1.0 / 3 * ai * aip;
    EXPECT_NEAR(uncertainty_bound(a, b), want, 1e-10 * std::abs(want)) << a << " " << b;
  }
}

TEST(UncertaintyBound, DecreasingAndAboveLambdaSquared) {
  double prev = INFINITY;
  for (double b = -3; b <= 6; b += 0.5) {
    double v = uncertainty_bound(0, b);
    EXPECT_LT(v, prev);
    prev = v;
  }
  for (auto [a, b] : {std::pair{0.0, 0.0}, std::pair{0.0, 1.0}, std::pair{-1.0, 0.0}}) {
    double l = full_spectrum(a + b, 0).lambda[0];
    EXPECT_LE(l * l, uncertainty_bound(a, b)) << a << " " << b;
  }
  EXPECT_THROW(uncertainty_bound(-40, -30), std::domain_error);
}
