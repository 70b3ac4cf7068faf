#include <gtest/gtest.h>

#include <chrono>
#include <cmath>

#include "airyspec/banded.hpp"
#include "airyspec/eigfun.hpp"
#include "oracles.hpp"

using namespace airyspec;

namespace {

FiveDiagonal random_symmetric(oracle::Rng& rng, int n) {
  FiveDiagonal A(n, true);
  for (int i = 0; i < n; ++i) {
    A.set(i, i, rng.uniform(-5, 5));
    if (i + 1 < n) A.set(i, i + 1, rng.uniform(-1, 1));
    if (i + 2 < n) A.set(i, i + 2, rng.uniform(-1, 1));
  }
  return A;
}

Eigen::MatrixXd dense(const FiveDiagonal& A) {
  const int n = A.dim();
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = std::max(0, i - 2); j <= std::min(n - 1, i + 2); ++j) M(i, j) = A.get(i, j);
  return M;
}

double residual(const FiveDiagonal& A, const EigenPair& ep) {
  auto Av = A.apply(ep.vector);
  double r = 0;
  for (size_t i = 0; i < Av.size(); ++i) r = std::max(r, std::abs(Av[i] - ep.value * ep.vector[i]));
  return r;
}

}  // namespace

TEST(FiveDiagonal, StorageAndSymmetry) {
  FiveDiagonal A(4, true);
  A.set(0, 2, 3.5);
  EXPECT_EQ(A.get(2, 0), 3.5);
  EXPECT_EQ(A.get(0, 3), 0.0);
  FiveDiagonal B(4, false);
  B.set(1, 3, 2);
  EXPECT_EQ(B.get(3, 1), 0.0);
}

TEST(FiveDiagonalEigenvalues, Trivial) {
  FiveDiagonal D(6, true);
  for (int i = 0; i < 6; ++i) D.set(i, i, 6 - i);
  auto ev = fivediag_eigenvalues(D);
  for (int i = 0; i < 6; ++i) EXPECT_EQ(ev[i], i + 1);

  FiveDiagonal ones(3, true);
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j) ones.set(i, j, 1);
  auto e1 = fivediag_eigenvalues(ones);
  EXPECT_NEAR(e1[0], 0, 1e-13);
  EXPECT_NEAR(e1[1], 0, 1e-13);
  EXPECT_NEAR(e1[2], 3, 1e-13);

  EXPECT_THROW(fivediag_eigenvalues(FiveDiagonal(5, false)), std::invalid_argument);
}

TEST(FiveDiagonalEigenvalues, MatchesDenseOracleProperty) {
  oracle::Rng rng(2024);
  for (int t = 0; t < 100; ++t) {
    int n = rng.integer(5, 120);
    FiveDiagonal A = random_symmetric(rng, n);
    auto ev = fivediag_eigenvalues(A);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense(A), Eigen::EigenvaluesOnly);
    ASSERT_EQ(static_cast<int>(ev.size()), n);
    for (int i = 0; i < n; ++i) EXPECT_NEAR(ev[i], es.eigenvalues()(i), 1e-12) << "n=" << n << " i=" << i;
  }
}

TEST(ShiftedInversePower, DiagonalAndRandom) {
  FiveDiagonal D(3, true);
  for (int i = 0; i < 3; ++i) D.set(i, i, i + 1);
  EigenPair ep = shifted_inverse_power(D, 2.1);
  EXPECT_NEAR(ep.value, 2, 1e-14);
  EXPECT_NEAR(std::abs(ep.vector[1]), 1, 1e-14);

  oracle::Rng rng(77);
  FiveDiagonal A = random_symmetric(rng, 50);
  auto est = fivediag_eigenvalues(A);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense(A));
  EigenPair p = shifted_inverse_power(A, est[6]);
  EXPECT_NEAR(p.value, es.eigenvalues()(6), 1e-12);
  Eigen::VectorXd v = es.eigenvectors().col(6);
  double sign = v.dot(Eigen::Map<Eigen::VectorXd>(p.vector.data(), 50)) < 0 ? -1 : 1;
  for (int i = 0; i < 50; ++i) EXPECT_NEAR(p.vector[i], sign * v(i), 1e-12);
  double nrm = 0;
  for (double x : p.vector) nrm += x * x;
  EXPECT_NEAR(nrm, 1, 1e-14);
  EXPECT_LE(residual(A, p), 1e-13 * A.norm_inf());
}

TEST(ShiftedInversePower, ConvergesQuicklyOnOperatorMatrix) {
  OperatorParams p = select_basis(0, 20);
  FiveDiagonal A = assemble_A(p);
  auto est = fivediag_eigenvalues(A);
  for (int j = 0; j <= 20; ++j) {
    EigenPair ep = shifted_inverse_power(A, est[j]);
    EXPECT_LE(ep.iterations, 5) << j;
    EXPECT_LE(residual(A, ep), 1e-13 * A.norm_inf());
  }
}

TEST(ShiftedInversePower, RefinementKeepsResidualAndSign) {
  oracle::Rng rng(5);
  FiveDiagonal A = random_symmetric(rng, 80);
  auto est = fivediag_eigenvalues(A);
  EigenPair ep = shifted_inverse_power(A, est[10]);
  EigenPair refined = ep;
  refine_eigenpair(A, refined);
  double overlap = 0;
  for (int i = 0; i < 80; ++i) overlap += ep.vector[i] * refined.vector[i];
  EXPECT_NEAR(overlap, 1, 1e-13);
  EXPECT_LE(residual(A, refined), 1e-13 * A.norm_inf());
}

TEST(InversePowerNull, TrivialAndConstructed) {
  FiveDiagonal B(6, false);
  for (int i = 0; i < 6; ++i) B.set(i, i, i);
  auto v = inverse_power_null(B);
  EXPECT_NEAR(std::abs(v[0]), 1, 1e-14);

  // Banded matrix with a prescribed null vector w: pick random entries, then
  // fix each row's diagonal so that (B w)_i = 0.
  oracle::Rng rng(31);
  const int n = 30;
  std::vector<double> w(n);
  for (int i = 0; i < n; ++i) w[i] = std::exp(-0.3 * i) * (1 + 0.5 * rng.uniform());
  FiveDiagonal C(n, false);
  for (int i = 0; i < n; ++i) {
    double off = 0;
    for (int o : {-2, -1, 1, 2}) {
      int j = i + o;
      if (j < 0 || j >= n) continue;
      double x = rng.uniform(-1, 1);
      C.set(i, j, x);
      off += x * w[j];
    }
    C.set(i, i, -off / w[i]);
  }
  auto u = inverse_power_null(C);
  double nw = 0;
  for (double x : w) nw += x * x;
  nw = std::sqrt(nw);
  double sign = u[0] * w[0] < 0 ? -1 : 1;
  for (int i = 0; i < n; ++i) EXPECT_NEAR(sign * u[i], w[i] / nw, 1e-12 * std::max(1.0, w[i] / nw));
}

TEST(BandLU, SolvesAgainstDense) {
  oracle::Rng rng(99);
  for (int t = 0; t < 20; ++t) {
    int n = rng.integer(3, 60);
    FiveDiagonal A(n, false);
    for (int i = 0; i < n; ++i)
      for (int o = -2; o <= 2; ++o)
        if (i + o >= 0 && i + o < n) A.set(i, i + o, rng.uniform(-1, 1) + (o == 0 ? 0.1 : 0));
    std::vector<double> b(n);
    for (double& x : b) x = rng.uniform(-1, 1);
    std::vector<double> x = b;
    BandLU(A, 0.3).solve(x);
    Eigen::MatrixXd M = dense(A) - 0.3 * Eigen::MatrixXd::Identity(n, n);
    Eigen::VectorXd ref = M.partialPivLu().solve(Eigen::Map<Eigen::VectorXd>(b.data(), n));
    for (int i = 0; i < n; ++i) EXPECT_NEAR(x[i], ref(i), 1e-9 * std::max(1.0, ref.cwiseAbs().maxCoeff()));
  }
}

TEST(FiveDiagonalEigenvalues, QuadraticScaling) {
  oracle::Rng rng(1);
  auto time_it = [&](int n) {
    FiveDiagonal A = random_symmetric(rng, n);
    double best = 1e9;
    for (int r = 0; r < 3; ++r) {
      auto t0 = std::chrono::steady_clock::now();
      auto ev = fivediag_eigenvalues(A);
      best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    }
    return best;
  };
  double t1 = time_it(500), t2 = time_it(1000);
  EXPECT_LE(t2 / t1, 4.5) << t1 << " " << t2;
}
