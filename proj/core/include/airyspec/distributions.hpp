#pragma once

#include <vector>

namespace airyspec {

// Eigen-data of T_c at c = s (beta = 2) or c = s/2 (beta = 1, 4), truncated
// once the squared eigenvalues have decayed below tol relative to the first.
struct SpectralFactors {
  double s = 0;
  int beta = 2;
  double c = 0;
  std::vector<double> lam;       // signed
  std::vector<double> lam2;      // lambda^2
  std::vector<double> lam2_log;  // log lambda^2, finite where lam2 underflows
  std::vector<double> q;         // 1 - lambda^2, accurate even when lambda^2 ~ 1
  std::vector<double> psi0;      // psi(0)
  std::vector<double> dlam_ds;   // d lambda / ds
  std::vector<double> dlam2_ds;  // d lambda^2 / ds
  int count = 0;                 // number of factors kept
};

SpectralFactors spectral_factors(double s, int beta, double tol = 1e-18, int n_cap = 512);

// 1 - lambda_{i,c}^2 for i = 0..imax as -expm1(-int_{-inf}^c psi_{i,t}(0)^2 dt).
// Keeps full relative precision where lambda^2 is within rounding of one.
std::vector<double> eigenvalue_deficits(double c, int imax);

struct DistValue {
  double value = 0;
  double log_value = 0;  // log|value|; -inf for an exact zero
  int sign = 1;
  double est_abs_err = 0;
};

DistValue cdf_gue(int k, double s);
DistValue pdf_gue(int k, double s);
DistValue cdf_beta(int beta, int k, double s);
DistValue pdf_beta(int beta, int k, double s);

// Same, from precomputed factors (beta must match).
DistValue cdf_gue(int k, const SpectralFactors& f);
DistValue pdf_gue(int k, const SpectralFactors& f);
DistValue cdf_beta(int k, const SpectralFactors& f);
DistValue pdf_beta(int k, const SpectralFactors& f);

// The GUE series on raw data: with w_i = -d(lambda_i^2)/ds,
//   cdf = sum_{|S|<k} prod_{i in S} lambda_i^2 prod_{i not in S} q_i
//   pdf = sum_{|S|=k-1} prod_{i in S} lambda_i^2 sum_{i not in S} w_i prod_{l not in S, l != i} q_l
DistValue gue_series_cdf(int k, const std::vector<double>& lam2, const std::vector<double>& q);
DistValue gue_series_pdf(int k, const std::vector<double>& lam2, const std::vector<double>& q,
                         const std::vector<double>& w);

}  // namespace airyspec
