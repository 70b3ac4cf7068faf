#pragma once

#include <vector>

#include "airyspec/banded.hpp"

namespace airyspec {

struct OperatorParams {
  double c = 0;
  int n = 0;       // highest eigenfunction index requested
  double a = 1;    // Laguerre scaling
  int N = 0;       // expansion truncation (coefficients 0..N)
  int Nprime = 0;  // H-recurrence truncation
};

struct LaguerreExpansion {
  double a = 1;
  std::vector<double> coeffs;
};

struct AirySpectrum {
  OperatorParams params;
  std::vector<double> chi;  // ascending
  std::vector<LaguerreExpansion> expansions;
  std::vector<double> psi0;  // psi_j(0) > 0

  // Filled by full_spectrum.  lambda_j = lambda_sign[j] * exp(lambda_log[j]);
  // the plain value underflows to zero for very small eigenvalues.
  std::vector<double> lambda;
  std::vector<double> lambda_log;
  std::vector<int> lambda_sign;

  int size() const { return static_cast<int>(chi.size()); }
};

OperatorParams select_basis(double c, int n);

// Matrix of the commuting differential operator in the basis h_k^a, k = 0..N.
FiveDiagonal assemble_A(const OperatorParams& p);

// chi_0..chi_n and the expansions of psi_0..psi_n; lambda fields left empty.
AirySpectrum compute_eigenfunctions(double c, int n);

double eval_psi(const LaguerreExpansion& e, double x);
std::vector<double> eval_psi(const LaguerreExpansion& e, const std::vector<double>& xs);

// Evaluates sum_k coeffs[k] h_k^a(x) for an arbitrary coefficient vector.
double eval_laguerre_series(double a, const std::vector<double>& coeffs, double x);

// Coefficients of psi' in the same basis (not unit norm).
std::vector<double> diff_expansion(const LaguerreExpansion& e);

// Point beyond the turning point of psi where |psi| has fallen below
// threshold * max|psi|.
double psi_extent(const LaguerreExpansion& e, double chi, double c, double threshold = 1e-18);

// psi(0) to relative precision.  The expansion value sqrt(a) sum beta_k loses
// digits by cancellation when 0 lies deep in the classically forbidden zone
// (strongly negative c); there the value is recovered by integrating the
// regular solution of the ODE out to a point where the expansion is accurate.
double boundary_value(const LaguerreExpansion& e, double chi, double c);

// (1/lambda_j) * int_0^inf Ai(x + c + y) psi_j(y) dy; valid for x < 0 as well.
double psi_continuation(const AirySpectrum& spec, int j, double x);

}  // namespace airyspec
