#pragma once

#include <vector>

#include "airyspec/banded.hpp"
#include "airyspec/eigfun.hpp"

namespace airyspec {

// Point at which lambda_0 = (T psi_0)(x) / psi_0(x) is evaluated.
double eval_point(double c);

// Matrix of the five-term recurrence for H_k = int_0^inf Ai(y + s) h_k^a(y) dy,
// s = x + c, truncated to N'+1 unknowns.  Row r holds the equation centred at
// H_r, so get(r, r-2) = r - 1 and get(r, r+2) = r + 2.  Row 0 is empty apart
// from the smallest normal double on the diagonal.
FiveDiagonal assemble_B(const OperatorParams& p, double x);

// H_0 = sqrt(a) int_0^inf Ai(y + s) exp(-a y / 2) dy.  Underflows to zero for
// large s; see h0_integral_scaled.
double h0_integral(double a, double s);

// H_0 * exp(2/3 s^{3/2}) for s >= 0 (plain H_0 for s < 0).
double h0_integral_scaled(double a, double s);

struct HValues {
  std::vector<double> values;  // H_k = values[k] * exp(log_scale)
  double log_scale = 0;
  double x = 0;  // s = x + c
};

// H_0..H_N at s = x + c, by default with x = eval_point(c).
HValues compute_H_scaled(const OperatorParams& p);
HValues compute_H_scaled(const OperatorParams& p, double x);
std::vector<double> compute_H(const OperatorParams& p);

struct LogValue {
  double log_abs = 0;  // log|v|
  int sign = 1;
  double value() const;
};

// lambda_0 = sum_k beta_k H_k / psi_0(H.x).
LogValue lambda_0(const AirySpectrum& spec, const HValues& H);

// eval_point(c), unless psi_0 there is mostly cancellation (deep in the tail
// for strongly negative c); then the sample of [0, -c] where |psi_0| peaks.
double lambda0_point(const AirySpectrum& spec);

// lambda_{j+1} / lambda_j for j = 0..n-1.
std::vector<double> eigenvalue_ratios(const AirySpectrum& spec);

// chi, expansions, psi(0) and lambda_0..lambda_n.
AirySpectrum full_spectrum(double c, int n);

// d lambda_j / dc and d (lambda_j^2) / dc.
double dlambda_dc(const AirySpectrum& spec, int j);
double dlambda2_dc(const AirySpectrum& spec, int j);

}  // namespace airyspec
