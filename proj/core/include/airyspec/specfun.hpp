#pragma once

#include <span>
#include <vector>

namespace airyspec {

struct QuadratureRule {
  std::vector<double> nodes;    // ascending, on [-1, 1]
  std::vector<double> weights;
};

// Ai and Ai' on the supported range [-60, 300]; std::domain_error outside.
double airy_ai(double x);
double airy_ai_prime(double x);

// exp(2/3 x^{3/2}) * Ai(x) and the same scaling of Ai', for x >= 0.
double airy_ai_scaled(double x);
double airy_ai_prime_scaled(double x);

// h_k^a(x) = sqrt(a) exp(-a x / 2) L_k(a x) for k = 0..N.
std::vector<double> laguerre_h_all(int N, double a, double x);
// Same, written into out[0..N]; out.size() must be at least N+1.
void laguerre_h_all(int N, double a, double x, std::span<double> out);

// Orthonormal scaled Hermite function
// phi_n^a(x) = sqrt(a) / (pi^{1/4} 2^{n/2} sqrt(n!)) exp(-a^2 x^2 / 2) H_n(a x).
double hermite_phi(int n, double a, double x);

// Gauss-Legendre rule on [-1, 1], 1 <= n <= 500.
QuadratureRule gauss_legendre(int n);

// Shared 24-point rule used by the panel integrators.
const QuadratureRule& gauss_legendre_24();

}  // namespace airyspec
