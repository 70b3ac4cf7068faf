#pragma once

#include <complex>
#include <vector>

#include "airyspec/eigfun.hpp"

namespace airyspec {

using cplx = std::complex<double>;

struct BeamProfile {
  std::vector<double> s_grid;
  std::vector<double> xi_grid;
  std::vector<cplx> amplitude;  // row-major, xi_grid.size() rows of s_grid.size()
  double energy = 0;            // sum |row 0|^2 ds
  double spectral_tail = 0;     // max |mode| beyond 7/8 Nyquist over max |mode|, row 0

  const cplx& at(size_t xi_index, size_t s_index) const { return amplitude[xi_index * s_grid.size() + s_index]; }
  double row_energy(size_t xi_index) const;
};

// count points from lo to hi inclusive.
std::vector<double> uniform_grid(double lo, double hi, int count);

// (8 pi alpha)^{1/4} Ai(s) exp(-alpha^3/3 + alpha s); unit L2 norm on the line.
double finite_airy_initial(double alpha, double s);

// Airy transform int_0^inf Ai(s + v) sigma(v) dv of a density given as a
// Laguerre expansion.  Needs s >= -60.
double airy_transform(const LaguerreExpansion& sigma, double s);
std::vector<double> airy_transform(const LaguerreExpansion& sigma, const std::vector<double>& s);

// Phi(s, 0) for sigma = psi_{0,c}: lambda_0 psi_0(s - c) for s >= c, the
// transform integral otherwise.  spec must come from full_spectrum.
double eigen_beam_initial(const AirySpectrum& spec, double s);
double eigen_beam_initial(double c, double s);
std::vector<double> eigen_beam_initial(const AirySpectrum& spec, const std::vector<double>& s);

// Fraction of the energy of the Airy transform of sigma that lies on [c, inf).
double energy_fraction(const LaguerreExpansion& sigma, double c);

// Multiplies by a C-infinity window that is 1 inside and falls to exactly 0
// over `left` units at the start of the grid and `right` units at the end.
// Returns the fraction of the L2 energy removed.
double apodize(std::vector<cplx>& profile, const std::vector<double>& s_grid, double left, double right);

enum class BeamKind { finite, eigen, infinite };

struct InitialProfile {
  std::vector<cplx> values;
  double removed_energy = 0;  // fraction taken out by the edge window
};

// Samples the initial profile on s_grid: the finite Airy beam (param = alpha),
// the eigenfunction beam (param = c) or plain Ai(s) (param unused).  None of
// them decays fast enough to the left for a periodic grid, so the edges are
// windowed: min(30, span/3) on the left, min(5, span/10) on the right.
InitialProfile initial_profile(BeamKind kind, double param, const std::vector<double>& s_grid);

// Exact solution of 1/2 Phi_ss + i Phi_xi = 0 on the periodic grid: each
// discrete Fourier mode q is multiplied by exp(-i q^2 xi / 2).  The initial
// profile must fall below decay_tol times its peak at both ends and be
// resolved (modes above 7/8 of Nyquist below resolution_tol of the largest).
BeamProfile propagate(const std::vector<cplx>& initial, const std::vector<double>& s_grid,
                      const std::vector<double>& xi_grid, double decay_tol = 1e-10,
                      double resolution_tol = 1e-12);

// int_b^inf int_a^inf Ai(x + y)^2 dy dx; needs a + b >= -60.
double uncertainty_bound(double a, double b);

}  // namespace airyspec
