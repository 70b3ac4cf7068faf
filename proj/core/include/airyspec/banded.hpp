#pragma once

#include <array>
#include <vector>

namespace airyspec {

// Five-diagonal matrix; diag(o)[i] holds A(i, i+o) for o in -2..2.
// Slots that fall outside the matrix are kept at zero.
class FiveDiagonal {
 public:
  FiveDiagonal(int dim, bool symmetric);

  int dim() const { return n_; }
  bool symmetric() const { return symmetric_; }

  double get(int i, int j) const;
  // For symmetric matrices the mirrored entry is written too.
  void set(int i, int j, double v);

  const std::vector<double>& diag(int offset) const { return d_[offset + 2]; }

  double norm_inf() const;
  std::vector<double> apply(const std::vector<double>& x) const;

 private:
  int n_;
  bool symmetric_;
  std::array<std::vector<double>, 5> d_;
};

struct EigenPair {
  double value = 0;
  std::vector<double> vector;
  int iterations = 0;
};

// All eigenvalues of a symmetric five-diagonal matrix, ascending.
// Givens bulge chasing to tridiagonal form, then implicit QL.
std::vector<double> fivediag_eigenvalues(const FiveDiagonal& A);

// Rayleigh-quotient inverse iteration started at `shift`.
EigenPair shifted_inverse_power(const FiveDiagonal& A, double shift, double tol = 1e-13,
                                int max_iter = 20);

// One extended-precision inverse iteration step at the Rayleigh quotient of
// ep.vector.  Brings a converged double eigenvector to componentwise
// rounding accuracy; also updates ep.value.
void refine_eigenpair(const FiveDiagonal& A, EigenPair& ep);

// Unit vector spanning the (numerical) null space of a general five-diagonal B.
std::vector<double> inverse_power_null(const FiveDiagonal& B, double tol = 1e-12);

// LU with partial pivoting for five-diagonal matrices; the upper factor
// grows to four superdiagonals.
class BandLU {
 public:
  // Factors A - shift*I.  Exactly zero pivots are replaced by `zero_pivot`
  // when it is nonzero; otherwise they are left and `singular()` reports it.
  BandLU(const FiveDiagonal& A, double shift = 0.0, double zero_pivot = 0.0);

  bool singular() const { return singular_; }
  double min_abs_pivot() const;

  // Solves in place.  Back substitution rescales on the fly so that nearly
  // singular systems return a finite vector proportional to the true solution.
  void solve(std::vector<double>& b) const;

 private:
  int n_;
  std::vector<std::array<double, 7>> w_;  // row i, columns i-2..i+4
  std::vector<std::array<double, 2>> mult_;
  std::vector<int> piv_;
  bool singular_ = false;
};

}  // namespace airyspec
