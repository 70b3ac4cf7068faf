#include "airyspec/banded.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

namespace airyspec {

FiveDiagonal::FiveDiagonal(int dim, bool symmetric) : n_(dim), symmetric_(symmetric) {
  if (dim < 3) throw std::invalid_argument("FiveDiagonal: dim must be at least 3");
  for (auto& d : d_) d.assign(static_cast<size_t>(dim), 0.0);
}

double FiveDiagonal::get(int i, int j) const {
  int o = j - i;
  if (o < -2 || o > 2 || i < 0 || j < 0 || i >= n_ || j >= n_) return 0.0;
  return d_[o + 2][i];
}

void FiveDiagonal::set(int i, int j, double v) {
  int o = j - i;
  if (o < -2 || o > 2 || i < 0 || j < 0 || i >= n_ || j >= n_)
    throw std::out_of_range("FiveDiagonal::set: entry outside the band");
  d_[o + 2][i] = v;
  if (symmetric_) d_[2 - o][j] = v;
}

double FiveDiagonal::norm_inf() const {
  double m = 0;
  for (int i = 0; i < n_; ++i) {
    double s = 0;
    for (int o = -2; o <= 2; ++o) s += std::fabs(get(i, i + o));
    m = std::max(m, s);
  }
  return m;
}

std::vector<double> FiveDiagonal::apply(const std::vector<double>& x) const {
  std::vector<double> y(n_, 0.0);
  for (int i = 0; i < n_; ++i) {
    double s = 0;
    for (int o = -2; o <= 2; ++o) {
      int j = i + o;
      if (j >= 0 && j < n_) s += d_[o + 2][i] * x[j];
    }
    y[i] = s;
  }
  return y;
}

namespace {

double scaled_norm(const std::vector<double>& x) {
  double m = 0;
  for (double v : x) m = std::max(m, std::fabs(v));
  if (m == 0) return 0;
  double s = 0;
  for (double v : x) s += (v / m) * (v / m);
  return m * std::sqrt(s);
}

void normalize(std::vector<double>& x) {
  double m = 0;
  for (double v : x) m = std::max(m, std::fabs(v));
  if (m == 0 || !std::isfinite(m)) throw std::runtime_error("inverse iteration produced a degenerate vector");
  for (double& v : x) v /= m;
  double nrm = scaled_norm(x);
  for (double& v : x) v /= nrm;
}

// Fixed-seed random start: smooth start vectors can be nearly orthogonal to
// eigenvectors whose coefficient sums cancel.
std::vector<double> start_vector(int n) {
  std::mt19937_64 gen(0x5eed1234ULL);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> v(n);
  for (double& t : v) t = u(gen);
  normalize(v);
  return v;
}

// Symmetric band storage with half-bandwidth 3 (room for one bulge).
class SymBand3 {
 public:
  explicit SymBand3(int n) : n_(n), a_(static_cast<size_t>(n) * 4, 0.0) {}
  double get(int i, int j) const {
    if (i < j) std::swap(i, j);
    int d = i - j;
    if (d > 3 || j < 0 || i >= n_) return 0.0;
    return a_[static_cast<size_t>(i) * 4 + d];
  }
  void set(int i, int j, double v) {
    if (i < j) std::swap(i, j);
    int d = i - j;
    if (d > 3) {
      if (v != 0.0) throw std::logic_error("band reduction left the band");
      return;
    }
    a_[static_cast<size_t>(i) * 4 + d] = v;
  }
  // A <- G A G^T with G acting on rows/columns p and p+1.
  void rotate(int p, double c, double s) {
    int q = p + 1;
    int lo = std::max(0, p - 3), hi = std::min(n_ - 1, q + 3);
    for (int j = lo; j <= hi; ++j) {
      if (j == p || j == q) continue;
      double ap = get(p, j), aq = get(q, j);
      set(p, j, c * ap + s * aq);
      set(q, j, -s * ap + c * aq);
    }
    double app = get(p, p), aqq = get(q, q), apq = get(p, q);
    set(p, p, c * c * app + 2 * c * s * apq + s * s * aqq);
    set(q, q, s * s * app - 2 * c * s * apq + c * c * aqq);
    set(p, q, c * s * (aqq - app) + (c * c - s * s) * apq);
  }
  // Rotation in plane (q-1, q) that annihilates A(q, col).
  bool annihilate(int q, int col) {
    double b = get(q, col);
    if (b == 0.0) return false;
    double a = get(q - 1, col);
    double r = std::hypot(a, b);
    rotate(q - 1, a / r, b / r);
    set(q, col, 0.0);
    return true;
  }

 private:
  int n_;
  std::vector<double> a_;
};

// Eigenvalues of the symmetric tridiagonal (d, e), e[i] = T(i+1, i).
void tridiagonal_ql(std::vector<double>& d, std::vector<double>& e) {
  const int n = static_cast<int>(d.size());
  e.resize(n, 0.0);
  e[n - 1] = 0.0;
  for (int l = 0; l < n; ++l) {
    int iter = 0, m;
    do {
      for (m = l; m < n - 1; ++m) {
        double dd = std::fabs(d[m]) + std::fabs(d[m + 1]);
        if (std::fabs(e[m]) <= DBL_EPSILON * 0.5 * dd) break;
      }
      if (m != l) {
        if (iter++ == 60) throw std::runtime_error("tridiagonal QL: no convergence");
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = std::hypot(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
        double s = 1, c = 1, p = 0;
        int i;
        for (i = m - 1; i >= l; --i) {
          double f = s * e[i], b = c * e[i];
          e[i + 1] = (r = std::hypot(f, g));
          if (r == 0.0) {
            d[i + 1] -= p;
            e[m] = 0.0;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * b;
          d[i + 1] = g + (p = s * r);
          g = c * r - b;
        }
        if (r == 0.0 && i >= l) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }
}

}  // namespace

std::vector<double> fivediag_eigenvalues(const FiveDiagonal& A) {
  if (!A.symmetric()) throw std::invalid_argument("fivediag_eigenvalues: matrix must be symmetric");
  const int n = A.dim();
  SymBand3 B(n);
  for (int i = 0; i < n; ++i)
    for (int o = 0; o <= 2 && i + o < n; ++o) B.set(i + o, i, A.get(i + o, i));

  // Clear the second subdiagonal column by column, chasing each bulge
  // (which sits three off the diagonal) down and out of the matrix.
  for (int k = 0; k + 2 < n; ++k) {
    if (!B.annihilate(k + 2, k)) continue;
    for (int m = k + 1; m + 3 < n; m += 2)
      if (!B.annihilate(m + 3, m)) break;
  }

  std::vector<double> d(n), e(n, 0.0);
  for (int i = 0; i < n; ++i) d[i] = B.get(i, i);
  for (int i = 0; i + 1 < n; ++i) e[i] = B.get(i + 1, i);
  tridiagonal_ql(d, e);
  std::sort(d.begin(), d.end());
  return d;
}

BandLU::BandLU(const FiveDiagonal& A, double shift, double zero_pivot)
    : n_(A.dim()), w_(A.dim()), mult_(A.dim()), piv_(A.dim()) {
  const int n = n_;
  for (int i = 0; i < n; ++i) {
    w_[i].fill(0.0);
    mult_[i] = {0.0, 0.0};
    for (int o = -2; o <= 2; ++o) {
      int j = i + o;
      if (j < 0 || j >= n) continue;
      w_[i][o + 2] = A.get(i, j) - (o == 0 ? shift : 0.0);
    }
  }
  for (int k = 0; k < n; ++k) {
    int last = std::min(k + 2, n - 1);
    int p = k;
    double best = std::fabs(w_[k][2]);
    for (int r = k + 1; r <= last; ++r) {
      double v = std::fabs(w_[r][k - r + 2]);
      if (v > best) {
        best = v;
        p = r;
      }
    }
    piv_[k] = p;
    int jmax = std::min(k + 4, n - 1);
    if (p != k)
      for (int j = k; j <= jmax; ++j) std::swap(w_[k][j - k + 2], w_[p][j - p + 2]);
    double pivot = w_[k][2];
    if (pivot == 0.0) {
      if (zero_pivot != 0.0) {
        pivot = w_[k][2] = zero_pivot;
      } else {
        singular_ = true;
        continue;
      }
    }
    for (int r = k + 1; r <= last; ++r) {
      double m = w_[r][k - r + 2] / pivot;
      mult_[k][r - k - 1] = m;
      w_[r][k - r + 2] = 0.0;
      if (m == 0.0) continue;
      for (int j = k + 1; j <= jmax; ++j) w_[r][j - r + 2] -= m * w_[k][j - k + 2];
    }
  }
}

double BandLU::min_abs_pivot() const {
  double m = INFINITY;
  for (int k = 0; k < n_; ++k) m = std::min(m, std::fabs(w_[k][2]));
  return m;
}

void BandLU::solve(std::vector<double>& b) const {
  const int n = n_;
  if (static_cast<int>(b.size()) != n) throw std::invalid_argument("BandLU::solve: size mismatch");
  for (int k = 0; k < n; ++k) {
    if (piv_[k] != k) std::swap(b[k], b[piv_[k]]);
    for (int r = k + 1; r <= std::min(k + 2, n - 1); ++r) b[r] -= mult_[k][r - k - 1] * b[k];
  }
  constexpr double kLimit = 1e250, kShrink = 1e-250;
  for (int k = n - 1; k >= 0; --k) {
    double s = b[k];
    for (int j = k + 1; j <= std::min(k + 4, n - 1); ++j) s -= w_[k][j - k + 2] * b[j];
    double p = w_[k][2];
    if (p == 0.0) p = DBL_MIN;
    while (std::fabs(s) > kLimit * std::fabs(p)) {
      for (double& v : b) v *= kShrink;
      s *= kShrink;
    }
    b[k] = s / p;
  }
}

void refine_eigenpair(const FiveDiagonal& A, EigenPair& ep) {
  using ld = long double;
  const int n = A.dim();
  if (static_cast<int>(ep.vector.size()) != n) throw std::invalid_argument("refine_eigenpair: size mismatch");
  std::vector<ld> v(ep.vector.begin(), ep.vector.end());
  ld num = 0, den = 0;
  for (int i = 0; i < n; ++i) {
    ld s = 0;
    for (int j = std::max(0, i - 2); j <= std::min(n - 1, i + 2); ++j) s += ld(A.get(i, j)) * v[j];
    num += v[i] * s;
    den += v[i] * v[i];
  }
  const ld mu = num / den;

  // Banded LU with partial pivoting, as in BandLU, in long double.
  std::vector<std::array<ld, 7>> w(n);
  std::vector<std::array<ld, 2>> mult(n);
  std::vector<int> piv(n);
  for (int i = 0; i < n; ++i) {
    w[i].fill(0);
    mult[i] = {0, 0};
    for (int o = -2; o <= 2; ++o) {
      int j = i + o;
      if (j >= 0 && j < n) w[i][o + 2] = ld(A.get(i, j)) - (o == 0 ? mu : 0);
    }
  }
  for (int k = 0; k < n; ++k) {
    int last = std::min(k + 2, n - 1), p = k;
    for (int r = k + 1; r <= last; ++r)
      if (std::fabs(w[r][k - r + 2]) > std::fabs(w[p][k - p + 2])) p = r;
    piv[k] = p;
    int jmax = std::min(k + 4, n - 1);
    if (p != k)
      for (int j = k; j <= jmax; ++j) std::swap(w[k][j - k + 2], w[p][j - p + 2]);
    if (w[k][2] == 0) w[k][2] = LDBL_MIN;
    for (int r = k + 1; r <= last; ++r) {
      ld m = w[r][k - r + 2] / w[k][2];
      mult[k][r - k - 1] = m;
      w[r][k - r + 2] = 0;
      for (int j = k + 1; j <= jmax; ++j) w[r][j - r + 2] -= m * w[k][j - k + 2];
    }
  }
  std::vector<ld> x = v;
  for (int k = 0; k < n; ++k) {
    if (piv[k] != k) std::swap(x[k], x[piv[k]]);
    for (int r = k + 1; r <= std::min(k + 2, n - 1); ++r) x[r] -= mult[k][r - k - 1] * x[k];
  }
  for (int k = n - 1; k >= 0; --k) {
    ld s = x[k];
    for (int j = k + 1; j <= std::min(k + 4, n - 1); ++j) s -= w[k][j - k + 2] * x[j];
    x[k] = s / w[k][2];
  }
  ld norm = 0, overlap = 0;
  for (int i = 0; i < n; ++i) {
    norm += x[i] * x[i];
    overlap += x[i] * v[i];
  }
  if (!std::isfinite(static_cast<double>(norm)) || norm == 0) return;  // keep the double result
  norm = std::sqrt(norm) * (overlap < 0 ? -1 : 1);
  for (int i = 0; i < n; ++i) ep.vector[i] = static_cast<double>(x[i] / norm);
  ep.value = static_cast<double>(mu);
}

EigenPair shifted_inverse_power(const FiveDiagonal& A, double shift, double tol, int max_iter) {
  if (!A.symmetric()) throw std::invalid_argument("shifted_inverse_power: matrix must be symmetric");
  const int n = A.dim();
  const double normA = A.norm_inf();
  std::vector<double> v = start_vector(n);
  double sigma = shift;
  double prev = NAN;
  int quiet = 0;
  for (int it = 1; it <= max_iter; ++it) {
    BandLU lu(A, sigma);
    for (int bump = 1; lu.singular() && bump <= 8; ++bump) {
      sigma += DBL_EPSILON * normA * bump;
      lu = BandLU(A, sigma);
    }
    std::vector<double> x = v;
    lu.solve(x);
    normalize(x);
    v = std::move(x);
    std::vector<double> Av = A.apply(v);
    double rho = 0;
    for (int i = 0; i < n; ++i) rho += v[i] * Av[i];

    bool small = std::isfinite(prev) &&
                 std::fabs(rho - prev) <= 1e-15 * std::fabs(rho) + DBL_EPSILON * normA;
    quiet = small ? quiet + 1 : 0;
    prev = rho;
    // Two plain inverse iterations at the supplied shift before switching to
    // Rayleigh-quotient updates, so the shift cannot wander to a neighbor.
    if (it >= 2) sigma = rho;
    if (quiet >= 2) {
      double r2 = 0;
      for (int i = 0; i < n; ++i) r2 += (Av[i] - rho * v[i]) * (Av[i] - rho * v[i]);
      if (std::sqrt(r2) <= tol * normA) return {rho, std::move(v), it};
    }
  }
  throw std::runtime_error("shifted_inverse_power: no convergence after " + std::to_string(max_iter) +
                           " iterations (shift " + std::to_string(shift) + ")");
}

std::vector<double> inverse_power_null(const FiveDiagonal& B, double tol) {
  const int n = B.dim();
  const double normB = B.norm_inf();
  BandLU lu(B, 0.0, DBL_MIN);
  std::vector<double> v = start_vector(n);
  for (int it = 1; it <= 20; ++it) {
    std::vector<double> x = v;
    lu.solve(x);
    normalize(x);
    double dot = 0;
    for (int i = 0; i < n; ++i) dot += x[i] * v[i];
    if (dot < 0)
      for (double& t : x) t = -t;
    double change = 0;
    for (int i = 0; i < n; ++i) change = std::max(change, std::fabs(x[i] - v[i]));
    v = std::move(x);
    double res = scaled_norm(B.apply(v));
    if (res <= tol * normB && (change < 1e-13 || it >= 3)) return v;
  }
  throw std::runtime_error("inverse_power_null: no convergence; the recurrence may lack a unique decaying solution");
}

}  // namespace airyspec
