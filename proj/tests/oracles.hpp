#pragma once

// Brute-force reference computations for the tests. Nothing here calls the
// library's slicing, transfer or kernel code: states are built qubit by
// qubit from the projector map and explicit singlets, and observables are
// applied to full state vectors.

#include <Eigen/Dense>
#include <Eigen/QR>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

inline Mat singlet(int D) {
  Mat j = Mat::Zero(D, D);
  for (int k = 0; k < D; ++k) j(k, D - 1 - k) = (k % 2 == 0) ? 1.0 : -1.0;
  return j;
}

/// Spin-1 projector map in the Sz basis (+1, 0, -1), columns over qubit
/// pairs (a, b) with a slow: rows e^p|00>, (e^-p|01> + e^p|10>)/sqrt2, e^-p|11>.
inline Mat deformed_map(double phi) {
  const double h = 1.0 / std::sqrt(2.0);
  Mat a = Mat::Zero(3, 4);
  a(0, 0) = std::exp(phi);
  a(1, 1) = std::exp(-phi) * h;
  a(1, 2) = std::exp(phi) * h;
  a(2, 3) = std::exp(-phi);
  return a;
}

/// Spin-1 measurement basis written out by hand: |0>, i(|-1> + |+1>)/sqrt2,
/// (|-1> - |+1>)/sqrt2 as columns over (+1, 0, -1).
inline Mat bell_basis() {
  const double h = 1.0 / std::sqrt(2.0);
  Mat b(3, 3);
  b << 0.0, cplx(0, h), -h,
       1.0, 0.0, 0.0,
       0.0, cplx(0, h), h;
  return b;
}

/// Valence-bond state: singlets on (end, 1), (1bar, 2), ..., (Nbar, end),
/// then `map` applied to each bulk pair (k, kbar). Layout (left end,
/// bulk_1..bulk_N, right end), left factor slow.
inline Vec valence_bond_state(const Mat& map, int N, int D) {
  const Mat j = singlet(D);
  const int d = static_cast<int>(map.rows());
  // psi(rest, dangling); starts as the first singlet
  Mat psi = j;  // rows: left end, cols: dangling qubit
  for (int site = 0; site < N; ++site) {
    const auto rest = psi.rows();
    Mat next = Mat::Zero(rest * d, D);
    for (Eigen::Index r = 0; r < rest; ++r) {
      for (int beta = 0; beta < d; ++beta) {
        for (int c = 0; c < D; ++c) {
          cplx acc = 0.0;
          for (int a = 0; a < D; ++a) {
            for (int b = 0; b < D; ++b) acc += map(beta, a * D + b) * psi(r, a) * j(b, c);
          }
          next(r * d + beta, c) = acc;
        }
      }
    }
    psi = std::move(next);
  }
  Vec out(psi.size());
  for (Eigen::Index r = 0; r < psi.rows(); ++r) {
    for (Eigen::Index c = 0; c < psi.cols(); ++c) out(r * psi.cols() + c) = psi(r, c);
  }
  return out;
}

/// op acting on one site of a chain with the given local dimensions.
inline Vec apply_site(const Vec& v, const std::vector<int>& dims, std::size_t site, const Mat& op) {
  long long left = 1, right = 1;
  for (std::size_t i = 0; i < site; ++i) left *= dims[i];
  for (std::size_t i = site + 1; i < dims.size(); ++i) right *= dims[i];
  const int d = dims[site];
  Vec out = Vec::Zero(v.size());
  for (long long l = 0; l < left; ++l) {
    for (long long r = 0; r < right; ++r) {
      for (int i = 0; i < d; ++i) {
        cplx acc = 0.0;
        for (int k = 0; k < d; ++k) acc += op(i, k) * v((l * d + k) * right + r);
        out((l * d + i) * right + r) = acc;
      }
    }
  }
  return out;
}

/// <v| op_0 (x) ... (x) op_last |v> / <v|v>; one operator per site, ends included.
inline cplx dense_expectation(const Vec& v, const std::vector<int>& dims, const std::vector<Mat>& ops) {
  Vec w = v;
  for (std::size_t s = 0; s < ops.size(); ++s) w = apply_site(w, dims, s, ops[s]);
  return v.dot(w) / v.squaredNorm();
}

inline std::vector<int> chain_dims(int N, int d, int D) {
  std::vector<int> dims(N + 2, d);
  dims.front() = D;
  dims.back() = D;
  return dims;
}

/// Wootters concurrence |<psi|sy (x) sy|psi*>| of a normalized two-qubit state.
inline double wootters(const Vec& psi) {
  const Vec n = psi / psi.norm();
  // sy (x) sy = [[0,0,0,-1],[0,0,1,0],[0,1,0,0],[-1,0,0,0]]
  const cplx v = n(0) * n(3) * -2.0 + n(1) * n(2) * 2.0;
  return std::abs(v);
}

/// D |det psi|^(2/D) / ||psi||^2 computed from the eigenvalues of psi psi^dag.
inline double concurrence_from_singular_values(const Mat& psi) {
  Eigen::JacobiSVD<Mat> svd(psi);
  const auto& s = svd.singularValues();
  double logdet = 0.0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) == 0.0) return 0.0;
    logdet += std::log(s(i));
  }
  const double D = static_cast<double>(psi.rows());
  return D * std::exp(2.0 * logdet / D) / psi.squaredNorm();
}

/// Average end-pair concurrence after projecting every bulk site of `v`
/// onto the columns of `basis`, built one outcome at a time.
inline double average_concurrence_by_projection(const Vec& v, int N, int d, int D, const Mat& basis) {
  long long bulk = 1;
  for (int i = 0; i < N; ++i) bulk *= d;
  double num = 0.0, den = 0.0;
  std::vector<int> outcome(N), config(N);
  for (long long o = 0; o < bulk; ++o) {
    long long t = o;
    for (int k = N - 1; k >= 0; --k) { outcome[k] = static_cast<int>(t % d); t /= d; }
    Mat psi = Mat::Zero(D, D);
    for (long long m = 0; m < bulk; ++m) {
      long long u = m;
      for (int k = N - 1; k >= 0; --k) { config[k] = static_cast<int>(u % d); u /= d; }
      cplx w = 1.0;
      for (int k = 0; k < N; ++k) w *= std::conj(basis(config[k], outcome[k]));
      for (int l = 0; l < D; ++l)
        for (int r = 0; r < D; ++r) psi(l, r) += w * v((l * bulk + m) * D + r);
    }
    const double p = psi.squaredNorm();
    den += p;
    if (p > 0) num += p * concurrence_from_singular_values(psi);
  }
  return num / den;
}

/// Spin matrices in the Sz basis (m = s, s-1, ..., -s) from the ladder formula.
struct Spin {
  Mat x, y, z;
};
inline Spin spin(double s) {
  const int dim = static_cast<int>(std::lround(2 * s + 1));
  Mat plus = Mat::Zero(dim, dim), z = Mat::Zero(dim, dim);
  for (int i = 0; i < dim; ++i) {
    const double m = s - i;
    z(i, i) = m;
    if (i > 0) plus(i - 1, i) = std::sqrt(s * (s + 1) - m * (m + 1));
  }
  const Mat minus = plus.adjoint();
  return {(plus + minus) / 2.0, (plus - minus) / cplx(0, 2), z};
}

inline Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

/// Projector onto total spin `target` of two spins, from the Casimir
/// polynomial prod_{j != target} (S^2 - j(j+1)) / (target(target+1) - j(j+1)).
inline Mat total_spin_projector(double s1, double s2, double target) {
  const Spin a = spin(s1), b = spin(s2);
  const auto ia = Mat::Identity(a.z.rows(), a.z.rows());
  const auto ib = Mat::Identity(b.z.rows(), b.z.rows());
  const Mat tx = kron(a.x, ib) + kron(ia, b.x), ty = kron(a.y, ib) + kron(ia, b.y), tz = kron(a.z, ib) + kron(ia, b.z);
  const Mat s2op = tx * tx + ty * ty + tz * tz;
  const auto n = s2op.rows();
  Mat p = Mat::Identity(n, n);
  for (double j = std::abs(s1 - s2); j <= s1 + s2 + 1e-9; j += 1.0) {
    if (std::abs(j - target) < 1e-9) continue;
    p = p * (s2op - j * (j + 1) * Mat::Identity(n, n)) / (target * (target + 1) - j * (j + 1));
  }
  return p;
}

/// Unweighted least-squares slope through all points.
inline double slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

/// Grid search of sum_beta |det A^beta(U)|^(2/D) over qubit bases
/// cos t |0> + e^{ic} sin t |1>, its orthogonal partner; A given in the Sz basis.
inline double qubit_basis_grid_optimum(const std::vector<Mat>& sz_mats, int grid = 400) {
  const double D = static_cast<double>(sz_mats[0].rows());
  auto f = [&](double t, double c) {
    const cplx e = std::polar(1.0, c);
    const Vec b0 = (Vec(2) << std::cos(t), e * std::sin(t)).finished();
    const Vec b1 = (Vec(2) << -std::conj(e) * std::sin(t), std::cos(t)).finished();
    double total = 0.0;
    for (const Vec* b : {&b0, &b1}) {
      Mat m = std::conj((*b)(0)) * sz_mats[0] + std::conj((*b)(1)) * sz_mats[1];
      total += std::pow(std::abs(m.determinant()), 2.0 / D);
    }
    return total;
  };
  double best = -1, bt = 0, bc = 0;
  for (int i = 0; i <= grid; ++i) {
    for (int k = 0; k < grid; ++k) {
      const double t = std::numbers::pi / 2 * i / grid, c = 2 * std::numbers::pi * k / grid;
      const double v = f(t, c);
      if (v > best) { best = v; bt = t; bc = c; }
    }
  }
  // local refinement on shrinking grids
  double ht = std::numbers::pi / 2 / grid, hc = 2 * std::numbers::pi / grid;
  for (int round = 0; round < 40; ++round) {
    for (int i = -5; i <= 5; ++i) {
      for (int k = -5; k <= 5; ++k) {
        const double t = bt + ht * i / 5, c = bc + hc * k / 5;
        const double v = f(t, c);
        if (v > best) { best = v; bt = t; bc = c; }
      }
    }
    ht /= 2;
    hc /= 2;
  }
  return best;
}

inline Mat random_matrix(std::mt19937_64& rng, int rows, int cols) {
  std::normal_distribution<double> g;
  Mat m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = cplx(g(rng), g(rng));
  return m;
}

inline Mat random_hermitian(std::mt19937_64& rng, int dim) {
  const Mat m = random_matrix(rng, dim, dim);
  return (m + m.adjoint()) / 2.0;
}

inline Mat random_unitary(std::mt19937_64& rng, int dim) {
  Eigen::HouseholderQR<Mat> qr(random_matrix(rng, dim, dim));
  return qr.householderQ() * Mat::Identity(dim, dim);
}

/// Best sum_beta |det A^beta| over measurement bases of a D = 2 tensor:
/// det(sum_g u_g A^g) = u^T Q u with Q_gh = (tr A^g tr A^h - tr A^g A^h) / 2,
/// and the maximum of sum |diag(W^T Q W)| over unitaries W is the sum of the
/// singular values of Q.
inline double determinant_form_nuclear_norm(const std::vector<Mat>& a) {
  const int d = static_cast<int>(a.size());
  Mat q(d, d);
  for (int g = 0; g < d; ++g)
    for (int h = 0; h < d; ++h) q(g, h) = 0.5 * (a[g].trace() * a[h].trace() - (a[g] * a[h]).trace());
  return Eigen::JacobiSVD<Mat>(q).singularValues().sum();
}

/// U diag(e^s) V with s uniform in [-1, 1]: invertible, condition number at most e^2.
inline Mat random_gauge(std::mt19937_64& rng, int dim) {
  std::uniform_real_distribution<double> s(-1.0, 1.0);
  Mat d = Mat::Zero(dim, dim);
  for (int i = 0; i < dim; ++i) d(i, i) = std::exp(s(rng));
  return random_unitary(rng, dim) * d * random_unitary(rng, dim);
}

/// |<a|b>| / (|a||b|): 1 when the vectors agree up to a complex scalar.
inline double overlap_fidelity(const Vec& a, const Vec& b) {
  return std::abs(a.dot(b)) / (a.norm() * b.norm());
}

}  // namespace oracle
