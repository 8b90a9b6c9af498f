#include "vbslab/spin_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Eigenvalues>

namespace vbs {

SpinOperators spin_operators(double s) {
  const double twice = 2.0 * s;
  if (!(s > 0.0) || std::abs(twice - std::round(twice)) > 1e-12) {
    throw std::invalid_argument("spin must be a positive half-integer");
  }
  const int dim = static_cast<int>(std::lround(twice)) + 1;
  SpinOperators ops;
  ops.s = s;
  ops.z = Operator::Zero(dim, dim);
  Operator raise = Operator::Zero(dim, dim);
  for (int i = 0; i < dim; ++i) {
    const double m = s - i;
    ops.z(i, i) = m;
    // S+ |m> = sqrt(s(s+1) - m(m+1)) |m+1>; |m+1> sits at index i-1.
    if (i > 0) raise(i - 1, i) = std::sqrt(s * (s + 1) - m * (m + 1));
  }
  const Operator lower = raise.adjoint();
  ops.x = 0.5 * (raise + lower);
  ops.y = cplx(0.0, -0.5) * (raise - lower);
  return ops;
}

Operator identity(int dim) { return Operator::Identity(dim, dim); }

Operator kron(const Operator& a, const Operator& b) {
  Operator out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Operator pauli(int index) {
  Operator p = Operator::Zero(2, 2);
  switch (index) {
    case 0: p(0, 0) = 1; p(1, 1) = 1; break;
    case 1: p(0, 1) = 1; p(1, 0) = 1; break;
    case 2: p(0, 1) = cplx(0, -1); p(1, 0) = cplx(0, 1); break;
    case 3: p(0, 0) = 1; p(1, 1) = -1; break;
    default: throw std::out_of_range("pauli index must be 0..3");
  }
  return p;
}

HermitianBasis hermitian_basis(int dim) {
  if (dim < 1) throw std::invalid_argument("hermitian_basis: dim must be positive");
  HermitianBasis basis;
  basis.dim = dim;
  basis.elements.push_back(identity(dim));
  for (int j = 0; j < dim; ++j) {
    for (int k = j + 1; k < dim; ++k) {
      Operator sym = Operator::Zero(dim, dim);
      sym(j, k) = 1;
      sym(k, j) = 1;
      Operator anti = Operator::Zero(dim, dim);
      anti(j, k) = cplx(0, -1);
      anti(k, j) = cplx(0, 1);
      basis.elements.push_back(sym);
      basis.elements.push_back(anti);
    }
  }
  for (int l = 1; l < dim; ++l) {
    Operator diag = Operator::Zero(dim, dim);
    const double scale = std::sqrt(2.0 / (l * (l + 1.0)));
    for (int i = 0; i < l; ++i) diag(i, i) = scale;
    diag(l, l) = -l * scale;
    basis.elements.push_back(diag);
  }
  basis.norms.resize(basis.size());
  for (int a = 0; a < basis.size(); ++a) {
    basis.norms(a) = (basis.elements[a] * basis.elements[a]).trace().real();
  }
  return basis;
}

Operator singlet_matrix(int dim) {
  Operator j = Operator::Zero(dim, dim);
  for (int k = 0; k < dim; ++k) j(k, dim - 1 - k) = (k % 2 == 0) ? 1.0 : -1.0;
  return j;
}

namespace {

void sort_by_magnitude(Eigensystem& es) {
  const auto n = es.values.size();
  std::vector<Eigen::Index> order(n);
  std::iota(order.begin(), order.end(), 0);
  double scale = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) scale = std::max(scale, std::abs(es.values(i)));
  const double tie = 1e-12 * std::max(scale, 1.0);
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    const cplx va = es.values(a), vb = es.values(b);
    const double ma = std::abs(va), mb = std::abs(vb);
    if (std::abs(ma - mb) > tie) return ma > mb;
    if (std::abs(va.real() - vb.real()) > tie) return va.real() > vb.real();
    return va.imag() > vb.imag();
  });
  CVector values(n);
  Operator vectors(es.vectors.rows(), n);
  for (Eigen::Index i = 0; i < n; ++i) {
    values(i) = es.values(order[i]);
    vectors.col(i) = es.vectors.col(order[i]);
  }
  es.values = std::move(values);
  es.vectors = std::move(vectors);
}

}  // namespace

Eigensystem eigensystem(const Operator& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("eigensystem: matrix must be square");
  Eigensystem es;
  const double scale = std::max(a.cwiseAbs().maxCoeff(), 1.0);
  if (is_hermitian(a, tol::structural * scale)) {
    const Operator h = 0.5 * (a + a.adjoint());
    Eigen::SelfAdjointEigenSolver<Operator> solver(h);
    if (solver.info() != Eigen::Success) {
      throw NumericalError("eigensystem: self-adjoint solver did not converge");
    }
    es.values = solver.eigenvalues().cast<cplx>();
    es.vectors = solver.eigenvectors();
    es.hermitian = true;
  } else {
    Eigen::ComplexEigenSolver<Operator> solver(a);
    if (solver.info() != Eigen::Success) {
      throw NumericalError("eigensystem: complex eigen solver did not converge");
    }
    es.values = solver.eigenvalues();
    es.vectors = solver.eigenvectors();
  }
  sort_by_magnitude(es);
  return es;
}

Eigensystem eigensystem(const RMatrix& a) { return eigensystem(Operator(a.cast<cplx>())); }

RVector hermitian_eigenvalues(const Operator& a) {
  Eigen::SelfAdjointEigenSolver<Operator> solver(0.5 * (a + a.adjoint()), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("hermitian_eigenvalues: solver did not converge");
  }
  return solver.eigenvalues();
}

Operator hermitian_exp(const Operator& h, cplx factor) {
  Eigen::SelfAdjointEigenSolver<Operator> solver(0.5 * (h + h.adjoint()));
  if (solver.info() != Eigen::Success) throw NumericalError("hermitian_exp: solver did not converge");
  const CVector phases = (factor * solver.eigenvalues().cast<cplx>()).array().exp();
  return solver.eigenvectors() * phases.asDiagonal() * solver.eigenvectors().adjoint();
}

bool is_hermitian(const Operator& a, double tolerance) {
  if (a.rows() != a.cols()) return false;
  return (a - a.adjoint()).cwiseAbs().maxCoeff() <= tolerance;
}

bool is_unitary(const Operator& u, double tolerance) {
  if (u.rows() != u.cols()) return false;
  return (u * u.adjoint() - identity(static_cast<int>(u.rows()))).cwiseAbs().maxCoeff() <= tolerance;
}

Operator symmetric_projector() {
  const double h = 1.0 / std::sqrt(2.0);
  Operator a = Operator::Zero(3, 4);
  a(0, 0) = 1;
  a(1, 1) = h;
  a(1, 2) = h;
  a(2, 3) = 1;
  return a;
}

Operator unitary_from_params(std::span<const double> params, int dim) {
  if (static_cast<int>(params.size()) != dim * dim) {
    throw std::invalid_argument("unitary_from_params: need dim*dim parameters");
  }
  Operator h = Operator::Zero(dim, dim);
  std::size_t p = 0;
  for (int i = 0; i < dim; ++i) h(i, i) = params[p++];
  for (int i = 0; i < dim; ++i) {
    for (int j = i + 1; j < dim; ++j) {
      h(i, j) = cplx(params[p], params[p + 1]);
      h(j, i) = std::conj(h(i, j));
      p += 2;
    }
  }
  return hermitian_exp(h, cplx(0, 1));
}

}  // namespace vbs
