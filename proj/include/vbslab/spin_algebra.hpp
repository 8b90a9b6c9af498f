#pragma once

// Dense complex linear algebra and spin-operator constructors shared by the
// rest of the library.
//
// Tensor-index convention (used everywhere): in kron(A, B) the left factor
// is the slow index, i.e. |a>|b> has flat index a * dim(B) + b. Chains are
// laid out site 0 leftmost. Spin-S single-site bases are ordered by
// descending Sz: (+S, S-1, ..., -S).

#include <complex>
#include <span>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace vbs {

using cplx = std::complex<double>;
using Operator = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

namespace tol {
inline constexpr double structural = 1e-12;
inline constexpr double eigen_residual = 1e-10;
inline constexpr double fitted = 1e-3;
}  // namespace tol

class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SpinOperators {
  double s = 0.0;
  Operator x, y, z;

  int dim() const { return static_cast<int>(z.rows()); }
};

/// Sx, Sy, Sz for spin s in the descending-Sz basis. Throws
/// std::invalid_argument unless 2s is a positive integer.
SpinOperators spin_operators(double s);

Operator identity(int dim);
Operator kron(const Operator& a, const Operator& b);

/// Pauli matrices with sigma_0 = identity, unnormalized: Tr(s_a s_b) = 2 delta.
Operator pauli(int index);

/// Hermitian operator basis for D x D matrices: element 0 is the identity
/// (Tr = D), the rest are generalized Gell-Mann matrices with
/// Tr(s_a s_b) = 2 delta_ab. For D = 2 this is (1, sx, sy, sz).
struct HermitianBasis {
  int dim = 0;
  std::vector<Operator> elements;
  RVector norms;  // Tr(s_a s_a)

  int size() const { return static_cast<int>(elements.size()); }
};

HermitianBasis hermitian_basis(int dim);

/// Coefficient matrix J of the canonical maximally entangled state
/// |I> = sum_k (-1)^k |k>|D-1-k> (unnormalized). D = 2 gives the singlet
/// |01> - |10>.
Operator singlet_matrix(int dim);

struct Eigensystem {
  CVector values;    // sorted by descending magnitude
  Operator vectors;  // columns
  bool hermitian = false;
};

/// Dense eigendecomposition. Hermitian inputs (to tol::structural relative)
/// go through the self-adjoint solver and return real eigenvalues with
/// orthonormal eigenvectors. Throws NumericalError on non-convergence.
Eigensystem eigensystem(const Operator& a);
Eigensystem eigensystem(const RMatrix& a);

/// Eigenvalues of a hermitian operator in ascending order.
RVector hermitian_eigenvalues(const Operator& a);

/// exp(factor * H) for hermitian H.
Operator hermitian_exp(const Operator& h, cplx factor);

bool is_hermitian(const Operator& a, double tolerance = tol::structural);
bool is_unitary(const Operator& u, double tolerance = tol::structural);

/// 3 x 4 isometry from two qubits onto their symmetric (spin-1) subspace.
/// Rows are m = +1, 0, -1; columns are |q1 q2> with q = 0 the spin-up
/// state, so |00> maps to m = +1.
Operator symmetric_projector();

/// Unitary exp(i H(params)) where H is the hermitian matrix whose diagonal
/// is params[0..d) and whose strict upper triangle takes consecutive
/// (re, im) pairs. Needs params.size() == d * d.
Operator unitary_from_params(std::span<const double> params, int dim);

}  // namespace vbs
