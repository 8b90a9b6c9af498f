#pragma once

// Finitely correlated (valence-bond) states on an open chain
//
//   site:   0bar   1   2  ...  N   N+1
//   dim:     D     d   d       d    D
//
// A state is fixed by a site tensor {A^beta} (d matrices of size D x D, one
// per physical basis label beta) and a boundary pair state |I> between the
// two end spins. Its amplitudes are
//
//   <l, beta_1..beta_N, r | V> = (K B^T E)(l, r),   B = A^{beta_N} ... A^{beta_1}
//
// with K the D x D coefficient matrix of |I> and E a right end matrix
// (identity unless a gauge has been applied), i.e. |V> = sum |beta> (1 (x) E^T B)|I>.
//
// The physical 3x4 (generally d x D^2) map acting on a site's two virtual
// spins has its columns ordered (k, kbar): the virtual spin bonded to the
// left neighbour first. The tensor is related to that map through the
// normalized maximally entangled state I_hat = I / sqrt(D):
//
//   <beta| A_rect = <I_hat| (A^beta (x) 1).

#include <span>
#include <string>
#include <vector>

#include "vbslab/spin_algebra.hpp"

namespace vbs {

struct FcsTensor {
  int d = 0;  // physical dimension
  int D = 0;  // bond dimension
  std::vector<Operator> matrices;   // A^beta, size d, each D x D
  std::vector<std::string> labels;  // size d
  Operator basis;  // d x d; column beta is the physical vector of label beta in the Sz basis

  /// Throws std::invalid_argument on inconsistent shapes, a non-unitary
  /// basis or an all-zero tensor.
  void validate() const;
};

struct ChainSpec {
  int N = 0;
  FcsTensor tensor;
  CVector boundary;  // D^2 coefficients of |I>, left end spin slow
  Operator right_end;  // E, D x D

  void validate() const;
  Operator boundary_matrix() const;  // K(l, c)
  /// K B^T E for a matrix part B.
  Operator pair_state(const Operator& b) const;
  int total_dim() const;             // D * d^N * D
};

/// Chain with the canonical (unnormalized) maximally entangled boundary
/// state; for D = 2 that is |01> - |10>.
ChainSpec make_chain(int N, FcsTensor tensor);

struct DenseState {
  int N = 0;
  int d = 0;
  int D = 0;
  Operator basis;  // physical basis the bulk indices refer to
  CVector amplitudes;

  double norm2() const { return amplitudes.squaredNorm(); }
  Eigen::Index index(int left, std::span<const int> outcome, int right) const;
};

inline constexpr long long dense_state_limit = 10'000'000;

/// The spin-1 measurement basis in which the symmetric projector slices to
/// Pauli matrices: labels (0, +, -) with vectors |0>, i(|-1> + |+1>)/sqrt2,
/// (|-1> - |+1>)/sqrt2, as columns in the (+1, 0, -1) basis.
Operator aklt_measurement_basis();
std::vector<std::string> aklt_labels();

/// Slice a d x D^2 physical map into D x D matrices, one per basis vector.
/// `basis` columns must be orthonormal and complete.
FcsTensor slice_projection(const Operator& physical_map, const Operator& basis,
                           std::vector<std::string> labels = {});

/// Inverse of slice_projection: the d x D^2 map in the Sz basis.
Operator reconstruct_projection(const FcsTensor& tensor);

/// Matrices (sigma_z, sigma_y, sigma_x) labelled (0, +, -).
FcsTensor aklt_tensor();

/// The deformed valence-bond map: rows m = +1, 0, -1 equal to
/// e^phi |00>, (e^-phi |01> + e^phi |10>)/sqrt2, e^-phi |11>.
Operator deformed_projector(double phi);
FcsTensor deformed_tensor(double phi);

/// Re-express the tensor in another physical basis (columns in the Sz basis):
/// A'^gamma = sum_beta <gamma'|beta> A^beta.
FcsTensor rotate_basis(const FcsTensor& tensor, const Operator& new_basis,
                       std::vector<std::string> labels = {});
FcsTensor in_sz_basis(const FcsTensor& tensor);

FcsTensor scaled(const FcsTensor& tensor, cplx factor);

/// Bond gauge A^beta -> G A^beta G^-1, K -> K G^T, E -> G^-T E. The
/// physical state is unchanged for every invertible G.
ChainSpec gauge_transformed(const ChainSpec& chain, const Operator& gauge);

/// Ordered product A^{beta_N} ... A^{beta_1}.
Operator matrix_part(const FcsTensor& tensor, std::span<const int> outcome);

cplx amplitude(const ChainSpec& chain, std::span<const int> outcome, int left, int right);

/// Full amplitude vector over (left, beta_1..beta_N, right) in the tensor's
/// label basis. Throws std::length_error above dense_state_limit entries.
DenseState dense_state(const ChainSpec& chain);

}  // namespace vbs
