#pragma once

// Transfer-operator calculus. For a single-site observable O the real
// D^2 x D^2 matrix
//
//   R_ij(O) = M_ik Tr[(A^dag O A) s_j (x) s_k]
//
// (A the d x D^2 physical map, s the hermitian basis, M the bond metric)
// makes chain expectation values a (0,0) matrix element:
//
//   <O_1 ... O_N> = [R(O_N) ... R(O_1)]_00 / [R(1)^N]_00.

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "vbslab/fcs_state.hpp"

namespace vbs {

struct TransferOperator {
  int D = 0;
  RMatrix entries;  // D^2 x D^2
  std::string source;
};

/// Bond metric M; diag(1, -1, -1, -1) for D = 2. For general D it is
/// D (W N)^-1 with W_ki = Tr(J s_k^T J^dag s_i) / n_i and N = diag(n_i).
RMatrix bond_metric(int D);

/// O is d x d in the Sz basis and must be hermitian. Throws on dimension
/// mismatch, and NumericalError if the result has imaginary parts above
/// 1e-10 (relative).
TransferOperator transfer_operator(const FcsTensor& tensor, const Operator& op,
                                   std::string source = {});

/// [R(O_N) ... R(O_1)]_00 / [R(1)^N]_00 when K and E are proportional to
/// unitaries; other ends go through boundary_matrix_element. Products are
/// rescaled step by step, so long chains do not overflow.
double expectation(const ChainSpec& chain, std::span<const Operator> ops);

/// <V| X_left (x) O_1 ... O_N (x) X_right |V> / <V|V> for arbitrary D x D
/// end operators and any nonzero boundary state.
cplx boundary_matrix_element(const ChainSpec& chain, const Operator& left,
                             std::span<const Operator> ops, const Operator& right);

/// Real part of boundary_matrix_element for hermitian end operators.
double expectation_with_boundary(const ChainSpec& chain, const Operator& left,
                                 std::span<const Operator> ops, const Operator& right);

/// Natural log of |[R(1)^N]_00| and its sign.
struct LogValue {
  double log_abs = 0.0;
  int sign = 1;
};
LogValue log_norm_element(const RMatrix& r, int N);

/// ln <V|V> for any nonzero boundary state (with |I> as stored, not
/// normalized). For the canonical boundary <V|V> = D [R(1)^N]_00.
double log_norm_squared(const ChainSpec& chain);

struct SpectralLength {
  double xi = 0.0;
  bool finite = true;
  cplx lambda1{};
  cplx lambda2{};
};

/// xi_C = 1 / ln|lambda1 / lambda2| from the two largest-magnitude
/// eigenvalues of R(1). Degenerate magnitudes give finite = false.
SpectralLength correlation_length_spectral(const FcsTensor& tensor);

struct CorrelationReport {
  std::string op_label;
  std::vector<int> separations;
  std::vector<double> connected;
  double xi = 0.0;
  double residual = 0.0;
  int points_used = 0;
  bool underflow = false;     // some |C(r)| fell below the fit threshold
  bool uncorrelated = false;  // fewer than two usable points
};

inline constexpr double correlator_floor = 1e-12;

/// 1 / ln(sqrt(cosh^2(2 phi) + 3) + cosh(2 phi)) for the deformed family.
double deformed_xi_c_closed(double phi);

/// Connected correlator C(r) = <O_a O_{a+r}> - <O_a><O_{a+r}> with the pair
/// centered in the chain, followed by a least-squares line through
/// ln|C(r)|. Requires r_max < N.
CorrelationReport correlation_length_fit(const ChainSpec& chain, const Operator& op, int r_min,
                                         int r_max, std::string label = {});

/// Fits Sx, Sy and Sz and returns the slowest-decaying channel.
CorrelationReport model_correlation_length_fit(const ChainSpec& chain, int r_min, int r_max);

/// CSV rows: r, C(r), fitted xi, residual.
void write_csv(std::ostream& out, const CorrelationReport& report);

}  // namespace vbs
