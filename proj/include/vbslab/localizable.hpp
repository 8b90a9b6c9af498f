#pragma once

// Localizable entanglement between the two end spins of a valence-bond
// chain: measurement simulation, the determinant concurrence, the
// factorized average, basis optimization, the closed form for D = 2 and
// the string order parameter.
//
// Concurrence convention: for a pure D x D state with coefficient matrix
// psi, C = D |det psi|^(2/D) / ||psi||^2, so maximally entangled states give
// exactly 1 and LE values lie in [0, 1].

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "vbslab/fcs_state.hpp"

namespace vbs {

/// Orthonormal basis of one physical site, columns in the Sz basis.
struct MeasurementBasis {
  Operator vectors;

  int dim() const { return static_cast<int>(vectors.rows()); }
  /// Throws std::invalid_argument unless the columns are orthonormal and complete.
  static MeasurementBasis from_columns(Operator columns);
};

struct Concurrence {
  double value = 0.0;
  bool degenerate = false;  // zero input, reported as 0
};

/// Concurrence of (B (x) 1)|I_hat> with I_hat normalized maximally entangled:
/// |det B|^(2/D) / (Tr(B^dag B) / D).
Concurrence concurrence_d(const Operator& b);

struct ConditionedState {
  CVector state;         // D^2 components, left end slow; unnormalized
  Operator matrix_part;  // A^{beta_N} ... A^{beta_1} in the measurement basis
  double probability = 0.0;
};

/// Boundary-pair state after measuring bulk site k in `basis` with outcome
/// label outcome[k], and the probability <psi|psi> / <V|V> of that string.
ConditionedState conditioned_state(const ChainSpec& chain, const MeasurementBasis& basis,
                                   std::span<const int> outcome);

struct OutcomeRecord {
  std::vector<int> outcome;
  double probability = 0.0;
  Operator matrix_part;
  double entanglement = 0.0;
};

struct OutcomeEnsemble {
  std::vector<OutcomeRecord> records;

  double total_probability() const;
  double average_entanglement() const;
};

inline constexpr long long ensemble_record_limit = 1'000'000;
inline constexpr long long enumeration_limit = 10'000'000;

/// Every outcome string with its probability and conditioned entanglement.
/// Throws std::length_error above ensemble_record_limit outcomes.
OutcomeEnsemble enumerate_outcomes(const ChainSpec& chain, const MeasurementBasis& basis);

/// Exact sum over all d^N outcomes of p * C. Throws std::length_error above
/// enumeration_limit outcomes.
double average_entanglement_enumerated(const ChainSpec& chain, const MeasurementBasis& basis);

/// D |det K det E|^(2/D) prod_i (sum_beta |det A^beta|^(2/D)) / <V|V>, in log space;
/// for the canonical boundary this is prod_i (...) / [R(1)^N]_00.
double average_entanglement_factorized(const ChainSpec& chain, const MeasurementBasis& basis);

/// sum_beta |det A^beta|^(2/D) with the tensor re-expressed in `basis`.
double per_site_entanglement(const FcsTensor& tensor, const MeasurementBasis& basis);

/// Average end-to-end concurrence of an arbitrary dense state with layout
/// (end, bulk_1..bulk_N, end) when every bulk site is measured in `basis`.
double average_entanglement_dense(const CVector& state, int sites, int d, int end_dim,
                                  const MeasurementBasis& basis);

struct OptimizerOptions {
  int restarts = 32;
  double tolerance = 1e-10;
  std::uint64_t seed = 20040101;
  int max_iterations = 20000;  // per simplex run
};

struct BasisOptimum {
  MeasurementBasis basis;
  double value = 0.0;
  bool converged = false;
  int evaluations = 0;
  std::vector<double> restart_values;
};

/// Multi-start simplex ascent of f(U) = sum_beta |det A^beta(U)|^(2/D) over
/// unitary basis changes U = unitary_from_params(x). Starts are drawn
/// uniformly from [-pi, pi]^(d^2); none starts at the tensor's own basis.
BasisOptimum optimize_measurement_basis(const FcsTensor& tensor, const OptimizerOptions& options = {});

/// max over columns a_i of (1 - max_j |<a_i|b_j>|^2); zero iff the two
/// bases agree up to phases and ordering.
double basis_distance(const Operator& a, const Operator& b);

/// sqrt(lambda_max(M R(1) M R(1)^T)) for D = 2.
double le_closed_form_numerator(const FcsTensor& tensor);

/// [sqrt(lambda_max(M R M R^T))]^N / [R(1)^N]_00. Rejects D != 2. Assumes
/// the canonical boundary of make_chain.
double le_closed_form(const FcsTensor& tensor, int N);

/// Same LE for any boundary: 2 |det K det E| numerator^N / <V|V>. The
/// numerator is gauge invariant, so this is unchanged by gauge_transformed.
double le_closed_form(const ChainSpec& chain);

enum class LeMethod { enumeration, factorized, closed_form };
std::string to_string(LeMethod method);

struct LeReport {
  LeMethod method = LeMethod::closed_form;
  std::vector<int> sizes;
  std::vector<double> le;
  double slope = 0.0;
  double xi = 0.0;
  bool infinite = false;
  int window_start = 0;      // index into sizes where the fit window begins
  bool transient_converged = true;
};

/// Fit ln LE(N) = a - N / xi_E. The fit window is the longest tail of
/// `sizes` on which the successive log-ratios agree to 1e-10, so
/// subleading transfer eigenvalues at short lengths do not bias the slope;
/// at least three points are always used. |slope| < 1e-12 sets `infinite`.
/// The enumeration and factorized methods measure in `basis` (the tensor's
/// own basis when omitted).
LeReport xi_e(const FcsTensor& tensor, std::span<const int> sizes,
              LeMethod method = LeMethod::closed_form, const MeasurementBasis* basis = nullptr);

/// 1 / ln[(sqrt(cosh^2(2 phi) + 3) + cosh(2 phi)) / 3] for the deformed
/// family; +infinity at phi = 0.
double deformed_xi_e_closed(double phi);

/// <sigma^z_0 (x) exp(i pi Sz)^(x)N (x) sigma^z_{N+1}> for a spin-1 chain
/// with qubit ends.
double string_order(const ChainSpec& chain);

/// Tr_bulk[(exp(i pi Sz)^(x)N) |V><V|] / <V|V> as a 4 x 4 two-qubit operator.
Operator string_order_reduced(const ChainSpec& chain);

/// exp(i pi Sz) on a spin-1 site.
Operator spin_flip_parity();

struct LeRow {
  int N = 0;
  double enumerated = 0.0;
  double factorized = 0.0;
  double closed = 0.0;
  double string_order = 0.0;
};

/// CSV: N, LE_enum, LE_factorized, LE_closed, string_order.
void write_csv(std::ostream& out, std::span<const LeRow> rows);

}  // namespace vbs
