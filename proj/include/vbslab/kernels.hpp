#pragma once

// Data-parallel inner loops. Each kernel has an OpenMP implementation and a
// plain serial reference (suffix _serial) that recomputes everything from
// scratch; tests hold the two against each other and bench/ times them.
//
// The parallel kernels split work into fixed prefix chunks, sum each chunk
// with compensated summation and combine chunk totals in chunk order, so
// results do not depend on the thread count.

#include <span>

#include "vbslab/spin_algebra.hpp"

namespace vbs::kernels {

/// Totals over all d^N measurement outcomes of the boundary-pair state psi:
///   norm         = sum ||psi||^2
///   entanglement = sum D |det psi|^(2/D)
/// so the average concurrence is entanglement / norm.
struct OutcomeTotals {
  double norm = 0.0;
  double entanglement = 0.0;
};

/// `matrices` are the A^beta in the measurement basis, `boundary` the D x D
/// coefficient matrix K of |I> and `right` the right end matrix E, so each
/// outcome leaves psi = K B^T E.
OutcomeTotals accumulate_outcomes(std::span<const Operator> matrices, const Operator& boundary,
                                  const Operator& right, int sites);
OutcomeTotals accumulate_outcomes_serial(std::span<const Operator> matrices,
                                         const Operator& boundary, const Operator& right, int sites);

/// Amplitude vector of the valence-bond state, layout (left, beta_1..N, right).
CVector fill_dense(std::span<const Operator> matrices, const Operator& boundary,
                   const Operator& right, int sites);
CVector fill_dense_serial(std::span<const Operator> matrices, const Operator& boundary,
                          const Operator& right, int sites);

/// Measure every bulk site of an arbitrary dense state with layout
/// (end, bulk_1..bulk_N, end) in `basis` (columns = measurement vectors)
/// and accumulate the conditioned end-pair states.
OutcomeTotals project_outcomes(const CVector& state, int sites, int d, int end_dim,
                               const Operator& basis);
OutcomeTotals project_outcomes_serial(const CVector& state, int sites, int d, int end_dim,
                                      const Operator& basis);

/// Compensated (Neumaier) running sum.
class KahanSum {
 public:
  void add(double x);
  double value() const { return sum_ + carry_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

/// D |det psi|^(2/D) for a D x D coefficient matrix.
double determinant_weight(const Operator& psi);

}  // namespace vbs::kernels
