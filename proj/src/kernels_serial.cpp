#include <stdexcept>
#include <vector>

#include "vbslab/kernels.hpp"

// Straightforward reference versions: every outcome is rebuilt from scratch
// and summed in flat order with plain addition.

namespace vbs::kernels {

namespace {

std::vector<int> decode(long long flat, int d, int sites) {
  std::vector<int> labels(sites);
  for (int k = sites - 1; k >= 0; --k) {
    labels[k] = static_cast<int>(flat % d);
    flat /= d;
  }
  return labels;
}

long long count(int d, int sites) {
  long long n = 1;
  for (int i = 0; i < sites; ++i) n *= d;
  return n;
}

Operator product(std::span<const Operator> mats, const std::vector<int>& labels) {
  const auto dim = mats.front().rows();
  Operator b = Operator::Identity(dim, dim);
  for (int beta : labels) b = mats[beta] * b;
  return b;
}

}  // namespace

OutcomeTotals accumulate_outcomes_serial(std::span<const Operator> mats, const Operator& boundary,
                                         const Operator& right, int sites) {
  const int d = static_cast<int>(mats.size());
  OutcomeTotals totals;
  for (long long o = 0; o < count(d, sites); ++o) {
    const Operator psi = boundary * product(mats, decode(o, d, sites)).transpose() * right;
    totals.norm += psi.squaredNorm();
    totals.entanglement += determinant_weight(psi);
  }
  return totals;
}

CVector fill_dense_serial(std::span<const Operator> mats, const Operator& boundary, const Operator& right,
                          int sites) {
  const int d = static_cast<int>(mats.size());
  const auto dim = boundary.rows();
  const long long bulk = count(d, sites);
  CVector out(bulk * dim * dim);
  for (long long o = 0; o < bulk; ++o) {
    const Operator b = product(mats, decode(o, d, sites));
    for (Eigen::Index l = 0; l < dim; ++l) {
      for (Eigen::Index r = 0; r < dim; ++r) {
        cplx acc = 0.0;
        for (Eigen::Index c = 0; c < dim; ++c) {
          for (Eigen::Index e = 0; e < dim; ++e) acc += boundary(l, c) * b(e, c) * right(e, r);
        }
        out((l * bulk + o) * dim + r) = acc;
      }
    }
  }
  return out;
}

OutcomeTotals project_outcomes_serial(const CVector& state, int sites, int d, int end_dim,
                                      const Operator& basis) {
  const long long bulk = count(d, sites);
  if (state.size() != bulk * end_dim * end_dim) {
    throw std::invalid_argument("project_outcomes_serial: state dimension mismatch");
  }
  OutcomeTotals totals;
  for (long long o = 0; o < bulk; ++o) {
    const auto outcome = decode(o, d, sites);
    Operator psi = Operator::Zero(end_dim, end_dim);
    for (long long m = 0; m < bulk; ++m) {
      const auto config = decode(m, d, sites);
      cplx weight = 1.0;
      for (int k = 0; k < sites; ++k) weight *= std::conj(basis(config[k], outcome[k]));
      if (weight == 0.0) continue;
      for (int l = 0; l < end_dim; ++l) {
        for (int r = 0; r < end_dim; ++r) psi(l, r) += weight * state((l * bulk + m) * end_dim + r);
      }
    }
    totals.norm += psi.squaredNorm();
    totals.entanglement += determinant_weight(psi);
  }
  return totals;
}

}  // namespace vbs::kernels
