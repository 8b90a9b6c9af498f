#include "vbslab/kernels.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include <omp.h>

namespace vbs::kernels {

void KahanSum::add(double x) {
  const double t = sum_ + x;
  if (std::abs(sum_) >= std::abs(x)) {
    carry_ += (sum_ - t) + x;
  } else {
    carry_ += (x - t) + sum_;
  }
  sum_ = t;
}

double determinant_weight(const Operator& psi) {
  const auto dim = static_cast<double>(psi.rows());
  const double det = std::abs(psi.determinant());
  if (det == 0.0) return 0.0;
  return dim * std::pow(det, 2.0 / dim);
}

namespace {

constexpr long long min_chunks = 64;

long long ipow(int base, int exp) {
  long long out = 1;
  for (int i = 0; i < exp; ++i) out *= base;
  return out;
}

int prefix_length(int d, int sites) {
  int p = 0;
  while (p < sites && ipow(d, p) < min_chunks) ++p;
  return p;
}

// Visit every outcome whose first `prefix_len` labels encode `prefix`, in
// increasing flat order, with the ordered product A^{beta_N}...A^{beta_1}.
template <typename Visit>
void visit_chunk(std::span<const Operator> mats, int sites, int prefix_len, long long prefix,
                 Visit&& visit) {
  const int d = static_cast<int>(mats.size());
  const auto dim = mats.front().rows();
  std::vector<int> labels(sites, 0);
  long long rem = prefix;
  for (int k = prefix_len - 1; k >= 0; --k) {
    labels[k] = static_cast<int>(rem % d);
    rem /= d;
  }
  // partial[k] = A^{beta_k} ... A^{beta_1}; partial[0] = 1
  std::vector<Operator> partial(sites + 1, Operator::Identity(dim, dim));
  for (int k = 0; k < prefix_len; ++k) partial[k + 1] = mats[labels[k]] * partial[k];
  const long long suffix_count = ipow(d, sites - prefix_len);
  long long flat = prefix * suffix_count;
  int depth = prefix_len;  // partial[depth] is valid
  for (long long s = 0; s < suffix_count; ++s, ++flat) {
    for (int k = depth; k < sites; ++k) partial[k + 1] = mats[labels[k]] * partial[k];
    visit(flat, partial[sites]);
    // odometer increment over the suffix
    int k = sites - 1;
    while (k >= prefix_len) {
      if (++labels[k] < d) break;
      labels[k] = 0;
      --k;
    }
    depth = k < prefix_len ? prefix_len : k;
  }
}

void check_inputs(std::span<const Operator> mats, const Operator& boundary, const Operator& right,
                  int sites) {
  if (mats.empty() || sites < 1) throw std::invalid_argument("kernels: empty tensor or chain");
  const auto dim = mats.front().rows();
  if (boundary.rows() != dim || boundary.cols() != dim || right.rows() != dim || right.cols() != dim) {
    throw std::invalid_argument("kernels: boundary matrices must be D x D");
  }
}

}  // namespace

OutcomeTotals accumulate_outcomes(std::span<const Operator> mats, const Operator& boundary,
                                  const Operator& right, int sites) {
  check_inputs(mats, boundary, right, sites);
  const int d = static_cast<int>(mats.size());
  const int p = prefix_length(d, sites);
  const long long chunks = ipow(d, p);
  std::vector<OutcomeTotals> totals(chunks);
#pragma omp parallel for schedule(dynamic)
  for (long long c = 0; c < chunks; ++c) {
    KahanSum norm, ent;
    visit_chunk(mats, sites, p, c, [&](long long, const Operator& b) {
      const Operator psi = boundary * b.transpose() * right;
      norm.add(psi.squaredNorm());
      ent.add(determinant_weight(psi));
    });
    totals[c] = {norm.value(), ent.value()};
  }
  KahanSum norm, ent;
  for (const auto& t : totals) {
    norm.add(t.norm);
    ent.add(t.entanglement);
  }
  return {norm.value(), ent.value()};
}

CVector fill_dense(std::span<const Operator> mats, const Operator& boundary, const Operator& right,
                   int sites) {
  check_inputs(mats, boundary, right, sites);
  const int d = static_cast<int>(mats.size());
  const auto dim = boundary.rows();
  const long long bulk = ipow(d, sites);
  CVector out(bulk * dim * dim);
  const int p = prefix_length(d, sites);
  const long long chunks = ipow(d, p);
#pragma omp parallel for schedule(dynamic)
  for (long long c = 0; c < chunks; ++c) {
    visit_chunk(mats, sites, p, c, [&](long long flat, const Operator& b) {
      const Operator psi = boundary * b.transpose() * right;
      for (Eigen::Index l = 0; l < dim; ++l) {
        for (Eigen::Index r = 0; r < dim; ++r) out((l * bulk + flat) * dim + r) = psi(l, r);
      }
    });
  }
  return out;
}

namespace {

// Contract the leading bulk site of `data` (layout end x d x rest x end)
// with the bra vector `bra`.
CVector contract_front(const CVector& data, long long rest, int d, int end_dim, const CVector& bra) {
  CVector out = CVector::Zero(end_dim * rest * end_dim);
  const long long block = rest * end_dim;
#pragma omp parallel for collapse(2) if (end_dim * rest > 2048)
  for (int l = 0; l < end_dim; ++l) {
    for (long long j = 0; j < block; ++j) {
      cplx acc = 0.0;
      for (int m = 0; m < d; ++m) acc += bra(m) * data((static_cast<long long>(l) * d + m) * block + j);
      out(l * block + j) = acc;
    }
  }
  return out;
}

void project_recursive(const CVector& data, int remaining, int d, int end_dim,
                       const std::vector<CVector>& bras, KahanSum& norm, KahanSum& ent) {
  if (remaining == 0) {
    Operator psi(end_dim, end_dim);
    for (int l = 0; l < end_dim; ++l) {
      for (int r = 0; r < end_dim; ++r) psi(l, r) = data(l * end_dim + r);
    }
    norm.add(psi.squaredNorm());
    ent.add(determinant_weight(psi));
    return;
  }
  const long long rest = ipow(d, remaining - 1);
  for (const auto& bra : bras) {
    project_recursive(contract_front(data, rest, d, end_dim, bra), remaining - 1, d, end_dim, bras,
                      norm, ent);
  }
}

}  // namespace

OutcomeTotals project_outcomes(const CVector& state, int sites, int d, int end_dim,
                               const Operator& basis) {
  if (state.size() != ipow(d, sites) * end_dim * end_dim || basis.rows() != d) {
    throw std::invalid_argument("project_outcomes: state/basis dimension mismatch");
  }
  std::vector<CVector> bras;
  for (Eigen::Index b = 0; b < basis.cols(); ++b) bras.push_back(basis.col(b).conjugate());
  KahanSum norm, ent;
  project_recursive(state, sites, d, end_dim, bras, norm, ent);
  return {norm.value(), ent.value()};
}

}  // namespace vbs::kernels
