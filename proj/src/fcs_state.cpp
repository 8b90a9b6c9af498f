#include "vbslab/fcs_state.hpp"

#include <cmath>
#include <stdexcept>

#include "vbslab/kernels.hpp"

namespace vbs {

namespace {

int integer_sqrt(Eigen::Index n) {
  const auto r = static_cast<int>(std::lround(std::sqrt(static_cast<double>(n))));
  if (static_cast<Eigen::Index>(r) * r != n) {
    throw std::invalid_argument("physical map must have D^2 columns");
  }
  return r;
}

std::vector<std::string> default_labels(int d) {
  std::vector<std::string> labels;
  for (int i = 0; i < d; ++i) labels.push_back(std::to_string(i));
  return labels;
}

long long checked_power(int base, int exp) {
  long long out = 1;
  for (int i = 0; i < exp; ++i) {
    out *= base;
    if (out > dense_state_limit) return dense_state_limit + 1;
  }
  return out;
}

}  // namespace

void FcsTensor::validate() const {
  if (d < 1 || D < 1) throw std::invalid_argument("FcsTensor: dimensions must be positive");
  if (static_cast<int>(matrices.size()) != d || static_cast<int>(labels.size()) != d) {
    throw std::invalid_argument("FcsTensor: need one matrix and one label per physical level");
  }
  bool any = false;
  for (const auto& m : matrices) {
    if (m.rows() != D || m.cols() != D) throw std::invalid_argument("FcsTensor: matrices must be D x D");
    any = any || m.cwiseAbs().maxCoeff() > 0.0;
  }
  if (!any) throw std::invalid_argument("FcsTensor: all matrices are zero");
  if (basis.rows() != d || basis.cols() != d || !is_unitary(basis, 1e-10)) {
    throw std::invalid_argument("FcsTensor: basis must be a d x d unitary");
  }
}

void ChainSpec::validate() const {
  if (N < 1) throw std::invalid_argument("ChainSpec: N must be at least 1");
  tensor.validate();
  if (boundary.size() != tensor.D * tensor.D) {
    throw std::invalid_argument("ChainSpec: boundary state must have D^2 components");
  }
  if (boundary.squaredNorm() == 0.0) throw std::invalid_argument("ChainSpec: boundary state is zero");
  if (right_end.rows() != tensor.D || right_end.cols() != tensor.D) {
    throw std::invalid_argument("ChainSpec: right end matrix must be D x D");
  }
  if (right_end.squaredNorm() == 0.0) throw std::invalid_argument("ChainSpec: right end matrix is zero");
}

Operator ChainSpec::pair_state(const Operator& b) const { return boundary_matrix() * b.transpose() * right_end; }

Operator ChainSpec::boundary_matrix() const {
  const int dim = tensor.D;
  Operator k(dim, dim);
  for (int l = 0; l < dim; ++l) {
    for (int c = 0; c < dim; ++c) k(l, c) = boundary(l * dim + c);
  }
  return k;
}

int ChainSpec::total_dim() const {
  return static_cast<int>(checked_power(tensor.d, N)) * tensor.D * tensor.D;
}

ChainSpec make_chain(int N, FcsTensor tensor) {
  ChainSpec chain;
  chain.N = N;
  const int dim = tensor.D;
  const Operator j = singlet_matrix(dim);
  chain.boundary.resize(dim * dim);
  for (int l = 0; l < dim; ++l) {
    for (int c = 0; c < dim; ++c) chain.boundary(l * dim + c) = j(l, c);
  }
  chain.right_end = identity(dim);
  chain.tensor = std::move(tensor);
  chain.validate();
  return chain;
}

Eigen::Index DenseState::index(int left, std::span<const int> outcome, int right) const {
  if (static_cast<int>(outcome.size()) != N) throw std::invalid_argument("DenseState::index: outcome length");
  Eigen::Index idx = left;
  for (int beta : outcome) idx = idx * d + beta;
  return idx * D + right;
}

Operator aklt_measurement_basis() {
  const double h = 1.0 / std::sqrt(2.0);
  Operator b = Operator::Zero(3, 3);
  b(1, 0) = 1.0;
  b(0, 1) = cplx(0, h);
  b(2, 1) = cplx(0, h);
  b(0, 2) = -h;
  b(2, 2) = h;
  return b;
}

std::vector<std::string> aklt_labels() { return {"0", "+", "-"}; }

FcsTensor slice_projection(const Operator& physical_map, const Operator& basis,
                           std::vector<std::string> labels) {
  const int d = static_cast<int>(physical_map.rows());
  const int dim = integer_sqrt(physical_map.cols());
  if (basis.rows() != d || basis.cols() != d) {
    throw std::invalid_argument("slice_projection: basis must be d x d");
  }
  if (!is_unitary(basis, 1e-10)) {
    throw std::invalid_argument("slice_projection: basis is not orthonormal and complete");
  }
  // <I_hat|(B (x) 1)|ab> = (B^T conj(J_hat))_{ab}  =>  B = sqrt(D) J row^T.
  const Operator j = singlet_matrix(dim);
  const double root = std::sqrt(static_cast<double>(dim));
  FcsTensor tensor;
  tensor.d = d;
  tensor.D = dim;
  tensor.basis = basis;
  tensor.labels = labels.empty() ? default_labels(d) : std::move(labels);
  for (int beta = 0; beta < d; ++beta) {
    const Eigen::RowVectorXcd row = basis.col(beta).adjoint() * physical_map;
    Operator r(dim, dim);
    for (int a = 0; a < dim; ++a) {
      for (int b = 0; b < dim; ++b) r(a, b) = row(a * dim + b);
    }
    tensor.matrices.push_back(root * j * r.transpose());
  }
  tensor.validate();
  return tensor;
}

Operator reconstruct_projection(const FcsTensor& tensor) {
  tensor.validate();
  const int dim = tensor.D;
  const Operator j_hat_conj = singlet_matrix(dim).conjugate() / std::sqrt(static_cast<double>(dim));
  Operator rows(tensor.d, dim * dim);
  for (int beta = 0; beta < tensor.d; ++beta) {
    const Operator r = tensor.matrices[beta].transpose() * j_hat_conj;
    for (int a = 0; a < dim; ++a) {
      for (int b = 0; b < dim; ++b) rows(beta, a * dim + b) = r(a, b);
    }
  }
  return tensor.basis * rows;
}

FcsTensor aklt_tensor() {
  FcsTensor t;
  t.d = 3;
  t.D = 2;
  t.matrices = {pauli(3), pauli(2), pauli(1)};
  t.labels = aklt_labels();
  t.basis = aklt_measurement_basis();
  return t;
}

Operator deformed_projector(double phi) {
  const double up = std::exp(phi), down = std::exp(-phi), h = 1.0 / std::sqrt(2.0);
  Operator a = Operator::Zero(3, 4);
  a(0, 0) = up;
  a(1, 1) = down * h;
  a(1, 2) = up * h;
  a(2, 3) = down;
  return a;
}

FcsTensor deformed_tensor(double phi) {
  if (!std::isfinite(phi)) throw std::invalid_argument("deformed_tensor: phi must be finite");
  return slice_projection(deformed_projector(phi), aklt_measurement_basis(), aklt_labels());
}

FcsTensor rotate_basis(const FcsTensor& tensor, const Operator& new_basis,
                       std::vector<std::string> labels) {
  tensor.validate();
  if (new_basis.rows() != tensor.d || new_basis.cols() != tensor.d || !is_unitary(new_basis, 1e-10)) {
    throw std::invalid_argument("rotate_basis: new basis must be a d x d unitary");
  }
  const Operator overlap = new_basis.adjoint() * tensor.basis;  // <gamma'|beta>
  FcsTensor out;
  out.d = tensor.d;
  out.D = tensor.D;
  out.basis = new_basis;
  out.labels = labels.empty() ? default_labels(tensor.d) : std::move(labels);
  for (int g = 0; g < tensor.d; ++g) {
    Operator m = Operator::Zero(tensor.D, tensor.D);
    for (int b = 0; b < tensor.d; ++b) m += overlap(g, b) * tensor.matrices[b];
    out.matrices.push_back(std::move(m));
  }
  return out;
}

FcsTensor in_sz_basis(const FcsTensor& tensor) { return rotate_basis(tensor, identity(tensor.d)); }

FcsTensor scaled(const FcsTensor& tensor, cplx factor) {
  FcsTensor out = tensor;
  for (auto& m : out.matrices) m *= factor;
  return out;
}

ChainSpec gauge_transformed(const ChainSpec& chain, const Operator& gauge) {
  chain.validate();
  const int dim = chain.tensor.D;
  if (gauge.rows() != dim || gauge.cols() != dim) throw std::invalid_argument("gauge must be D x D");
  Eigen::FullPivLU<Operator> lu(gauge);
  if (!lu.isInvertible()) throw std::invalid_argument("gauge must be invertible");
  const Operator inverse = lu.inverse();
  ChainSpec out = chain;
  for (auto& m : out.tensor.matrices) m = gauge * m * inverse;
  const Operator k = chain.boundary_matrix() * gauge.transpose();
  for (int l = 0; l < dim; ++l) {
    for (int c = 0; c < dim; ++c) out.boundary(l * dim + c) = k(l, c);
  }
  out.right_end = inverse.transpose() * chain.right_end;
  return out;
}

Operator matrix_part(const FcsTensor& tensor, std::span<const int> outcome) {
  Operator b = identity(tensor.D);
  for (int beta : outcome) {
    if (beta < 0 || beta >= tensor.d) throw std::out_of_range("outcome label out of range");
    b = tensor.matrices[beta] * b;
  }
  return b;
}

cplx amplitude(const ChainSpec& chain, std::span<const int> outcome, int left, int right) {
  if (static_cast<int>(outcome.size()) != chain.N) {
    throw std::invalid_argument("amplitude: outcome length must equal N");
  }
  const int dim = chain.tensor.D;
  if (left < 0 || left >= dim || right < 0 || right >= dim) {
    throw std::out_of_range("amplitude: boundary index out of range");
  }
  const Operator k = chain.boundary_matrix();
  const Operator be = matrix_part(chain.tensor, outcome).transpose() * chain.right_end;
  cplx sum = 0.0;
  for (int c = 0; c < dim; ++c) sum += k(left, c) * be(c, right);
  return sum;
}

DenseState dense_state(const ChainSpec& chain) {
  chain.validate();
  const long long bulk = checked_power(chain.tensor.d, chain.N);
  const long long total = bulk * chain.tensor.D * chain.tensor.D;
  if (bulk > dense_state_limit || total > dense_state_limit) {
    throw std::length_error("dense_state: state exceeds the dense size limit");
  }
  DenseState state;
  state.N = chain.N;
  state.d = chain.tensor.d;
  state.D = chain.tensor.D;
  state.basis = chain.tensor.basis;
  state.amplitudes = kernels::fill_dense(chain.tensor.matrices, chain.boundary_matrix(), chain.right_end, chain.N);
  return state;
}

}  // namespace vbs
