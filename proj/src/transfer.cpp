#include "vbslab/transfer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "vbslab/csv.hpp"

namespace vbs {

RMatrix bond_metric(int D) {
  const HermitianBasis basis = hermitian_basis(D);
  const Operator j = singlet_matrix(D);
  const int n = basis.size();
  RMatrix wn(n, n);
  for (int k = 0; k < n; ++k) {
    const Operator flipped = j * basis.elements[k].transpose() * j.adjoint();
    for (int i = 0; i < n; ++i) {
      // (W N)_ki = W_ki n_i = Tr(flipped s_i)
      wn(k, i) = (flipped * basis.elements[i]).trace().real();
    }
  }
  return static_cast<double>(D) * wn.inverse();
}

TransferOperator transfer_operator(const FcsTensor& tensor, const Operator& op, std::string source) {
  tensor.validate();
  if (op.rows() != tensor.d || op.cols() != tensor.d) {
    throw std::invalid_argument("transfer_operator: observable must be d x d");
  }
  if (!is_hermitian(op, 1e-10 * std::max(1.0, op.cwiseAbs().maxCoeff()))) {
    throw std::invalid_argument("transfer_operator: observable must be hermitian");
  }
  const int dim = tensor.D;
  const HermitianBasis basis = hermitian_basis(dim);
  const int n = basis.size();
  const Operator a = reconstruct_projection(tensor);
  const Operator x = a.adjoint() * op * a;
  Eigen::MatrixXcd q(n, n);
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) q(j, k) = (x * kron(basis.elements[j], basis.elements[k])).trace();
  }
  const Eigen::MatrixXcd r = bond_metric(dim).cast<cplx>() * q.transpose();
  const double scale = std::max(1.0, r.cwiseAbs().maxCoeff());
  if (r.imag().cwiseAbs().maxCoeff() > 1e-10 * scale) {
    throw NumericalError("transfer_operator: transfer matrix is not real");
  }
  return {dim, r.real(), std::move(source)};
}

namespace {

// Multiply v by each matrix in turn, renormalizing by the largest entry.
// Returns the accumulated log scale.
template <typename Vec, typename Mats>
double scaled_apply(Vec& v, const Mats& mats) {
  double log_scale = 0.0;
  for (const auto& m : mats) {
    v = m * v;
    const double top = v.cwiseAbs().maxCoeff();
    if (top == 0.0) return -std::numeric_limits<double>::infinity();
    v /= top;
    log_scale += std::log(top);
  }
  return log_scale;
}

std::vector<RMatrix> transfer_sequence(const FcsTensor& tensor, std::span<const Operator> ops) {
  std::vector<RMatrix> mats;
  mats.reserve(ops.size());
  for (const auto& o : ops) mats.push_back(transfer_operator(tensor, o).entries);
  return mats;
}

void check_ops(const ChainSpec& chain, std::span<const Operator> ops) {
  if (static_cast<int>(ops.size()) != chain.N) {
    throw std::invalid_argument("expectation: need exactly N site operators");
  }
}

}  // namespace

LogValue log_norm_element(const RMatrix& r, int N) {
  RVector v = RVector::Unit(r.rows(), 0);
  const std::vector<RMatrix> seq(N, r);
  const double log_scale = scaled_apply(v, seq);
  const double top = v(0);
  if (top == 0.0 || !std::isfinite(log_scale)) {
    return {-std::numeric_limits<double>::infinity(), 0};
  }
  return {log_scale + std::log(std::abs(top)), top > 0 ? 1 : -1};
}

double expectation(const ChainSpec& chain, std::span<const Operator> ops) {
  chain.validate();
  check_ops(chain, ops);
  const int dim = chain.tensor.D;
  auto proportional_to_identity = [dim](const Operator& m) {
    const double scale = m.trace().real() / dim;
    return (m - scale * identity(dim)).cwiseAbs().maxCoeff() <= 1e-10 * scale;
  };
  const Operator k = chain.boundary_matrix();
  if (!proportional_to_identity(k.adjoint() * k) ||
      !proportional_to_identity(chain.right_end * chain.right_end.adjoint())) {
    return boundary_matrix_element(chain, identity(dim), ops, identity(dim)).real();
  }
  const auto mats = transfer_sequence(chain.tensor, ops);
  RVector v = RVector::Unit(mats.front().rows(), 0);
  const double log_num = scaled_apply(v, mats);
  const LogValue den = log_norm_element(transfer_operator(chain.tensor, identity(chain.tensor.d)).entries, chain.N);
  if (den.sign == 0) throw NumericalError("expectation: state has zero norm");
  if (!std::isfinite(log_num) || v(0) == 0.0) return 0.0;
  return den.sign * v(0) * std::exp(log_num - den.log_abs);
}

cplx boundary_matrix_element(const ChainSpec& chain, const Operator& left,
                             std::span<const Operator> ops, const Operator& right) {
  chain.validate();
  check_ops(chain, ops);
  const int dim = chain.tensor.D;
  if (left.rows() != dim || left.cols() != dim || right.rows() != dim || right.cols() != dim) {
    throw std::invalid_argument("boundary operators must be D x D");
  }
  const HermitianBasis basis = hermitian_basis(dim);
  const int n = basis.size();
  const Operator k = chain.boundary_matrix();

  // <V|X_L (x) O (x) X_R|V> = Tr(X_R' F_N...F_1(rho_0)), rho_0 = (K^dag X_L K)^T,
  // X_R' = conj(E) X_R E^T, and R(O) is the matrix of F in the hermitian basis.
  auto start = [&](const Operator& x_left) {
    const Operator rho = (k.adjoint() * x_left * k).transpose();
    CVector c(n);
    for (int j = 0; j < n; ++j) c(j) = (basis.elements[j] * rho).trace() / basis.norms(j);
    return c;
  };
  const Operator& e = chain.right_end;
  auto finish = [&](const Operator& x_right) {
    const Operator x_end = e.conjugate() * x_right * e.transpose();
    CVector x(n);
    for (int i = 0; i < n; ++i) x(i) = (x_end * basis.elements[i]).trace();
    return x;
  };

  std::vector<Eigen::MatrixXcd> mats;
  for (const auto& m : transfer_sequence(chain.tensor, ops)) mats.push_back(m.cast<cplx>());
  CVector v = start(left);
  const double log_num = scaled_apply(v, mats);
  const cplx num = finish(right).transpose() * v;

  const Operator id = identity(dim);
  const Eigen::MatrixXcd r1 =
      transfer_operator(chain.tensor, identity(chain.tensor.d)).entries.cast<cplx>();
  CVector w = start(id);
  const double log_den = scaled_apply(w, std::vector<Eigen::MatrixXcd>(chain.N, r1));
  const cplx den = finish(id).transpose() * w;
  if (std::abs(den) == 0.0) throw NumericalError("boundary_matrix_element: state has zero norm");
  if (!std::isfinite(log_num)) return 0.0;
  return num / den * std::exp(log_num - log_den);
}

double log_norm_squared(const ChainSpec& chain) {
  chain.validate();
  const HermitianBasis basis = hermitian_basis(chain.tensor.D);
  const Operator k = chain.boundary_matrix();
  const Operator rho = (k.adjoint() * k).transpose();
  RVector c(basis.size());
  for (int j = 0; j < basis.size(); ++j) c(j) = (basis.elements[j] * rho).trace().real() / basis.norms(j);
  const RMatrix r1 = transfer_operator(chain.tensor, identity(chain.tensor.d)).entries;
  const double log_scale = scaled_apply(c, std::vector<RMatrix>(chain.N, r1));
  const Operator x_end = chain.right_end.conjugate() * chain.right_end.transpose();
  double value = 0.0;
  for (int i = 0; i < basis.size(); ++i) value += c(i) * (x_end * basis.elements[i]).trace().real();
  if (!(value > 0.0)) throw NumericalError("log_norm_squared: non-positive norm");
  return log_scale + std::log(value);
}

double expectation_with_boundary(const ChainSpec& chain, const Operator& left,
                                 std::span<const Operator> ops, const Operator& right) {
  return boundary_matrix_element(chain, left, ops, right).real();
}

SpectralLength correlation_length_spectral(const FcsTensor& tensor) {
  const RMatrix r = transfer_operator(tensor, identity(tensor.d)).entries;
  const Eigensystem es = eigensystem(r);
  SpectralLength out;
  out.lambda1 = es.values(0);
  out.lambda2 = es.values.size() > 1 ? es.values(1) : cplx(0.0);
  const double m1 = std::abs(out.lambda1), m2 = std::abs(out.lambda2);
  if (m1 - m2 <= 1e-12 * m1) {
    out.finite = false;
    out.xi = std::numeric_limits<double>::infinity();
  } else {
    out.xi = m2 == 0.0 ? 0.0 : 1.0 / std::log(m1 / m2);
  }
  return out;
}

CorrelationReport correlation_length_fit(const ChainSpec& chain, const Operator& op, int r_min,
                                         int r_max, std::string label) {
  if (r_min < 1 || r_max < r_min || r_max >= chain.N) {
    throw std::invalid_argument("correlation_length_fit: need 1 <= r_min <= r_max < N");
  }
  CorrelationReport report;
  report.op_label = std::move(label);
  const Operator id = identity(chain.tensor.d);
  auto single = [&](int site) {
    std::vector<Operator> ops(chain.N, id);
    ops[site] = op;
    return expectation(chain, ops);
  };
  std::vector<double> xs, ys;
  for (int r = r_min; r <= r_max; ++r) {
    const int a = (chain.N - 1 - r) / 2;  // zero-based, pair centered
    std::vector<Operator> ops(chain.N, id);
    ops[a] = op;
    ops[a + r] = op;
    const double c = expectation(chain, ops) - single(a) * single(a + r);
    report.separations.push_back(r);
    report.connected.push_back(c);
    if (std::abs(c) > correlator_floor) {
      xs.push_back(r);
      ys.push_back(std::log(std::abs(c)));
    } else {
      report.underflow = true;
    }
  }
  report.points_used = static_cast<int>(xs.size());
  if (xs.size() < 2) {
    report.uncorrelated = true;
    report.xi = 0.0;
    return report;
  }
  const double n = static_cast<double>(xs.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i] / n;
    my += ys[i] / n;
  }
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  const double slope = sxy / sxx;
  double ss = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double e = ys[i] - (my + slope * (xs[i] - mx));
    ss += e * e;
  }
  report.residual = std::sqrt(ss / n);
  report.xi = slope < 0 ? -1.0 / slope : std::numeric_limits<double>::infinity();
  return report;
}

CorrelationReport model_correlation_length_fit(const ChainSpec& chain, int r_min, int r_max) {
  const SpinOperators s = spin_operators((chain.tensor.d - 1) / 2.0);
  const std::pair<const Operator*, const char*> channels[] = {{&s.x, "Sx"}, {&s.y, "Sy"}, {&s.z, "Sz"}};
  CorrelationReport best;
  bool have = false;
  for (const auto& [op, name] : channels) {
    CorrelationReport rep = correlation_length_fit(chain, *op, r_min, r_max, name);
    if (rep.uncorrelated) continue;
    if (!have || rep.xi > best.xi) {
      best = std::move(rep);
      have = true;
    }
  }
  if (!have) {
    best = correlation_length_fit(chain, s.z, r_min, r_max, "Sz");
  }
  return best;
}

void write_csv(std::ostream& out, const CorrelationReport& report) {
  out << "r,C,xi,residual\n";
  for (std::size_t i = 0; i < report.separations.size(); ++i) {
    out << report.separations[i] << ',' << csv_number(report.connected[i]) << ','
        << csv_number(report.xi) << ',' << csv_number(report.residual) << '\n';
  }
}

double deformed_xi_c_closed(double phi) {
  const double c = std::cosh(2 * phi);
  return 1.0 / std::log(std::sqrt(c * c + 3) + c);
}

}  // namespace vbs
