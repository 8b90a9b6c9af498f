#include "vbslab/localizable.hpp"

#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>

#include "vbslab/csv.hpp"
#include "vbslab/kernels.hpp"
#include "vbslab/transfer.hpp"

namespace vbs {

namespace {

long long outcome_count(int d, int N, long long cap) {
  long long n = 1;
  for (int i = 0; i < N; ++i) {
    n *= d;
    if (n > cap) return cap + 1;
  }
  return n;
}

FcsTensor measured_tensor(const FcsTensor& tensor, const MeasurementBasis& basis) {
  if (basis.dim() != tensor.d) throw std::invalid_argument("measurement basis dimension mismatch");
  return rotate_basis(tensor, basis.vectors);
}

}  // namespace

MeasurementBasis MeasurementBasis::from_columns(Operator columns) {
  if (columns.rows() != columns.cols() || !is_unitary(columns, 1e-10)) {
    throw std::invalid_argument("MeasurementBasis: columns must be orthonormal and complete");
  }
  return MeasurementBasis{std::move(columns)};
}

Concurrence concurrence_d(const Operator& b) {
  if (b.rows() != b.cols() || b.rows() == 0) throw std::invalid_argument("concurrence_d: B must be square");
  const double norm = b.squaredNorm();
  if (norm == 0.0) return {0.0, true};
  return {kernels::determinant_weight(b) / norm, false};
}

ConditionedState conditioned_state(const ChainSpec& chain, const MeasurementBasis& basis,
                                   std::span<const int> outcome) {
  chain.validate();
  if (static_cast<int>(outcome.size()) != chain.N) {
    throw std::invalid_argument("conditioned_state: outcome length must equal N");
  }
  const FcsTensor t = measured_tensor(chain.tensor, basis);
  ConditionedState out;
  out.matrix_part = matrix_part(t, outcome);
  const Operator psi = chain.pair_state(out.matrix_part);
  const int dim = t.D;
  out.state.resize(dim * dim);
  for (int l = 0; l < dim; ++l) {
    for (int r = 0; r < dim; ++r) out.state(l * dim + r) = psi(l, r);
  }
  out.probability = std::exp(std::log(psi.squaredNorm()) - log_norm_squared(chain));
  return out;
}

double OutcomeEnsemble::total_probability() const {
  kernels::KahanSum s;
  for (const auto& r : records) s.add(r.probability);
  return s.value();
}

double OutcomeEnsemble::average_entanglement() const {
  kernels::KahanSum s;
  for (const auto& r : records) s.add(r.probability * r.entanglement);
  return s.value();
}

OutcomeEnsemble enumerate_outcomes(const ChainSpec& chain, const MeasurementBasis& basis) {
  chain.validate();
  const long long count = outcome_count(chain.tensor.d, chain.N, ensemble_record_limit);
  if (count > ensemble_record_limit) throw std::length_error("enumerate_outcomes: too many outcomes");
  const FcsTensor t = measured_tensor(chain.tensor, basis);
  const double log_norm = log_norm_squared(chain);
  OutcomeEnsemble ens;
  ens.records.reserve(count);
  std::vector<int> labels(chain.N, 0);
  for (long long o = 0; o < count; ++o) {
    long long rem = o;
    for (int s = chain.N - 1; s >= 0; --s) {
      labels[s] = static_cast<int>(rem % t.d);
      rem /= t.d;
    }
    OutcomeRecord rec;
    rec.outcome = labels;
    rec.matrix_part = matrix_part(t, labels);
    const Operator psi = chain.pair_state(rec.matrix_part);
    const double w = psi.squaredNorm();
    rec.probability = w > 0 ? std::exp(std::log(w) - log_norm) : 0.0;
    rec.entanglement = concurrence_d(psi).value;
    ens.records.push_back(std::move(rec));
  }
  return ens;
}

double average_entanglement_enumerated(const ChainSpec& chain, const MeasurementBasis& basis) {
  chain.validate();
  if (outcome_count(chain.tensor.d, chain.N, enumeration_limit) > enumeration_limit) {
    throw std::length_error("average_entanglement_enumerated: too many outcomes");
  }
  const FcsTensor t = measured_tensor(chain.tensor, basis);
  const auto totals = kernels::accumulate_outcomes(t.matrices, chain.boundary_matrix(), chain.right_end, chain.N);
  return totals.entanglement / totals.norm;
}

double per_site_entanglement(const FcsTensor& tensor, const MeasurementBasis& basis) {
  const FcsTensor t = measured_tensor(tensor, basis);
  const double exponent = 2.0 / t.D;
  double sum = 0.0;
  for (const auto& m : t.matrices) sum += std::pow(std::abs(m.determinant()), exponent);
  return sum;
}

double average_entanglement_factorized(const ChainSpec& chain, const MeasurementBasis& basis) {
  chain.validate();
  const double site = per_site_entanglement(chain.tensor, basis);
  if (site == 0.0) return 0.0;
  // det(K B^T E) = det K det B det E, and det B factorizes over sites
  const int dim = chain.tensor.D;
  const double ends = std::log(dim) + (2.0 / dim) * (std::log(std::abs(chain.boundary_matrix().determinant())) +
                                                     std::log(std::abs(chain.right_end.determinant())));
  return std::exp(chain.N * std::log(site) + ends - log_norm_squared(chain));
}

double average_entanglement_dense(const CVector& state, int sites, int d, int end_dim,
                                  const MeasurementBasis& basis) {
  if (basis.dim() != d) throw std::invalid_argument("average_entanglement_dense: basis dimension");
  const auto totals = kernels::project_outcomes(state, sites, d, end_dim, basis.vectors);
  return totals.entanglement / totals.norm;
}

double basis_distance(const Operator& a, const Operator& b) {
  double worst = 0.0;
  for (Eigen::Index i = 0; i < a.cols(); ++i) {
    double best = 0.0;
    for (Eigen::Index j = 0; j < b.cols(); ++j) best = std::max(best, std::norm(a.col(i).dot(b.col(j))));
    worst = std::max(worst, 1.0 - best);
  }
  return worst;
}

double le_closed_form_numerator(const FcsTensor& tensor) {
  if (tensor.D != 2) throw std::invalid_argument("le_closed_form: only defined for D = 2");
  const RMatrix r = transfer_operator(tensor, identity(tensor.d)).entries;
  const RMatrix m = bond_metric(2);
  const Eigensystem es = eigensystem(RMatrix(m * r * m * r.transpose()));
  const double lambda = es.values(0).real();
  if (!(lambda > 0.0)) throw NumericalError("le_closed_form: non-positive leading eigenvalue");
  return std::sqrt(lambda);
}

double le_closed_form(const FcsTensor& tensor, int N) {
  if (N < 1) throw std::invalid_argument("le_closed_form: N must be positive");
  const double numerator = le_closed_form_numerator(tensor);
  const LogValue den = log_norm_element(transfer_operator(tensor, identity(tensor.d)).entries, N);
  if (den.sign <= 0) throw NumericalError("le_closed_form: non-positive norm");
  return std::exp(N * std::log(numerator) - den.log_abs);
}

double le_closed_form(const ChainSpec& chain) {
  chain.validate();
  const double numerator = le_closed_form_numerator(chain.tensor);
  const double ends = std::log(2.0) + std::log(std::abs(chain.boundary_matrix().determinant())) +
                      std::log(std::abs(chain.right_end.determinant()));
  return std::exp(chain.N * std::log(numerator) + ends - log_norm_squared(chain));
}

std::string to_string(LeMethod method) {
  switch (method) {
    case LeMethod::enumeration: return "enumeration";
    case LeMethod::factorized: return "factorized";
    case LeMethod::closed_form: return "closed_form";
  }
  return "unknown";
}

LeReport xi_e(const FcsTensor& tensor, std::span<const int> sizes, LeMethod method,
              const MeasurementBasis* basis) {
  if (sizes.size() < 3) throw std::invalid_argument("xi_e: need at least three chain lengths");
  const MeasurementBasis own{tensor.basis};
  const MeasurementBasis& measure = basis ? *basis : own;
  LeReport rep;
  rep.method = method;
  rep.sizes.assign(sizes.begin(), sizes.end());
  for (int n : sizes) {
    double value = 0.0;
    switch (method) {
      case LeMethod::closed_form: value = le_closed_form(tensor, n); break;
      case LeMethod::factorized: value = average_entanglement_factorized(make_chain(n, tensor), measure); break;
      case LeMethod::enumeration: value = average_entanglement_enumerated(make_chain(n, tensor), measure); break;
    }
    rep.le.push_back(value);
  }
  std::vector<double> y;
  for (std::size_t i = 0; i < rep.le.size(); ++i) {
    if (!(rep.le[i] > 0.0)) {
      std::ostringstream msg;
      msg << "xi_e: LE(N=" << rep.sizes[i] << ") = " << rep.le[i] << " is not positive; cannot fit";
      throw std::domain_error(msg.str());
    }
    y.push_back(std::log(rep.le[i]));
  }
  const std::size_t n = y.size();
  std::vector<double> local(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) local[i] = (y[i + 1] - y[i]) / (rep.sizes[i + 1] - rep.sizes[i]);
  const double tail = local.back();
  std::size_t start = n - 2;  // index of first point in window
  while (start > 0 && std::abs(local[start - 1] - tail) <= 1e-10 * std::max(1.0, std::abs(tail))) --start;
  if (n - start < 3) {
    // Tail never settled; fall back to the last three points and say so.
    start = n - 3;
    rep.transient_converged = false;
  }
  rep.window_start = static_cast<int>(start);
  const double m = static_cast<double>(n - start);
  double mx = 0, my = 0;
  for (std::size_t i = start; i < n; ++i) {
    mx += rep.sizes[i] / m;
    my += y[i] / m;
  }
  double sxx = 0, sxy = 0;
  for (std::size_t i = start; i < n; ++i) {
    sxx += (rep.sizes[i] - mx) * (rep.sizes[i] - mx);
    sxy += (rep.sizes[i] - mx) * (y[i] - my);
  }
  rep.slope = sxy / sxx;
  if (std::abs(rep.slope) < 1e-12) {
    rep.infinite = true;
    rep.xi = std::numeric_limits<double>::infinity();
  } else {
    rep.xi = -1.0 / rep.slope;
  }
  return rep;
}

Operator spin_flip_parity() { return hermitian_exp(spin_operators(1.0).z, cplx(0, M_PI)); }

namespace {

void check_string_chain(const ChainSpec& chain) {
  if (chain.tensor.d != 3 || chain.tensor.D != 2) {
    throw std::invalid_argument("string order needs spin-1 bulk sites and qubit ends");
  }
}

}  // namespace

double deformed_xi_e_closed(double phi) {
  const double c = std::cosh(2 * phi);
  const double ratio = (std::sqrt(c * c + 3) + c) / 3.0;
  if (ratio <= 1.0) return std::numeric_limits<double>::infinity();
  return 1.0 / std::log(ratio);
}

double string_order(const ChainSpec& chain) {
  check_string_chain(chain);
  const std::vector<Operator> ops(chain.N, spin_flip_parity());
  return expectation_with_boundary(chain, pauli(3), ops, pauli(3));
}

Operator string_order_reduced(const ChainSpec& chain) {
  check_string_chain(chain);
  const std::vector<Operator> ops(chain.N, spin_flip_parity());
  Operator rho(4, 4);
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      for (int a2 = 0; a2 < 2; ++a2) {
        for (int b2 = 0; b2 < 2; ++b2) {
          // rho_{ab,a'b'} = <V| |a'><a| (x) P (x) |b'><b| |V> / <V|V>
          Operator left = Operator::Zero(2, 2), right = Operator::Zero(2, 2);
          left(a2, a) = 1;
          right(b2, b) = 1;
          rho(a * 2 + b, a2 * 2 + b2) = boundary_matrix_element(chain, left, ops, right);
        }
      }
    }
  }
  return rho;
}

void write_csv(std::ostream& out, std::span<const LeRow> rows) {
  out << "N,LE_enum,LE_factorized,LE_closed,string_order\n";
  for (const auto& r : rows) {
    out << r.N << ',' << csv_number(r.enumerated) << ',' << csv_number(r.factorized) << ','
        << csv_number(r.closed) << ',' << csv_number(r.string_order) << '\n';
  }
}

}  // namespace vbs
