#include "vbslab/models.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "vbslab/csv.hpp"

namespace vbs {

namespace {

Operator dot(const SpinOperators& a, const SpinOperators& b) {
  return kron(a.x, b.x) + kron(a.y, b.y) + kron(a.z, b.z);
}

long long product(const std::vector<int>& dims, std::size_t begin, std::size_t end) {
  long long p = 1;
  for (std::size_t i = begin; i < end; ++i) p *= dims[i];
  return p;
}

std::vector<int> chain_dims(int N, int end_dim, int bulk_dim) {
  if (N < 1) throw std::invalid_argument("Hamiltonian: N must be at least 1");
  std::vector<int> dims(N + 2, bulk_dim);
  dims.front() = end_dim;
  dims.back() = end_dim;
  return dims;
}

}  // namespace

long long HamiltonianSpec::total_dim() const { return product(dims, 0, dims.size()); }

void HamiltonianSpec::validate() const {
  if (static_cast<int>(dims.size()) != N + 2) throw std::invalid_argument("HamiltonianSpec: need N + 2 site dims");
  for (const auto& t : terms) {
    if (t.site < 0 || t.site > N) throw std::invalid_argument("HamiltonianSpec: term site out of range");
    const long long dim = static_cast<long long>(dims[t.site]) * dims[t.site + 1];
    if (t.op.rows() != dim || t.op.cols() != dim) throw std::invalid_argument("HamiltonianSpec: term dimension");
  }
}

Operator aklt_term() {
  const auto s = spin_operators(1.0);
  const Operator ss = dot(s, s);
  // The bare polynomial equals 2 on the spin-2 channel; halve it to get the projector.
  return 0.5 * (ss + ss * ss / 3.0 + (2.0 / 3.0) * identity(9));
}

Operator boundary_term(Side side) {
  const auto half = spin_operators(0.5);
  const auto one = spin_operators(1.0);
  const Operator ss = side == Side::left ? dot(half, one) : dot(one, half);
  return (2.0 / 3.0) * (ss + identity(6));
}

Operator sigma_phi(double phi) {
  const Operator sz = spin_operators(1.0).z;
  return identity(3) + std::sinh(phi) * sz + (std::cosh(phi) - 1.0) * sz * sz;
}

Operator sigma_phi_half(double phi) {
  Operator s = Operator::Zero(2, 2);
  s(0, 0) = std::exp(phi / 2);
  s(1, 1) = std::exp(-phi / 2);
  return s;
}

HamiltonianSpec deformed_hamiltonian(int N, double phi) {
  if (!std::isfinite(phi)) throw std::invalid_argument("deformed_hamiltonian: phi must be finite");
  HamiltonianSpec h{N, chain_dims(N, 2, 3), {}};
  const Operator sigma = sigma_phi(phi);
  const Operator inverse = sigma_phi(-phi);
  const Operator g = kron(inverse, sigma);
  const Operator bulk = g * aklt_term() * g;
  const Operator gr = kron(inverse, sigma_phi_half(phi));
  h.terms.push_back({0, boundary_term(Side::left)});
  for (int k = 1; k < N; ++k) h.terms.push_back({k, bulk});
  h.terms.push_back({N, gr * boundary_term(Side::right) * gr});
  return h;
}

HamiltonianSpec aklt_hamiltonian(int N) { return deformed_hamiltonian(N, 0.0); }

HamiltonianSpec heisenberg_hamiltonian(int N) {
  HamiltonianSpec h{N, chain_dims(N, 2, 3), {}};
  const auto half = spin_operators(0.5);
  const auto one = spin_operators(1.0);
  h.terms.push_back({0, dot(half, one)});
  for (int k = 1; k < N; ++k) h.terms.push_back({k, dot(one, one)});
  h.terms.push_back({N, dot(one, half)});
  return h;
}

Operator embed(const HamiltonianSpec& h, const Term& term) {
  const long long left = product(h.dims, 0, term.site);
  const long long right = product(h.dims, term.site + 2, h.dims.size());
  return kron(kron(identity(static_cast<int>(left)), term.op), identity(static_cast<int>(right)));
}

CVector apply_term(const HamiltonianSpec& h, const Term& term, const CVector& v) {
  h.validate();
  if (v.size() != h.total_dim()) throw std::invalid_argument("apply_term: vector dimension");
  const long long left = product(h.dims, 0, term.site);
  const long long right = product(h.dims, term.site + 2, h.dims.size());
  const long long pair = term.op.rows();
  CVector out = CVector::Zero(v.size());
  for (long long l = 0; l < left; ++l) {
    for (long long r = 0; r < right; ++r) {
      for (long long i = 0; i < pair; ++i) {
        cplx acc = 0.0;
        for (long long j = 0; j < pair; ++j) acc += term.op(i, j) * v((l * pair + j) * right + r);
        out((l * pair + i) * right + r) = acc;
      }
    }
  }
  return out;
}

Operator to_dense(const HamiltonianSpec& h) {
  h.validate();
  if (h.total_dim() > dense_hamiltonian_limit) throw std::length_error("to_dense: Hamiltonian too large");
  const auto dim = static_cast<int>(h.total_dim());
  Operator full = Operator::Zero(dim, dim);
  for (const auto& t : h.terms) full += embed(h, t);
  return full;
}

Operator total_spin_squared(const std::vector<int>& dims) {
  const long long total = product(dims, 0, dims.size());
  if (total > dense_hamiltonian_limit) throw std::length_error("total_spin_squared: chain too large");
  const auto dim = static_cast<int>(total);
  Operator sx = Operator::Zero(dim, dim), sy = sx, sz = sx;
  for (std::size_t i = 0; i < dims.size(); ++i) {
    const auto s = spin_operators((dims[i] - 1) / 2.0);
    const auto left = static_cast<int>(product(dims, 0, i));
    const auto right = static_cast<int>(product(dims, i + 1, dims.size()));
    sx += kron(kron(identity(left), s.x), identity(right));
    sy += kron(kron(identity(left), s.y), identity(right));
    sz += kron(kron(identity(left), s.z), identity(right));
  }
  return sx * sx + sy * sy + sz * sz;
}

SpectrumReport diagonalize(const HamiltonianSpec& h, int k) {
  const Operator full = to_dense(h);
  if (!is_hermitian(full, 1e-12 * std::max(1.0, full.norm()))) {
    throw std::invalid_argument("diagonalize: Hamiltonian is not hermitian");
  }
  Eigen::SelfAdjointEigenSolver<Operator> solver(full);
  if (solver.info() != Eigen::Success) throw NumericalError("diagonalize: eigensolver did not converge");
  const auto dim = static_cast<int>(full.rows());
  const int count = std::clamp(k, 1, dim);
  SpectrumReport rep;
  rep.vectors = solver.eigenvectors().leftCols(count);
  const double scale = std::max(1.0, full.norm());
  for (int i = 0; i < count; ++i) {
    const double e = solver.eigenvalues()(i);
    const double residual = (full * rep.vectors.col(i) - e * rep.vectors.col(i)).norm();
    if (residual > 1e-9 * scale) throw NumericalError("diagonalize: eigenpair residual too large");
    rep.energies.push_back(e);
  }
  const auto& all = solver.eigenvalues();
  const double e0 = all(0);
  int deg = 1;
  while (deg < dim && all(deg) - e0 <= 1e-8 * scale) ++deg;
  rep.degeneracy = deg;
  rep.gap = deg < dim ? all(deg) - e0 : 0.0;
  return rep;
}

void write_csv(std::ostream& out, const SpectrumReport& report) {
  out << "index,eigenvalue\n";
  for (std::size_t i = 0; i < report.energies.size(); ++i) {
    out << i << ',' << csv_number(report.energies[i]) << '\n';
  }
}

}  // namespace vbs
