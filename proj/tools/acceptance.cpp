#include "acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <limits>
#include <ostream>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "vbslab/localizable.hpp"
#include "vbslab/models.hpp"
#include "vbslab/transfer.hpp"

namespace vbs::acceptance {

namespace {

const std::vector<double> phi_grid{0.0, 0.25, -0.25, 0.5, -0.5, 1.0, -1.0};

double ref_xi_c(double phi) {
  const double c = std::cosh(2 * phi);
  return 1.0 / std::log(std::sqrt(c * c + 3) + c);
}

double ref_xi_e(double phi) {
  const double c = std::cosh(2 * phi);
  return 1.0 / std::log((std::sqrt(c * c + 3) + c) / 3.0);
}

std::string sci(double x) {
  std::ostringstream s;
  s << std::setprecision(3) << std::scientific << x;
  return s.str();
}

// Largest deviation seen so far and where it happened.
struct Worst {
  double value = 0.0;
  std::string where;

  void update(double err, const std::string& at) {
    if (!(err <= value)) {  // NaN counts as worse than anything
      value = err;
      where = at;
    }
  }
  bool within(double tol) const { return value <= tol; }
  std::string report(const std::string& what, double tol) const {
    return what + " " + sci(value) + (where.empty() ? "" : " at " + where) + " (tol " + sci(tol) + ")";
  }
};

std::string at_n(int N) { return "N=" + std::to_string(N); }
std::string at_phi(double phi) {
  std::ostringstream s;
  s << "phi=" << phi;
  return s.str();
}

Result begin(int id, std::string title) {
  Result r;
  r.id = id;
  r.title = std::move(title);
  return r;
}

MeasurementBasis pauli_basis() { return MeasurementBasis{aklt_measurement_basis()}; }

oracle::Mat parity_oracle() {
  const oracle::Mat sz = oracle::spin(1.0).z;
  oracle::Mat p = oracle::Mat::Zero(3, 3);
  for (int i = 0; i < 3; ++i) p(i, i) = std::exp(cplx(0.0, std::numbers::pi) * sz(i, i));
  return p;
}

// Tr_bulk[(P (x) ... (x) P) |V><V|] / <V|V> with index (left, right).
oracle::Mat dense_string_reduced(const oracle::Vec& v, int N) {
  const oracle::Mat p = parity_oracle();
  long long bulk = 1;
  for (int i = 0; i < N; ++i) bulk *= 3;
  oracle::Mat rho = oracle::Mat::Zero(4, 4);
  for (long long m = 0; m < bulk; ++m) {
    cplx sign = 1.0;
    long long t = m;
    for (int k = 0; k < N; ++k, t /= 3) sign *= p(t % 3, t % 3);
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b)
        rho(a, b) += sign * v(((a / 2) * bulk + m) * 2 + a % 2) * std::conj(v(((b / 2) * bulk + m) * 2 + b % 2));
  }
  return rho / v.squaredNorm();
}

Result c1(const Options& o) {
  Result r = begin(1, "AKLT chain localizes a Bell pair at every length");
  const MeasurementBasis basis{aklt_measurement_basis() * o.basis_scale};
  Worst avg, each, dense;
  for (int N = 1; N <= 8; ++N) {
    const ChainSpec chain = make_chain(N, aklt_tensor());
    avg.update(std::abs(average_entanglement_enumerated(chain, basis) - 1.0), at_n(N));
    for (const auto& rec : enumerate_outcomes(chain, basis).records) {
      each.update(std::abs(rec.entanglement - 1.0), at_n(N));
    }
    if (N <= 6) {
      const oracle::Vec v = oracle::valence_bond_state(oracle::deformed_map(0.0), N, 2);
      const double le = oracle::average_concurrence_by_projection(v, N, 3, 2, oracle::bell_basis() * o.basis_scale);
      dense.update(std::abs(le - 1.0), at_n(N));
    }
  }
  r.passed = avg.within(1e-10) && each.within(1e-10) && dense.within(1e-10);
  r.detail = avg.report("|LE-1|", 1e-10) + "; " + each.report("max outcome |C-1|", 1e-10) + "; " +
             dense.report("dense oracle |LE-1|", 1e-10);
  return r;
}

Result c2(const Options&) {
  Result r = begin(2, "correlation length matches the closed form");
  Worst spectral, fit;
  for (double phi : phi_grid) {
    const FcsTensor t = deformed_tensor(phi);
    const SpectralLength s = correlation_length_spectral(t);
    spectral.update(s.finite ? std::abs(s.xi - ref_xi_c(phi)) : std::numeric_limits<double>::infinity(), at_phi(phi));
    const auto f = model_correlation_length_fit(make_chain(30, t), 2, 12);
    fit.update(std::abs(f.xi - ref_xi_c(phi)), at_phi(phi));
  }
  r.passed = spectral.within(1e-9) && fit.within(1e-3);
  r.detail = spectral.report("spectral", 1e-9) + "; " + fit.report("correlator fit (N=30, r=2..12)", 1e-3);
  return r;
}

std::vector<int> xi_e_sizes() {
  std::vector<int> n;
  for (int i = 4; i <= 20; ++i) n.push_back(i);
  return n;
}

Result c3(const Options&) {
  Result r = begin(3, "entanglement length matches the closed form");
  Worst err;
  bool aklt_infinite = false;
  bool spurious_infinite = false;
  const auto sizes = xi_e_sizes();
  for (double phi : phi_grid) {
    const LeReport rep = xi_e(deformed_tensor(phi), sizes);
    if (phi == 0.0) {
      aklt_infinite = rep.infinite;
      continue;
    }
    if (rep.infinite) spurious_infinite = true;
    err.update(std::abs(rep.xi - ref_xi_e(phi)), at_phi(phi));
  }
  r.passed = err.within(1e-6) && aklt_infinite && !spurious_infinite;
  r.detail = err.report("fit over N=4..20", 1e-6) + "; infinite flag at phi=0: " + (aklt_infinite ? "yes" : "no");
  return r;
}

Result c4(const Options&) {
  Result r = begin(4, "enumeration, factorization and closed form agree");
  Worst err;
  for (double phi : {0.3, 0.8}) {
    for (int N = 2; N <= 6; ++N) {
      const ChainSpec chain = make_chain(N, deformed_tensor(phi));
      const double e = average_entanglement_enumerated(chain, pauli_basis());
      const double f = average_entanglement_factorized(chain, pauli_basis());
      const double c = le_closed_form(chain.tensor, N);
      const std::string at = at_phi(phi) + " " + at_n(N);
      err.update(std::max({std::abs(e - f), std::abs(e - c), std::abs(f - c)}), at);
    }
  }
  r.passed = err.within(1e-8);
  r.detail = err.report("max pairwise difference", 1e-8);
  return r;
}

Result c5(const Options& o) {
  Result r = begin(5, "basis optimizer reaches the optimal per-site value");
  Worst shortfall, excess;
  std::ostringstream values;
  OptimizerOptions opts;
  opts.restarts = 32;
  opts.seed = o.seed;
  for (double phi : {0.0, 0.5, 1.0}) {
    const FcsTensor t = deformed_tensor(phi);
    const double target = le_closed_form_numerator(t);
    const BasisOptimum best = optimize_measurement_basis(t, opts);
    shortfall.update(std::max(0.0, target - best.value), at_phi(phi));
    excess.update(std::max(0.0, best.value - target), at_phi(phi));
    values << (values.tellp() > 0 ? ", " : "") << at_phi(phi) << ": " << std::setprecision(12) << best.value << " vs "
           << target;
  }
  r.passed = shortfall.within(1e-6) && excess.within(1e-8);
  r.detail = shortfall.report("shortfall", 1e-6) + "; " + excess.report("overshoot", 1e-8) + "; " + values.str();
  return r;
}

Result c6(const Options&) {
  Result r = begin(6, "string order of the AKLT chain");
  const double paper[] = {0.25, -0.25, -0.25, 0.25};
  Worst magnitude, stated, corrected, oracle_gap;
  std::ostringstream n2;
  const oracle::Mat sz = pauli(3);
  for (int N = 2; N <= 6; ++N) {
    const ChainSpec chain = make_chain(N, aklt_tensor());
    const double value = string_order(chain);
    const Operator rho = string_order_reduced(chain);
    const oracle::Vec v = oracle::valence_bond_state(oracle::deformed_map(0.0), N, 2);
    std::vector<oracle::Mat> ops(N + 2, parity_oracle());
    ops.front() = sz;
    ops.back() = sz;
    const double dense_value = oracle::dense_expectation(v, oracle::chain_dims(N, 3, 2), ops).real();
    const oracle::Mat dense_rho = dense_string_reduced(v, N);
    const double q = std::pow(-1.0 / 3.0, N);
    const double fixed[] = {-(1 - q) / 4, (1 + q) / 4, (1 + q) / 4, -(1 - q) / 4};
    magnitude.update(std::max(std::abs(std::abs(value) - 1), std::abs(std::abs(dense_value) - 1)), at_n(N));
    oracle_gap.update(std::max(std::abs(value - dense_value), (rho - dense_rho).cwiseAbs().maxCoeff()), at_n(N));
    for (int i = 0; i < 4; ++i) {
      stated.update(std::abs(rho(i, i) - paper[i]), at_n(N));
      corrected.update(std::max(std::abs(rho(i, i) - fixed[i]), std::abs(dense_rho(i, i) - fixed[i])), at_n(N));
    }
    if (N == 2) {
      n2 << std::setprecision(6);
      for (int i = 0; i < 4; ++i) n2 << (i ? ", " : "[") << rho(i, i).real();
      n2 << "]";
    }
  }
  const bool common = magnitude.within(1e-10) && oracle_gap.within(1e-10);
  r.passed = common && stated.within(1e-10);
  r.documented_deviation = !r.passed && common && corrected.within(1e-10);
  r.detail = magnitude.report("||value|-1|", 1e-10) + "; " + oracle_gap.report("transfer vs dense", 1e-10) + "; " +
             stated.report("diagonal vs [1/4,-1/4,-1/4,1/4]", 1e-10) + ", observed " + n2.str() + " at N=2; " +
             corrected.report("diagonal vs [-(1-q),1+q,1+q,-(1-q)]/4, q=(-1/3)^N", 1e-10);
  return r;
}

Result c7(const Options&) {
  Result r = begin(7, "frustration-free Hamiltonians");
  const Operator x = aklt_term();
  const double proj = (x * x - x).norm();
  const double trace = std::abs(x.trace() - 5.0);
  Worst residual, energy;
  bool unique = true, gapped = true;
  for (double phi : {0.0, 0.5}) {
    for (int N = 1; N <= 4; ++N) {
      const auto h = deformed_hamiltonian(N, phi);
      oracle::Vec v = oracle::valence_bond_state(oracle::deformed_map(phi), N, 2);
      v.normalize();
      const std::string at = at_phi(phi) + " " + at_n(N);
      for (const auto& t : h.terms) residual.update(apply_term(h, t, v).norm(), at);
      const auto spec = diagonalize(h, 2);
      energy.update(std::abs(spec.energies[0]), at);
      unique = unique && spec.degeneracy == 1;
      gapped = gapped && spec.gap > 1e-6;
    }
  }
  r.passed = proj <= 1e-12 && trace <= 1e-12 && residual.within(1e-10) && energy.within(1e-10) && unique && gapped;
  r.detail = "||X^2-X|| " + sci(proj) + ", |Tr X-5| " + sci(trace) + " (tol 1e-12); " +
             residual.report("term residual", 1e-10) + "; " + energy.report("|E0|", 1e-10) +
             "; unique ground state: " + (unique ? "yes" : "no") + "; positive gap: " + (gapped ? "yes" : "no");
  return r;
}

Result c8(const Options& o) {
  Result r = begin(8, "Heisenberg chain localizes a Bell pair");
  const int n_max = o.level == Level::full ? 5 : 4;
  Worst err;
  for (int N = 2; N <= n_max; ++N) {
    const auto spec = diagonalize(heisenberg_hamiltonian(N), 1);
    const CVector g = spec.vectors.col(0);
    const double le = average_entanglement_dense(g, N, 3, 2, pauli_basis());
    const double ref = oracle::average_concurrence_by_projection(g, N, 3, 2, oracle::bell_basis());
    err.update(std::max(std::abs(le - 1.0), std::abs(ref - 1.0)), at_n(N));
  }
  r.passed = err.within(1e-6);
  r.detail = err.report("|LE-1| for N=2.." + std::to_string(n_max), 1e-6);
  return r;
}

Result c9(const Options&) {
  Result r = begin(9, "entanglement length exceeds correlation length");
  const auto sizes = xi_e_sizes();
  Worst violation;
  bool strict = true;
  std::ostringstream tightest;
  double margin = std::numeric_limits<double>::infinity();
  for (double phi : phi_grid) {
    const FcsTensor t = deformed_tensor(phi);
    const double xc = model_correlation_length_fit(make_chain(30, t), 2, 12).xi;
    const LeReport rep = xi_e(t, sizes);
    const double xe = rep.infinite ? std::numeric_limits<double>::infinity() : rep.xi;
    violation.update(std::max(0.0, xc - 1e-6 - xe), at_phi(phi));
    if (phi != 0.0) {
      strict = strict && xe > xc;
      if (xe - xc < margin) {
        margin = xe - xc;
        tightest.str("");
        tightest << at_phi(phi) << " (xi_E " << xe << ", xi_C " << xc << ")";
      }
    }
  }
  r.passed = violation.within(0.0) && strict;
  r.detail = violation.report("xi_C - 1e-6 - xi_E", 0.0) + "; strict for phi != 0: " + (strict ? "yes" : "no") +
             ", tightest " + tightest.str();
  return r;
}

Result c10(const Options& o) {
  Result r = begin(10, "gauge and normalization invariance");
  std::mt19937_64 rng(o.seed);
  const int N = 4;
  const ChainSpec chain = make_chain(N, deformed_tensor(0.7));
  const MeasurementBasis basis{oracle::random_unitary(rng, 3)};
  const std::vector<Operator> ops{oracle::random_hermitian(rng, 3), identity(3), identity(3),
                                  oracle::random_hermitian(rng, 3)};
  const double le_enum = average_entanglement_enumerated(chain, basis);
  const double le_fact = average_entanglement_factorized(chain, basis);
  const double le_closed = le_closed_form(chain);
  const double corr = expectation(chain, ops);
  const double so = string_order(chain);
  const auto ens = enumerate_outcomes(chain, basis);
  Worst err;
  std::uniform_real_distribution<double> mag(0.2, 5.0), ph(-std::numbers::pi, std::numbers::pi);
  for (int trial = 0; trial < 100; ++trial) {
    ChainSpec other = gauge_transformed(chain, oracle::random_gauge(rng, 2));
    other.tensor = scaled(other.tensor, std::polar(mag(rng), ph(rng)));
    const std::string at = "gauge " + std::to_string(trial);
    err.update(std::abs(average_entanglement_enumerated(other, basis) - le_enum), at + " LE enumerated");
    err.update(std::abs(average_entanglement_factorized(other, basis) - le_fact), at + " LE factorized");
    err.update(std::abs(le_closed_form(other) - le_closed), at + " LE closed form");
    err.update(std::abs(expectation(other, ops) - corr), at + " correlator");
    err.update(std::abs(string_order(other) - so), at + " string order");
    const auto other_ens = enumerate_outcomes(other, basis);
    for (std::size_t i = 0; i < ens.records.size(); ++i) {
      err.update(std::abs(other_ens.records[i].probability - ens.records[i].probability), at + " probability");
      err.update(std::abs(other_ens.records[i].entanglement - ens.records[i].entanglement), at + " outcome C");
    }
  }
  r.passed = err.within(1e-10);
  r.detail = err.report("max change over 100 gauges with rescaling", 1e-10);
  return r;
}

}  // namespace

std::vector<Result> run(const Options& options) {
  const std::vector<std::function<Result(const Options&)>> criteria{c1, c2, c3, c4, c5, c6, c7, c8, c9, c10};
  std::vector<Result> results;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Result r;
    try {
      r = criteria[i](options);
    } catch (const std::exception& e) {
      r.id = static_cast<int>(i) + 1;
      r.passed = false;
      r.detail = std::string("exception: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    results.push_back(std::move(r));
  }
  return results;
}

void print(std::ostream& out, const std::vector<Result>& results) {
  int passed = 0, deviations = 0, failed = 0;
  for (const auto& r : results) {
    out << (r.passed ? "PASS" : "FAIL") << "  criterion " << std::setw(2) << r.id << ": " << r.title;
    if (r.documented_deviation) out << " [documented deviation]";
    out << " | " << r.detail << " | " << std::fixed << std::setprecision(2) << r.seconds << " s\n";
    out.unsetf(std::ios::fixed);
    if (r.passed) {
      ++passed;
    } else if (r.documented_deviation) {
      ++deviations;
    } else {
      ++failed;
    }
  }
  out << passed << " passed, " << deviations << " documented deviation(s), " << failed << " unexpected failure(s)\n";
}

int exit_code(const std::vector<Result>& results) {
  for (const auto& r : results) {
    if (!r.passed && !r.documented_deviation) return 1;
  }
  return 0;
}

}  // namespace vbs::acceptance
