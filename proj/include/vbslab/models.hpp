#pragma once

// Two-site Hamiltonians on an open chain with sites (end, bulk_1..bulk_N,
// end) and the dense exact-diagonalization used to anchor the state code.
// Site k of a Term couples sites k and k+1 (k = 0 is the left end).

#include <iosfwd>
#include <vector>

#include "vbslab/spin_algebra.hpp"

namespace vbs {

struct Term {
  int site = 0;
  Operator op;  // dims[site] * dims[site + 1] square
};

struct HamiltonianSpec {
  int N = 0;
  std::vector<int> dims;  // N + 2 entries
  std::vector<Term> terms;

  long long total_dim() const;
  void validate() const;
};

/// (S.S + (S.S)^2 / 3 + 2/3) / 2 on two spin-1 sites: the projector onto total spin 2.
Operator aklt_term();

enum class Side { left, right };

/// Projector onto total spin 3/2 of a spin-1/2 and a spin-1. The left term
/// acts on (qubit, spin-1), the right one on (spin-1, qubit).
Operator boundary_term(Side side);

/// diag(e^phi, 1, e^-phi) = 1 + sinh(phi) Sz + (cosh(phi) - 1) Sz^2.
Operator sigma_phi(double phi);

/// diag(e^(phi/2), e^(-phi/2)) on a qubit end.
Operator sigma_phi_half(double phi);

/// Bulk terms (S^-1 (x) S) X (S^-1 (x) S) with S = sigma_phi; the left end
/// term is the undeformed projector, the right one is conjugated by
/// sigma_phi^-1 (x) sigma_phi_half. Each term annihilates the deformed
/// valence-bond state.
HamiltonianSpec deformed_hamiltonian(int N, double phi);
HamiltonianSpec aklt_hamiltonian(int N);

/// sum S_k . S_(k+1), spin-1 bulk with spin-1/2 ends.
HamiltonianSpec heisenberg_hamiltonian(int N);

inline constexpr long long dense_hamiltonian_limit = 20'000;

/// One term embedded in the full chain space.
Operator embed(const HamiltonianSpec& h, const Term& term);

/// term |v> without forming the full matrix.
CVector apply_term(const HamiltonianSpec& h, const Term& term, const CVector& v);

/// Full dense matrix. Throws std::length_error above dense_hamiltonian_limit.
Operator to_dense(const HamiltonianSpec& h);

/// (sum_i S_i)^2 on a chain with the given site dimensions.
Operator total_spin_squared(const std::vector<int>& dims);

struct SpectrumReport {
  std::vector<double> energies;  // ascending
  int degeneracy = 0;            // levels within 1e-8 of the lowest
  double gap = 0.0;              // first level above the ground multiplet
  Operator vectors;              // columns match energies
};

/// k lowest eigenpairs of the dense Hamiltonian. Throws NumericalError if a
/// residual exceeds 1e-9 (relative to ||H||).
SpectrumReport diagonalize(const HamiltonianSpec& h, int k);

/// CSV: index, eigenvalue.
void write_csv(std::ostream& out, const SpectrumReport& report);

}  // namespace vbs
