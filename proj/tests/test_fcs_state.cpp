#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "vbslab/fcs_state.hpp"
#include "vbslab/transfer.hpp"

using namespace vbs;

namespace {

// Dense state of a chain converted to the Sz basis on every bulk site.
CVector sz_amplitudes(const ChainSpec& chain) {
  ChainSpec sz = chain;
  sz.tensor = in_sz_basis(chain.tensor);
  return dense_state(sz).amplitudes;
}

bool proportional(const CVector& a, const CVector& b, double tol) {
  return std::abs(oracle::overlap_fidelity(a, b) - 1.0) < tol;
}

}  // namespace

TEST_CASE("AKLT tensor in the Bell-type basis is (sz, sy, sx)") {
  const FcsTensor t = aklt_tensor();
  CHECK(t.d == 3);
  CHECK(t.D == 2);
  CHECK((t.matrices[0] - pauli(3)).norm() == 0.0);
  CHECK((t.matrices[1] - pauli(2)).norm() == 0.0);
  CHECK((t.matrices[2] - pauli(1)).norm() == 0.0);
  CHECK(t.labels == std::vector<std::string>{"0", "+", "-"});
  Operator sum = Operator::Zero(2, 2);
  for (const auto& m : t.matrices) {
    CHECK(std::abs(std::abs(m.determinant()) - 1.0) < 1e-15);
    sum += m.adjoint() * m;
  }
  CHECK((sum - 3.0 * identity(2)).norm() < 1e-14);
  CHECK((aklt_measurement_basis() - oracle::bell_basis()).norm() < 1e-15);
}

TEST_CASE("slicing the symmetric projector reproduces the Pauli tensor") {
  const FcsTensor sliced = slice_projection(symmetric_projector(), aklt_measurement_basis(), aklt_labels());
  const FcsTensor ref = aklt_tensor();
  // equal up to one global scalar
  const cplx c = sliced.matrices[0](0, 0) / ref.matrices[0](0, 0);
  for (int b = 0; b < 3; ++b) CHECK((sliced.matrices[b] - c * ref.matrices[b]).norm() < 1e-12);
  const FcsTensor zero_phi = deformed_tensor(0.0);
  for (int b = 0; b < 3; ++b) CHECK((zero_phi.matrices[b] - c * ref.matrices[b]).norm() < 1e-12);
}

TEST_CASE("slice and reconstruct are inverse") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    const Operator map = oracle::random_matrix(rng, 3, 4);
    const Operator basis = oracle::random_unitary(rng, 3);
    const FcsTensor t = slice_projection(map, basis);
    CHECK((reconstruct_projection(t) - map).norm() < 1e-12 * map.norm());
  }
  const Operator map3 = oracle::random_matrix(rng, 2, 9);
  CHECK((reconstruct_projection(slice_projection(map3, identity(2))) - map3).norm() < 1e-12 * map3.norm());
}

TEST_CASE("slicing in two bases is related by the basis change") {
  std::mt19937_64 rng(22);
  const Operator map = oracle::random_matrix(rng, 3, 4);
  const Operator b1 = oracle::random_unitary(rng, 3), b2 = oracle::random_unitary(rng, 3);
  const FcsTensor t1 = slice_projection(map, b1), t2 = slice_projection(map, b2);
  const Operator u = b2.adjoint() * b1;
  for (int g = 0; g < 3; ++g) {
    Operator expected = Operator::Zero(2, 2);
    for (int b = 0; b < 3; ++b) expected += u(g, b) * t1.matrices[b];
    CHECK((t2.matrices[g] - expected).norm() < 1e-12);
  }
  const FcsTensor rotated = rotate_basis(t1, b2);
  for (int g = 0; g < 3; ++g) CHECK((rotated.matrices[g] - t2.matrices[g]).norm() < 1e-12);
}

TEST_CASE("slicing rejects a bad basis") {
  Operator bad = identity(3);
  bad(0, 1) = 0.5;
  CHECK_THROWS_AS(slice_projection(symmetric_projector(), bad), std::invalid_argument);
  CHECK_THROWS_AS(slice_projection(symmetric_projector(), identity(2)), std::invalid_argument);
  CHECK_THROWS_AS(slice_projection(Operator::Ones(3, 5), identity(3)), std::invalid_argument);
}

TEST_CASE("dense state matches the valence-bond construction") {
  for (double phi : {0.0, 0.4, -0.7}) {
    for (int N = 1; N <= 5; ++N) {
      const ChainSpec chain = make_chain(N, deformed_tensor(phi));
      const CVector ours = sz_amplitudes(chain);
      const CVector ref = oracle::valence_bond_state(oracle::deformed_map(phi), N, 2);
      CHECK(proportional(ours, ref, 1e-12));
    }
  }
}

TEST_CASE("dense state matches the valence-bond construction for a random map with D = 3") {
  std::mt19937_64 rng(23);
  const Operator map = oracle::random_matrix(rng, 2, 9);
  for (int N = 1; N <= 4; ++N) {
    const ChainSpec chain = make_chain(N, slice_projection(map, identity(2)));
    CHECK(proportional(dense_state(chain).amplitudes, oracle::valence_bond_state(map, N, 3), 1e-12));
  }
}

TEST_CASE("amplitude agrees with the dense state") {
  std::mt19937_64 rng(24);
  for (int N = 1; N <= 6; ++N) {
    const ChainSpec chain = make_chain(N, deformed_tensor(0.3));
    const DenseState dense = dense_state(chain);
    std::uniform_int_distribution<int> lab(0, 2), end(0, 1);
    const int samples = N <= 2 ? 200 : 1000;
    for (int s = 0; s < samples; ++s) {
      std::vector<int> outcome(N);
      for (auto& o : outcome) o = lab(rng);
      const int l = end(rng), r = end(rng);
      CHECK(std::abs(amplitude(chain, outcome, l, r) - dense.amplitudes(dense.index(l, outcome, r))) < 1e-12);
    }
  }
}

TEST_CASE("AKLT amplitudes reproduce the dense construction at N = 1") {
  const ChainSpec chain = make_chain(1, aklt_tensor());
  const CVector ref = oracle::valence_bond_state(oracle::deformed_map(0.0), 1, 2);
  // express the oracle in the label basis
  const Operator b = aklt_measurement_basis();
  CVector ref_labels(12);
  for (int l = 0; l < 2; ++l)
    for (int r = 0; r < 2; ++r)
      for (int beta = 0; beta < 3; ++beta) {
        cplx acc = 0;
        for (int m = 0; m < 3; ++m) acc += std::conj(b(m, beta)) * ref((l * 3 + m) * 2 + r);
        ref_labels((l * 3 + beta) * 2 + r) = acc;
      }
  CVector ours(12);
  for (int l = 0; l < 2; ++l)
    for (int r = 0; r < 2; ++r)
      for (int beta = 0; beta < 3; ++beta) ours((l * 3 + beta) * 2 + r) = amplitude(chain, std::vector<int>{beta}, l, r);
  const cplx c = ref_labels.dot(ours) / ref_labels.squaredNorm();
  CHECK((ours - c * ref_labels).norm() < 1e-12);
}

TEST_CASE("amplitude is multilinear in the matrices") {
  const FcsTensor t = deformed_tensor(0.2);
  FcsTensor t2 = t;
  const cplx c(1.7, -0.4);
  t2.matrices[1] *= c;
  const ChainSpec a = make_chain(3, t), b = make_chain(3, t2);
  for (int o = 0; o < 27; ++o) {
    std::vector<int> out{o / 9, (o / 3) % 3, o % 3};
    int count = 0;
    for (int x : out) count += x == 1;
    const cplx factor = std::pow(c, count);
    CHECK(std::abs(amplitude(b, out, 0, 1) - factor * amplitude(a, out, 0, 1)) < 1e-12);
  }
}

TEST_CASE("matrix part of (0, 0) is the identity for AKLT") {
  const std::vector<int> outcome{0, 0};
  CHECK((matrix_part(aklt_tensor(), outcome) - identity(2)).norm() == 0.0);
}

TEST_CASE("norm of the dense state is D times the transfer element") {
  for (double phi : {0.0, 0.5, -1.0}) {
    const FcsTensor t = deformed_tensor(phi);
    const RMatrix r = transfer_operator(t, identity(3)).entries;
    for (int N = 1; N <= 6; ++N) {
      const ChainSpec chain = make_chain(N, t);
      RMatrix p = RMatrix::Identity(4, 4);
      for (int i = 0; i < N; ++i) p = r * p;
      CHECK(dense_state(chain).norm2() == doctest::Approx(2.0 * p(0, 0)).epsilon(1e-12));
      CHECK(std::exp(log_norm_squared(chain)) == doctest::Approx(dense_state(chain).norm2()).epsilon(1e-12));
    }
  }
}

TEST_CASE("large deformation approaches the Sz = 0 product state") {
  const ChainSpec chain = make_chain(3, deformed_tensor(8.0));
  const CVector v = sz_amplitudes(chain);
  // Away from the free left end the weight concentrates on m = 0; site 1
  // still sees the unconstrained end spin.
  double zero_weight = 0.0;
  for (int l = 0; l < 2; ++l)
    for (int m1 = 0; m1 < 3; ++m1)
      for (int r = 0; r < 2; ++r) zero_weight += std::norm(v(((l * 27) + m1 * 9 + 4) * 2 + r));
  CHECK(zero_weight / v.squaredNorm() > 1 - 1e-6);
}

TEST_CASE("dense size guard and argument checks") {
  CHECK_THROWS_AS(dense_state(make_chain(16, aklt_tensor())), std::length_error);
  CHECK_THROWS_AS(make_chain(0, aklt_tensor()), std::invalid_argument);
  const ChainSpec chain = make_chain(2, aklt_tensor());
  CHECK_THROWS_AS(amplitude(chain, std::vector<int>{0, 3}, 0, 0), std::out_of_range);
  CHECK_THROWS_AS(amplitude(chain, std::vector<int>{0, 0}, 2, 0), std::out_of_range);
  CHECK_THROWS_AS(amplitude(chain, std::vector<int>{0}, 0, 0), std::invalid_argument);
  CHECK_THROWS_AS(deformed_tensor(std::nan("")), std::invalid_argument);
  FcsTensor zero = aklt_tensor();
  for (auto& m : zero.matrices) m.setZero();
  CHECK_THROWS_AS(zero.validate(), std::invalid_argument);
}

TEST_CASE("gauge transform leaves the state unchanged") {
  std::mt19937_64 rng(25);
  for (int N : {1, 3, 5}) {
    const ChainSpec chain = make_chain(N, deformed_tensor(0.6));
    const CVector v = dense_state(chain).amplitudes;
    for (int trial = 0; trial < 5; ++trial) {
      const ChainSpec gauged = gauge_transformed(chain, oracle::random_matrix(rng, 2, 2));
      CHECK((dense_state(gauged).amplitudes - v).norm() < 1e-10 * v.norm());
    }
  }
  CHECK_THROWS_AS(gauge_transformed(make_chain(2, aklt_tensor()), Operator::Zero(2, 2)), std::invalid_argument);
}
