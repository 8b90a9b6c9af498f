#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "vbslab/spin_algebra.hpp"

using namespace vbs;

TEST_CASE("spin operators satisfy the algebra") {
  for (double s : {0.5, 1.0, 1.5, 2.0}) {
    const auto ops = spin_operators(s);
    const int dim = ops.dim();
    CHECK(dim == static_cast<int>(2 * s + 1));
    const Operator comm = ops.x * ops.y - ops.y * ops.x;
    CHECK((comm - cplx(0, 1) * ops.z).norm() < 1e-12);
    const Operator casimir = ops.x * ops.x + ops.y * ops.y + ops.z * ops.z;
    CHECK((casimir - s * (s + 1) * identity(dim)).norm() < 1e-12);
    for (int i = 0; i < dim; ++i) CHECK(ops.z(i, i).real() == doctest::Approx(s - i));
    CHECK(is_hermitian(ops.x));
    CHECK(is_hermitian(ops.y));
  }
  const auto half = spin_operators(0.5);
  CHECK((half.x - pauli(1) / 2.0).norm() < 1e-15);
  CHECK((half.y - pauli(2) / 2.0).norm() < 1e-15);
}

TEST_CASE("spin operators agree with the ladder-formula oracle") {
  for (double s : {0.5, 1.0, 2.5}) {
    const auto ops = spin_operators(s);
    const auto ref = oracle::spin(s);
    CHECK((ops.x - ref.x).norm() < 1e-12);
    CHECK((ops.y - ref.y).norm() < 1e-12);
    CHECK((ops.z - ref.z).norm() < 1e-12);
  }
}

TEST_CASE("non-half-integer spin is rejected") {
  CHECK_THROWS_AS(spin_operators(0.3), std::invalid_argument);
  CHECK_THROWS_AS(spin_operators(-1.0), std::invalid_argument);
  CHECK_THROWS_AS(spin_operators(0.0), std::invalid_argument);
}

TEST_CASE("spin flip parity of spin 1") {
  const Operator p = hermitian_exp(spin_operators(1.0).z, cplx(0, M_PI));
  Operator expected = Operator::Zero(3, 3);
  expected(0, 0) = -1;
  expected(1, 1) = 1;
  expected(2, 2) = -1;
  CHECK((p - expected).norm() < 1e-12);
}

TEST_CASE("kron index convention and trace multiplicativity") {
  CHECK((kron(identity(2), identity(2)) - identity(4)).norm() == 0.0);
  const Operator zz = kron(pauli(3), pauli(3));
  CHECK(zz(0, 0).real() == 1);
  CHECK(zz(1, 1).real() == -1);
  CHECK(zz(2, 2).real() == -1);
  CHECK(zz(3, 3).real() == 1);
  std::mt19937_64 rng(7);
  const Operator a = oracle::random_matrix(rng, 3, 3), b = oracle::random_matrix(rng, 3, 3);
  CHECK(std::abs(kron(a, b).trace() - a.trace() * b.trace()) < 1e-12);
  CHECK((kron(a, b) - oracle::kron(a, b)).norm() < 1e-14);
}

TEST_CASE("hermitian basis normalization") {
  for (int D : {2, 3, 4}) {
    const auto basis = hermitian_basis(D);
    REQUIRE(basis.size() == D * D);
    CHECK((basis.elements[0] - identity(D)).norm() == 0.0);
    for (int a = 0; a < basis.size(); ++a) {
      CHECK(is_hermitian(basis.elements[a]));
      for (int b = 0; b < basis.size(); ++b) {
        const cplx t = (basis.elements[a] * basis.elements[b]).trace();
        const double expected = a == b ? basis.norms(a) : 0.0;
        CHECK(std::abs(t - expected) < 1e-12);
      }
    }
  }
  const auto q = hermitian_basis(2);
  for (int i = 0; i < 4; ++i) {
    CHECK((q.elements[i] - pauli(i)).norm() == 0.0);
    CHECK(q.norms(i) == 2.0);
  }
}

TEST_CASE("eigensystem ordering and residuals") {
  RMatrix diag = RMatrix::Zero(4, 4);
  diag.diagonal() << -1, 3, -1, -1;
  const auto es = eigensystem(diag);
  CHECK(es.values(0).real() == doctest::Approx(3));
  for (int i = 1; i < 4; ++i) CHECK(es.values(i).real() == doctest::Approx(-1));

  std::mt19937_64 rng(11);
  const Operator h = oracle::random_hermitian(rng, 6);
  const auto eh = eigensystem(h);
  CHECK(eh.hermitian);
  const Operator lambda = eh.values.asDiagonal();
  CHECK((h - eh.vectors * lambda * eh.vectors.adjoint()).norm() < 1e-10);
  CHECK((eh.vectors.adjoint() * eh.vectors - identity(6)).norm() < 1e-10);

  const Operator g = oracle::random_matrix(rng, 5, 5);
  const auto eg = eigensystem(g);
  for (int i = 0; i < 5; ++i) {
    CHECK((g * eg.vectors.col(i) - eg.values(i) * eg.vectors.col(i)).norm() < 1e-10 * g.norm());
    if (i > 0) CHECK(std::abs(eg.values(i - 1)) >= std::abs(eg.values(i)) - 1e-12);
  }
}

TEST_CASE("eigenvalue order is stable under rescaling") {
  std::mt19937_64 rng(3);
  const Operator a = oracle::random_matrix(rng, 5, 5);
  const auto base = eigensystem(a);
  for (cplx c : {cplx(2.5), cplx(-0.5), cplx(0, 3)}) {
    const auto scaled_es = eigensystem(Operator(c * a));
    CHECK((scaled_es.values - c * base.values).norm() < 1e-10 * a.norm() * std::abs(c));
  }
}

TEST_CASE("transfer-matrix eigenvalues at phi = 0.5") {
  const double c = std::cosh(1.0), s = std::sinh(1.0);
  RMatrix r(4, 4);
  r << 3 * c, 0, 0, s, 0, -1, 0, 0, 0, 0, -1, 0, -3 * s, 0, 0, -c;
  const auto es = eigensystem(r);
  CHECK(es.values(0).real() == doctest::Approx(c + std::sqrt(c * c + 3)).epsilon(1e-12));
}

TEST_CASE("symmetric projector") {
  const Operator a = symmetric_projector();
  CHECK((a * a.adjoint() - identity(3)).norm() < 1e-12);
  CVector singlet(4);
  singlet << 0, 1, -1, 0;
  CHECK((a * singlet).norm() < 1e-12);
  CVector up(4);
  up << 1, 0, 0, 0;
  const CVector image = a * up;
  CHECK(std::abs(image(0) - 1.0) < 1e-12);
  CHECK((oracle::deformed_map(0.0) - a).norm() < 1e-12);
}

TEST_CASE("unitary parameterization") {
  std::vector<double> zero(9, 0.0);
  CHECK((unitary_from_params(zero, 3) - identity(3)).norm() < 1e-15);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-M_PI, M_PI);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> p(9);
    for (auto& x : p) x = u(rng);
    const Operator m = unitary_from_params(p, 3);
    CHECK((m * m.adjoint() - identity(3)).norm() < 1e-12);
  }
  CHECK_THROWS(unitary_from_params(std::vector<double>(8, 0.0), 3));
}

TEST_CASE("constructors are deterministic") {
  const auto a = spin_operators(1.5), b = spin_operators(1.5);
  CHECK((a.x - b.x).norm() == 0.0);
  std::vector<double> p{0.3, -1.2, 0.7, 0.1};
  CHECK((unitary_from_params(p, 2) - unitary_from_params(p, 2)).norm() == 0.0);
}
