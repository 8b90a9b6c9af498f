#include <doctest.h>
#include <omp.h>

#include <random>

#include "oracles.hpp"
#include "vbslab/fcs_state.hpp"
#include "vbslab/kernels.hpp"

using namespace vbs;

namespace {

std::vector<Operator> random_tensor(std::mt19937_64& rng, int d, int D) {
  std::vector<Operator> mats;
  for (int i = 0; i < d; ++i) mats.push_back(oracle::random_matrix(rng, D, D));
  return mats;
}

}  // namespace

TEST_CASE("parallel outcome sums match the serial reference") {
  std::mt19937_64 rng(31);
  for (int D : {2, 3}) {
    const auto mats = random_tensor(rng, 3, D);
    const Operator k = oracle::random_matrix(rng, D, D), e = oracle::random_matrix(rng, D, D);
    for (int N : {1, 2, 5, 8}) {
      const auto par = kernels::accumulate_outcomes(mats, k, e, N);
      const auto ser = kernels::accumulate_outcomes_serial(mats, k, e, N);
      CHECK(par.norm == doctest::Approx(ser.norm).epsilon(1e-12));
      CHECK(par.entanglement == doctest::Approx(ser.entanglement).epsilon(1e-12));
    }
  }
}

TEST_CASE("parallel dense fill matches the serial reference exactly") {
  std::mt19937_64 rng(32);
  const auto mats = random_tensor(rng, 3, 2);
  const Operator k = oracle::random_matrix(rng, 2, 2), e = oracle::random_matrix(rng, 2, 2);
  for (int N : {1, 3, 6}) {
    const CVector par = kernels::fill_dense(mats, k, e, N);
    const CVector ser = kernels::fill_dense_serial(mats, k, e, N);
    CHECK((par - ser).norm() < 1e-13 * ser.norm());
  }
}

TEST_CASE("parallel projection matches the serial reference") {
  std::mt19937_64 rng(33);
  for (int N : {1, 3, 4}) {
    const int bulk = static_cast<int>(std::pow(3, N));
    const CVector state = oracle::random_matrix(rng, 4 * bulk, 1);
    const Operator basis = oracle::random_unitary(rng, 3);
    const auto par = kernels::project_outcomes(state, N, 3, 2, basis);
    const auto ser = kernels::project_outcomes_serial(state, N, 3, 2, basis);
    CHECK(par.norm == doctest::Approx(ser.norm).epsilon(1e-12));
    CHECK(par.entanglement == doctest::Approx(ser.entanglement).epsilon(1e-12));
    CHECK(par.entanglement / par.norm ==
          doctest::Approx(oracle::average_concurrence_by_projection(state, N, 3, 2, basis)).epsilon(1e-12));
  }
}

TEST_CASE("results do not depend on the thread count") {
  std::mt19937_64 rng(34);
  const auto mats = random_tensor(rng, 3, 2);
  const Operator k = oracle::random_matrix(rng, 2, 2), e = oracle::random_matrix(rng, 2, 2);
  const int saved = omp_get_max_threads();
  omp_set_num_threads(1);
  const auto one = kernels::accumulate_outcomes(mats, k, e, 9);
  const CVector dense_one = kernels::fill_dense(mats, k, e, 7);
  omp_set_num_threads(std::max(4, saved));
  const auto many = kernels::accumulate_outcomes(mats, k, e, 9);
  const CVector dense_many = kernels::fill_dense(mats, k, e, 7);
  omp_set_num_threads(saved);
  CHECK(one.norm == many.norm);
  CHECK(one.entanglement == many.entanglement);
  CHECK((dense_one - dense_many).norm() == 0.0);
}

TEST_CASE("compensated sum") {
  kernels::KahanSum s;
  s.add(1.0);
  for (int i = 0; i < 1000; ++i) s.add(1e-16);
  s.add(-1.0);
  CHECK(s.value() == doctest::Approx(1e-13).epsilon(1e-9));
}

TEST_CASE("determinant weight") {
  CHECK(kernels::determinant_weight(identity(2)) == doctest::Approx(2.0));
  CHECK(kernels::determinant_weight(3.0 * identity(3)) == doctest::Approx(27.0));
  CHECK(kernels::determinant_weight(Operator::Zero(2, 2)) == 0.0);
}
