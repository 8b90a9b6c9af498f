#include <gsl/gsl_errno.h>
#include <gsl/gsl_multimin.h>

#include <cmath>
#include <memory>
#include <numbers>
#include <random>

#include "vbslab/localizable.hpp"

namespace vbs {

namespace {

struct Objective {
  FcsTensor tensor;  // Sz basis
  int d = 0;
  int evaluations = 0;

  double value(std::span<const double> x) {
    ++evaluations;
    const MeasurementBasis basis{unitary_from_params(x, d)};
    return per_site_entanglement(tensor, basis);
  }
};

double negated(const gsl_vector* x, void* params) {
  auto* obj = static_cast<Objective*>(params);
  return -obj->value(std::span<const double>(x->data, x->size));
}

struct SimplexRun {
  std::vector<double> x;
  double value = 0.0;
  bool converged = false;
};

using Minimizer = std::unique_ptr<gsl_multimin_fminimizer, decltype(&gsl_multimin_fminimizer_free)>;
using Vector = std::unique_ptr<gsl_vector, decltype(&gsl_vector_free)>;

SimplexRun simplex(Objective& obj, const std::vector<double>& start, double step, int max_iterations,
                   double tolerance) {
  const std::size_t n = start.size();
  Vector x(gsl_vector_alloc(n), gsl_vector_free);
  Vector steps(gsl_vector_alloc(n), gsl_vector_free);
  for (std::size_t i = 0; i < n; ++i) gsl_vector_set(x.get(), i, start[i]);
  gsl_vector_set_all(steps.get(), step);

  gsl_multimin_function fn;
  fn.n = n;
  fn.f = &negated;
  fn.params = &obj;
  Minimizer m(gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, n),
              gsl_multimin_fminimizer_free);
  gsl_multimin_fminimizer_set(m.get(), &fn, x.get(), steps.get());

  SimplexRun run;
  for (int it = 0; it < max_iterations; ++it) {
    if (gsl_multimin_fminimizer_iterate(m.get()) != GSL_SUCCESS) break;
    if (gsl_multimin_test_size(gsl_multimin_fminimizer_size(m.get()), tolerance) == GSL_SUCCESS) {
      run.converged = true;
      break;
    }
  }
  const gsl_vector* best = gsl_multimin_fminimizer_x(m.get());
  run.x.assign(best->data, best->data + n);
  run.value = -gsl_multimin_fminimizer_minimum(m.get());
  return run;
}

}  // namespace

BasisOptimum optimize_measurement_basis(const FcsTensor& tensor, const OptimizerOptions& options) {
  if (options.restarts < 1) throw std::invalid_argument("optimize_measurement_basis: restarts must be >= 1");
  tensor.validate();
  gsl_set_error_handler_off();

  Objective obj{in_sz_basis(tensor), tensor.d};
  const std::size_t n = static_cast<std::size_t>(tensor.d) * tensor.d;
  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> uniform(-std::numbers::pi, std::numbers::pi);

  BasisOptimum out{MeasurementBasis{identity(tensor.d)}, -1.0, false, 0, {}};
  std::vector<double> best_x;
  for (int r = 0; r < options.restarts; ++r) {
    std::vector<double> start(n);
    for (auto& v : start) v = uniform(rng);
    SimplexRun run = simplex(obj, start, 0.5, options.max_iterations, 1e-9);
    // Restart from the best point with a fresh simplex until it stops improving.
    for (int polish = 0; polish < 50; ++polish) {
      SimplexRun next = simplex(obj, run.x, 0.05, options.max_iterations, 1e-11);
      const double gain = next.value - run.value;
      if (next.value >= run.value) run = std::move(next);
      if (gain < options.tolerance) break;
    }
    out.restart_values.push_back(run.value);
    if (run.value > out.value) {
      out.value = run.value;
      out.converged = run.converged;
      best_x = run.x;
    }
  }
  out.basis = MeasurementBasis{unitary_from_params(best_x, tensor.d)};
  out.evaluations = obj.evaluations;
  return out;
}

}  // namespace vbs
