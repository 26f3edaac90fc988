#include "qce/parallel.hpp"
#include "qce/verifier.hpp"

namespace qce {

Eigen::VectorXd central_gradient(const ScalarFunction& f, const Eigen::VectorXd& x, double h, std::size_t jobs) {
  Eigen::VectorXd g(x.size());
  parallel_for(static_cast<std::size_t>(x.size()), jobs, [&](std::size_t k) {
    const auto i = static_cast<Eigen::Index>(k);
    Eigen::VectorXd xp = x;
    Eigen::VectorXd xm = x;
    xp[i] += h;
    xm[i] -= h;
    g[i] = (f(xp) - f(xm)) / (2.0 * h);
  });
  return g;
}

Eigen::MatrixXd central_hessian(const ScalarFunction& f, const Eigen::VectorXd& x, double h, std::size_t jobs) {
  const Eigen::Index n = x.size();
  Eigen::MatrixXd hess(n, n);
  const double f0 = f(x);
  parallel_for(static_cast<std::size_t>(n), jobs, [&](std::size_t kk) {
    const auto k = static_cast<Eigen::Index>(kk);
    Eigen::VectorXd y = x;
    y[k] = x[k] + h;
    const double fp = f(y);
    y[k] = x[k] - h;
    const double fm = f(y);
    hess(k, k) = (fp - 2.0 * f0 + fm) / (h * h);
    for (Eigen::Index m = k + 1; m < n; ++m) {
      Eigen::VectorXd z = x;
      z[k] = x[k] + h;
      z[m] = x[m] + h;
      const double fpp = f(z);
      z[m] = x[m] - h;
      const double fpm = f(z);
      z[k] = x[k] - h;
      const double fmm = f(z);
      z[m] = x[m] + h;
      const double fmp = f(z);
      const double v = (fpp - fpm - fmp + fmm) / (4.0 * h * h);
      hess(k, m) = v;
      hess(m, k) = v;
    }
  });
  return hess;
}

namespace {

ScalarFunction energy_function(const AnsatzCircuit& ansatz, const Observable& obs, const ReferenceState& reference,
                               const DenseLimits& limits) {
  check_dense_limits(ansatz.n_qubits, limits);
  return [&ansatz, &obs, &reference, limits](const Eigen::VectorXd& theta) {
    return energy(ansatz, theta, reference, obs, limits);
  };
}

Eigen::VectorXd base_point(const AnsatzCircuit& ansatz, const Eigen::VectorXd& at) {
  if (at.size() == 0) return Eigen::VectorXd::Zero(static_cast<Eigen::Index>(ansatz.n_params));
  if (static_cast<std::size_t>(at.size()) != ansatz.n_params) throw DimensionError("base point length mismatch");
  return at;
}

}  // namespace

Eigen::VectorXd finite_diff_gradient(const AnsatzCircuit& ansatz, const Observable& obs, const ReferenceState& reference,
                                     const FiniteDifferenceOptions& options, const Eigen::VectorXd& at) {
  return central_gradient(energy_function(ansatz, obs, reference, options.limits), base_point(ansatz, at),
                          options.gradient_step, options.jobs);
}

Eigen::MatrixXd finite_diff_hessian(const AnsatzCircuit& ansatz, const Observable& obs, const ReferenceState& reference,
                                    const FiniteDifferenceOptions& options, const Eigen::VectorXd& at) {
  return central_hessian(energy_function(ansatz, obs, reference, options.limits), base_point(ansatz, at),
                         options.hessian_step, options.jobs);
}

}  // namespace qce
