#include <Eigen/Eigenvalues>
#include <cmath>
#include <optional>

#include "qce/verifier.hpp"

namespace qce {

namespace {

struct Point {
  double alpha = 0.0;
  double value = 0.0;
  double slope = 0.0;
  Eigen::VectorXd x;
  Eigen::VectorXd grad;
};

class LineSearch {
 public:
  LineSearch(const ScalarFunction& f, const GradientFunction& grad, const BfgsOptions& opt, OptimizationTrace& trace)
      : f_(f), grad_(grad), opt_(opt), trace_(trace) {}

  /// Strong-Wolfe search along p from x (value f0, slope d0 < 0). Falls back to
  /// the best sufficient-decrease point when the curvature condition is not met.
  std::optional<Point> run(const Eigen::VectorXd& x, const Eigen::VectorXd& p, double f0, double d0) {
    x_ = &x;
    p_ = &p;
    f0_ = f0;
    d0_ = d0;
    best_.reset();

    Point prev{0.0, f0, d0, x, {}};
    double alpha = 1.0;
    for (std::size_t i = 0; i < opt_.max_line_search_steps; ++i) {
      Point cur = evaluate(alpha);
      if (cur.value > f0 + opt_.armijo * alpha * d0 || (i > 0 && cur.value >= prev.value)) {
        return zoom(prev, cur);
      }
      with_slope(cur);
      if (std::abs(cur.slope) <= -opt_.curvature * d0) return cur;
      if (cur.slope >= 0) return zoom(cur, prev);
      prev = cur;
      alpha *= 2.0;
    }
    return best_;
  }

 private:
  Point evaluate(double alpha) {
    Point pt;
    pt.alpha = alpha;
    pt.x = *x_ + alpha * *p_;
    pt.value = f_(pt.x);
    ++trace_.function_evaluations;
    return pt;
  }

  void with_slope(Point& pt) {
    pt.grad = grad_(pt.x);
    ++trace_.gradient_evaluations;
    pt.slope = pt.grad.dot(*p_);
    if (pt.value <= f0_ + opt_.armijo * pt.alpha * d0_ && (!best_ || pt.value < best_->value)) best_ = pt;
  }

  std::optional<Point> zoom(Point lo, Point hi) {
    if (lo.grad.size() == 0 && lo.alpha > 0) with_slope(lo);
    for (std::size_t i = 0; i < opt_.max_line_search_steps; ++i) {
      const double width = hi.alpha - lo.alpha;
      // Quadratic interpolation from (lo.value, lo.slope, hi.value), kept inside the bracket.
      double alpha = lo.alpha + 0.5 * width;
      const double denom = 2.0 * (hi.value - lo.value - lo.slope * width);
      if (denom != 0.0) {
        const double trial = lo.alpha - lo.slope * width * width / denom;
        const double a = std::min(lo.alpha, hi.alpha);
        const double b = std::max(lo.alpha, hi.alpha);
        const double margin = 0.1 * (b - a);
        if (trial > a + margin && trial < b - margin) alpha = trial;
      }
      if (std::abs(width) < 1e-16) break;

      Point cur = evaluate(alpha);
      if (cur.value > f0_ + opt_.armijo * alpha * d0_ || cur.value >= lo.value) {
        hi = cur;
        continue;
      }
      with_slope(cur);
      if (std::abs(cur.slope) <= -opt_.curvature * d0_) return cur;
      if (cur.slope * width >= 0) hi = lo;
      lo = cur;
    }
    return best_;
  }

  const ScalarFunction& f_;
  const GradientFunction& grad_;
  const BfgsOptions& opt_;
  OptimizationTrace& trace_;
  const Eigen::VectorXd* x_ = nullptr;
  const Eigen::VectorXd* p_ = nullptr;
  double f0_ = 0.0;
  double d0_ = 0.0;
  std::optional<Point> best_;
};

double inf_norm(const Eigen::VectorXd& v) { return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff(); }

}  // namespace

std::string_view warm_start_name(WarmStart w) {
  switch (w) {
    case WarmStart::Zero: return "zero";
    case WarmStart::ThetaStar: return "pert";
    case WarmStart::ThetaStarWithHessian: return "pert-hessian";
  }
  return "?";
}

WarmStart parse_warm_start(std::string_view name) {
  if (name == "zero") return WarmStart::Zero;
  if (name == "pert" || name == "theta_star") return WarmStart::ThetaStar;
  if (name == "pert-hessian" || name == "theta_star_with_hessian") return WarmStart::ThetaStarWithHessian;
  throw ParseError("unknown initialization '" + std::string(name) + "' (expected zero|pert|pert-hessian)");
}

OptimizationTrace minimize_bfgs(const ScalarFunction& f, const GradientFunction& grad, Eigen::VectorXd x0,
                                Eigen::MatrixXd inverse_hessian0, const BfgsOptions& options) {
  const Eigen::Index n = x0.size();
  if (inverse_hessian0.rows() != n || inverse_hessian0.cols() != n) {
    throw DimensionError("initial inverse Hessian shape does not match the parameter count");
  }
  OptimizationTrace trace;
  Eigen::VectorXd x = std::move(x0);
  Eigen::MatrixXd hinv = std::move(inverse_hessian0);
  double fx = f(x);
  Eigen::VectorXd g = grad(x);
  ++trace.function_evaluations;
  ++trace.gradient_evaluations;
  trace.records.push_back({0, fx, inf_norm(g)});

  LineSearch search(f, grad, options, trace);
  const Eigen::MatrixXd identity = Eigen::MatrixXd::Identity(n, n);
  while (inf_norm(g) > options.gtol) {
    if (trace.iterations >= options.max_iterations) {
      trace.max_iterations_reached = true;
      break;
    }
    Eigen::VectorXd p = -hinv * g;
    double slope = g.dot(p);
    if (!(slope < 0)) {
      // Not a descent direction: restart from steepest descent.
      hinv = identity;
      p = -g;
      slope = g.dot(p);
    }
    const auto step = search.run(x, p, fx, slope);
    if (!step) {
      trace.line_search_failed = true;
      break;
    }
    const Eigen::VectorXd s = step->x - x;
    const Eigen::VectorXd y = step->grad - g;
    x = step->x;
    fx = step->value;
    g = step->grad;
    ++trace.iterations;
    trace.records.push_back({trace.iterations, fx, inf_norm(g)});

    const double ys = y.dot(s);
    if (ys > 1e-14 * s.norm() * y.norm()) {
      const double rho = 1.0 / ys;
      const Eigen::MatrixXd left = identity - rho * s * y.transpose();
      hinv = left * hinv * left.transpose() + rho * s * s.transpose();
    }
  }
  trace.converged = inf_norm(g) <= options.gtol;
  trace.theta = x;
  trace.final_cost = fx;
  return trace;
}

Eigen::MatrixXd initial_inverse_hessian(const ExpansionResult& expansion, double eps) {
  const auto k = static_cast<Eigen::Index>(expansion.gradient.size());
  Eigen::MatrixXd hinv = Eigen::MatrixXd::Identity(k, k);
  const auto& kept = expansion.kept_indices;
  if (kept.empty()) return hinv;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(expansion.hessian);
  if (eig.info() != Eigen::Success) return hinv;
  Eigen::VectorXd inv = eig.eigenvalues();
  for (Eigen::Index j = 0; j < inv.size(); ++j) inv[j] = inv[j] > eps ? 1.0 / inv[j] : 1.0;
  const Eigen::MatrixXd block = eig.eigenvectors() * inv.asDiagonal() * eig.eigenvectors().transpose();
  for (std::size_t a = 0; a < kept.size(); ++a) {
    for (std::size_t b = 0; b < kept.size(); ++b) {
      hinv(static_cast<Eigen::Index>(kept[a]), static_cast<Eigen::Index>(kept[b])) =
          block(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
    }
  }
  return hinv;
}

OptimizationTrace optimize_bfgs(const AnsatzCircuit& ansatz, const Observable& obs, const ReferenceState& reference,
                                WarmStart init, const ExpansionResult* expansion, const VqeOptimizeOptions& options) {
  check_dense_limits(ansatz.n_qubits, options.limits);
  const auto k = static_cast<Eigen::Index>(ansatz.n_params);
  if (init != WarmStart::Zero) {
    if (expansion == nullptr) throw std::invalid_argument("warm start needs an expansion result");
    if (expansion->theta_star.size() != k) throw DimensionError("expansion theta* length differs from ansatz");
  }

  const ScalarFunction f = [&](const Eigen::VectorXd& theta) {
    return energy(ansatz, theta, reference, obs, options.limits);
  };
  const GradientFunction grad = [&](const Eigen::VectorXd& theta) {
    return central_gradient(f, theta, options.gradient_step);
  };

  Eigen::VectorXd x0 = Eigen::VectorXd::Zero(k);
  Eigen::MatrixXd h0 = Eigen::MatrixXd::Identity(k, k);
  if (init != WarmStart::Zero) x0 = expansion->theta_star;
  if (init == WarmStart::ThetaStarWithHessian) h0 = initial_inverse_hessian(*expansion);

  OptimizationTrace trace = minimize_bfgs(f, grad, x0, h0, options.bfgs);
  trace.init = init;
  return trace;
}

}  // namespace qce
