#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "gssl/graph.hpp"
#include "gssl/labels.hpp"
#include "gssl/matrix.hpp"

namespace gssl {

// Regularization is stored as alpha in (0, 1); mu = 2 (1 - alpha) / alpha
// is the derived view. alpha is also the random-walk continuation
// probability, which is why experiments sweep it directly.
inline double alpha_from_mu(double mu) {
  if (!(mu > 0.0)) throw std::invalid_argument("alpha_from_mu: mu must be positive");
  return 2.0 / (2.0 + mu);
}

inline double mu_from_alpha(double alpha) {
  if (!(alpha > 0.0) || !(alpha < 1.0))
    throw std::invalid_argument("mu_from_alpha: alpha must lie in (0, 1)");
  return 2.0 * (1.0 - alpha) / alpha;
}

struct MethodParams {
  double sigma = 0.0;        // 1 = standard Laplacian, 0.5 = normalized, 0 = PageRank
  double alpha = 0.5;        // in (0, 1)
  double tolerance = 1e-10;  // relative per-column L1 change between sweeps
  int max_iterations = 10000;
  int dense_cap = 2000;      // dense-direct mode refuses larger systems

  void validate() const {
    if (!(alpha > 0.0) || !(alpha < 1.0))
      throw std::invalid_argument("MethodParams: alpha must lie in (0, 1)");
    if (!(tolerance > 0.0))
      throw std::invalid_argument("MethodParams: tolerance must be positive");
    if (max_iterations < 1)
      throw std::invalid_argument("MethodParams: max_iterations must be >= 1");
  }
};

enum class SolveMode { kIterative, kDenseDirect };

class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& msg, double residual_, int iterations_)
      : std::runtime_error(msg), residual(residual_), iterations(iterations_) {}
  double residual;
  int iterations;
};

struct ClassificationResult {
  Matrix scores;                        // N x K classification functions
  std::vector<int> labels;              // per-row argmax, lowest index wins ties
  int iterations = 0;                   // 0 in dense-direct mode
  double final_residual = 0.0;
  std::vector<int> zero_score_rows;     // rows with no mass, labeled class 0
  std::vector<double> residual_history; // iterative mode only
};

struct Labeling {
  std::vector<int> labels;
  std::vector<int> zero_score_rows;
};

// Per-row argmax with ties broken toward the lowest class index. Rows that
// are entirely zero get class 0 and are reported back to the caller.
inline Labeling classify(const Matrix& scores) {
  Labeling out;
  out.labels.resize(scores.rows(), 0);
  for (int i = 0; i < scores.rows(); ++i) {
    int best = 0;
    double best_v = -std::numeric_limits<double>::infinity();
    bool all_zero = true;
    for (int k = 0; k < scores.cols(); ++k) {
      const double v = scores(i, k);
      if (std::isnan(v)) throw std::invalid_argument("classify: NaN score");
      if (v != 0.0) all_zero = false;
      if (v > best_v) {
        best_v = v;
        best = k;
      }
    }
    out.labels[i] = best;
    if (all_zero) out.zero_score_rows.push_back(i);
  }
  return out;
}

namespace detail {

inline void check_solve_inputs(const Graph& g, const Matrix& y, const MethodParams& p) {
  p.validate();
  if (y.rows() != g.node_count())
    throw std::invalid_argument("solve: label matrix row count does not match graph");
  if (y.cols() < 1) throw std::invalid_argument("solve: label matrix needs at least one column");
  for (int i = 0; i < g.node_count(); ++i)
    if (!(g.degree(i) > 0.0))
      throw std::invalid_argument("solve: isolated node " + std::to_string(i) +
                                  " (zero degree); degree powers are undefined");
  std::vector<char> has_mass(static_cast<std::size_t>(y.cols()), 0);
  for (int i = 0; i < y.rows(); ++i)
    for (int k = 0; k < y.cols(); ++k) {
      const double v = y(i, k);
      if (std::isnan(v) || v < 0.0)
        throw std::invalid_argument("solve: label matrix must be nonnegative");
      if (v > 0.0) has_mass[k] = 1;
    }
  for (int k = 0; k < y.cols(); ++k)
    if (!has_mass[k])
      throw std::invalid_argument("solve: label matrix column " + std::to_string(k) +
                                  " has no labeled mass");
}

// Propagation operator S with S_ij = d_i^-sigma w_ij d_j^(sigma-1); it is
// diagonally similar to the walk matrix D^-1 W, so its spectral radius is 1
// and alpha * S contracts for any alpha < 1.
struct Propagator {
  std::vector<double> in_scale;   // d_i^-sigma
  std::vector<double> out_scale;  // d_j^(sigma-1)

  Propagator(const Graph& g, double sigma) {
    const int n = g.node_count();
    in_scale.resize(n);
    out_scale.resize(n);
    for (int i = 0; i < n; ++i) {
      in_scale[i] = std::pow(g.degree(i), -sigma);
      out_scale[i] = std::pow(g.degree(i), sigma - 1.0);
    }
  }

  // dst = S * src, both N x K.
  void apply(const Graph& g, const Matrix& src, Matrix& dst) const {
    const int n = src.rows();
    const int kk = src.cols();
    for (int i = 0; i < n; ++i) {
      double* out = dst.row(i);
      for (int k = 0; k < kk; ++k) out[k] = 0.0;
      for (const Neighbor& nb : g.neighbors(i)) {
        const double c = nb.weight * out_scale[nb.node];
        const double* in = src.row(nb.node);
        for (int k = 0; k < kk; ++k) out[k] += c * in[k];
      }
      for (int k = 0; k < kk; ++k) out[k] *= in_scale[i];
    }
  }

  Eigen::MatrixXd dense(const Graph& g) const {
    const int n = g.node_count();
    Eigen::MatrixXd s = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i)
      for (const Neighbor& nb : g.neighbors(i))
        s(i, nb.node) = in_scale[i] * nb.weight * out_scale[nb.node];
    return s;
  }
};

}  // namespace detail

// Solves the regularized classification problem. Per column k the solution
// is F = (1 - alpha) (I - alpha D^-sigma W D^(sigma-1))^-1 Y.
//
// Iterative mode runs the fixed point F <- (1 - alpha) Y + alpha S F from
// F = Y until the largest per-column relative L1 change drops below the
// tolerance; each sweep contracts the error by alpha (S is diagonally
// similar to the row-stochastic D^-1 W), so failure to converge within the
// iteration budget raises ConvergenceError carrying the residual.
//
// Dense-direct mode assembles the N x N system and solves it by LU; it is
// the test oracle and refuses systems larger than dense_cap.
inline ClassificationResult solve(const Graph& g, const Matrix& y, const MethodParams& p,
                                  SolveMode mode = SolveMode::kIterative) {
  detail::check_solve_inputs(g, y, p);
  const int n = g.node_count();
  const int kk = y.cols();
  const detail::Propagator prop(g, p.sigma);

  ClassificationResult result;

  if (mode == SolveMode::kDenseDirect) {
    if (n > p.dense_cap)
      throw std::invalid_argument("solve: dense-direct mode capped at " +
                                  std::to_string(p.dense_cap) +
                                  " nodes; use iterative mode");
    Eigen::MatrixXd a = Eigen::MatrixXd::Identity(n, n) - p.alpha * prop.dense(g);
    Eigen::MatrixXd rhs(n, kk);
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < kk; ++k) rhs(i, k) = (1.0 - p.alpha) * y(i, k);
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(a);
    Eigen::MatrixXd f = lu.solve(rhs);

    result.scores = Matrix(n, kk);
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < kk; ++k) {
        double v = f(i, k);
        // The exact solution is a Neumann series of nonnegative terms;
        // LU roundoff may leave harmless negative dust on zero entries.
        if (v < 0.0 && v > -1e-12) v = 0.0;
        result.scores(i, k) = v;
      }
    result.iterations = 0;
    result.final_residual = (a * f - rhs).cwiseAbs().maxCoeff();
  } else {
    Matrix f = y;
    Matrix next(n, kk);
    double residual = std::numeric_limits<double>::infinity();
    bool converged = false;
    for (int t = 1; t <= p.max_iterations; ++t) {
      prop.apply(g, f, next);
      for (int i = 0; i < n; ++i) {
        double* row = next.row(i);
        const double* yrow = y.row(i);
        for (int k = 0; k < kk; ++k)
          row[k] = (1.0 - p.alpha) * yrow[k] + p.alpha * row[k];
      }
      // residual: max over columns of |F_next - F|_1 / |F|_1
      residual = 0.0;
      for (int k = 0; k < kk; ++k) {
        double change = 0.0, base = 0.0;
        for (int i = 0; i < n; ++i) {
          change += std::fabs(next(i, k) - f(i, k));
          base += std::fabs(f(i, k));
        }
        residual = std::max(residual, change / base);
      }
      std::swap(f, next);
      result.residual_history.push_back(residual);
      result.iterations = t;
      if (residual <= p.tolerance) {
        converged = true;
        break;
      }
    }
    if (!converged)
      throw ConvergenceError("solve: no convergence after " +
                                 std::to_string(p.max_iterations) +
                                 " iterations (residual " + std::to_string(residual) + ")",
                             residual, result.iterations);
    result.final_residual = residual;
    result.scores = std::move(f);
  }

  Labeling labeling = classify(result.scores);
  result.labels = std::move(labeling.labels);
  result.zero_score_rows = std::move(labeling.zero_score_rows);
  return result;
}

// Value of the objective
//   Q(F) = sum_ij w_ij | d_i^(sigma-1) F_i - d_j^(sigma-1) F_j |^2
//        + mu sum_i d_i^(2 sigma - 1) | F_i - Y_i |^2,
// with the double sum running over ordered pairs; the implementation
// iterates each undirected edge once and doubles its contribution.
inline double objective(const Graph& g, const Matrix& f, const Matrix& y, double sigma,
                        double mu) {
  if (!(mu > 0.0)) throw std::invalid_argument("objective: mu must be positive");
  if (!f.same_shape(y) || f.rows() != g.node_count())
    throw std::invalid_argument("objective: dimension mismatch");
  const int n = g.node_count();
  const int kk = f.cols();
  std::vector<double> cs(n), fit(n);
  for (int i = 0; i < n; ++i) {
    const double d = g.degree(i);
    if (!(d > 0.0)) throw std::invalid_argument("objective: isolated node");
    cs[i] = std::pow(d, sigma - 1.0);
    fit[i] = std::pow(d, 2.0 * sigma - 1.0);
  }
  double smooth = 0.0;
  for (int i = 0; i < n; ++i)
    for (const Neighbor& nb : g.neighbors(i)) {
      if (nb.node < i) continue;  // visit each undirected edge once
      if (nb.node == i) continue; // self-loop difference is identically zero
      double term = 0.0;
      for (int k = 0; k < kk; ++k) {
        const double d = cs[i] * f(i, k) - cs[nb.node] * f(nb.node, k);
        term += d * d;
      }
      smooth += 2.0 * nb.weight * term;
    }
  double fitting = 0.0;
  for (int i = 0; i < n; ++i) {
    double term = 0.0;
    for (int k = 0; k < kk; ++k) {
      const double d = f(i, k) - y(i, k);
      term += d * d;
    }
    fitting += fit[i] * term;
  }
  return smooth + mu * fitting;
}

// Gradient of the objective above, per column:
//   grad = 4 D^(sigma-1) (D - W) D^(sigma-1) F + 2 mu D^(2 sigma - 1) (F - Y).
inline Matrix objective_gradient(const Graph& g, const Matrix& f, const Matrix& y,
                                 double sigma, double mu) {
  if (!(mu > 0.0)) throw std::invalid_argument("objective_gradient: mu must be positive");
  if (!f.same_shape(y) || f.rows() != g.node_count())
    throw std::invalid_argument("objective_gradient: dimension mismatch");
  const int n = g.node_count();
  const int kk = f.cols();
  std::vector<double> cs(n), fit(n);
  for (int i = 0; i < n; ++i) {
    const double d = g.degree(i);
    if (!(d > 0.0)) throw std::invalid_argument("objective_gradient: isolated node");
    cs[i] = std::pow(d, sigma - 1.0);
    fit[i] = std::pow(d, 2.0 * sigma - 1.0);
  }
  // u = D^(sigma-1) F, v = (D - W) u, grad = 4 D^(sigma-1) v + fitting part
  Matrix grad(n, kk);
  for (int i = 0; i < n; ++i) {
    const double d = g.degree(i);
    for (int k = 0; k < kk; ++k) grad(i, k) = d * cs[i] * f(i, k);
    for (const Neighbor& nb : g.neighbors(i))
      for (int k = 0; k < kk; ++k)
        grad(i, k) -= nb.weight * cs[nb.node] * f(nb.node, k);
    for (int k = 0; k < kk; ++k)
      grad(i, k) = 4.0 * cs[i] * grad(i, k) + 2.0 * mu * fit[i] * (f(i, k) - y(i, k));
  }
  return grad;
}

}  // namespace gssl
