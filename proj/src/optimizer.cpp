// Copyright 2026 The bellopt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "bellopt/optimizer.hpp"

#include <Eigen/Eigenvalues>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <stdexcept>

#include "bellopt/sqp.hpp"

namespace bellopt {

void OptimizerConfig::validate() const {
  if (max_iterations < 1) throw std::invalid_argument("max_iterations must be >= 1");
  if (!(f_tolerance > 0.0)) throw std::invalid_argument("f_tolerance must be > 0");
  if (!(constraint_tolerance > 0.0)) throw std::invalid_argument("constraint_tolerance must be > 0");
  if (!(eps_zero > 0.0)) throw std::invalid_argument("eps_zero must be > 0");
}

UnitaryMatrix haar_unitary(int n, std::mt19937_64& rng) {
  if (n < 1) throw std::invalid_argument("haar_unitary: n must be >= 1");
  std::normal_distribution<double> gauss(0.0, std::sqrt(0.5));
  Eigen::MatrixXcd z(n, n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const double re = gauss(rng);
      const double im = gauss(rng);
      z(i, j) = Complex(re, im);
    }
  }
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
  Eigen::MatrixXcd q = qr.householderQ();
  const Eigen::MatrixXcd& r = qr.matrixQR();
  for (int j = 0; j < n; ++j) {
    const Complex d = r(j, j);
    const double mag = std::abs(d);
    q.col(j) *= mag > 0.0 ? d / mag : Complex(1.0);
  }
  return q;
}

std::uint64_t derived_seed(std::uint64_t master, std::uint64_t index) {
  std::uint64_t z = master + (index + 1) * 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

std::string unitary_hash(const UnitaryMatrix& u) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (Eigen::Index j = 0; j < u.cols(); ++j) {
    for (Eigen::Index i = 0; i < u.rows(); ++i) {
      const double parts[2] = {u(i, j).real(), u(i, j).imag()};
      unsigned char bytes[sizeof parts];
      std::memcpy(bytes, parts, sizeof parts);
      for (unsigned char b : bytes) {
        h ^= b;
        h *= 0x100000001b3ull;
      }
    }
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Eigen::VectorXd flatten(const UnitaryMatrix& u) {
  const auto n = u.rows();
  Eigen::VectorXd x(2 * n * n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      x[2 * (i * n + j)] = u(i, j).real();
      x[2 * (i * n + j) + 1] = u(i, j).imag();
    }
  }
  return x;
}

UnitaryMatrix unflatten(const Eigen::VectorXd& x, std::size_t n) {
  const auto m = static_cast<Eigen::Index>(n);
  UnitaryMatrix u(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) u(i, j) = Complex(x[2 * (i * m + j)], x[2 * (i * m + j) + 1]);
  }
  return u;
}

void orthonormality_constraints(const Eigen::VectorXd& x, std::size_t n, Eigen::VectorXd& values,
                                Eigen::MatrixXd& jacobian) {
  const auto m = static_cast<Eigen::Index>(n);
  values.resize(m * m);
  jacobian.setZero(m * m, 2 * m * m);
  auto re = [&](Eigen::Index i, Eigen::Index k) { return 2 * (i * m + k); };
  auto im = [&](Eigen::Index i, Eigen::Index k) { return 2 * (i * m + k) + 1; };
  Eigen::Index row = 0;
  for (Eigen::Index i = 0; i < m; ++i, ++row) {
    double norm = 0.0;
    for (Eigen::Index k = 0; k < m; ++k) {
      const double a = x[re(i, k)], b = x[im(i, k)];
      norm += a * a + b * b;
      jacobian(row, re(i, k)) = 2.0 * a;
      jacobian(row, im(i, k)) = 2.0 * b;
    }
    values[row] = norm - 1.0;
  }
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = i + 1; j < m; ++j) {
      double real_part = 0.0, imag_part = 0.0;
      for (Eigen::Index k = 0; k < m; ++k) {
        const double ai = x[re(i, k)], bi = x[im(i, k)];
        const double aj = x[re(j, k)], bj = x[im(j, k)];
        real_part += ai * aj + bi * bj;
        imag_part += bi * aj - ai * bj;
        jacobian(row, re(i, k)) = aj;
        jacobian(row, im(i, k)) = bj;
        jacobian(row, re(j, k)) = ai;
        jacobian(row, im(j, k)) = bi;
        jacobian(row + 1, re(i, k)) = -bj;
        jacobian(row + 1, im(i, k)) = aj;
        jacobian(row + 1, re(j, k)) = bi;
        jacobian(row + 1, im(j, k)) = -ai;
      }
      values[row] = real_part;
      values[row + 1] = imag_part;
      row += 2;
    }
  }
}

double merit_and_gradient(const EvaluationPlan& plan, const UnitaryMatrix& u, std::vector<double>& gradient,
                          Execution exec) {
  const TableWithGradient tg = evaluate_gradient(plan, u, exec);
  gradient = figure_of_merit_gradient(tg.table, tg.gradient);
  return figure_of_merit(tg.table);
}

namespace {

struct LocalResult {
  UnitaryMatrix u;
  int iterations = 0;
  bool converged = false;
  std::string message;
};

LocalResult run_constrained(const EvaluationPlan& plan, const UnitaryMatrix& start, const OptimizerConfig& config) {
  const std::size_t n = plan.modes();
  SqpProblem problem;
  std::vector<double> grad;
  problem.objective = [&](const Eigen::VectorXd& x, Eigen::VectorXd& g) {
    const double f = merit_and_gradient(plan, unflatten(x, n), grad, config.execution);
    g = Eigen::Map<const Eigen::VectorXd>(grad.data(), static_cast<Eigen::Index>(grad.size()));
    return f;
  };
  problem.constraints = [n](const Eigen::VectorXd& x, Eigen::VectorXd& c, Eigen::MatrixXd& jac) {
    orthonormality_constraints(x, n, c, jac);
  };
  SqpOptions options;
  options.max_iterations = config.max_iterations;
  options.f_tolerance = config.f_tolerance;
  options.constraint_tolerance = config.constraint_tolerance;
  const SqpResult r = sqp_minimize(problem, flatten(start), options);
  return {unflatten(r.x, n), r.iterations, r.converged, r.message};
}

// exp(iH) for the Hermitian H encoded by `h`: diagonal first, then Re and Im
// of each upper off-diagonal entry.
UnitaryMatrix exp_i_hermitian(const Eigen::VectorXd& h, std::size_t n) {
  const auto m = static_cast<Eigen::Index>(n);
  Eigen::MatrixXcd herm = Eigen::MatrixXcd::Zero(m, m);
  Eigen::Index k = 0;
  for (Eigen::Index i = 0; i < m; ++i) herm(i, i) = h[k++];
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = i + 1; j < m; ++j) {
      const Complex v(h[k], h[k + 1]);
      k += 2;
      herm(i, j) = v;
      herm(j, i) = std::conj(v);
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(herm);
  const Eigen::VectorXd& w = eig.eigenvalues();
  Eigen::VectorXcd phases(m);
  for (Eigen::Index i = 0; i < m; ++i) phases[i] = std::polar(1.0, w[i]);
  return eig.eigenvectors() * phases.asDiagonal() * eig.eigenvectors().adjoint();
}

LocalResult run_exponential(const EvaluationPlan& plan, const UnitaryMatrix& start, const OptimizerConfig& config) {
  const std::size_t n = plan.modes();
  const auto dim = static_cast<Eigen::Index>(n * n);
  auto objective = [&](const Eigen::VectorXd& h) {
    return figure_of_merit(evaluate(plan, start * exp_i_hermitian(h, n), config.execution));
  };
  auto gradient = [&](const Eigen::VectorXd& h, double fh) {
    constexpr double step = 1e-7;
    Eigen::VectorXd g(dim);
    Eigen::VectorXd probe = h;
    for (Eigen::Index i = 0; i < dim; ++i) {
      probe[i] = h[i] + step;
      g[i] = (objective(probe) - fh) / step;
      probe[i] = h[i];
    }
    return g;
  };

  Eigen::VectorXd h = Eigen::VectorXd::Zero(dim);
  double f = objective(h);
  Eigen::VectorXd g = gradient(h, f);
  Eigen::MatrixXd inv_hessian = Eigen::MatrixXd::Identity(dim, dim);
  LocalResult out;
  out.message = "iteration limit";
  for (int it = 1; it <= config.max_iterations; ++it) {
    out.iterations = it;
    Eigen::VectorXd d = -inv_hessian * g;
    double slope = g.dot(d);
    if (slope >= 0.0) {
      inv_hessian.setIdentity();
      d = -g;
      slope = -g.squaredNorm();
    }
    double alpha = 1.0, f_new = f;
    Eigen::VectorXd h_new;
    bool accepted = false;
    while (alpha > 1e-12) {
      h_new = h + alpha * d;
      f_new = objective(h_new);
      if (f_new <= f + 1e-4 * alpha * slope) {
        accepted = true;
        break;
      }
      alpha *= 0.5;
    }
    if (!accepted) {
      // Finite-difference noise floor reached.
      out.converged = true;
      out.message = "line search stalled";
      break;
    }
    const Eigen::VectorXd g_new = gradient(h_new, f_new);
    const Eigen::VectorXd s = h_new - h, y = g_new - g;
    const double sy = s.dot(y);
    if (sy > 1e-16) {
      const double rho = 1.0 / sy;
      const Eigen::MatrixXd ident = Eigen::MatrixXd::Identity(dim, dim);
      inv_hessian = (ident - rho * s * y.transpose()) * inv_hessian * (ident - rho * y * s.transpose()) +
                    rho * s * s.transpose();
    }
    const double df = std::abs(f_new - f);
    h = h_new;
    f = f_new;
    g = g_new;
    if (df <= config.f_tolerance * std::max(1.0, std::abs(f))) {
      out.converged = true;
      out.message = "converged";
      break;
    }
  }
  out.u = start * exp_i_hermitian(h, n);
  return out;
}

}  // namespace

RunRecord local_optimize(const EvaluationPlan& plan, const UnitaryMatrix& start, const OptimizerConfig& config) {
  config.validate();
  if (static_cast<std::size_t>(start.rows()) != plan.modes() || start.cols() != start.rows())
    throw std::invalid_argument("local_optimize: start matrix does not match the plan");
  const auto t0 = std::chrono::steady_clock::now();
  RunRecord record;
  record.start_hash = unitary_hash(start);

  LocalResult local = config.parameterization == Parameterization::Constrained
                          ? run_constrained(plan, start, config)
                          : run_exponential(plan, start, config);
  record.iterations = local.iterations;
  record.message = local.message;
  record.constraint_violation = unitarity_defect(local.u);
  record.converged = local.converged && record.constraint_violation <= config.constraint_tolerance &&
                     local.u.allFinite();
  record.final_u = local.u.allFinite() ? nearest_unitary(local.u) : start;

  ProbabilityTable table = evaluate(plan, record.final_u, config.execution);
  table.eps_zero = config.eps_zero;
  clamp_roundoff(table);
  record.f = figure_of_merit(table);
  record.pattern = pattern(table);
  record.p_succ = record.pattern.mean();
  record.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return record;
}

}  // namespace bellopt
