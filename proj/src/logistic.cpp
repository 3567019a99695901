#include "imprior/logistic.hpp"

#include <cmath>

#include "imprior/special.hpp"

namespace imprior {

double logit_log_likelihood(const Eigen::VectorXd& beta,
                            const Eigen::VectorXd& successes,
                            const Eigen::VectorXd& trials,
                            const Eigen::MatrixXd& design) {
  const int n_patterns = static_cast<int>(design.rows());
  if (beta.size() != design.cols() + 1 || successes.size() != n_patterns ||
      trials.size() != n_patterns)
    throw std::invalid_argument("logit_log_likelihood: dimension mismatch");
  double total = 0.0;
  for (int i = 0; i < n_patterns; ++i) {
    double eta = beta[0];
    for (int j = 0; j < design.cols(); ++j) eta += design(i, j) * beta[j + 1];
    total += successes[i] * eta - trials[i] * log1pexp(eta);
  }
  return total;
}

double log_likelihood(const Eigen::VectorXd& beta, const LogitProblem& problem) {
  problem.validate();
  return logit_log_likelihood(beta, problem.y, problem.n, problem.Z);
}

ConjugateHyper default_conjugate_hyper(const LogitProblem& problem) {
  problem.validate();
  const double n_total = problem.n.sum();
  if (!(n_total > 0.0))
    throw std::domain_error("default_conjugate_hyper: sum of n_i must be positive");
  ConjugateHyper hyper;
  hyper.w = problem.w_plus * problem.n / n_total;
  hyper.u = hyper.w / 2.0;
  hyper.validate();
  return hyper;
}

Eigen::MatrixXd model_design(const LogitProblem& problem, const ModelId& model) {
  const int k = problem.num_columns();
  Eigen::MatrixXd design(problem.num_patterns(),
                         static_cast<int>(model.included.size()));
  int c = 0;
  for (int col : model.included) {
    if (col < 1 || col > k)
      throw std::invalid_argument("model_design: column index out of range");
    design.col(c++) = problem.Z.col(col - 1);
  }
  // identifiability: [1 | design] must have full column rank
  Eigen::MatrixXd with_intercept(design.rows(), design.cols() + 1);
  with_intercept.col(0).setOnes();
  with_intercept.rightCols(design.cols()) = design;
  if (Eigen::FullPivLU<Eigen::MatrixXd>(with_intercept).rank() <
      with_intercept.cols())
    throw std::domain_error("model_design: model is not identified");
  return design;
}

std::vector<int> nearest_allocation(int t_plus, const Eigen::VectorXd& weights) {
  const double wsum = weights.sum();
  if (!(wsum > 0.0))
    throw std::domain_error("nearest_allocation: weights must sum > 0");
  std::vector<int> alloc(weights.size());
  for (int i = 0; i < weights.size(); ++i)
    alloc[i] = static_cast<int>(std::llround(t_plus * weights[i] / wsum));
  return alloc;
}

}  // namespace imprior
