#ifndef IMPRIOR_LOGISTIC_HPP
#define IMPRIOR_LOGISTIC_HPP

#include <Eigen/Dense>
#include <stdexcept>
#include <vector>

#include "imprior/rng.hpp"

namespace imprior {

/// Binomial logistic regression data: N covariate patterns, trial counts n_i,
/// success counts y_i, and an N x k matrix of explanatory-variable values.
struct LogitProblem {
  Eigen::VectorXd n;
  Eigen::VectorXd y;
  Eigen::MatrixXd Z;
  double w_plus = 1.0;

  int num_patterns() const { return static_cast<int>(n.size()); }
  int num_columns() const { return static_cast<int>(Z.cols()); }

  void validate() const {
    if (y.size() != n.size() || Z.rows() != n.size())
      throw std::invalid_argument("LogitProblem: dimension mismatch");
    for (int i = 0; i < n.size(); ++i)
      if (y[i] < 0 || y[i] > n[i] || n[i] < 0)
        throw std::domain_error("LogitProblem: need 0 <= y_i <= n_i");
    if (!(w_plus > 0.0))
      throw std::domain_error("LogitProblem: w_plus must be positive");
  }
};

/// Pseudo-data (u, w) of the conjugate prior p^C(beta|u,w) ~ L(beta|u,w);
/// 0 < u_i < w_i guarantees a unique finite prior mode.
struct ConjugateHyper {
  Eigen::VectorXd u;
  Eigen::VectorXd w;

  void validate() const {
    if (u.size() != w.size())
      throw std::invalid_argument("ConjugateHyper: dimension mismatch");
    for (int i = 0; i < u.size(); ++i)
      if (!(u[i] > 0.0 && u[i] < w[i]))
        throw std::domain_error("ConjugateHyper: need 0 < u_i < w_i");
  }
};

/// A model = subset of 1-based explanatory-variable column indices; the
/// intercept is always included and the empty set is the null model.
struct ModelId {
  std::vector<int> included;

  int dim() const { return static_cast<int>(included.size()) + 1; }
  bool operator==(const ModelId& o) const { return included == o.included; }
};

struct McmcConfig {
  long long chain_length = 40000;  // retained draws after thinning
  int thin = 20;
  long long burn_in = 5000;  // adaptation iterations before sampling
  double accept_lo = 0.24;
  double accept_hi = 0.28;
  RngStream seed{0, 0};

  void validate() const {
    if (chain_length <= burn_in)
      throw std::domain_error("McmcConfig: chain_length must exceed burn_in");
    if (thin < 1) throw std::domain_error("McmcConfig: thin must be >= 1");
    if (!(accept_lo > 0.0 && accept_lo < accept_hi && accept_hi < 1.0))
      throw std::domain_error("McmcConfig: invalid acceptance window");
  }
};

/// Per-pattern training sample sizes; zeros allowed.
struct TrainingDesign {
  std::vector<int> t;

  int total() const {
    int s = 0;
    for (int v : t) s += v;
    return s;
  }
};

/// log L(beta | successes, trials) with design matrix `design` (N x k; the
/// intercept is beta[0] and is not a design column). Overflow-safe.
double logit_log_likelihood(const Eigen::VectorXd& beta,
                            const Eigen::VectorXd& successes,
                            const Eigen::VectorXd& trials,
                            const Eigen::MatrixXd& design);

/// Spec-facing wrapper over the full design of a problem.
double log_likelihood(const Eigen::VectorXd& beta, const LogitProblem& problem);

/// Default conjugate hyperparameters: w_i = w_plus n_i / sum(n), u_i = w_i/2,
/// putting the prior mode at beta = 0.
ConjugateHyper default_conjugate_hyper(const LogitProblem& problem);

/// Design submatrix for a model's included columns (validates indices and
/// identifiability via column rank together with the intercept).
Eigen::MatrixXd model_design(const LogitProblem& problem, const ModelId& model);

/// Nearest-integer allocation of t_plus across patterns proportional to n_i
/// (the realized total may differ slightly from t_plus, as in the source
/// analyses).
std::vector<int> nearest_allocation(int t_plus,
                                    const Eigen::VectorXd& weights);

}  // namespace imprior

#endif
