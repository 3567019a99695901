#ifndef IMPRIOR_SELECTION_HPP
#define IMPRIOR_SELECTION_HPP

#include <Eigen/Dense>
#include <vector>

#include "imprior/logistic.hpp"
#include "imprior/mcmc.hpp"

namespace imprior {

/// One MCMC chain targeting the conjugate density p^C(beta|z,s) of a model,
/// with its Chib-Jeliazkov constant log Q(z,s,0) and the per-draw quantities
/// reused by every training-outcome expectation ("once and for all" per
/// (z,s) pair).
struct ChainContext {
  Eigen::MatrixXd design;        // N x k
  Eigen::MatrixXd draws;         // G x (k+1)
  Eigen::MatrixXd eta;           // G x N linear predictors
  Eigen::MatrixXd lse_eta;       // G x N log(1+e^eta)
  Eigen::VectorXd log_abs_beta;  // G, sum_j log|beta_j| over non-intercept
  double log_q0 = 0.0;
  double log_q0_se = 0.0;
  double acceptance_rate = 0.0;
  double step_size = 0.0;
};

ChainContext build_chain_context(const Eigen::MatrixXd& design,
                                 const Eigen::VectorXd& z,
                                 const Eigen::VectorXd& s,
                                 const McmcConfig& config, RngStream stream);

/// Monte Carlo means of (prod_j beta_j^{2h}) L(beta|x,t) over the chain, for
/// every row x of xgrid, with per-batch means for batch-means errors.
struct ChainExpectations {
  Eigen::VectorXd log_mean;        // nx
  Eigen::MatrixXd log_batch_mean;  // n_batches x nx
};
ChainExpectations chain_expectations(const ChainContext& ctx,
                                     const Eigen::MatrixXd& xgrid,
                                     const Eigen::VectorXd& t, int h);

/// log Q(z+x, s+t, h) = log Q(z,s,0) + log E[(prod beta_j^{2h}) L(beta|x,t)].
double log_q_ratio(const ChainContext& ctx, const Eigen::VectorXd& x,
                   const Eigen::VectorXd& t, int h);

/// Training outcomes x with their mixture weights: full enumeration when the
/// grid has at most 10^4 points, otherwise self-normalized sampling from m0
/// (deduplicated draws with frequency weights).
struct TrainingOutcomeGrid {
  Eigen::MatrixXd xgrid;       // nx x N
  Eigen::VectorXd log_weight;  // nx
  bool sampled = false;
};
TrainingOutcomeGrid training_outcome_grid(const std::vector<int>& t,
                                          double u_plus, double w0,
                                          RngStream sampling_stream);

/// log sum_x w_x Q(x+z_post, t+s_post, h) / Q(x+z_prior, t+s_prior, h)
/// assembled from the two chains, with a batch-means + CJ-propagated se.
struct MixtureResult {
  double log_value = 0.0;
  double mc_se = 0.0;
};
MixtureResult log_q_mixture(const ChainContext& ctx_prior,
                            const ChainContext& ctx_post,
                            const TrainingOutcomeGrid& grid,
                            const Eigen::VectorXd& t, int h);

struct EvidenceReport {
  double log_marginal = 0.0;
  double mc_se = 0.0;
};

/// Exact (closed-form) marginal likelihood of the intercept-only model,
/// including its training mixture; identical for every h (empty product).
double log_marginal_intercept_only(const LogitProblem& problem,
                                   const TrainingDesign& t);

/// Marginal likelihood induced by the intrinsic moment prior, as the
/// m0-mixture of Q ratios.
EvidenceReport marginal_likelihood_im(const LogitProblem& problem,
                                      const ModelId& model, int h,
                                      const TrainingDesign& t,
                                      const McmcConfig& config);

struct ModelEvidence {
  ModelId model;
  double log_marginal = 0.0;
  double mc_se = 0.0;
  double post_prob = 0.0;
  double post_prob_se = 0.0;
};

/// Posterior model probabilities under a uniform model prior, encompassing
/// from below: t_i allocated proportional to n_i by nearest-integer rounding,
/// held constant across models.
std::vector<ModelEvidence> posterior_model_probs(
    const LogitProblem& problem, const std::vector<ModelId>& models, int h,
    int t_plus, const McmcConfig& config);

}  // namespace imprior

#endif
