#ifndef IMPRIOR_MCMC_HPP
#define IMPRIOR_MCMC_HPP

#include <Eigen/Dense>
#include <functional>
#include <stdexcept>

#include "imprior/logistic.hpp"
#include "imprior/rng.hpp"

namespace imprior {

class McmcError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using LogDensity = std::function<double(const Eigen::VectorXd&)>;

struct MhResult {
  Eigen::MatrixXd draws;   // chain_length x dim, thinned post-burn-in
  double acceptance_rate;  // realized rate over the sampling phase
  double step_size;        // frozen proposal scale
};

/// Random-walk Metropolis-Hastings with a spherical Gaussian proposal. The
/// step size is tuned during burn-in (Robbins-Monro on the log scale,
/// targeting the middle of [accept_lo, accept_hi]) and frozen afterward so
/// the sampling phase is Markovian. Throws McmcError if the realized rate
/// cannot be brought into the target window in a bounded number of rounds.
MhResult mh_sample(const LogDensity& target_log_density, int dim,
                   const McmcConfig& config);

struct CjResult {
  double log_constant;
  double se;
};

/// Chib-Jeliazkov estimate of the log normalizing constant of the
/// unnormalized density the chain targets, anchored at the post-burn-in
/// sample mean. `fresh_stream` drives the proposal draws of the denominator.
CjResult normalizing_constant_cj(const LogDensity& log_unnormalized,
                                 const MhResult& chain, RngStream fresh_stream);

}  // namespace imprior

#endif
