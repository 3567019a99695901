#include "imprior/mcmc.hpp"

#include <cmath>
#include <vector>

#include "imprior/special.hpp"

namespace imprior {

namespace {

class Walker {
 public:
  Walker(const LogDensity& target, int dim, RngStream stream)
      : target_(target), rng_(stream), beta_(Eigen::VectorXd::Zero(dim)) {
    current_ = target_(beta_);
    if (!std::isfinite(current_))
      throw McmcError("mh_sample: target is not finite at the origin start");
  }

  bool step(double sigma) {
    Eigen::VectorXd prop(beta_.size());
    for (int j = 0; j < beta_.size(); ++j)
      prop[j] = beta_[j] + sigma * rng_.normal();
    const double lp = target_(prop);
    if (std::isfinite(lp) &&
        std::log(rng_.uniform01()) < lp - current_) {
      beta_ = std::move(prop);
      current_ = lp;
      return true;
    }
    return false;
  }

  const Eigen::VectorXd& state() const { return beta_; }

 private:
  const LogDensity& target_;
  Pcg32 rng_;
  Eigen::VectorXd beta_;
  double current_;
};

}  // namespace

MhResult mh_sample(const LogDensity& target, int dim, const McmcConfig& config) {
  config.validate();
  Walker walker(target, dim, config.seed);

  const double target_rate = 0.5 * (config.accept_lo + config.accept_hi);
  double log_sigma = 0.0;
  int batch_index = 0;
  auto adapt_batches = [&](long long iterations) {
    const int batch = 100;
    long long done = 0;
    while (done < iterations) {
      const int len = static_cast<int>(std::min<long long>(batch, iterations - done));
      int accepted = 0;
      const double sigma = std::exp(log_sigma);
      for (int i = 0; i < len; ++i) accepted += walker.step(sigma);
      ++batch_index;
      const double rate = static_cast<double>(accepted) / len;
      log_sigma += (rate - target_rate) / std::sqrt(static_cast<double>(batch_index));
      done += len;
    }
  };

  adapt_batches(config.burn_in);

  // frozen-step validation; bounded re-adaptation rounds if the realized
  // rate sits outside the window
  const int validation_len = 4000;
  const double margin = 0.008;
  bool validated = false;
  double last_rate = -1.0;
  for (int round = 0; round < 10 && !validated; ++round) {
    const double sigma = std::exp(log_sigma);
    int accepted = 0;
    for (int i = 0; i < validation_len; ++i) accepted += walker.step(sigma);
    last_rate = static_cast<double>(accepted) / validation_len;
    if (last_rate >= config.accept_lo + margin &&
        last_rate <= config.accept_hi - margin) {
      validated = true;
    } else {
      adapt_batches(3000);
    }
  }
  if (!validated)
    throw McmcError(
        "mh_sample: failed to reach the target acceptance window (last rate " +
        std::to_string(last_rate) + ")");

  MhResult result;
  result.step_size = std::exp(log_sigma);
  result.draws.resize(config.chain_length, dim);
  long long accepted = 0;
  for (long long g = 0; g < config.chain_length; ++g) {
    for (int s = 0; s < config.thin; ++s)
      accepted += walker.step(result.step_size);
    result.draws.row(g) = walker.state();
  }
  result.acceptance_rate =
      static_cast<double>(accepted) /
      (static_cast<double>(config.chain_length) * config.thin);
  return result;
}

CjResult normalizing_constant_cj(const LogDensity& log_f, const MhResult& chain,
                                 RngStream fresh_stream) {
  const long long n_draws = chain.draws.rows();
  const int dim = static_cast<int>(chain.draws.cols());
  if (n_draws < 2) throw McmcError("normalizing_constant_cj: empty chain");
  const Eigen::VectorXd anchor = chain.draws.colwise().mean();
  const double log_f_anchor = log_f(anchor);
  if (!std::isfinite(log_f_anchor))
    throw McmcError("normalizing_constant_cj: density degenerate at the anchor");

  const double sigma = chain.step_size;
  const double log_q_norm =
      -0.5 * dim * std::log(2.0 * M_PI * sigma * sigma);

  // numerator: E_pi[ alpha(beta, beta*) q(beta, beta*) ] over the chain
  std::vector<double> log_num_terms(n_draws);
  for (long long g = 0; g < n_draws; ++g) {
    const Eigen::VectorXd d = chain.draws.row(g).transpose() - anchor;
    const double log_q = log_q_norm - 0.5 * d.squaredNorm() / (sigma * sigma);
    const double log_alpha =
        std::min(0.0, log_f_anchor - log_f(chain.draws.row(g).transpose()));
    log_num_terms[g] = log_alpha + log_q;
  }
  const double log_num =
      log_sum_exp(log_num_terms) - std::log(static_cast<double>(n_draws));

  // denominator: E_{q(beta*, .)}[ alpha(beta*, beta) ] over fresh draws
  Pcg32 rng(fresh_stream);
  std::vector<double> log_den_terms(n_draws);
  for (long long j = 0; j < n_draws; ++j) {
    Eigen::VectorXd prop(dim);
    for (int c = 0; c < dim; ++c) prop[c] = anchor[c] + sigma * rng.normal();
    log_den_terms[j] = std::min(0.0, log_f(prop) - log_f_anchor);
  }
  const double log_den =
      log_sum_exp(log_den_terms) - std::log(static_cast<double>(n_draws));

  CjResult out;
  out.log_constant = log_f_anchor - (log_num - log_den);

  // batch means on the (autocorrelated) numerator, iid se on the denominator
  const int n_batches = 32;
  std::vector<double> batch_log(n_batches);
  double var_batch = 0.0;
  {
    double mean_rel = 0.0;
    for (int b = 0; b < n_batches; ++b) {
      const long long lo = b * n_draws / n_batches;
      const long long hi = (b + 1) * n_draws / n_batches;
      batch_log[b] = log_sum_exp(std::span<const double>(
                         log_num_terms.data() + lo, static_cast<size_t>(hi - lo))) -
                     std::log(static_cast<double>(hi - lo));
      mean_rel += batch_log[b];
    }
    mean_rel /= n_batches;
    for (int b = 0; b < n_batches; ++b) {
      const double d = batch_log[b] - mean_rel;
      var_batch += d * d;
    }
    var_batch /= (n_batches - 1);
  }
  const double se_num = std::sqrt(var_batch / n_batches);
  double var_den = 0.0;
  for (long long j = 0; j < n_draws; ++j) {
    const double v = std::exp(log_den_terms[j] - log_den) - 1.0;
    var_den += v * v;
  }
  var_den /= static_cast<double>(n_draws - 1);
  const double se_den = std::sqrt(var_den / static_cast<double>(n_draws));
  out.se = std::sqrt(se_num * se_num + se_den * se_den);
  return out;
}

}  // namespace imprior
