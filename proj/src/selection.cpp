#include "imprior/selection.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <vector>

#include "imprior/parallel.hpp"
#include "imprior/special.hpp"

namespace imprior {

namespace {

constexpr int kNumBatches = 32;
constexpr long long kEnumerationLimit = 10000;
constexpr long long kSampledOutcomes = 10000;

std::uint64_t model_hash(const ModelId& model) {
  std::uint64_t acc = 0x243F6A8885A308D3ULL;
  for (int col : model.included) acc = mix64(acc ^ static_cast<std::uint64_t>(col));
  return acc;
}

}  // namespace

ChainContext build_chain_context(const Eigen::MatrixXd& design,
                                 const Eigen::VectorXd& z,
                                 const Eigen::VectorXd& s,
                                 const McmcConfig& config, RngStream stream) {
  const int dim = static_cast<int>(design.cols()) + 1;
  LogDensity target = [&design, z, s](const Eigen::VectorXd& beta) {
    return logit_log_likelihood(beta, z, s, design);
  };
  McmcConfig local = config;
  local.seed = stream;
  ChainContext ctx;
  ctx.design = design;
  MhResult chain = mh_sample(target, dim, local);
  const CjResult cj =
      normalizing_constant_cj(target, chain, stream.substream(0xC1B));
  ctx.log_q0 = cj.log_constant;
  ctx.log_q0_se = cj.se;
  ctx.acceptance_rate = chain.acceptance_rate;
  ctx.step_size = chain.step_size;
  ctx.draws = std::move(chain.draws);

  const long long n_draws = ctx.draws.rows();
  const int k = static_cast<int>(design.cols());
  ctx.eta = ctx.draws.col(0).replicate(1, design.rows());
  if (k > 0) ctx.eta += ctx.draws.rightCols(k) * design.transpose();
  ctx.lse_eta = ctx.eta.unaryExpr([](double v) { return log1pexp(v); });
  ctx.log_abs_beta = Eigen::VectorXd::Zero(n_draws);
  for (int j = 0; j < k; ++j)
    ctx.log_abs_beta += ctx.draws.col(j + 1).array().abs().log().matrix();
  return ctx;
}

ChainExpectations chain_expectations(const ChainContext& ctx,
                                     const Eigen::MatrixXd& xgrid,
                                     const Eigen::VectorXd& t, int h) {
  const long long n_draws = ctx.draws.rows();
  const long long nx = xgrid.rows();
  const Eigen::VectorXd base = (2.0 * h) * ctx.log_abs_beta - ctx.lse_eta * t;
  const Eigen::MatrixXd xt = xgrid.transpose();  // N x nx

  ChainExpectations out;
  out.log_batch_mean.resize(kNumBatches, nx);
  out.log_mean.resize(nx);

  Eigen::VectorXd run_max(nx), run_sum(nx);
  const long long rows_per_block =
      std::max<long long>(64, 6000000 / std::max<long long>(nx, 1));

  for (int b = 0; b < kNumBatches; ++b) {
    const long long lo = b * n_draws / kNumBatches;
    const long long hi = (b + 1) * n_draws / kNumBatches;
    run_max.setConstant(-std::numeric_limits<double>::infinity());
    run_sum.setZero();
    for (long long g0 = lo; g0 < hi; g0 += rows_per_block) {
      const long long g1 = std::min(hi, g0 + rows_per_block);
      const long long rows = g1 - g0;
      Eigen::MatrixXd vals = ctx.eta.middleRows(g0, rows) * xt;
      vals.colwise() += base.segment(g0, rows);
      const Eigen::RowVectorXd bmax = vals.colwise().maxCoeff();
      const Eigen::RowVectorXd bsum =
          (vals.rowwise() - bmax).array().exp().colwise().sum();
      for (long long x = 0; x < nx; ++x) {
        if (!std::isfinite(bmax[x])) continue;  // block annihilated
        if (bmax[x] <= run_max[x]) {
          run_sum[x] += bsum[x] * std::exp(bmax[x] - run_max[x]);
        } else {
          run_sum[x] = run_sum[x] * std::exp(run_max[x] - bmax[x]) + bsum[x];
          run_max[x] = bmax[x];
        }
      }
    }
    const double log_count = std::log(static_cast<double>(hi - lo));
    for (long long x = 0; x < nx; ++x)
      out.log_batch_mean(b, x) = run_max[x] + std::log(run_sum[x]) - log_count;
  }
  for (long long x = 0; x < nx; ++x) {
    const double mx = out.log_batch_mean.col(x).maxCoeff();
    if (!std::isfinite(mx)) {
      out.log_mean[x] = -std::numeric_limits<double>::infinity();
      continue;
    }
    double acc = 0.0;
    for (int b = 0; b < kNumBatches; ++b) {
      const long long lo = b * n_draws / kNumBatches;
      const long long hi = (b + 1) * n_draws / kNumBatches;
      acc += static_cast<double>(hi - lo) *
             std::exp(out.log_batch_mean(b, x) - mx);
    }
    out.log_mean[x] = mx + std::log(acc / static_cast<double>(n_draws));
  }
  return out;
}

double log_q_ratio(const ChainContext& ctx, const Eigen::VectorXd& x,
                   const Eigen::VectorXd& t, int h) {
  Eigen::MatrixXd xgrid(1, x.size());
  xgrid.row(0) = x.transpose();
  const auto e = chain_expectations(ctx, xgrid, t, h);
  if (!std::isfinite(e.log_mean[0]))
    throw McmcError("log_q_ratio: all draws annihilated; chain too short");
  return ctx.log_q0 + e.log_mean[0];
}

double log_marginal_intercept_only(const LogitProblem& problem,
                                   const TrainingDesign& t) {
  problem.validate();
  const ConjugateHyper hyper = default_conjugate_hyper(problem);
  const double u_plus = hyper.u.sum();
  const double w0 = hyper.w.sum() - u_plus;
  const double y_plus = problem.y.sum();
  const double n_plus = problem.n.sum();
  int t_plus = 0;
  for (int v : t.t) t_plus += v;

  double lc = 0.0;
  for (int i = 0; i < problem.num_patterns(); ++i)
    lc += log_choose(problem.n[i], problem.y[i]);

  std::vector<double> terms;
  terms.reserve(t_plus + 1);
  for (int s = 0; s <= t_plus; ++s) {
    const double log_m0 = log_choose(t_plus, s) +
                          log_beta(u_plus + s, w0 + t_plus - s) -
                          log_beta(u_plus, w0);
    const double log_ratio =
        log_beta(u_plus + s + y_plus, w0 + (t_plus - s) + (n_plus - y_plus)) -
        log_beta(u_plus + s, w0 + t_plus - s);
    terms.push_back(log_m0 + log_ratio);
  }
  return lc + log_sum_exp(terms);
}

namespace {

double log_m0_outcome(const Eigen::VectorXd& x, const Eigen::VectorXd& t,
                      double u_plus, double w0) {
  double lw = log_beta(u_plus + x.sum(), w0 + t.sum() - x.sum()) -
              log_beta(u_plus, w0);
  for (int i = 0; i < x.size(); ++i) lw += log_choose(t[i], x[i]);
  return lw;
}

TrainingOutcomeGrid enumerate_outcomes(const std::vector<int>& t, double u_plus,
                                       double w0) {
  const int n_patterns = static_cast<int>(t.size());
  long long nx = 1;
  for (int v : t) nx *= (v + 1);
  TrainingOutcomeGrid grid;
  grid.xgrid.resize(nx, n_patterns);
  grid.log_weight.resize(nx);
  Eigen::VectorXd tv(n_patterns);
  for (int i = 0; i < n_patterns; ++i) tv[i] = t[i];
  std::vector<int> x(n_patterns, 0);
  for (long long r = 0; r < nx; ++r) {
    Eigen::VectorXd xv(n_patterns);
    for (int i = 0; i < n_patterns; ++i) xv[i] = x[i];
    grid.xgrid.row(r) = xv.transpose();
    grid.log_weight[r] = log_m0_outcome(xv, tv, u_plus, w0);
    for (int i = n_patterns - 1; i >= 0; --i) {
      if (++x[i] <= t[i]) break;
      x[i] = 0;
    }
  }
  return grid;
}

TrainingOutcomeGrid sample_outcomes(const std::vector<int>& t, double u_plus,
                                    double w0, RngStream stream) {
  const int n_patterns = static_cast<int>(t.size());
  int t_plus = 0;
  for (int v : t) t_plus += v;
  // collapsed beta-binomial weights of the total x_+
  std::vector<double> cum(t_plus + 1);
  {
    std::vector<double> logw(t_plus + 1);
    for (int s = 0; s <= t_plus; ++s)
      logw[s] = log_choose(t_plus, s) + log_beta(u_plus + s, w0 + t_plus - s) -
                log_beta(u_plus, w0);
    const double norm = log_sum_exp(logw);
    double acc = 0.0;
    for (int s = 0; s <= t_plus; ++s) {
      acc += std::exp(logw[s] - norm);
      cum[s] = acc;
    }
    cum[t_plus] = 1.0;
  }
  Pcg32 rng(stream);
  std::map<std::vector<int>, long long> counts;
  for (long long m = 0; m < kSampledOutcomes; ++m) {
    const double u = rng.uniform01();
    int s = static_cast<int>(std::lower_bound(cum.begin(), cum.end(), u) -
                             cum.begin());
    // split the total by the multivariate hypergeometric conditional
    std::vector<int> x(n_patterns);
    int rest = t_plus;
    for (int i = 0; i < n_patterns; ++i) {
      rest -= t[i];
      if (i == n_patterns - 1) {
        x[i] = s;
        break;
      }
      const int klo = std::max(0, s - rest), khi = std::min(t[i], s);
      std::vector<double> lw;
      lw.reserve(khi - klo + 1);
      for (int k = klo; k <= khi; ++k)
        lw.push_back(log_choose(t[i], k) + log_choose(rest, s - k));
      const double norm = log_sum_exp(lw);
      const double uu = rng.uniform01();
      double acc = 0.0;
      int chosen = khi;
      for (int k = klo; k <= khi; ++k) {
        acc += std::exp(lw[k - klo] - norm);
        if (uu <= acc) {
          chosen = k;
          break;
        }
      }
      x[i] = chosen;
      s -= chosen;
    }
    counts[x] += 1;
  }
  TrainingOutcomeGrid grid;
  grid.sampled = true;
  grid.xgrid.resize(static_cast<long long>(counts.size()), n_patterns);
  grid.log_weight.resize(static_cast<long long>(counts.size()));
  long long r = 0;
  for (const auto& [x, c] : counts) {
    for (int i = 0; i < n_patterns; ++i) grid.xgrid(r, i) = x[i];
    grid.log_weight[r] =
        std::log(static_cast<double>(c) / static_cast<double>(kSampledOutcomes));
    ++r;
  }
  return grid;
}

double batch_spread_se(const std::vector<double>& batch_vals) {
  const int n = static_cast<int>(batch_vals.size());
  double mean = 0.0;
  for (double v : batch_vals) mean += v;
  mean /= n;
  double var = 0.0;
  for (double v : batch_vals) var += (v - mean) * (v - mean);
  var /= (n - 1);
  return std::sqrt(var / n);
}

}  // namespace

TrainingOutcomeGrid training_outcome_grid(const std::vector<int>& t,
                                          double u_plus, double w0,
                                          RngStream sampling_stream) {
  long long grid_size = 1;
  for (int v : t) {
    if (v < 0) throw std::domain_error("training_outcome_grid: t_i must be >= 0");
    grid_size *= (v + 1);
  }
  return grid_size <= kEnumerationLimit
             ? enumerate_outcomes(t, u_plus, w0)
             : sample_outcomes(t, u_plus, w0, sampling_stream);
}

MixtureResult log_q_mixture(const ChainContext& ctx_prior,
                            const ChainContext& ctx_post,
                            const TrainingOutcomeGrid& grid,
                            const Eigen::VectorXd& t, int h) {
  const auto exp_post = chain_expectations(ctx_post, grid.xgrid, t, h);
  const auto exp_prior = chain_expectations(ctx_prior, grid.xgrid, t, h);
  const long long nx = grid.xgrid.rows();

  std::vector<long long> failed;
  for (long long x = 0; x < nx; ++x)
    if (!std::isfinite(exp_post.log_mean[x]) ||
        !std::isfinite(exp_prior.log_mean[x]))
      failed.push_back(x);
  if (!failed.empty()) {
    std::ostringstream msg;
    msg << "log_q_mixture: " << failed.size()
        << " training-outcome terms annihilated (chain too short); x rows:";
    for (size_t i = 0; i < failed.size() && i < 8; ++i) msg << ' ' << failed[i];
    throw McmcError(msg.str());
  }

  std::vector<double> terms(nx);
  for (long long x = 0; x < nx; ++x)
    terms[x] = grid.log_weight[x] + exp_post.log_mean[x] - exp_prior.log_mean[x];
  MixtureResult out;
  out.log_value =
      ctx_post.log_q0 - ctx_prior.log_q0 + log_sum_exp(terms);

  std::vector<double> bp(kNumBatches), ba(kNumBatches);
  std::vector<double> tmp(nx);
  for (int b = 0; b < kNumBatches; ++b) {
    for (long long x = 0; x < nx; ++x)
      tmp[x] = grid.log_weight[x] + exp_post.log_batch_mean(b, x) -
               exp_prior.log_mean[x];
    bp[b] = log_sum_exp(tmp);
    for (long long x = 0; x < nx; ++x)
      tmp[x] = grid.log_weight[x] + exp_post.log_mean[x] -
               exp_prior.log_batch_mean(b, x);
    ba[b] = log_sum_exp(tmp);
  }
  const double se_post = batch_spread_se(bp);
  const double se_prior = batch_spread_se(ba);
  out.mc_se = std::sqrt(se_post * se_post + se_prior * se_prior +
                        ctx_post.log_q0_se * ctx_post.log_q0_se +
                        ctx_prior.log_q0_se * ctx_prior.log_q0_se);
  return out;
}

EvidenceReport marginal_likelihood_im(const LogitProblem& problem,
                                      const ModelId& model, int h,
                                      const TrainingDesign& t,
                                      const McmcConfig& config) {
  problem.validate();
  config.validate();
  if (h < 0) throw std::domain_error("marginal_likelihood_im: h must be >= 0");
  const int n_patterns = problem.num_patterns();
  std::vector<int> tvec = t.t;
  if (tvec.empty()) tvec.assign(n_patterns, 0);
  if (static_cast<int>(tvec.size()) != n_patterns)
    throw std::invalid_argument("marginal_likelihood_im: t has wrong length");

  if (model.included.empty())
    return {log_marginal_intercept_only(problem, TrainingDesign{tvec}), 0.0};

  const ConjugateHyper hyper = default_conjugate_hyper(problem);
  const Eigen::MatrixXd design = model_design(problem, model);
  const double u_plus = hyper.u.sum();
  const double w0 = hyper.w.sum() - u_plus;

  const RngStream base = config.seed.substream(model_hash(model));
  const ChainContext ctx_prior =
      build_chain_context(design, hyper.u, hyper.w, config, base.substream(0));
  const ChainContext ctx_post = build_chain_context(
      design, hyper.u + problem.y, hyper.w + problem.n, config,
      base.substream(1));

  const TrainingOutcomeGrid grid =
      training_outcome_grid(tvec, u_plus, w0, base.substream(2));
  Eigen::VectorXd tv(n_patterns);
  for (int i = 0; i < n_patterns; ++i) tv[i] = tvec[i];

  const MixtureResult mix = log_q_mixture(ctx_prior, ctx_post, grid, tv, h);

  double lc = 0.0;
  for (int i = 0; i < n_patterns; ++i)
    lc += log_choose(problem.n[i], problem.y[i]);
  return {lc + mix.log_value, mix.mc_se};
}

std::vector<ModelEvidence> posterior_model_probs(
    const LogitProblem& problem, const std::vector<ModelId>& models, int h,
    int t_plus, const McmcConfig& config) {
  if (models.empty())
    throw std::invalid_argument("posterior_model_probs: empty model set");
  const bool has_null =
      std::any_of(models.begin(), models.end(),
                  [](const ModelId& m) { return m.included.empty(); });
  if (!has_null)
    throw std::invalid_argument(
        "posterior_model_probs: model set must include the intercept-only model");
  problem.validate();
  TrainingDesign t{nearest_allocation(t_plus, problem.n)};

  std::vector<ModelEvidence> out(models.size());
  parallel_for(static_cast<int>(models.size()), [&](int i) {
    const auto report = marginal_likelihood_im(problem, models[i], h, t, config);
    out[i].model = models[i];
    out[i].log_marginal = report.log_marginal;
    out[i].mc_se = report.mc_se;
  });

  std::vector<double> lms(models.size());
  for (size_t i = 0; i < models.size(); ++i) lms[i] = out[i].log_marginal;
  const double norm = log_sum_exp(lms);
  for (auto& ev : out) ev.post_prob = std::exp(ev.log_marginal - norm);
  // delta method treating the log-marginal errors as independent
  for (size_t i = 0; i < out.size(); ++i) {
    double var = 0.0;
    for (size_t j = 0; j < out.size(); ++j) {
      const double grad =
          out[i].post_prob * ((i == j ? 1.0 : 0.0) - out[j].post_prob);
      var += grad * grad * out[j].mc_se * out[j].mc_se;
    }
    out[i].post_prob_se = std::sqrt(var);
  }
  return out;
}

}  // namespace imprior
