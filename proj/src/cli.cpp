#include "imprior/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <ostream>
#include <sstream>

#include "imprior/datasets.hpp"
#include "imprior/envelope.hpp"
#include "imprior/evidence.hpp"
#include "imprior/selection.hpp"

namespace imprior {

namespace {

struct CommonOpts {
  std::string format = "json";
  std::uint64_t seed = 0;
};

void add_common(CLI::App* cmd, CommonOpts* opts) {
  cmd->add_option("--format", opts->format, "Output format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  cmd->add_option("--seed", opts->seed, "Random stream seed")
      ->capture_default_str();
}

CLI::App* add_subcommand(CLI::App& app, const std::string& name,
                         const std::string& description) {
  // -h is freed up so subcommands can use --h for the moment order
  CLI::App* cmd = app.add_subcommand(name, description);
  cmd->set_help_flag("--help", "Print help and exit");
  return cmd;
}

std::string model_label(const ModelId& model,
                        const std::vector<std::string>* names,
                        const std::vector<ModelId>* catalog) {
  if (names && catalog) {
    for (size_t i = 0; i < catalog->size(); ++i)
      if ((*catalog)[i] == model) return (*names)[i];
  }
  if (model.included.empty()) return "intercept-only";
  std::string label;
  for (int c : model.included) {
    if (!label.empty()) label += "+";
    label += "z" + std::to_string(c);
  }
  return label;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(std::stoi(tok));
  return out;
}

std::vector<long long> parse_ll_list(const std::string& text) {
  std::vector<long long> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(std::stoll(tok));
  return out;
}

McmcConfig make_mcmc_config(long long chain_length, int thin, long long burn_in,
                            std::uint64_t seed) {
  McmcConfig config;
  config.chain_length = chain_length;
  config.thin = thin;
  config.burn_in = burn_in;
  config.seed = RngStream{seed, 0};
  config.validate();
  return config;
}

void setup_bern_bf(CLI::App& app, std::ostream& out) {
  auto cmd = add_subcommand(app, "bern-bf",
                                "Bernoulli point-null Bayes factor under the "
                                "intrinsic moment prior");
  auto opts = std::make_shared<CommonOpts>();
  auto y = std::make_shared<long long>(0);
  auto n = std::make_shared<long long>(0);
  auto theta0 = std::make_shared<double>(0.5);
  auto b = std::make_shared<double>(1.0);
  auto h = std::make_shared<int>(1);
  auto t = std::make_shared<int>(-1);
  cmd->add_option("--y", *y, "Successes")->required();
  cmd->add_option("--n", *n, "Trials")->required();
  cmd->add_option("--theta0", *theta0, "Null value")->required();
  cmd->add_option("--b", *b, "Symmetric Beta hyperparameter")->capture_default_str();
  cmd->add_option("--h", *h, "Moment order")->check(CLI::NonNegativeNumber)->capture_default_str();
  cmd->add_option("--t", *t, "Training sample size (-1 = TWOE optimum)")
      ->capture_default_str();
  add_common(cmd, opts.get());
  cmd->callback([&out, opts, y, n, theta0, b, h, t] {
    if (*n < 0 || *y < 0 || *y > *n)
      throw CLI::ValidationError("bern-bf", "need 0 <= --y <= --n");
    if (!(*theta0 > 0.0 && *theta0 < 1.0))
      throw CLI::ValidationError("bern-bf", "--theta0 must lie strictly in (0,1)");
    if (!(*b > 0.0)) throw CLI::ValidationError("bern-bf", "--b must be positive");
    const int t_resolved = *t >= 0 ? *t : twoe_bernoulli(*b, *h).t_star;
    const BernoulliNull null(*theta0);
    const MomentPriorSpec spec(*b, *h, t_resolved);
    const double log_bf = log_bf10_intrinsic_moment(
        BinData(*y, *n), null, spec, KConstPolicy::QuadratureFallback);
    const double prob = posterior_prob_m1_from_log(log_bf);
    ResultEnvelope env;
    env.command = "bern-bf";
    env.seed = RngStream{opts->seed, 0};
    env.config = {{"y", *y},     {"n", *n}, {"theta0", *theta0}, {"b", *b},
                  {"h", *h},     {"t", t_resolved}};
    env.results.push_back({{"log_bf10", log_bf},
                           {"bf10", std::exp(log_bf)},
                           {"prob_m1", round6(prob)},
                           {"log_prob_m1", std::log(prob)}});
    env.emit(out, opts->format);
  });
}

void setup_bern_prior(CLI::App& app, std::ostream& out) {
  auto cmd = add_subcommand(app, 
      "bern-prior", "Intrinsic moment prior density on a theta grid");
  auto opts = std::make_shared<CommonOpts>();
  auto theta0 = std::make_shared<double>(0.25);
  auto b = std::make_shared<double>(1.0);
  auto h = std::make_shared<int>(1);
  auto t = std::make_shared<int>(8);
  auto grid = std::make_shared<int>(101);
  cmd->add_option("--theta0", *theta0, "Null value")->required();
  cmd->add_option("--b", *b, "Symmetric Beta hyperparameter")->capture_default_str();
  cmd->add_option("--h", *h, "Moment order")->check(CLI::NonNegativeNumber)->capture_default_str();
  cmd->add_option("--t", *t, "Training sample size")->check(CLI::NonNegativeNumber)->capture_default_str();
  cmd->add_option("--grid", *grid, "Number of interior grid points")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  add_common(cmd, opts.get());
  cmd->callback([&out, opts, theta0, b, h, t, grid] {
    if (!(*theta0 > 0.0 && *theta0 < 1.0))
      throw CLI::ValidationError("bern-prior", "--theta0 must lie strictly in (0,1)");
    const BernoulliNull null(*theta0);
    const MomentPriorSpec spec(*b, *h, *t);
    ResultEnvelope env;
    env.command = "bern-prior";
    env.seed = RngStream{opts->seed, 0};
    env.config = {{"theta0", *theta0}, {"b", *b}, {"h", *h}, {"t", *t},
                  {"grid", *grid}};
    for (int i = 0; i < *grid; ++i) {
      const double theta = (i + 1.0) / (*grid + 1.0);
      env.results.push_back(
          {{"theta", theta},
           {"density", intrinsic_moment_prior_density(theta, null, spec)}});
    }
    env.emit(out, opts->format);
  });
}

void setup_twoprop_bf(CLI::App& app, std::ostream& out) {
  auto cmd = add_subcommand(app, 
      "twoprop-bf", "Two-proportion equality test under the intrinsic moment prior");
  auto opts = std::make_shared<CommonOpts>();
  auto y1 = std::make_shared<long long>(0), n1 = std::make_shared<long long>(0);
  auto y2 = std::make_shared<long long>(0), n2 = std::make_shared<long long>(0);
  auto b0 = std::make_shared<double>(0.5);
  auto h = std::make_shared<int>(1);
  auto t_plus = std::make_shared<int>(-1);
  cmd->add_option("--y1", *y1, "Group-1 successes")->required();
  cmd->add_option("--n1", *n1, "Group-1 trials")->required();
  cmd->add_option("--y2", *y2, "Group-2 successes")->required();
  cmd->add_option("--n2", *n2, "Group-2 trials")->required();
  cmd->add_option("--b0", *b0, "Null Beta hyperparameter")->capture_default_str();
  cmd->add_option("--h", *h, "Moment order")->check(CLI::NonNegativeNumber)->capture_default_str();
  cmd->add_option("--t-plus", *t_plus, "Total training size (-1 = TWOE optimum)")
      ->capture_default_str();
  add_common(cmd, opts.get());
  cmd->callback([&out, opts, y1, n1, y2, n2, b0, h, t_plus] {
    if (*n1 <= 0 || *n2 <= 0 || *y1 < 0 || *y2 < 0 || *y1 > *n1 || *y2 > *n2)
      throw CLI::ValidationError("twoprop-bf", "need 0 <= --y_i <= --n_i, n_i > 0");
    if (!(*b0 > 0.0)) throw CLI::ValidationError("twoprop-bf", "--b0 must be positive");
    const int tp = *t_plus >= 0 ? *t_plus : twoe_two_props(*b0, *h).t_star;
    TwoPropHyper hyper = default_hyper(*n1, *n2, *h, tp);
    if (*b0 != 0.5) {
      const double share1 = static_cast<double>(*n1) / (*n1 + *n2);
      hyper = TwoPropHyper(*b0, *b0 * share1, *b0 * (1.0 - share1), *h, hyper.t1,
                           hyper.t2);
    }
    const TwoPropData data(*y1, *n1, *y2, *n2);
    const double log_bf = log_bf10_intrinsic_moment2(
        data, hyper, KConstPolicy::QuadratureFallback);
    const double prob1 = posterior_prob_m1_from_log(log_bf);
    ResultEnvelope env;
    env.command = "twoprop-bf";
    env.seed = RngStream{opts->seed, 0};
    env.config = {{"y1", *y1},       {"n1", *n1},       {"y2", *y2},
                  {"n2", *n2},       {"b0", hyper.b0},  {"b1", hyper.b1},
                  {"b2", hyper.b2},  {"h", *h},         {"t1", hyper.t1},
                  {"t2", hyper.t2}};
    env.results.push_back({{"log_bf10", log_bf},
                           {"bf10", std::exp(log_bf)},
                           {"prob_m1", round6(prob1)},
                           {"prob_m0", round6(1.0 - prob1)},
                           {"log_prob_m1", std::log(prob1)}});
    env.emit(out, opts->format);
  });
}

void setup_twoe(CLI::App& app, std::ostream& out) {
  auto cmd = add_subcommand(app, 
      "twoe", "Total weight of evidence curve and optimal training size");
  auto opts = std::make_shared<CommonOpts>();
  auto family = std::make_shared<std::string>();
  auto b = std::make_shared<double>(1.0);
  auto b0 = std::make_shared<double>(0.5);
  auto h = std::make_shared<int>(1);
  auto t_max = std::make_shared<int>(60);
  cmd->add_option("--family", *family, "Problem family")
      ->check(CLI::IsMember({"bernoulli", "twoprops"}))
      ->required();
  cmd->add_option("--b", *b, "Bernoulli Beta hyperparameter")->capture_default_str();
  cmd->add_option("--b0", *b0, "Two-proportion null hyperparameter")->capture_default_str();
  cmd->add_option("--h", *h, "Moment order")->check(CLI::NonNegativeNumber)->capture_default_str();
  cmd->add_option("--t-max", *t_max, "Largest training size scanned")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  add_common(cmd, opts.get());
  cmd->callback([&out, opts, family, b, b0, h, t_max] {
    const TwoeCurve curve = *family == "bernoulli"
                                ? twoe_bernoulli(*b, *h, *t_max)
                                : twoe_two_props(*b0, *h, *t_max);
    ResultEnvelope env;
    env.command = "twoe";
    env.seed = RngStream{opts->seed, 0};
    env.config = {{"family", *family},
                  {"h", *h},
                  {"t_max", *t_max},
                  {"t_star", curve.t_star},
                  {"argmax_set", curve.argmax_set}};
    if (*family == "bernoulli")
      env.config["b"] = *b;
    else
      env.config["b0"] = *b0;
    for (size_t i = 0; i < curve.grid.size(); ++i)
      env.results.push_back({{"t", curve.grid[i]}, {"twoe", curve.twoe[i]}});
    env.emit(out, opts->format);
  });
}

void setup_evidence_curve(CLI::App& app, std::ostream& out) {
  auto cmd = add_subcommand(app, 
      "evidence-curve",
      "Posterior probability of M1 over observed frequencies, exact enumeration");
  auto opts = std::make_shared<CommonOpts>();
  auto n = std::make_shared<long long>(12);
  auto theta0 = std::make_shared<double>(0.25);
  auto specs = std::make_shared<std::vector<std::string>>();
  cmd->add_option("--n", *n, "Sample size")->check(CLI::PositiveNumber)->capture_default_str();
  cmd->add_option("--theta0", *theta0, "Null value")->required();
  cmd->add_option("--spec", *specs,
                  "Prior spec 'b,h,t' (repeatable; default '1,0,0' and '1,1,8')");
  add_common(cmd, opts.get());
  cmd->callback([&out, opts, n, theta0, specs] {
    if (!(*theta0 > 0.0 && *theta0 < 1.0))
      throw CLI::ValidationError("evidence-curve", "--theta0 must lie strictly in (0,1)");
    std::vector<std::string> spec_texts = *specs;
    if (spec_texts.empty()) spec_texts = {"1,0,0", "1,1,8"};
    std::vector<MomentPriorSpec> parsed;
    for (const auto& text : spec_texts) {
      std::stringstream ss(text);
      std::string bs, hs, ts;
      if (!std::getline(ss, bs, ',') || !std::getline(ss, hs, ',') ||
          !std::getline(ss, ts, ','))
        throw CLI::ValidationError("evidence-curve", "--spec must be 'b,h,t'");
      parsed.emplace_back(std::stod(bs), std::stoi(hs), std::stoi(ts));
    }
    const BernoulliNull null(*theta0);
    const auto points = evidence_curve(*n, null, parsed);
    ResultEnvelope env;
    env.command = "evidence-curve";
    env.seed = RngStream{opts->seed, 0};
    env.config = {{"n", *n}, {"theta0", *theta0}, {"specs", spec_texts}};
    for (size_t s = 0; s < parsed.size(); ++s)
      for (const auto& p : points)
        env.results.push_back({{"spec", spec_texts[s]},
                               {"y", p.y},
                               {"y_bar", p.y_bar},
                               {"prob_m1", round6(p.prob_m1[s])},
                               {"log_prob_m1", std::log(p.prob_m1[s])}});
    env.emit(out, opts->format);
  });
}

void setup_learning_rate(CLI::App& app, std::ostream& out) {
  auto cmd = add_subcommand(app, 
      "learning-rate", "Simulated Bayes-factor learning-rate study with slope fit");
  auto opts = std::make_shared<CommonOpts>();
  auto family = std::make_shared<std::string>("bernoulli");
  auto theta = std::make_shared<double>(0.25);
  auto theta2 = std::make_shared<double>(0.25);
  auto theta0 = std::make_shared<double>(0.25);
  auto b = std::make_shared<double>(1.0);
  auto h = std::make_shared<int>(1);
  auto t = std::make_shared<int>(-1);
  auto n_grid_text = std::make_shared<std::string>("");
  auto reps = std::make_shared<int>(1000);
  cmd->add_option("--family", *family, "Problem family")
      ->check(CLI::IsMember({"bernoulli", "twoprops"}))
      ->capture_default_str();
  cmd->add_option("--theta", *theta, "True theta (group 1 for twoprops)")->capture_default_str();
  cmd->add_option("--theta2", *theta2, "True theta of group 2 (twoprops)")->capture_default_str();
  cmd->add_option("--theta0", *theta0, "Null value (bernoulli)")->capture_default_str();
  cmd->add_option("--b", *b, "b (bernoulli) or b0 (twoprops)")->capture_default_str();
  cmd->add_option("--h", *h, "Moment order")->check(CLI::NonNegativeNumber)->capture_default_str();
  cmd->add_option("--t", *t, "Training size t or t_plus (-1 = TWOE optimum)")
      ->capture_default_str();
  cmd->add_option("--n-grid", *n_grid_text,
                  "Comma-separated sample sizes (defaults per regime)");
  cmd->add_option("--reps", *reps, "Replications per grid point")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  add_common(cmd, opts.get());
  cmd->callback([&out, opts, family, theta, theta2, theta0, b, h, t,
                 n_grid_text, reps] {
    const bool bernoulli = *family == "bernoulli";
    RateTruth truth;
    truth.theta1 = *theta;
    truth.theta2 = *theta2;
    truth.theta0 = *theta0;
    const bool null_regime =
        bernoulli ? truth.theta1 == truth.theta0 : truth.theta1 == truth.theta2;
    std::vector<long long> n_grid;
    if (n_grid_text->empty())
      n_grid = null_regime
                   ? std::vector<long long>{200, 500, 1000, 2000, 5000, 10000}
                   : std::vector<long long>{200, 500, 1000, 2000, 4000};
    else
      n_grid = parse_ll_list(*n_grid_text);
    const int t_resolved =
        *t >= 0 ? *t
                : (bernoulli ? twoe_bernoulli(*b, *h).t_star
                             : twoe_two_props(*b, *h).t_star);
    const auto study = learning_rate_sim(
        bernoulli ? RateFamily::Bernoulli : RateFamily::TwoProps, truth, *b, *h,
        t_resolved, n_grid, *reps, RngStream{opts->seed, 0});
    ResultEnvelope env;
    env.command = "learning-rate";
    env.seed = RngStream{opts->seed, 0};
    env.config = {
        {"family", *family},
        {"theta", *theta},
        {"theta2", *theta2},
        {"theta0", *theta0},
        {"b", *b},
        {"h", *h},
        {"t", t_resolved},
        {"reps", *reps},
        {"regime", study.fit.regime == RateRegime::PolynomialInLogN
                       ? "polynomial-in-log-n"
                       : "linear-in-n"},
        {"slope", study.fit.slope},
        {"intercept", study.fit.intercept},
        {"expected_slope", study.fit.expected_slope},
        {"slope_boot_lo", study.fit.boot_lo},
        {"slope_boot_hi", study.fit.boot_hi}};
    for (const auto& p : study.points)
      env.results.push_back({{"n", p.n},
                             {"median_log_bf", p.median_log_bf},
                             {"mean_log_bf", p.mean_log_bf},
                             {"replications", p.replications}});
    env.emit(out, opts->format);
  });
}

void setup_sensitivity(CLI::App& app, std::ostream& out, std::ostream& err) {
  auto cmd = add_subcommand(app, 
      "sensitivity",
      "Posterior null probability across training sizes t*(h)..t*(h+1)");
  auto opts = std::make_shared<CommonOpts>();
  auto path = std::make_shared<std::string>();
  auto h_text = std::make_shared<std::string>("0,1");
  cmd->add_option("--tables", *path, "CSV file 'id,y1,n1,y2,n2'")->required();
  cmd->add_option("--h", *h_text, "Comma-separated moment orders")->capture_default_str();
  add_common(cmd, opts.get());
  cmd->callback([&out, &err, opts, path, h_text] {
    const auto records = load_trial_tables(*path, &err);
    std::vector<TwoPropData> tables;
    std::vector<std::string> ids;
    for (const auto& r : records) {
      tables.push_back(r.data());
      ids.push_back(r.id);
    }
    const auto h_set = parse_int_list(*h_text);
    const auto rows = sensitivity_analysis(tables, ids, h_set);
    ResultEnvelope env;
    env.command = "sensitivity";
    env.seed = RngStream{opts->seed, 0};
    env.config = {{"tables", *path}, {"h", h_set}};
    for (const auto& r : rows)
      env.results.push_back({{"id", r.id},
                             {"frac_gap", r.frac_gap},
                             {"h", r.h},
                             {"t_lo", r.t_lo},
                             {"t_hi", r.t_hi},
                             {"p0_at_lo", round6(r.p0_at_lo)},
                             {"p0_at_hi", round6(r.p0_at_hi)},
                             {"p0_min", round6(r.p0_min)},
                             {"p0_max", round6(r.p0_max)}});
    env.emit(out, opts->format);
  });
}

void setup_crossval(CLI::App& app, std::ostream& out, std::ostream& err) {
  auto cmd = add_subcommand(app, 
      "crossval", "Leave-one-out logarithmic-score study across h = 0, 1, 2");
  auto opts = std::make_shared<CommonOpts>();
  auto path = std::make_shared<std::string>();
  cmd->add_option("--tables", *path, "CSV file 'id,y1,n1,y2,n2'")->required();
  add_common(cmd, opts.get());
  cmd->callback([&out, &err, opts, path] {
    const auto records = load_trial_tables(*path, &err);
    ResultEnvelope env;
    env.command = "crossval";
    env.seed = RngStream{opts->seed, 0};
    env.config = {{"tables", *path}};
    for (const auto& r : records) {
      const auto score = cross_validation(r.data());
      env.results.push_back({{"id", r.id},
                             {"s0", score.s0},
                             {"s1", score.s1},
                             {"s2", score.s2},
                             {"delta1", score.delta1},
                             {"delta2", score.delta2},
                             {"delta1_pct", 100.0 * score.delta1},
                             {"delta2_pct", 100.0 * score.delta2}});
    }
    env.emit(out, opts->format);
  });
}

LogitSelectionInput resolve_logit_input(const std::string& path, bool builtin,
                                        std::vector<std::string>* names) {
  if (builtin) {
    const auto data = builtin_survival_data();
    *names = data.model_names;
    return {data.problem, data.models};
  }
  if (path.empty())
    throw CLI::ValidationError("logit", "need --data or --builtin-survival");
  auto input = load_logit_problem(path);
  names->clear();
  return input;
}

void setup_logit_select(CLI::App& app, std::ostream& out) {
  auto cmd = add_subcommand(app, 
      "logit-select",
      "Posterior model probabilities for logistic regression variable selection");
  auto opts = std::make_shared<CommonOpts>();
  auto path = std::make_shared<std::string>();
  auto builtin = std::make_shared<bool>(false);
  auto h = std::make_shared<int>(1);
  auto t_plus = std::make_shared<int>(8);
  auto chain = std::make_shared<long long>(40000);
  auto thin = std::make_shared<int>(20);
  auto burn = std::make_shared<long long>(5000);
  cmd->add_option("--data", *path, "Logit problem JSON");
  cmd->add_flag("--builtin-survival", *builtin, "Use the bundled survival data");
  cmd->add_option("--h", *h, "Moment order")->check(CLI::NonNegativeNumber)->capture_default_str();
  cmd->add_option("--t-plus", *t_plus, "Total training size")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  cmd->add_option("--chain-length", *chain, "Retained draws after thinning")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--thin", *thin, "Thinning factor")->check(CLI::PositiveNumber)->capture_default_str();
  cmd->add_option("--burn-in", *burn, "Adaptation iterations")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  add_common(cmd, opts.get());
  cmd->callback([&out, opts, path, builtin, h, t_plus, chain, thin, burn] {
    std::vector<std::string> names;
    const auto input = resolve_logit_input(*path, *builtin, &names);
    const auto config = make_mcmc_config(*chain, *thin, *burn, opts->seed);
    const auto evidence =
        posterior_model_probs(input.problem, input.models, *h, *t_plus, config);
    ResultEnvelope env;
    env.command = "logit-select";
    env.seed = config.seed;
    env.config = {{"h", *h},
                  {"t_plus", *t_plus},
                  {"t", nearest_allocation(*t_plus, input.problem.n)},
                  {"chain_length", *chain},
                  {"thin", *thin},
                  {"burn_in", *burn},
                  {"data", *builtin ? std::string("builtin-survival") : *path}};
    for (const auto& ev : evidence) {
      env.results.push_back(
          {{"model", model_label(ev.model, names.empty() ? nullptr : &names,
                                 &input.models)},
           {"log_marginal", ev.log_marginal},
           {"post_prob", round6(ev.post_prob)},
           {"post_prob_se", ev.post_prob_se}});
      env.mc_se.push_back(ev.mc_se);
    }
    env.emit(out, opts->format);
  });
}

void setup_logit_twoe(CLI::App& app, std::ostream& out) {
  auto cmd = add_subcommand(app, 
      "logit-twoe",
      "Total weight of evidence (full vs intercept-only) on minimal data");
  auto opts = std::make_shared<CommonOpts>();
  auto path = std::make_shared<std::string>();
  auto builtin = std::make_shared<bool>(false);
  auto h = std::make_shared<int>(1);
  auto grid_text = std::make_shared<std::string>("0,4,8,12");
  auto chain = std::make_shared<long long>(4000);
  auto thin = std::make_shared<int>(4);
  auto burn = std::make_shared<long long>(3000);
  cmd->add_option("--data", *path, "Logit problem JSON");
  cmd->add_flag("--builtin-survival", *builtin, "Use the bundled survival data");
  cmd->add_option("--h", *h, "Moment order")->check(CLI::NonNegativeNumber)->capture_default_str();
  cmd->add_option("--t-plus-grid", *grid_text, "Comma-separated t_plus values")
      ->capture_default_str();
  cmd->add_option("--chain-length", *chain, "Retained draws after thinning")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--thin", *thin, "Thinning factor")->check(CLI::PositiveNumber)->capture_default_str();
  cmd->add_option("--burn-in", *burn, "Adaptation iterations")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  add_common(cmd, opts.get());
  cmd->callback([&out, opts, path, builtin, h, grid_text, chain, thin, burn] {
    std::vector<std::string> names;
    const auto input = resolve_logit_input(*path, *builtin, &names);
    const auto config = make_mcmc_config(*chain, *thin, *burn, opts->seed);
    const auto grid = parse_int_list(*grid_text);
    const auto curve = twoe_logit(input.problem, *h, grid, config);
    ResultEnvelope env;
    env.command = "logit-twoe";
    env.seed = config.seed;
    env.config = {{"h", *h},
                  {"t_plus_grid", grid},
                  {"chain_length", *chain},
                  {"thin", *thin},
                  {"burn_in", *burn},
                  {"t_star", curve.t_star},
                  {"monte_carlo_noisy", true},
                  {"data", *builtin ? std::string("builtin-survival") : *path}};
    for (size_t i = 0; i < curve.grid.size(); ++i)
      env.results.push_back(
          {{"t_plus", curve.grid[i]}, {"twoe", curve.twoe[i]}});
    env.emit(out, opts->format);
  });
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Objective Bayesian comparison of nested discrete-data models "
               "with intrinsic moment priors"};
  app.set_help_flag("--help", "Print help and exit");
  app.require_subcommand(1);
  setup_bern_bf(app, out);
  setup_bern_prior(app, out);
  setup_twoprop_bf(app, out);
  setup_twoe(app, out);
  setup_evidence_curve(app, out);
  setup_learning_rate(app, out);
  setup_sensitivity(app, out, err);
  setup_crossval(app, out, err);
  setup_logit_select(app, out);
  setup_logit_twoe(app, out);

  std::vector<std::string> argv_store;
  argv_store.push_back("imprior");
  for (const auto& a : args) argv_store.push_back(a);
  std::vector<char*> argv;
  for (auto& s : argv_store) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    err << app.help();
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace imprior
