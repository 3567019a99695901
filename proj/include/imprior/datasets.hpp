#ifndef IMPRIOR_DATASETS_HPP
#define IMPRIOR_DATASETS_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "imprior/logistic.hpp"
#include "imprior/two_proportions.hpp"

namespace imprior {

struct TrialTableRecord {
  std::string id;
  long long y1, n1, y2, n2;

  TwoPropData data() const { return {y1, n1, y2, n2}; }
};

/// Loads `id,y1,n1,y2,n2` CSV (header required, UTF-8). Parse errors carry
/// the line number; bound violations carry the record id; duplicate ids are
/// rejected. An empty data section yields an empty result and a warning on
/// `warnings` when provided.
std::vector<TrialTableRecord> load_trial_tables(std::istream& in,
                                                std::ostream* warnings = nullptr);
std::vector<TrialTableRecord> load_trial_tables(const std::string& path,
                                                std::ostream* warnings = nullptr);

struct SurvivalData {
  LogitProblem problem;
  std::vector<ModelId> models;
  std::vector<std::string> model_names;
  std::vector<std::string> pattern_names;
};

/// The bundled survival dataset: four covariate patterns (Severity x
/// Antitoxin), survival counts, and the five models compared in the source
/// analysis (intercept-only, each main effect, both, full with interaction).
SurvivalData builtin_survival_data();

/// Parses a logit problem from JSON with fields n, y, Z, models (1-based
/// column indices), and optional w_plus.
struct LogitSelectionInput {
  LogitProblem problem;
  std::vector<ModelId> models;
};
LogitSelectionInput load_logit_problem(const std::string& path);
LogitSelectionInput parse_logit_problem(const std::string& json_text);

}  // namespace imprior

#endif
