#include "imprior/datasets.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace imprior {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

long long parse_count(const std::string& field, int line_no,
                      const std::string& name) {
  try {
    size_t pos = 0;
    const long long v = std::stoll(trim(field), &pos);
    if (pos != trim(field).size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    throw std::runtime_error("line " + std::to_string(line_no) +
                             ": cannot parse " + name + " from '" + field + "'");
  }
}

}  // namespace

std::vector<TrialTableRecord> load_trial_tables(std::istream& in,
                                                std::ostream* warnings) {
  std::string line;
  if (!std::getline(in, line))
    throw std::runtime_error("line 1: missing header 'id,y1,n1,y2,n2'");
  if (trim(line) != "id,y1,n1,y2,n2")
    throw std::runtime_error("line 1: expected header 'id,y1,n1,y2,n2', got '" +
                             trim(line) + "'");
  std::vector<TrialTableRecord> records;
  std::set<std::string> seen;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (fields.size() != 5)
      throw std::runtime_error("line " + std::to_string(line_no) +
                               ": expected 5 fields, got " +
                               std::to_string(fields.size()));
    TrialTableRecord rec;
    rec.id = trim(fields[0]);
    if (rec.id.empty())
      throw std::runtime_error("line " + std::to_string(line_no) + ": empty id");
    rec.y1 = parse_count(fields[1], line_no, "y1");
    rec.n1 = parse_count(fields[2], line_no, "n1");
    rec.y2 = parse_count(fields[3], line_no, "y2");
    rec.n2 = parse_count(fields[4], line_no, "n2");
    if (!seen.insert(rec.id).second)
      throw std::runtime_error("duplicate id '" + rec.id + "'");
    if (rec.y1 < 0 || rec.n1 < 0 || rec.y1 > rec.n1 || rec.y2 < 0 ||
        rec.n2 < 0 || rec.y2 > rec.n2)
      throw std::runtime_error("record '" + rec.id +
                               "': counts violate 0 <= y_i <= n_i");
    records.push_back(std::move(rec));
  }
  if (records.empty() && warnings)
    *warnings << "warning: no data records found\n";
  return records;
}

std::vector<TrialTableRecord> load_trial_tables(const std::string& path,
                                                std::ostream* warnings) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  return load_trial_tables(in, warnings);
}

SurvivalData builtin_survival_data() {
  SurvivalData data;
  // four covariate patterns: (severity, antitoxin) = (1,1), (1,0), (0,1), (0,0)
  data.problem.n = Eigen::VectorXd(4);
  data.problem.n << 21, 26, 20, 12;
  data.problem.y = Eigen::VectorXd(4);
  data.problem.y << 6, 4, 15, 5;
  data.problem.Z = Eigen::MatrixXd(4, 3);
  data.problem.Z << 1, 1, 1,  //
      1, 0, 0,                //
      0, 1, 0,                //
      0, 0, 0;
  data.problem.w_plus = 1.0;
  data.pattern_names = {"more-severe/antitoxin", "more-severe/none",
                        "less-severe/antitoxin", "less-severe/none"};
  data.models = {ModelId{{}}, ModelId{{1}}, ModelId{{2}}, ModelId{{1, 2}},
                 ModelId{{1, 2, 3}}};
  data.model_names = {"intercept-only", "severity", "antitoxin",
                      "severity+antitoxin", "full"};
  return data;
}

LogitSelectionInput parse_logit_problem(const std::string& json_text) {
  const nlohmann::json j = nlohmann::json::parse(json_text);
  LogitSelectionInput input;
  const auto& n = j.at("n");
  const auto& y = j.at("y");
  const auto& Z = j.at("Z");
  const int n_patterns = static_cast<int>(n.size());
  if (static_cast<int>(y.size()) != n_patterns ||
      static_cast<int>(Z.size()) != n_patterns)
    throw std::runtime_error("logit problem: n, y, Z must have equal length");
  const int k = n_patterns > 0 ? static_cast<int>(Z.at(0).size()) : 0;
  input.problem.n = Eigen::VectorXd(n_patterns);
  input.problem.y = Eigen::VectorXd(n_patterns);
  input.problem.Z = Eigen::MatrixXd(n_patterns, k);
  for (int i = 0; i < n_patterns; ++i) {
    input.problem.n[i] = n.at(i).get<double>();
    input.problem.y[i] = y.at(i).get<double>();
    if (static_cast<int>(Z.at(i).size()) != k)
      throw std::runtime_error("logit problem: ragged Z");
    for (int c = 0; c < k; ++c) input.problem.Z(i, c) = Z.at(i).at(c).get<double>();
  }
  input.problem.w_plus = j.value("w_plus", 1.0);
  input.problem.validate();
  for (const auto& m : j.at("models")) {
    ModelId model;
    for (const auto& col : m) {
      const int c = col.get<int>();
      if (c < 1 || c > k)
        throw std::runtime_error("logit problem: model column index out of range");
      model.included.push_back(c);
    }
    std::sort(model.included.begin(), model.included.end());
    input.models.push_back(std::move(model));
  }
  if (input.models.empty())
    throw std::runtime_error("logit problem: empty model list");
  return input;
}

LogitSelectionInput load_logit_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_logit_problem(buffer.str());
}

}  // namespace imprior
