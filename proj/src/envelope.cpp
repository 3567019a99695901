#include "imprior/envelope.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

namespace imprior {

double round6(double p) { return std::round(p * 1e6) / 1e6; }

void ResultEnvelope::emit_json(std::ostream& out) const {
  nlohmann::ordered_json j;
  j["command"] = command;
  j["config"] = config;
  j["seed"] = {{"seed", seed.seed}, {"stream_id", seed.stream_id}};
  j["results"] = results;
  if (!mc_se.empty()) j["mc_se"] = mc_se;
  out << j.dump(2) << "\n";
}

namespace {

std::string csv_quote(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string quoted = "\"";
  for (char c : field) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

}  // namespace

void ResultEnvelope::emit_csv(std::ostream& out) const {
  if (results.empty()) {
    out << "\n";
    return;
  }
  std::vector<std::string> keys;
  for (auto it = results.front().begin(); it != results.front().end(); ++it)
    keys.push_back(it.key());
  for (size_t i = 0; i < keys.size(); ++i)
    out << (i ? "," : "") << csv_quote(keys[i]);
  if (!mc_se.empty()) out << ",mc_se";
  out << "\n";
  for (size_t r = 0; r < results.size(); ++r) {
    const auto& row = results[r];
    for (size_t i = 0; i < keys.size(); ++i) {
      if (i) out << ",";
      const auto& v = row.at(keys[i]);
      if (v.is_string())
        out << csv_quote(v.get<std::string>());
      else
        out << v.dump();
    }
    if (!mc_se.empty()) out << "," << nlohmann::ordered_json(mc_se[r]).dump();
    out << "\n";
  }
}

void ResultEnvelope::emit(std::ostream& out, const std::string& format) const {
  if (format == "json")
    emit_json(out);
  else if (format == "csv")
    emit_csv(out);
  else
    throw std::invalid_argument("unknown format '" + format + "'");
}

}  // namespace imprior
