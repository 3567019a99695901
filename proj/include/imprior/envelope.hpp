#ifndef IMPRIOR_ENVELOPE_HPP
#define IMPRIOR_ENVELOPE_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "imprior/rng.hpp"

namespace imprior {

/// Probabilities are emitted with six decimal digits (alongside full-precision
/// log values); rounding here keeps JSON and CSV payloads identical.
double round6(double p);

/// Machine-readable result envelope shared by all subcommands. `results` is a
/// flat table (array of objects with identical keys); stochastic commands fill
/// `mc_se` with one entry per result row.
struct ResultEnvelope {
  std::string command;
  nlohmann::ordered_json config = nlohmann::ordered_json::object();
  RngStream seed{0, 0};
  std::vector<nlohmann::ordered_json> results;
  std::vector<double> mc_se;

  void emit_json(std::ostream& out) const;
  void emit_csv(std::ostream& out) const;
  void emit(std::ostream& out, const std::string& format) const;
};

}  // namespace imprior

#endif
