#pragma once

// Run configuration and JSON encoding of every report. Reports are built
// from ordered JSON objects only, so equal inputs give equal bytes.

#include <carrier/demos.hpp>
#include <carrier/io.hpp>

#include <map>
#include <string>

namespace carrier::report {

using nlohmann::json;

struct RunConfig {
  std::uint64_t seed = 1;
  std::map<std::string, double> tolerances;
  std::map<std::string, std::size_t> budgets;
  std::string input;
  std::string out;
  /// Named built-in instance for commands that have several.
  std::string instance;
  bool minimal_axioms = false;

  double tolerance(const std::string& name, double fallback) const;
  std::size_t budget(const std::string& name, std::size_t fallback) const;
  /// Throws PreconditionFailed on a non-positive or non-finite tolerance.
  void validate() const;
};

/// Parses "name=value"; throws SchemaError.
std::pair<std::string, double> parse_tolerance(const std::string& arg);
std::pair<std::string, std::size_t> parse_budget(const std::string& arg);

/// 64-bit FNV-1a, as 16 lower-case hex digits.
std::string fnv1a(const std::string& bytes);

/// Seed, tolerances, budgets, the axiom mode and the FNV-1a digest of the
/// input file's bytes. The output path is left out.
json config_to_json(const RunConfig& c, const std::string& input_digest = "");

/// {schema_version, command, config, config_hash, seeds, passed, result}.
json envelope(const std::string& command, const json& config, const std::vector<std::uint64_t>& seeds,
              bool passed, json result);

/// Non-finite doubles become null.
json number(double x);

json to_json(const InequalityCheck& c);
json to_json(const Lemma4Report& r);
json to_json(const PsiReport& r);
json to_json(const PhiReport& r);
json to_json(const GsReport& r);
json to_json(const RhoReport& r);
json to_json(const PshReport& r);
json to_json(const Lemma2Report& r);
json to_json(const SplittingReport& r);
json to_json(const DbarStudy& s);
json to_json(const HormanderReport& r);
json to_json(const ThetaBound& t);

json to_json(const Cone& k);
/// {"dim": k, "pieces": [[generator, ...], ...]}; throws SchemaError.
Cone cone_from_json(const json& j);

json to_json(const AxiomWitness& w);
json to_json(const PrelocReport& r);
json to_json(const RegularityReport& r);

json complex_to_json(Complex z);
json real_vector_to_json(const RealVector& x);

}  // namespace carrier::report
