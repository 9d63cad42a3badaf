#include <carrier/errors.hpp>
#include <carrier/report.hpp>

#include <charconv>
#include <cmath>
#include <cstdio>

namespace carrier::report {

namespace {

std::pair<std::string, std::string> split_assignment(const std::string& arg) {
  const auto eq = arg.find('=');
  if (eq == std::string::npos || eq == 0 || eq + 1 == arg.size())
    throw SchemaError("expected name=value, got '" + arg + "'");
  return {arg.substr(0, eq), arg.substr(eq + 1)};
}

json c_vector_to_json(const CVector& z) {
  json out = json::array();
  for (const auto& w : z) out.push_back(complex_to_json(w));
  return out;
}

json doubles(const std::vector<double>& xs) {
  json out = json::array();
  for (double x : xs) out.push_back(number(x));
  return out;
}

}  // namespace

double RunConfig::tolerance(const std::string& name, double fallback) const {
  const auto it = tolerances.find(name);
  return it == tolerances.end() ? fallback : it->second;
}

std::size_t RunConfig::budget(const std::string& name, std::size_t fallback) const {
  const auto it = budgets.find(name);
  return it == budgets.end() ? fallback : it->second;
}

void RunConfig::validate() const {
  for (const auto& [name, v] : tolerances)
    if (!(v > 0) || !std::isfinite(v)) throw PreconditionFailed("tolerance '" + name + "' must be positive");
}

std::pair<std::string, double> parse_tolerance(const std::string& arg) {
  const auto [name, text] = split_assignment(arg);
  double v = 0;
  const auto* end = text.data() + text.size();
  const auto [p, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || p != end) throw SchemaError("tolerance '" + name + "' is not a number");
  return {name, v};
}

std::pair<std::string, std::size_t> parse_budget(const std::string& arg) {
  const auto [name, text] = split_assignment(arg);
  std::size_t v = 0;
  const auto* end = text.data() + text.size();
  const auto [p, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || p != end) throw SchemaError("budget '" + name + "' is not a non-negative integer");
  return {name, v};
}

std::string fnv1a(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

json config_to_json(const RunConfig& c, const std::string& input_digest) {
  json tol = json::object();
  for (const auto& [k, v] : c.tolerances) tol[k] = v;
  json bud = json::object();
  for (const auto& [k, v] : c.budgets) bud[k] = v;
  json out = {{"seed", c.seed}, {"tolerances", tol}, {"budgets", bud}, {"minimal_axioms", c.minimal_axioms}};
  out["instance"] = c.instance;
  out["input_fnv1a"] = input_digest.empty() ? json(nullptr) : json(input_digest);
  return out;
}

json envelope(const std::string& command, const json& config, const std::vector<std::uint64_t>& seeds,
              bool passed, json result) {
  return {{"schema_version", io::kSchemaVersion},
          {"command", command},
          {"config", config},
          {"config_hash", fnv1a(config.dump())},
          {"seeds", seeds},
          {"passed", passed},
          {"result", std::move(result)}};
}

json number(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

json complex_to_json(Complex z) { return json::array({number(z.real()), number(z.imag())}); }

json real_vector_to_json(const RealVector& x) { return doubles(x); }

json to_json(const InequalityCheck& c) {
  return {{"name", c.name},
          {"samples", c.samples},
          {"failures", c.failures},
          {"worst_margin", number(c.worst_margin)},
          {"witness", c.witness ? doubles(*c.witness) : json(nullptr)},
          {"passed", c.passed()}};
}

json to_json(const Lemma4Report& r) {
  return {{"lower", to_json(r.lower)},
          {"upper", to_json(r.upper)},
          {"auxiliary", to_json(r.auxiliary)},
          {"mu_lower", to_json(r.mu_lower)},
          {"mu_upper", to_json(r.mu_upper)},
          {"grid", r.grid},
          {"decreasing", r.decreasing},
          {"decrease_witness", r.decrease_witness ? number(*r.decrease_witness) : json(nullptr)},
          {"passed", r.passed()}};
}

json to_json(const PsiReport& r) {
  return {{"upper", to_json(r.upper)}, {"lower", to_json(r.lower)}, {"strip", to_json(r.strip)}, {"passed", r.passed()}};
}

json to_json(const PhiReport& r) {
  return {{"lower", to_json(r.lower)},
          {"upper", to_json(r.upper)},
          {"outside", to_json(r.outside)},
          {"on_cone", to_json(r.on_cone)},
          {"passed", r.passed()}};
}

json to_json(const GsReport& r) {
  return {{"upper", to_json(r.upper)},
          {"lower", to_json(r.lower)},
          {"real_axis", to_json(r.real_axis)},
          {"passed", r.passed()}};
}

json to_json(const RhoReport& r) {
  return {{"to_u", to_json(r.to_u)},
          {"to_k1", to_json(r.to_k1)},
          {"near_k2", to_json(r.near_k2)},
          {"in_v1", to_json(r.in_v1)},
          {"l_vs_u", to_json(r.l_vs_u)},
          {"passed", r.passed()}};
}

json to_json(const PshReport& r) {
  json v = json::array();
  for (const auto& x : r.violations)
    v.push_back({{"center", c_vector_to_json(x.center)},
                 {"direction", c_vector_to_json(x.direction)},
                 {"radius", number(x.radius)},
                 {"value", number(x.value)},
                 {"mean", number(x.mean)}});
  return {{"checks", r.checks},
          {"failures", r.failures},
          {"max_nodes_used", r.max_nodes_used},
          {"violations", v},
          {"passed", r.passed()}};
}

json to_json(const Lemma2Report& r) {
  json rows = json::array();
  for (const auto& row : r.rows)
    rows.push_back({{"n", row.n},
                    {"lhs", number(row.lhs)},
                    {"rhs", number(row.rhs)},
                    {"pointwise_gap", number(row.pointwise_gap)},
                    {"passed", row.passed}});
  return {{"rows", rows},
          {"f_norm", number(r.f_norm)},
          {"g_norm_w", number(r.g_norm_w)},
          {"g_norm_w_prime", number(r.g_norm_w_prime)},
          {"eta", number(r.eta)},
          {"gap_nonincreasing", r.gap_nonincreasing},
          {"passed", r.passed()}};
}

json to_json(const SplittingReport& r) {
  json out = {{"partition", to_json(r.partition)},
              {"support", to_json(r.support)},
              {"near_w", to_json(r.near_w)},
              {"off_v", to_json(r.off_v)},
              {"theta", number(r.theta)},
              {"b_tilde", number(r.b_tilde)},
              {"r", number(r.r)},
              {"dbar", nullptr},
              {"passed", r.passed()}};
  if (r.dbar)
    out["dbar"] = {{"steps", doubles(r.dbar->steps)},
                   {"errors", doubles(r.dbar->errors)},
                   {"orders", doubles(r.dbar->orders)},
                   {"richardson_error", number(r.dbar->richardson_error)}};
  return out;
}

json to_json(const DbarStudy& s) {
  return {{"delta", number(s.delta)},
          {"levels", s.levels},
          {"errors", doubles(s.errors)},
          {"orders", doubles(s.orders)},
          {"min_order", number(s.min_order())},
          {"residual", number(s.residual)},
          {"fd_step", number(s.fd_step)},
          {"points", s.points}};
}

json to_json(const HormanderReport& r) {
  return {{"weight", r.weight},
          {"lhs", number(r.lhs)},
          {"rhs", number(r.rhs)},
          {"boundary_density", number(r.boundary_density)},
          {"residual", number(r.residual)},
          {"corrected", r.corrected},
          {"lhs_corrected", r.corrected ? number(r.lhs_corrected) : json(nullptr)},
          {"consistent", r.consistent}};
}

json to_json(const ThetaBound& t) {
  return {{"theta", number(t.theta)}, {"spacing", number(t.spacing)}, {"grid_points", t.grid_points}};
}

json to_json(const Cone& k) {
  json pieces = json::array();
  for (const auto& p : k.pieces()) {
    json gens = json::array();
    for (const auto& g : p) gens.push_back(io::vector_to_json(g));
    pieces.push_back(gens);
  }
  return {{"dim", k.dim()}, {"pieces", pieces}};
}

Cone cone_from_json(const json& j) {
  if (!j.is_object() || !j.contains("dim") || !j.contains("pieces"))
    throw SchemaError("cone needs \"dim\" and \"pieces\"");
  if (!j.at("dim").is_number_unsigned()) throw SchemaError("cone dim must be a positive integer");
  const auto k = j.at("dim").get<std::size_t>();
  if (k == 0 || k > 8) throw SchemaError("cone dim must be between 1 and 8");
  if (!j.at("pieces").is_array()) throw SchemaError("cone pieces must be an array of generator lists");
  std::vector<Cone::Piece> pieces;
  for (const auto& p : j.at("pieces")) {
    if (!p.is_array()) throw SchemaError("a cone piece must be an array of generators");
    Cone::Piece piece;
    for (const auto& g : p) {
      auto v = io::vector_from_json(g);
      if (v.size() != k) throw SchemaError("generator length differs from the cone dim");
      piece.push_back(std::move(v));
    }
    pieces.push_back(std::move(piece));
  }
  return Cone(k, std::move(pieces));
}

json to_json(const AxiomWitness& w) {
  json vs = json::array();
  for (const auto& v : w.vectors) vs.push_back(io::vector_to_json(v));
  return {{"indices", w.indices}, {"vectors", vs}};
}

json to_json(const PrelocReport& r) {
  auto verdict = [](const AxiomVerdict& v) {
    return json{{"holds", v.holds},
                {"cases_checked", v.cases_checked},
                {"witness", v.witness ? to_json(*v.witness) : json(nullptr)}};
  };
  return {{"axiom_I", verdict(r.axiom_i)},
          {"axiom_II", verdict(r.axiom_ii)},
          {"axiom_III", verdict(r.axiom_iii)},
          {"prelocalizable", r.prelocalizable()}};
}

json to_json(const RegularityReport& r) {
  return {{"injective", r.injective},
          {"lifting", r.lifting},
          {"cases_checked", r.cases_checked},
          {"witness", r.witness ? to_json(*r.witness) : json(nullptr)},
          {"regular", r.regular()}};
}

}  // namespace carrier::report
