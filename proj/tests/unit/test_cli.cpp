#include <carrier/errors.hpp>
#include <carrier/report.hpp>
#include <commands.hpp>
#include <doctest.h>

using namespace carrier;
using nlohmann::json;

namespace {

report::RunConfig with_input(const std::string& file) {
  report::RunConfig c;
  c.input = std::string(CARRIER_DATA_DIR) + "/" + file;
  return c;
}

}  // namespace

TEST_CASE("FNV-1a reference values") {
  CHECK(report::fnv1a("") == "cbf29ce484222325");
  CHECK(report::fnv1a("a") == "af63dc4c8601ec8c");
  CHECK(report::fnv1a("foobar") == "85944171f73967e8");
}

TEST_CASE("flag parsing") {
  CHECK(report::parse_tolerance("slack=1e-9") == std::pair<std::string, double>{"slack", 1e-9});
  CHECK(report::parse_budget("samples=500") == std::pair<std::string, std::size_t>{"samples", 500});
  CHECK_THROWS_AS(report::parse_tolerance("slack"), SchemaError);
  CHECK_THROWS_AS(report::parse_tolerance("slack=x"), SchemaError);
  CHECK_THROWS_AS(report::parse_budget("samples=-3"), SchemaError);
  report::RunConfig c;
  c.tolerances["slack"] = 0;
  CHECK_THROWS_AS(c.validate(), PreconditionFailed);
}

TEST_CASE("non-finite numbers become null") {
  CHECK(report::number(std::numeric_limits<double>::infinity()).is_null());
  CHECK(report::number(std::nan("")).is_null());
  CHECK(report::number(0.5) == json(0.5));
  InequalityCheck c;
  CHECK(report::to_json(c)["worst_margin"].is_null());
}

TEST_CASE("cones round-trip") {
  const Cone k(2, {{{1, 0}, {1, 1}}, {{0, 1}}});
  CHECK(report::cone_from_json(report::to_json(k)).pieces() == k.pieces());
  CHECK_THROWS_AS(report::cone_from_json(json{{"dim", 2}, {"pieces", {{{"1"}}}}}), SchemaError);
}

TEST_CASE("theorem 6 fixture lifts to the recorded classes") {
  const auto cfg = with_input("theorem6_free_model.json");
  const auto out = cli::run("theorem6", cfg);
  CHECK(out.passed);
  const auto fixture = io::read_file(cfg.input);
  const auto& lifts = out.report["result"]["lifts"];
  REQUIRE(lifts.size() == fixture["lifts"].size());
  for (std::size_t n = 0; n < lifts.size(); ++n) CHECK(lifts[n]["xi"] == fixture["lifts"][n]["expected_xi"]);
}

TEST_CASE("tampered certificate names the failing identity") {
  const auto good = cli::run("replay-certificate", with_input("certificate.json"));
  CHECK(good.passed);
  const auto bad = cli::run("replay-certificate", with_input("certificate_tampered.json"));
  CHECK_FALSE(bad.passed);
  CHECK(!bad.failure.empty());
  CHECK(bad.report["result"]["failure"] == bad.failure);
}

TEST_CASE("input errors map to exit code 2") {
  CHECK_THROWS_AS(cli::run("verify-lattice", with_input("malformed.json")), SchemaError);
  CHECK_THROWS_AS(cli::run("no-such-command", {}), SchemaError);
  CHECK(cli::exit_code_for(SchemaError("x")) == cli::kInputError);
  CHECK(cli::exit_code_for(NotInLHS("x")) == cli::kInputError);
  CHECK(cli::exit_code_for(ResidualTooLarge("x")) == cli::kFalsified);
}

TEST_CASE("reports embed the config hash and seeds and are reproducible") {
  report::RunConfig c;
  c.seed = 9;
  c.budgets["samples"] = 500;
  const auto a = cli::run("verify-lemma5", c).report;
  const auto b = cli::run("verify-lemma5", c).report;
  CHECK(a.dump() == b.dump());
  CHECK(a["schema_version"] == io::kSchemaVersion);
  CHECK(a["seeds"] == json::array({9}));
  CHECK(a["config_hash"] == report::fnv1a(a["config"].dump()));
  c.seed = 10;
  const auto d = cli::run("verify-lemma5", c).report;
  CHECK(d["config_hash"] != a["config_hash"]);
  c.out = "/elsewhere.json";
  c.seed = 9;
  CHECK(cli::run("verify-lemma5", c).report.dump() == a.dump());
}
