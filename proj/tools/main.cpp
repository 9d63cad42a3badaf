#include "commands.hpp"

#include <carrier/errors.hpp>

#include <CLI11.hpp>

#include <iostream>

using namespace carrier;

int main(int argc, char** argv) {
  CLI::App app{"Exact and numerical checks for inductive systems of carrier spaces and their weights"};
  app.require_subcommand(1);

  report::RunConfig cfg;
  std::vector<std::string> tolerances, budgets;
  for (const auto& name : cli::command_names()) {
    auto* sub = app.add_subcommand(name, cli::command_summary(name));
    sub->add_option("--seed", cfg.seed, "seed for every sampler (default 1)");
    sub->add_option("--tolerance", tolerances, "override a tolerance, name=value")->take_all();
    sub->add_option("--budget", budgets, "override a budget, name=n")->take_all();
    sub->add_option("--out", cfg.out, "report path (default stdout)");
    sub->add_option("--input", cfg.input, "input JSON file");
    sub->add_option("--instance", cfg.instance, "built-in instance (r2 or r3)");
    sub->add_flag("--minimal-axioms", cfg.minimal_axioms, "engine checks only the axioms it uses");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? cli::kPass : cli::kInputError;
  }
  const auto& command = app.get_subcommands().front()->get_name();

  try {
    for (const auto& t : tolerances) cfg.tolerances.insert(report::parse_tolerance(t));
    for (const auto& b : budgets) cfg.budgets.insert(report::parse_budget(b));
    const auto out = cli::run(command, cfg);
    if (cfg.out.empty())
      std::cout << out.report.dump(2) << '\n';
    else
      io::write_file(cfg.out, out.report);
    if (!out.passed) {
      std::cerr << command << ": FAIL: " << out.failure << '\n';
      return cli::kFalsified;
    }
    std::cerr << command << ": pass\n";
    return cli::kPass;
  } catch (const Error& e) {
    std::cerr << command << ": " << e.what() << "\n  input schemas: README.md, section \"Input files\"\n";
    return cli::exit_code_for(e);
  } catch (const nlohmann::json::exception& e) {
    std::cerr << command << ": SchemaError: " << e.what() << "\n  input schemas: README.md, section \"Input files\"\n";
    return cli::kInputError;
  }
}
