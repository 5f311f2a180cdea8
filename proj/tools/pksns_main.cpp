// pksns {simulate|semigroup|sweep|blowup|verify} --config FILE [--out DIR] [--threads N] [--dry-run]
#include <CLI11.hpp>

#include <iostream>

#include "pksns/scenarios.hpp"
#include "pksns/snapshot.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Keller-Segel / Navier-Stokes shear-flow simulator"};
  app.require_subcommand(1);

  std::string config, out = "out";
  int threads = 1;
  bool dry = false;
  const std::pair<const char*, pksns::ScenarioKind> kinds[] = {
      {"simulate", pksns::ScenarioKind::Simulate}, {"semigroup", pksns::ScenarioKind::Semigroup},
      {"sweep", pksns::ScenarioKind::Sweep},       {"blowup", pksns::ScenarioKind::Blowup},
      {"verify", pksns::ScenarioKind::Verify}};
  for (const auto& [name, kind] : kinds) {
    CLI::App* sub = app.add_subcommand(name, std::string("run a ") + name + " scenario");
    sub->add_option("--config", config, "scenario configuration (YAML)")->required();
    sub->add_option("--out", out, "output directory");
    sub->add_option("--threads", threads, "worker threads for independent cells")->check(CLI::PositiveNumber);
    sub->add_flag("--dry-run", dry, "print the resolved configuration and derived constants, then exit");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : pksns::kExitConfig;
  }

  const std::string sub = app.get_subcommands().front()->get_name();
  pksns::ScenarioConfig cfg;
  try {
    cfg = pksns::load_config(config);
  } catch (const pksns::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return pksns::kExitConfig;
  }
  if (sub != pksns::kind_name(cfg.kind)) {
    std::cerr << "config error: " << config << " declares kind '" << pksns::kind_name(cfg.kind)
              << "' but the '" << sub << "' subcommand was used\n";
    return pksns::kExitConfig;
  }
  if (dry) {
    std::cout << pksns::dry_run_report(cfg);
    return pksns::kExitOk;
  }
  try {
    const int rc = pksns::run_scenario(cfg, out, threads);
    std::cerr << sub << ": finished with exit code " << rc << ", artifacts in " << out << "\n";
    return rc;
  } catch (const pksns::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return pksns::kExitConfig;
  } catch (const pksns::SnapshotError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return pksns::kExitConfig;
  } catch (const std::domain_error& e) {
    std::cerr << "inadmissible input: " << e.what() << "\n";
    return pksns::kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "inadmissible input: " << e.what() << "\n";
    return pksns::kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return pksns::kExitNumerical;
  }
}
