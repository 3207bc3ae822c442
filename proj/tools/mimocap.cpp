#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>

#include "mimocap/commands.hpp"
#include "mimocap/kernels.hpp"

namespace {

struct Common {
  std::string config_path;
  std::vector<std::string> overrides;
  std::string out_path;
  std::optional<unsigned> workers;
  std::string isa;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("config", c.config_path, "Scenario file (INI sections, key = value)");
  cmd->add_option("--set", c.overrides, "Override as section.key=value (repeatable)");
  cmd->add_option("--out", c.out_path, "Write CSV here instead of stdout");
  cmd->add_option("--workers", c.workers, "Monte Carlo worker threads")->check(CLI::PositiveNumber);
  cmd->add_option("--isa", c.isa, "Kernel ISA: scalar or avx2 (default: best available)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Massive-MIMO uplink capacity under pilot contamination"};
  app.require_subcommand(1);
  Common common;
  using Command = int (*)(const mimocap::ScenarioConfig&, std::ostream&);
  const std::vector<std::tuple<std::string, std::string, Command>> commands = {
      {"capacity-table", "Analytic k_u / k_max / reuse sweep over the QoS grid",
       mimocap::cmd_capacity_table},
      {"sir-cdf", "Large-M SIR CDFs against the Gaussian approximation", mimocap::cmd_sir_cdf},
      {"finite-m-table", "Finite-M MRC admissible users per QoS preset",
       mimocap::cmd_finite_m_table},
      {"validate", "Run the oracle suite; exit 1 on any failure", mimocap::cmd_validate},
  };
  std::vector<CLI::App*> subs;
  for (const auto& [cmd_name, help, fn] : commands) {
    subs.push_back(app.add_subcommand(cmd_name, help));
    add_common(subs.back(), common);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? mimocap::kExitOk : mimocap::kExitConfigError;
  }

  try {
    if (!common.isa.empty()) mimocap::kernels::force(mimocap::kernels::parse_isa(common.isa));
    auto overrides = common.overrides;
    if (common.workers) overrides.push_back("montecarlo.workers=" + std::to_string(*common.workers));
    const auto config = mimocap::load_config(
        common.config_path.empty() ? std::nullopt : std::optional<std::string>(common.config_path),
        overrides);
    for (std::size_t i = 0; i < subs.size(); ++i) {
      if (!subs[i]->parsed()) continue;
      const Command fn = std::get<2>(commands[i]);
      if (common.out_path.empty()) return fn(config, std::cout);
      std::ofstream out(common.out_path, std::ios::binary);
      if (!out) {
        std::cerr << "error: cannot open " << common.out_path << " for writing\n";
        return mimocap::kExitConfigError;
      }
      const int code = fn(config, out);
      out.close();
      if (!out) {
        std::cerr << "error: writing " << common.out_path << " failed\n";
        return mimocap::kExitValidationFailure;
      }
      return code;
    }
  } catch (const mimocap::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return mimocap::kExitConfigError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return mimocap::kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return mimocap::kExitValidationFailure;
  }
  return mimocap::kExitConfigError;
}
