#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "mimocap/config.hpp"

namespace mimocap {

/// Exit codes shared by every command.
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidationFailure = 1;
inline constexpr int kExitConfigError = 2;

/// '#'-prefixed provenance block: command, config hash, seed, units and the
/// canonical config.
void write_csv_header(std::ostream& out, const std::string& command, const ScenarioConfig& config);

/// Puts the stream into classic-locale, round-trip precision mode.
void prepare_stream(std::ostream& out);

int cmd_capacity_table(const ScenarioConfig& config, std::ostream& out);
int cmd_sir_cdf(const ScenarioConfig& config, std::ostream& out);
int cmd_finite_m_table(const ScenarioConfig& config, std::ostream& out);

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

/// Oracle suite: quadrature vs sampling, closed form vs root solve, moment
/// identities, Q^-1 round trip, feasibility round trip, pilot completeness.
std::vector<CheckResult> run_validation(const ScenarioConfig& config);

/// Writes one line per check; returns kExitOk or kExitValidationFailure.
int cmd_validate(const ScenarioConfig& config, std::ostream& out);

/// y_E from a numeric root of the Gaussian QoS equality, for checking the
/// closed form.
double effective_interference_by_root(double mu, double variance, const QosTarget& qos);

}  // namespace mimocap
