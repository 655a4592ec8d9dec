#pragma once

#include <iosfwd>
#include <string>

#include "loopdh/report.hpp"

namespace loopdh {

// Engines behind the CLI subcommands. Each runs the configured checks over
// the configured grids and returns the exit status: 0 all pass, 1 any check
// failed. Config errors throw config_error (exit status 2 at the CLI level).
// Grid points sitting on documented parameterisation singularities are
// skipped with a warning record, never silently dropped.

// Residual / rank / reduction sweeps.
int run_verify(const SweepConfig& cfg, VerificationReport& report);

// Nullspace derivations; prints solved weight tables to `tables` and records
// projective deviations against the closed forms.
int run_derive(const SweepConfig& cfg, VerificationReport& report, std::ostream& tables);

// Generalised-model limits: exact k -> 0 reduction and the rescaled
// k = 1e6 limit against the n1 = n2 boundary solution.
int run_limits(const SweepConfig& cfg, VerificationReport& report);

// Dispatch on the subcommand name; fills in timestamp/engine and finalizes.
int run_command(const std::string& command, const SweepConfig& cfg, VerificationReport& report,
                std::ostream& tables);

}  // namespace loopdh
