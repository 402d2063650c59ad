#pragma once

#include <string>

#include "abqed/config.hpp"

namespace abqed {

// Exit codes shared by the runner and the CLI.
inline constexpr int kExitOk = 0;
inline constexpr int kExitAccuracy = 2;
inline constexpr int kExitConfig = 3;
inline constexpr int kExitUsage = 64;

struct RunOutput {
    int exit_code = kExitOk;
    std::string body;        // formatted result file content
    std::string diagnostic;  // nonempty on failure
};

bool known_subcommand(const std::string& name);

// Executes one subcommand deterministically: identical config + seed give a
// byte-identical body.  Never throws; failures are mapped to exit codes.
RunOutput run_subcommand(const std::string& subcommand, const RunConfig& cfg);

}  // namespace abqed
