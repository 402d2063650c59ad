// abqed command-line front end.  Talks to the core exclusively through the
// C API in abqed.h; config assembly (file + --set overrides) is plain JSON
// text manipulation on this side of the boundary.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "abqed.h"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitAccuracy = 2;
constexpr int kExitConfig = 3;
constexpr int kExitUsage = 64;

int status_to_exit(abqed_status s) {
    switch (s) {
        case ABQED_OK: return kExitOk;
        case ABQED_ERR_ACCURACY: return kExitAccuracy;
        case ABQED_ERR_DOMAIN:
        case ABQED_ERR_CONFIG: return kExitConfig;
        default: return kExitUsage;
    }
}

// "quadrature.n_angular=256" -> nested assignment; values parse as JSON with
// a bare-string fallback so --set output.format=json needs no quoting.
void apply_override(json& cfg, const std::string& kv) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0)
        throw CLI::ValidationError("--set", "expected key=value, got '" + kv + "'");
    const std::string key = kv.substr(0, eq);
    const std::string raw = kv.substr(eq + 1);
    json value;
    try {
        value = json::parse(raw);
    } catch (const json::exception&) {
        value = raw;
    }
    json* node = &cfg;
    std::stringstream ss(key);
    std::string part;
    std::vector<std::string> parts;
    while (std::getline(ss, part, '.')) parts.push_back(part);
    for (std::size_t i = 0; i + 1 < parts.size(); ++i) node = &(*node)[parts[i]];
    (*node)[parts.back()] = value;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Numerical lab for the effective charge--fluxon interaction"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string("abqed ") + abqed_version());

    std::string config_path, out_path, format;
    std::uint64_t seed = 0;
    bool seed_given = false;
    std::vector<std::string> overrides;

    const std::vector<std::string> names{"eff-a",          "gauge-check", "coulomb",
                                         "phase",          "interferometer",
                                         "stokes-check",   "compare"};
    const std::vector<std::string> descs{
        "effective vector potential vs the analytic 1/r profile",
        "closed-loop phase invariance across gauge-coefficient families",
        "scalar-photon exchange kernel vs the Coulomb potential",
        "line-integral phase of a chosen field along a configured path",
        "two-contact interferometer local phase and fringes",
        "line-vs-surface certification of the current-loop coupling",
        "open/closed path contrast of the mode-sum and semiclassical pictures"};
    for (std::size_t i = 0; i < names.size(); ++i) {
        CLI::App* sub = app.add_subcommand(names[i], descs[i]);
        sub->add_option("--config", config_path, "JSON configuration file");
        sub->add_option("--out", out_path, "output file ('-' = stdout)");
        sub->add_option("--format", format, "csv or json")
            ->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--seed", seed, "RNG seed for generated sweeps")
            ->trigger_on_parse()
            ->each([&](const std::string&) { seed_given = true; });
        sub->add_option("--set", overrides,
                        "config override key=value (dotted keys, JSON values)");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitUsage;
    }

    json cfg = json::object();
    if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in) {
            std::cerr << "abqed: cannot open config file '" << config_path << "'\n";
            return kExitConfig;
        }
        try {
            in >> cfg;
        } catch (const json::exception& e) {
            std::cerr << "abqed: config parse error: " << e.what() << "\n";
            return kExitConfig;
        }
    }
    try {
        for (const auto& kv : overrides) apply_override(cfg, kv);
    } catch (const CLI::Error& e) {
        std::cerr << "abqed: " << e.what() << "\n";
        return kExitUsage;
    }
    if (!format.empty()) cfg["output"]["format"] = format;
    if (!out_path.empty()) cfg["output"]["path"] = out_path;
    if (seed_given) cfg["seed"] = seed;

    abqed_lab* lab = nullptr;
    abqed_status st = abqed_lab_create(cfg.dump().c_str(), &lab);
    if (st != ABQED_OK) {
        std::cerr << "abqed: " << abqed_last_error() << "\n";
        return status_to_exit(st);
    }

    const std::string subcommand = app.get_subcommands().front()->get_name();
    char* body = nullptr;
    st = abqed_run(lab, subcommand.c_str(), &body);
    int rc = status_to_exit(st);
    if (body != nullptr) {
        const std::string dest = cfg.contains("output") && cfg["output"].contains("path")
                                     ? cfg["output"]["path"].get<std::string>()
                                     : "-";
        if (dest == "-") {
            std::cout << body;
        } else {
            std::ofstream out(dest, std::ios::binary);
            if (!out) {
                std::cerr << "abqed: cannot write '" << dest << "'\n";
                rc = kExitConfig;
            } else {
                out << body;
            }
        }
        abqed_string_free(body);
    }
    if (st != ABQED_OK) std::cerr << "abqed: " << abqed_last_error() << "\n";
    abqed_lab_destroy(lab);
    return rc;
}
