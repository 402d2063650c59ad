#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "abqed/phases.hpp"

namespace abqed {

struct OutputSpec {
    std::string format = "csv";  // csv | json
    std::string path = "-";      // "-" = stdout
};

// Sweep/experiment parameters not tied to a single physical type.
struct SweepSpec {
    std::vector<double> r_grid;       // eff-a / coulomb
    int n_cases = 20;                 // stokes-check random cases
    std::vector<double> steps;        // stokes-check discretization schedule
    std::vector<double> phi0_grid;    // interferometer fringes
    std::vector<double> scales;       // interferometer fluxon-distance sweep
    int n_families = 30;              // gauge-check generated families
};

struct GeometrySpec {
    std::optional<Vec2> s1, s2, n, fluxon;
    std::optional<PathGeometry> path;
    InterferometerGeometry interferometer(double r_min) const;
};

struct RunConfig {
    UnitSystem units;
    ChargeFluxConfig charge_flux;
    QuadratureSpec quadrature;
    std::optional<GaugeSpec> gauge;
    GeometrySpec geometry;
    SweepSpec sweep;
    OutputSpec output;
    std::string field = "analytic-a";  // phase subcommand field handle
    std::uint64_t seed = 1;

    void validate() const;
};

// JSON (de)serialization; unknown keys raise ConfigError so a typo cannot
// silently fall back to a default.
RunConfig parse_config(const std::string& json_text);
nlohmann::json config_to_json(const RunConfig& cfg);
nlohmann::json gauge_to_json(const GaugeSpec& g);
GaugeSpec gauge_from_json(const nlohmann::json& j);

}  // namespace abqed
