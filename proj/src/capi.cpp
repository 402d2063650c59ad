#include "abqed.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <string>

#include <nlohmann/json.hpp>

#include "abqed/runner.hpp"
#include "abqed/version.hpp"

namespace {

thread_local std::string g_last_error = "ok";

void set_error(const std::string& msg) { g_last_error = msg; }

// Translate the active exception into a status + message.
abqed_status map_exception() {
    try {
        throw;
    } catch (const abqed::ConfigError& e) {
        set_error(e.what());
        return ABQED_ERR_CONFIG;
    } catch (const abqed::DomainError& e) {
        set_error(e.what());
        return ABQED_ERR_DOMAIN;
    } catch (const abqed::AccuracyError& e) {
        set_error(e.what());
        return ABQED_ERR_ACCURACY;
    } catch (const std::exception& e) {
        set_error(e.what());
        return ABQED_ERR_INVALID;
    } catch (...) {
        set_error("unknown error");
        return ABQED_ERR_INVALID;
    }
}

abqed::PathGeometry path_from_xy(const double* xy, size_t n_points, int closed) {
    if (xy == nullptr || n_points < 2)
        throw abqed::ConfigError("path: need xy array with at least 2 points");
    std::vector<abqed::Vec2> v;
    v.reserve(n_points);
    for (size_t i = 0; i < n_points; ++i) v.push_back({xy[2 * i], xy[2 * i + 1]});
    return closed ? abqed::PathGeometry::loop(std::move(v))
                  : abqed::PathGeometry::open_path(std::move(v));
}

}  // namespace

struct abqed_lab {
    abqed::RunConfig cfg;
};

extern "C" {

const char* abqed_version(void) { return abqed::kVersion; }

const char* abqed_last_error(void) { return g_last_error.c_str(); }

abqed_status abqed_lab_create(const char* config_json, abqed_lab** out_lab) {
    if (config_json == nullptr || out_lab == nullptr) {
        set_error("abqed_lab_create: null argument");
        return ABQED_ERR_INVALID;
    }
    try {
        auto lab = std::make_unique<abqed_lab>();
        lab->cfg = abqed::parse_config(config_json);
        lab->cfg.validate();
        *out_lab = lab.release();
        return ABQED_OK;
    } catch (...) {
        return map_exception();
    }
}

void abqed_lab_destroy(abqed_lab* lab) { delete lab; }

abqed_status abqed_effective_a(const abqed_lab* lab, double x, double y,
                               double out_a[2], double* out_err) {
    if (lab == nullptr || out_a == nullptr) {
        set_error("abqed_effective_a: null argument");
        return ABQED_ERR_INVALID;
    }
    try {
        abqed::EffectiveFieldResult r = abqed::effective_a(
            {x, y}, lab->cfg.charge_flux, lab->cfg.quadrature, lab->cfg.units);
        out_a[0] = r.value.x;
        out_a[1] = r.value.y;
        if (out_err) *out_err = r.error_estimate;
        return ABQED_OK;
    } catch (...) {
        return map_exception();
    }
}

abqed_status abqed_delta_a(const abqed_lab* lab, double x, double y,
                           double out_a[2], double* out_err) {
    if (lab == nullptr || out_a == nullptr) {
        set_error("abqed_delta_a: null argument");
        return ABQED_ERR_INVALID;
    }
    try {
        if (!lab->cfg.gauge)
            throw abqed::ConfigError("abqed_delta_a: config has no gauge section");
        abqed::EffectiveFieldResult r =
            abqed::delta_a({x, y}, *lab->cfg.gauge, lab->cfg.charge_flux,
                           lab->cfg.quadrature, lab->cfg.units);
        out_a[0] = r.value.x;
        out_a[1] = r.value.y;
        if (out_err) *out_err = r.error_estimate;
        return ABQED_OK;
    } catch (...) {
        return map_exception();
    }
}

abqed_status abqed_coulomb_kernel(const abqed_lab* lab, double r,
                                  double* out_value, double* out_err) {
    if (lab == nullptr || out_value == nullptr) {
        set_error("abqed_coulomb_kernel: null argument");
        return ABQED_ERR_INVALID;
    }
    try {
        abqed::ScalarKernelResult k = abqed::coulomb_kernel(r, lab->cfg.quadrature);
        *out_value = k.value;
        if (out_err) *out_err = k.error_estimate;
        return ABQED_OK;
    } catch (...) {
        return map_exception();
    }
}

abqed_status abqed_subtended_angle(const abqed_lab* lab, const double* xy,
                                   size_t n_points, int closed, double fluxon_x,
                                   double fluxon_y, double* out_angle) {
    if (lab == nullptr || out_angle == nullptr) {
        set_error("abqed_subtended_angle: null argument");
        return ABQED_ERR_INVALID;
    }
    try {
        *out_angle = abqed::subtended_angle(path_from_xy(xy, n_points, closed),
                                            {fluxon_x, fluxon_y});
        return ABQED_OK;
    } catch (...) {
        return map_exception();
    }
}

abqed_status abqed_winding_number(const abqed_lab* lab, const double* xy,
                                  size_t n_points, double fluxon_x,
                                  double fluxon_y, int* out_winding) {
    if (lab == nullptr || out_winding == nullptr) {
        set_error("abqed_winding_number: null argument");
        return ABQED_ERR_INVALID;
    }
    try {
        *out_winding = abqed::winding_number(path_from_xy(xy, n_points, 1),
                                             {fluxon_x, fluxon_y});
        return ABQED_OK;
    } catch (...) {
        return map_exception();
    }
}

abqed_status abqed_polarization_identity(double kx, double ky, double px,
                                         double py, double* out_sum) {
    if (out_sum == nullptr) {
        set_error("abqed_polarization_identity: null argument");
        return ABQED_ERR_INVALID;
    }
    try {
        abqed::Vec2 k{kx, ky};
        if (!(k.norm() > 0.0))
            throw abqed::DomainError("polarization identity: k must be nonzero");
        *out_sum = abqed::polarization_identity_sum(k.normalized(), {px, py});
        return ABQED_OK;
    } catch (...) {
        return map_exception();
    }
}

abqed_status abqed_phase_along_path(const abqed_lab* lab, const char* field,
                                    const double* xy, size_t n_points, int closed,
                                    double* out_phase, double* out_err) {
    if (lab == nullptr || field == nullptr || out_phase == nullptr) {
        set_error("abqed_phase_along_path: null argument");
        return ABQED_ERR_INVALID;
    }
    try {
        abqed::RunConfig cfg = lab->cfg;
        cfg.field = field;
        cfg.geometry.path = path_from_xy(xy, n_points, closed);
        cfg.output.format = "json";
        abqed::RunOutput out = abqed::run_subcommand("phase", cfg);
        if (out.exit_code == abqed::kExitConfig) throw abqed::ConfigError(out.diagnostic);
        if (out.exit_code != abqed::kExitOk) throw abqed::AccuracyError(out.diagnostic);
        // parse the single result row back out
        const nlohmann::json doc = nlohmann::json::parse(out.body);
        const nlohmann::json& row = doc.at("results").at(0);
        *out_phase = row.at("phase").get<double>();
        if (out_err) *out_err = row.at("err").get<double>();
        return ABQED_OK;
    } catch (...) {
        return map_exception();
    }
}

abqed_status abqed_run(const abqed_lab* lab, const char* subcommand,
                       char** out_body) {
    if (lab == nullptr || subcommand == nullptr || out_body == nullptr) {
        set_error("abqed_run: null argument");
        return ABQED_ERR_INVALID;
    }
    try {
        abqed::RunOutput out = abqed::run_subcommand(subcommand, lab->cfg);
        if (out.exit_code == abqed::kExitUsage) {
            set_error(out.diagnostic);
            return ABQED_ERR_INVALID;
        }
        if (out.exit_code == abqed::kExitConfig) {
            set_error(out.diagnostic);
            return ABQED_ERR_CONFIG;
        }
        char* buf = static_cast<char*>(std::malloc(out.body.size() + 1));
        if (buf == nullptr) {
            set_error("abqed_run: out of memory");
            return ABQED_ERR_INVALID;
        }
        std::memcpy(buf, out.body.c_str(), out.body.size() + 1);
        *out_body = buf;
        if (out.exit_code == abqed::kExitAccuracy) {
            set_error(out.diagnostic.empty() ? "accuracy failure" : out.diagnostic);
            return ABQED_ERR_ACCURACY;
        }
        return ABQED_OK;
    } catch (...) {
        return map_exception();
    }
}

void abqed_string_free(char* s) { std::free(s); }

}  // extern "C"
