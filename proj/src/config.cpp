#include "abqed/config.hpp"

#include <set>

#include <nlohmann/json.hpp>

namespace abqed {

using nlohmann::json;

namespace {

void reject_unknown(const json& j, const std::set<std::string>& allowed, const std::string& where) {
    if (!j.is_object()) throw ConfigError(where + ": expected an object");
    for (const auto& [key, _] : j.items())
        if (!allowed.contains(key)) throw ConfigError(where + ": unknown key '" + key + "'");
}

Vec2 vec2_from(const json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw ConfigError(where + ": expected [x, y]");
    return {j[0].get<double>(), j[1].get<double>()};
}

json vec2_to(const Vec2& v) { return json::array({v.x, v.y}); }

PathGeometry path_from(const json& j, const std::string& where) {
    reject_unknown(j, {"vertices", "closed", "refinement"}, where);
    if (!j.contains("vertices")) throw ConfigError(where + ": missing vertices");
    std::vector<Vec2> verts;
    for (const auto& v : j.at("vertices")) verts.push_back(vec2_from(v, where + ".vertices"));
    const bool closed = j.value("closed", false);
    const double refinement = j.value("refinement", 0.25);
    return closed ? PathGeometry::loop(std::move(verts), refinement)
                  : PathGeometry::open_path(std::move(verts), refinement);
}

json path_to(const PathGeometry& p) {
    json verts = json::array();
    for (const Vec2& v : p.vertices) verts.push_back(vec2_to(v));
    return {{"vertices", verts}, {"closed", p.closed}, {"refinement", p.refinement}};
}

ChiPrimitive chi_from(const json& j) {
    reject_unknown(j, {"type", "amplitude", "px", "py", "center", "sigma", "m"}, "gauge.chi[]");
    ChiPrimitive c;
    const std::string type = j.value("type", "polynomial");
    if (type == "polynomial")
        c.kind = ChiPrimitive::Kind::Polynomial;
    else if (type == "gaussian")
        c.kind = ChiPrimitive::Kind::GaussianBump;
    else if (type == "azimuthal-harmonic")
        c.kind = ChiPrimitive::Kind::AzimuthalHarmonic;
    else
        throw ConfigError("gauge.chi[]: unknown primitive type '" + type + "'");
    c.amplitude = j.value("amplitude", 0.0);
    c.px = j.value("px", 1);
    c.py = j.value("py", 1);
    if (j.contains("center")) c.center = vec2_from(j.at("center"), "gauge.chi[].center");
    c.sigma = j.value("sigma", 1.0);
    c.m = j.value("m", 1);
    return c;
}

json chi_to(const ChiPrimitive& c) {
    json j;
    switch (c.kind) {
        case ChiPrimitive::Kind::Polynomial:
            j["type"] = "polynomial";
            j["px"] = c.px;
            j["py"] = c.py;
            break;
        case ChiPrimitive::Kind::GaussianBump:
            j["type"] = "gaussian";
            j["center"] = vec2_to(c.center);
            j["sigma"] = c.sigma;
            break;
        case ChiPrimitive::Kind::AzimuthalHarmonic:
            j["type"] = "azimuthal-harmonic";
            j["center"] = vec2_to(c.center);
            j["m"] = c.m;
            break;
    }
    j["amplitude"] = c.amplitude;
    return j;
}

}  // namespace

GaugeSpec gauge_from_json(const json& j) {
    reject_unknown(j, {"family", "amplitude", "amplitude_imag", "k0", "harmonic", "chi"}, "gauge");
    GaugeSpec g;
    const std::string fam = j.value("family", "real-isotropic");
    if (fam == "real-isotropic")
        g.family = GaugeSpec::Family::RealIsotropic;
    else if (fam == "complex-isotropic")
        g.family = GaugeSpec::Family::ComplexIsotropic;
    else if (fam == "anisotropic")
        g.family = GaugeSpec::Family::Anisotropic;
    else
        throw ConfigError("gauge.family: unknown family '" + fam + "'");
    g.amplitude = j.value("amplitude", 1.0);
    g.amplitude_imag = j.value("amplitude_imag", 0.0);
    g.k0 = j.value("k0", 1.0);
    g.harmonic = j.value("harmonic", g.family == GaugeSpec::Family::Anisotropic ? 1 : 0);
    if (j.contains("chi"))
        for (const auto& c : j.at("chi")) g.chi.push_back(chi_from(c));
    g.validate();
    return g;
}

json gauge_to_json(const GaugeSpec& g) {
    json j{{"family", GaugeSpec::family_name(g.family)},
           {"amplitude", g.amplitude},
           {"amplitude_imag", g.amplitude_imag},
           {"k0", g.k0},
           {"harmonic", g.harmonic}};
    if (!g.chi.empty()) {
        json chi = json::array();
        for (const auto& c : g.chi) chi.push_back(chi_to(c));
        j["chi"] = chi;
    }
    return j;
}

InterferometerGeometry GeometrySpec::interferometer(double r_min) const {
    // contacts flanking a normal electrode above the fluxon by default
    const Vec2 d_s1 = s1.value_or(Vec2{-1.0, 0.8});
    const Vec2 d_s2 = s2.value_or(Vec2{1.0, 0.8});
    const Vec2 d_n = n.value_or(Vec2{0.0, 1.4});
    const Vec2 d_fluxon = fluxon.value_or(Vec2{0.0, 0.0});
    InterferometerGeometry g = InterferometerGeometry::make(d_s1, d_s2, d_n, d_fluxon);
    if (path) g.path_c = *path;
    g.validate(r_min);
    return g;
}

void RunConfig::validate() const {
    units.validate();
    charge_flux.validate();
    quadrature.validate();
    if (gauge) gauge->validate();
    if (output.format != "csv" && output.format != "json")
        throw ConfigError("output.format must be 'csv' or 'json'");
}

RunConfig parse_config(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config: JSON parse error: ") + e.what());
    }
    reject_unknown(j, {"units", "charge_flux", "quadrature", "gauge", "geometry", "sweep",
                       "output", "field", "seed"},
                   "config");
    RunConfig cfg;
    try {
        if (j.contains("units")) {
            const json& u = j.at("units");
            reject_unknown(u, {"hbar", "c"}, "units");
            cfg.units.hbar = u.value("hbar", 1.0);
            cfg.units.c = u.value("c", 1.0);
        }
        if (j.contains("charge_flux")) {
            const json& c = j.at("charge_flux");
            reject_unknown(c, {"e", "e_star", "m", "M", "phi", "x_a", "x_b"}, "charge_flux");
            cfg.charge_flux.e = c.value("e", 1.0);
            cfg.charge_flux.e_star = c.value("e_star", 2.0 * cfg.charge_flux.e);
            cfg.charge_flux.m = c.value("m", 1.0);
            cfg.charge_flux.M = c.value("M", 1.0);
            cfg.charge_flux.phi = c.value("phi", kTwoPi);
            if (c.contains("x_a")) cfg.charge_flux.x_a = vec2_from(c.at("x_a"), "charge_flux.x_a");
            if (c.contains("x_b")) cfg.charge_flux.x_b = vec2_from(c.at("x_b"), "charge_flux.x_b");
        }
        if (j.contains("quadrature")) {
            const json& q = j.at("quadrature");
            reject_unknown(q,
                           {"epsilon_over_r", "n_angular", "abs_tol", "rel_tol", "panel_points",
                            "extrapolation_order", "r_min", "k_max_over_k0", "tail_tol"},
                           "quadrature");
            if (q.contains("epsilon_over_r"))
                cfg.quadrature.epsilon_over_r = q.at("epsilon_over_r").get<std::vector<double>>();
            cfg.quadrature.n_angular = q.value("n_angular", cfg.quadrature.n_angular);
            cfg.quadrature.abs_tol = q.value("abs_tol", cfg.quadrature.abs_tol);
            cfg.quadrature.rel_tol = q.value("rel_tol", cfg.quadrature.rel_tol);
            cfg.quadrature.panel_points = q.value("panel_points", cfg.quadrature.panel_points);
            cfg.quadrature.extrapolation_order =
                q.value("extrapolation_order", cfg.quadrature.extrapolation_order);
            cfg.quadrature.r_min = q.value("r_min", cfg.quadrature.r_min);
            cfg.quadrature.k_max_over_k0 = q.value("k_max_over_k0", cfg.quadrature.k_max_over_k0);
            cfg.quadrature.tail_tol = q.value("tail_tol", cfg.quadrature.tail_tol);
        }
        if (j.contains("gauge")) cfg.gauge = gauge_from_json(j.at("gauge"));
        if (j.contains("geometry")) {
            const json& g = j.at("geometry");
            reject_unknown(g, {"s1", "s2", "n", "fluxon", "path"}, "geometry");
            if (g.contains("s1")) cfg.geometry.s1 = vec2_from(g.at("s1"), "geometry.s1");
            if (g.contains("s2")) cfg.geometry.s2 = vec2_from(g.at("s2"), "geometry.s2");
            if (g.contains("n")) cfg.geometry.n = vec2_from(g.at("n"), "geometry.n");
            if (g.contains("fluxon"))
                cfg.geometry.fluxon = vec2_from(g.at("fluxon"), "geometry.fluxon");
            if (g.contains("path")) cfg.geometry.path = path_from(g.at("path"), "geometry.path");
        }
        if (j.contains("sweep")) {
            const json& s = j.at("sweep");
            reject_unknown(s, {"r_grid", "n_cases", "steps", "phi0_grid", "scales", "n_families"},
                           "sweep");
            if (s.contains("r_grid")) cfg.sweep.r_grid = s.at("r_grid").get<std::vector<double>>();
            cfg.sweep.n_cases = s.value("n_cases", cfg.sweep.n_cases);
            if (s.contains("steps")) cfg.sweep.steps = s.at("steps").get<std::vector<double>>();
            if (s.contains("phi0_grid"))
                cfg.sweep.phi0_grid = s.at("phi0_grid").get<std::vector<double>>();
            if (s.contains("scales")) cfg.sweep.scales = s.at("scales").get<std::vector<double>>();
            cfg.sweep.n_families = s.value("n_families", cfg.sweep.n_families);
        }
        if (j.contains("output")) {
            const json& o = j.at("output");
            reject_unknown(o, {"format", "path"}, "output");
            cfg.output.format = o.value("format", cfg.output.format);
            cfg.output.path = o.value("path", cfg.output.path);
        }
        cfg.field = j.value("field", cfg.field);
        cfg.seed = j.value("seed", cfg.seed);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    cfg.validate();
    return cfg;
}

json config_to_json(const RunConfig& cfg) {
    json j;
    j["units"] = {{"hbar", cfg.units.hbar}, {"c", cfg.units.c}};
    j["charge_flux"] = {{"e", cfg.charge_flux.e},     {"e_star", cfg.charge_flux.e_star},
                        {"m", cfg.charge_flux.m},     {"M", cfg.charge_flux.M},
                        {"phi", cfg.charge_flux.phi}, {"x_a", vec2_to(cfg.charge_flux.x_a)},
                        {"x_b", vec2_to(cfg.charge_flux.x_b)}};
    j["quadrature"] = {{"epsilon_over_r", cfg.quadrature.epsilon_over_r},
                       {"n_angular", cfg.quadrature.n_angular},
                       {"abs_tol", cfg.quadrature.abs_tol},
                       {"rel_tol", cfg.quadrature.rel_tol},
                       {"panel_points", cfg.quadrature.panel_points},
                       {"extrapolation_order", cfg.quadrature.extrapolation_order},
                       {"r_min", cfg.quadrature.r_min},
                       {"k_max_over_k0", cfg.quadrature.k_max_over_k0},
                       {"tail_tol", cfg.quadrature.tail_tol}};
    if (cfg.gauge) j["gauge"] = gauge_to_json(*cfg.gauge);
    json g;
    if (cfg.geometry.s1) g["s1"] = vec2_to(*cfg.geometry.s1);
    if (cfg.geometry.s2) g["s2"] = vec2_to(*cfg.geometry.s2);
    if (cfg.geometry.n) g["n"] = vec2_to(*cfg.geometry.n);
    if (cfg.geometry.fluxon) g["fluxon"] = vec2_to(*cfg.geometry.fluxon);
    if (cfg.geometry.path) g["path"] = path_to(*cfg.geometry.path);
    if (!g.is_null()) j["geometry"] = g;
    json s;
    if (!cfg.sweep.r_grid.empty()) s["r_grid"] = cfg.sweep.r_grid;
    s["n_cases"] = cfg.sweep.n_cases;
    if (!cfg.sweep.steps.empty()) s["steps"] = cfg.sweep.steps;
    if (!cfg.sweep.phi0_grid.empty()) s["phi0_grid"] = cfg.sweep.phi0_grid;
    if (!cfg.sweep.scales.empty()) s["scales"] = cfg.sweep.scales;
    s["n_families"] = cfg.sweep.n_families;
    j["sweep"] = s;
    j["output"] = {{"format", cfg.output.format}, {"path", cfg.output.path}};
    j["field"] = cfg.field;
    j["seed"] = cfg.seed;
    return j;
}

}  // namespace abqed
