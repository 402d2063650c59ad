#include "abqed/runner.hpp"

#include <cmath>
#include <cstdio>
#include <memory>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

#include "abqed/version.hpp"

namespace abqed {

using nlohmann::json;

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// Deterministic serialization for result records: fixed key order, %.17g
// floats, no wall-clock content.
class ResultWriter {
public:
    ResultWriter(const RunConfig& cfg, std::string subcommand)
        : cfg_(cfg), subcommand_(std::move(subcommand)) {}

    void set_columns(std::vector<std::string> cols) { columns_ = std::move(cols); }

    void add_row(std::vector<std::pair<std::string, json>> row) { rows_.push_back(std::move(row)); }

    std::string render() const {
        if (cfg_.output.format == "json") return render_json();
        return render_csv();
    }

private:
    static std::string cell(const json& v) {
        if (v.is_number_float()) return fmt(v.get<double>());
        if (v.is_string()) return v.get<std::string>();
        return v.dump();
    }

    std::string render_csv() const {
        std::ostringstream os;
        os << "# abqed " << kVersion << "\n";
        os << "# subcommand " << subcommand_ << "\n";
        os << "# config " << config_to_json(cfg_).dump() << "\n";
        for (std::size_t i = 0; i < columns_.size(); ++i)
            os << (i ? "," : "") << columns_[i];
        os << "\n";
        for (const auto& row : rows_) {
            bool first = true;
            for (const auto& col : columns_) {
                os << (first ? "" : ",");
                first = false;
                for (const auto& [k, v] : row)
                    if (k == col) {
                        os << cell(v);
                        break;
                    }
            }
            os << "\n";
        }
        return os.str();
    }

    std::string render_json() const {
        json out;
        out["tool"] = "abqed";
        out["version"] = kVersion;
        out["subcommand"] = subcommand_;
        out["config"] = config_to_json(cfg_);
        json results = json::array();
        for (const auto& row : rows_) {
            json r = json::object();
            for (const auto& [k, v] : row) r[k] = v;
            results.push_back(r);
        }
        out["results"] = results;
        std::ostringstream os;
        // fixed float precision via pre-stringified doubles would lose type
        // info; nlohmann's dump is already shortest-roundtrip, deterministic
        os << out.dump(2) << "\n";
        return os.str();
    }

    const RunConfig& cfg_;
    std::string subcommand_;
    std::vector<std::string> columns_;
    std::vector<std::vector<std::pair<std::string, json>>> rows_;
};

std::vector<double> default_r_grid() { return {0.1, 0.2, 0.5, 1.0, 2.0, 5.0, 10.0}; }

std::vector<double> log_grid(double lo, double hi, int n) {
    std::vector<double> g(n);
    for (int i = 0; i < n; ++i)
        g[i] = lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1));
    return g;
}

PathGeometry circle(const Vec2& center, double radius, int n = 48) {
    std::vector<Vec2> v;
    for (int i = 0; i < n; ++i) {
        const double th = kTwoPi * i / n;
        v.push_back(center + Vec2{radius * std::cos(th), radius * std::sin(th)});
    }
    return PathGeometry::loop(std::move(v));
}

int run_eff_a(const RunConfig& cfg, ResultWriter& w) {
    std::vector<double> grid = cfg.sweep.r_grid.empty() ? default_r_grid() : cfg.sweep.r_grid;
    w.set_columns({"r", "a_theta", "a_r", "a_theta_analytic", "err"});
    int code = kExitOk;
    for (double r : grid) {
        const Vec2 x{r, 0.0};
        EffectiveFieldResult a = effective_a(x, cfg.charge_flux, cfg.quadrature, cfg.units);
        const Vec2 exact = effective_a_analytic(x, cfg.charge_flux);
        const double a_theta = a.value.dot(x.azimuthal());
        const double a_r = a.value.dot(x.normalized());
        w.add_row({{"r", r},
                   {"a_theta", a_theta},
                   {"a_r", a_r},
                   {"a_theta_analytic", exact.dot(x.azimuthal())},
                   {"err", a.error_estimate}});
        if (std::abs(a_theta - exact.dot(x.azimuthal())) >
            std::max(1e-5 * std::abs(exact.dot(x.azimuthal())), 10.0 * a.error_estimate))
            code = kExitAccuracy;
    }
    return code;
}

std::vector<GaugeSpec> seeded_families(int n_families, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> amp(0.3, 1.5), width(0.5, 1.2);
    std::uniform_int_distribution<int> harm(1, 3);
    std::vector<GaugeSpec> out;
    const int per = std::max(1, n_families / 3);
    for (int i = 0; i < n_families; ++i) {
        GaugeSpec g;
        g.amplitude = amp(rng);
        g.k0 = width(rng);
        if (i < per) {
            g.family = GaugeSpec::Family::RealIsotropic;
        } else if (i < 2 * per) {
            g.family = GaugeSpec::Family::ComplexIsotropic;
            g.amplitude_imag = amp(rng);
        } else {
            g.family = GaugeSpec::Family::Anisotropic;
            g.amplitude_imag = amp(rng) - 0.9;
            g.harmonic = harm(rng);
        }
        out.push_back(g);
    }
    return out;
}

int run_gauge_check(const RunConfig& cfg, ResultWriter& w) {
    std::vector<GaugeSpec> families;
    if (cfg.gauge)
        families.push_back(*cfg.gauge);
    else
        families = seeded_families(cfg.sweep.n_families, cfg.seed);

    const std::vector<Vec2> samples{{0.7, 0.1}, {-0.4, 0.6}, {1.1, -0.3}, {-0.8, -0.7}, {0.2, 1.2}};
    const PathGeometry loop = circle({0.15, -0.1}, 0.75);

    w.set_columns({"family", "amplitude", "amplitude_imag", "k0", "harmonic", "max_abs_delta_a",
                   "max_err", "loop_phase_residual"});
    int code = kExitOk;
    for (const GaugeSpec& g : families) {
        DeltaAField field(g, cfg.charge_flux, cfg.quadrature, cfg.units, 2.0);
        double max_abs = 0.0, max_err = 0.0;
        for (const Vec2& x : samples) {
            const Vec2 fine = field.eval(x);
            const Vec2 coarse = field.eval_coarse(x);
            max_abs = std::max(max_abs, fine.norm());
            max_err = std::max(max_err, (fine - coarse).norm() + 1e-15 * field.field_scale());
        }
        const double residual =
            std::abs(phase_along_path([&](const Vec2& x) { return field.eval(x); }, loop,
                                      cfg.charge_flux.e_star, cfg.units, 1e-10)
                         .phase);
        w.add_row({{"family", GaugeSpec::family_name(g.family)},
                   {"amplitude", g.amplitude},
                   {"amplitude_imag", g.amplitude_imag},
                   {"k0", g.k0},
                   {"harmonic", g.harmonic},
                   {"max_abs_delta_a", max_abs},
                   {"max_err", max_err},
                   {"loop_phase_residual", residual}});
        if (residual > 1e-8) code = kExitAccuracy;
        if (g.family == GaugeSpec::Family::RealIsotropic && max_abs > 10.0 * max_err)
            code = kExitAccuracy;
    }
    return code;
}

int run_coulomb(const RunConfig& cfg, ResultWriter& w) {
    std::vector<double> grid = cfg.sweep.r_grid.empty() ? log_grid(0.1, 10.0, 11) : cfg.sweep.r_grid;
    w.set_columns({"r", "K", "rK", "coulomb_gauge_K", "err"});
    int code = kExitOk;
    for (double r : grid) {
        CoulombComparison c = coulomb_gauge_comparison(r, cfg.quadrature);
        w.add_row({{"r", r},
                   {"K", c.lorenz_mode_kernel},
                   {"rK", r * c.lorenz_mode_kernel},
                   {"coulomb_gauge_K", c.coulomb_gauge_kernel},
                   {"err", c.error_estimate}});
        if (std::abs(r * c.lorenz_mode_kernel - 1.0) > 1e-4) code = kExitAccuracy;
    }
    return code;
}

int run_phase(const RunConfig& cfg, ResultWriter& w) {
    if (!cfg.geometry.path) throw ConfigError("phase: geometry.path is required");
    const PathGeometry& path = *cfg.geometry.path;
    const Vec2 fluxon = cfg.geometry.fluxon.value_or(cfg.charge_flux.x_b);

    VectorField field;
    if (cfg.field == "analytic-a") {
        field = [&](const Vec2& x) { return analytic_a(x, fluxon, cfg.charge_flux.phi); };
    } else if (cfg.field == "numeric-a") {
        field = [&](const Vec2& x) {
            return effective_a(x - fluxon, cfg.charge_flux, cfg.quadrature, cfg.units).value;
        };
    } else if (cfg.field == "semiclassical" || cfg.field == "semiclassical-gauged") {
        auto sf = std::make_shared<SemiclassicalField>();
        sf->fluxon = fluxon;
        sf->phi = cfg.charge_flux.phi;
        sf->r_min = cfg.quadrature.r_min;
        if (cfg.gauge) sf->chi = cfg.gauge->chi;
        sf->gauged = (cfg.field == "semiclassical-gauged");
        field = [sf](const Vec2& x) { return sf->eval(x); };
    } else {
        throw ConfigError("phase: unknown field handle '" + cfg.field + "'");
    }

    PhaseResult ph = phase_along_path(field, path, cfg.charge_flux.e_star, cfg.units, 1e-12);
    const double dtheta = subtended_angle(path, fluxon);
    std::vector<std::pair<std::string, json>> row{
        {"field", cfg.field},
        {"phase", ph.phase},
        {"err", ph.error_estimate},
        {"delta_theta", dtheta},
    };
    if (path.closed) row.emplace_back("winding", winding_number(path, fluxon));
    w.set_columns({"field", "phase", "err", "delta_theta", "winding"});
    w.add_row(std::move(row));
    return kExitOk;
}

int run_interferometer(const RunConfig& cfg, ResultWriter& w) {
    InterferometerGeometry geom = cfg.geometry.interferometer(cfg.quadrature.r_min);
    std::vector<double> scales =
        cfg.sweep.scales.empty() ? std::vector<double>{0.25, 0.5, 1.0, 2.0, 4.0} : cfg.sweep.scales;
    w.set_columns({"sweep_param", "delta_theta", "phi_loc", "phi_loc_numeric", "err"});
    int code = kExitOk;
    for (double s : scales) {
        InterferometerGeometry g = geom;
        // pull the fluxon away from (or towards) the normal electrode
        g.fluxon = geom.n + (geom.fluxon - geom.n) * s;
        g.validate(cfg.quadrature.r_min);
        AndreevResult res = andreev_local_phase(g, cfg.charge_flux, cfg.quadrature, cfg.units);
        w.add_row({{"sweep_param", s},
                   {"delta_theta", res.delta_theta},
                   {"phi_loc", res.phi_loc},
                   {"phi_loc_numeric", res.phi_loc_numeric},
                   {"err", res.error_estimate}});
        if (std::abs(res.phi_loc_numeric - res.phi_loc) >
            std::max(1e-5 * std::abs(res.phi_loc), 100.0 * res.error_estimate))
            code = kExitAccuracy;
    }
    if (cfg.output.format == "json") {
        AndreevResult res = andreev_local_phase(geom, cfg.charge_flux, cfg.quadrature, cfg.units);
        std::vector<double> phi0s = cfg.sweep.phi0_grid;
        if (phi0s.empty())
            for (int i = 0; i <= 32; ++i) phi0s.push_back(kTwoPi * i / 32.0);
        for (double phi0 : phi0s)
            w.add_row({{"sweep_param", std::string("fringe")},
                       {"phi0", phi0},
                       {"signal", interference_signal(res.phi_loc, phi0)}});
    }
    return code;
}

int run_stokes_check(const RunConfig& cfg, ResultWriter& w) {
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> kmag(0.4, 1.5), ang(0.0, kTwoPi), rad(0.5, 1.1);
    std::uniform_int_distribution<int> nv(5, 9), pol(0, 1);

    std::vector<double> steps =
        cfg.sweep.steps.empty() ? std::vector<double>{0.02, 0.01, 0.005, 0.002} : cfg.sweep.steps;
    w.set_columns({"case", "kx", "ky", "polarization", "step", "line", "surface", "rel_error"});
    int code = kExitOk;
    for (int c = 0; c < cfg.sweep.n_cases; ++c) {
        const double km = kmag(rng), ka = ang(rng);
        const Vec2 kv{km * std::cos(ka), km * std::sin(ka)};
        const Polarization lam =
            pol(rng) == 0 ? Polarization::InPlaneTransverse : Polarization::OutOfPlaneTransverse;
        const PhotonMode mode(kv, lam, cfg.units);
        // random star-shaped polygon around a random center
        const int n = nv(rng);
        const Vec2 center{ang(rng) / kTwoPi - 0.5, ang(rng) / kTwoPi - 0.5};
        std::vector<Vec2> verts;
        for (int i = 0; i < n; ++i) {
            const double th = kTwoPi * i / n + 0.2 * (ang(rng) / kTwoPi - 0.5);
            const double r = rad(rng);
            verts.push_back(center + Vec2{r * std::cos(th), r * std::sin(th)});
        }
        const CurrentLoop loop{1.0, PathGeometry::loop(std::move(verts))};
        for (double step : steps) {
            StokesReport rep = stokes_check(mode, loop, step);
            w.add_row({{"case", c},
                       {"kx", kv.x},
                       {"ky", kv.y},
                       {"polarization",
                        lam == Polarization::InPlaneTransverse ? "in-plane" : "out-of-plane"},
                       {"step", step},
                       {"line", rep.line_integral},
                       {"surface", rep.surface_integral},
                       {"rel_error", rep.rel_error}});
            if (step == steps.back() && rep.rel_error > 1e-6) code = kExitAccuracy;
        }
    }
    return code;
}

int run_compare(const RunConfig& cfg, ResultWriter& w) {
    InterferometerGeometry geom = cfg.geometry.interferometer(cfg.quadrature.r_min);
    std::vector<GaugeSpec> gauges;
    if (cfg.gauge) gauges.push_back(*cfg.gauge);
    for (const GaugeSpec& g : seeded_families(6, cfg.seed)) gauges.push_back(g);

    CompareReport rep =
        qed_vs_semiclassical_report(geom, gauges, cfg.charge_flux, cfg.quadrature, cfg.units);
    w.set_columns({"kind", "label", "phi_loc", "delta", "predicted_delta", "residual", "err"});
    w.add_row({{"kind", std::string("reference")},
               {"label", std::string("angle-formula")},
               {"phi_loc", rep.phi_loc_reference},
               {"delta", rep.delta_theta},
               {"residual", 0.0},
               {"err", 0.0}});
    w.add_row({{"kind", std::string("closed-loop")},
               {"label", std::string("analytic-a")},
               {"phi_loc", rep.closed_loop_phase},
               {"residual", 0.0},
               {"err", 0.0}});
    for (const auto& q : rep.qed)
        w.add_row({{"kind", std::string("qed")},
                   {"label", std::string(GaugeSpec::family_name(q.gauge.family))},
                   {"phi_loc", q.phi_loc},
                   {"delta", q.delta_a_open},
                   {"residual", q.closed_loop_residual},
                   {"err", q.error_estimate}});
    for (const auto& s : rep.semiclassical)
        w.add_row({{"kind", std::string("semiclassical")},
                   {"label", std::string(s.chi.empty() ? "base" : "gauged")},
                   {"phi_loc", s.phi_loc},
                   {"delta", s.difference},
                   {"predicted_delta", s.predicted_difference},
                   {"residual", std::abs(s.difference - s.predicted_difference)},
                   {"err", 0.0}});
    return kExitOk;
}

}  // namespace

bool known_subcommand(const std::string& name) {
    return name == "eff-a" || name == "gauge-check" || name == "coulomb" || name == "phase" ||
           name == "interferometer" || name == "stokes-check" || name == "compare";
}

RunOutput run_subcommand(const std::string& subcommand, const RunConfig& cfg) {
    RunOutput out;
    if (!known_subcommand(subcommand)) {
        out.exit_code = kExitUsage;
        out.diagnostic = "unknown subcommand '" + subcommand + "'";
        return out;
    }
    try {
        cfg.validate();
        ResultWriter w(cfg, subcommand);
        int code = kExitOk;
        if (subcommand == "eff-a")
            code = run_eff_a(cfg, w);
        else if (subcommand == "gauge-check")
            code = run_gauge_check(cfg, w);
        else if (subcommand == "coulomb")
            code = run_coulomb(cfg, w);
        else if (subcommand == "phase")
            code = run_phase(cfg, w);
        else if (subcommand == "interferometer")
            code = run_interferometer(cfg, w);
        else if (subcommand == "stokes-check")
            code = run_stokes_check(cfg, w);
        else if (subcommand == "compare")
            code = run_compare(cfg, w);
        out.exit_code = code;
        out.body = w.render();
        if (code == kExitAccuracy) out.diagnostic = "tolerance violation; see result rows";
    } catch (const ConfigError& e) {
        out.exit_code = kExitConfig;
        out.diagnostic = e.what();
    } catch (const DomainError& e) {
        out.exit_code = kExitConfig;
        out.diagnostic = e.what();
    } catch (const AccuracyError& e) {
        out.exit_code = kExitAccuracy;
        out.diagnostic = e.what();
    } catch (const std::exception& e) {
        out.exit_code = kExitAccuracy;
        out.diagnostic = e.what();
    }
    return out;
}

}  // namespace abqed
