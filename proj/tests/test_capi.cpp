#include <doctest.h>

#include <cmath>
#include <cstring>
#include <string>

#include "abqed.h"

namespace {

struct LabGuard {
    abqed_lab* lab = nullptr;
    ~LabGuard() { abqed_lab_destroy(lab); }
};

}  // namespace

TEST_CASE("version and error strings are always available") {
    CHECK(std::strlen(abqed_version()) > 0);
    CHECK(abqed_last_error() != nullptr);
}

TEST_CASE("lab creation: defaults, rejection, null arguments") {
    LabGuard g;
    CHECK(abqed_lab_create("{}", &g.lab) == ABQED_OK);
    CHECK(g.lab != nullptr);

    abqed_lab* bad = nullptr;
    CHECK(abqed_lab_create("{not json", &bad) == ABQED_ERR_CONFIG);
    CHECK(bad == nullptr);
    CHECK(std::strlen(abqed_last_error()) > 0);

    CHECK(abqed_lab_create("{\"charge_flux\":{\"m\":-1.0}}", &bad) == ABQED_ERR_CONFIG);
    CHECK(abqed_lab_create("{\"typo_key\":1}", &bad) == ABQED_ERR_CONFIG);
    CHECK(abqed_lab_create(nullptr, &bad) == ABQED_ERR_INVALID);
}

TEST_CASE("effective potential through the C boundary") {
    LabGuard g;
    REQUIRE(abqed_lab_create("{}", &g.lab) == ABQED_OK);
    double a[2], err = -1.0;
    CHECK(abqed_effective_a(g.lab, 1.0, 0.0, a, &err) == ABQED_OK);
    // Phi = 2 pi default: a = theta_hat / r
    CHECK(a[0] == doctest::Approx(0.0));
    CHECK(a[1] == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(err >= 0.0);
    CHECK(abqed_effective_a(g.lab, 0.0, 0.0, a, nullptr) == ABQED_ERR_DOMAIN);
    CHECK(abqed_effective_a(nullptr, 1.0, 0.0, a, nullptr) == ABQED_ERR_INVALID);
}

TEST_CASE("delta_a requires a gauge section") {
    LabGuard g;
    REQUIRE(abqed_lab_create("{}", &g.lab) == ABQED_OK);
    double a[2];
    CHECK(abqed_delta_a(g.lab, 1.0, 0.0, a, nullptr) == ABQED_ERR_CONFIG);

    LabGuard h;
    const char* cfg =
        "{\"gauge\":{\"family\":\"real-isotropic\",\"amplitude\":1.0,\"k0\":0.8}}";
    REQUIRE(abqed_lab_create(cfg, &h.lab) == ABQED_OK);
    double err = 0.0;
    CHECK(abqed_delta_a(h.lab, 0.9, 0.3, a, &err) == ABQED_OK);
    CHECK(std::hypot(a[0], a[1]) <= 10.0 * err);
}

TEST_CASE("coulomb kernel through the C boundary") {
    LabGuard g;
    REQUIRE(abqed_lab_create("{}", &g.lab) == ABQED_OK);
    double v = 0.0;
    CHECK(abqed_coulomb_kernel(g.lab, 2.0, &v, nullptr) == ABQED_OK);
    CHECK(v == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(abqed_coulomb_kernel(g.lab, -1.0, &v, nullptr) == ABQED_ERR_DOMAIN);
}

TEST_CASE("geometry helpers through the C boundary") {
    LabGuard g;
    REQUIRE(abqed_lab_create("{}", &g.lab) == ABQED_OK);
    const double square[] = {1, 1, -1, 1, -1, -1, 1, -1};
    double ang = 0.0;
    CHECK(abqed_subtended_angle(g.lab, square, 4, 1, 0.0, 0.0, &ang) == ABQED_OK);
    CHECK(ang == doctest::Approx(2.0 * 3.14159265358979323846).epsilon(1e-12));
    int w = 0;
    CHECK(abqed_winding_number(g.lab, square, 4, 0.0, 0.0, &w) == ABQED_OK);
    CHECK(w == 1);
    CHECK(abqed_winding_number(g.lab, square, 4, 5.0, 5.0, &w) == ABQED_OK);
    CHECK(w == 0);
    CHECK(abqed_subtended_angle(g.lab, square, 1, 0, 0.0, 0.0, &ang) == ABQED_ERR_CONFIG);
}

TEST_CASE("polarization identity through the C boundary") {
    double s = 0.0;
    CHECK(abqed_polarization_identity(1.0, 0.0, 0.0, 2.0, &s) == ABQED_OK);
    CHECK(s == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(abqed_polarization_identity(0.0, 0.0, 1.0, 0.0, &s) == ABQED_ERR_DOMAIN);
}

TEST_CASE("phase along a path through the C boundary") {
    LabGuard g;
    REQUIRE(abqed_lab_create("{}", &g.lab) == ABQED_OK);
    const double square[] = {1, 1, -1, 1, -1, -1, 1, -1};
    double phase = 0.0, err = 0.0;
    CHECK(abqed_phase_along_path(g.lab, "analytic-a", square, 4, 1, &phase, &err) == ABQED_OK);
    // e* Phi / hbar c = 2 * 2 pi
    CHECK(phase == doctest::Approx(4.0 * 3.14159265358979323846).epsilon(1e-10));
    CHECK(abqed_phase_along_path(g.lab, "no-such-field", square, 4, 1, &phase, &err) ==
          ABQED_ERR_CONFIG);
}

TEST_CASE("run emits a document and frees cleanly") {
    LabGuard g;
    REQUIRE(abqed_lab_create("{\"sweep\":{\"r_grid\":[0.5,1.0]}}", &g.lab) == ABQED_OK);
    char* body = nullptr;
    CHECK(abqed_run(g.lab, "eff-a", &body) == ABQED_OK);
    REQUIRE(body != nullptr);
    CHECK(std::string(body).find("a_theta") != std::string::npos);
    abqed_string_free(body);

    CHECK(abqed_run(g.lab, "definitely-not-a-subcommand", &body) == ABQED_ERR_INVALID);
}
