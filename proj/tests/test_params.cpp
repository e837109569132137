#include "doctest.h"

#include "dnls/errors.hpp"
#include "dnls/params.hpp"

#include <cmath>

using namespace dnls;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("gamma and b convert both ways") {
    CHECK(gamma_of_b(0.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(gamma_of_b(-3.0 / 16.0) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(gamma_of_b(0.5) == doctest::Approx(1.0 + 8.0 / 3.0).epsilon(1e-15));

    const ModelParams p = ModelParams::from_b(-0.1);
    CHECK(p.b == -0.1);
    CHECK(p.gamma == doctest::Approx(7.0 / 15.0).epsilon(1e-15));

    const ModelParams q = ModelParams::from_gamma(-0.25);
    CHECK(q.gamma == -0.25);
    CHECK(gamma_of_b(q.b) == doctest::Approx(-0.25).epsilon(1e-14));
}

TEST_CASE("normalized velocity") {
    WaveParams w;
    w.omega = 4.0;
    w.c = 2.0;
    CHECK(w.s() == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("existence region, gamma positive") {
    const ModelParams p = ModelParams::from_gamma(1.0);
    CHECK(classify(1.0, 0.0, p) == ParamRegion::ExponentialInterior);
    CHECK(classify(1.0, 1.9, p) == ParamRegion::ExponentialInterior);
    CHECK(classify(1.0, 2.0, p) == ParamRegion::AlgebraicBoundary);
    CHECK(classify(1.0, 2.0 + 1e-6, p) == ParamRegion::Inadmissible);
    CHECK(classify(1.0, -2.0, p) == ParamRegion::Inadmissible);
    CHECK(classify(1.0, -1.999, p) == ParamRegion::ExponentialInterior);
    CHECK(classify(4.0, 4.0, p) == ParamRegion::AlgebraicBoundary);
    CHECK(admissible(1.0, 2.0, p));
    CHECK(!admissible(1.0, 2.1, p));
}

TEST_CASE("existence region, gamma nonpositive") {
    // gamma = -1/3: s_* = sqrt((1/3)/(4/3)) = 1/2, region -2 < c < -1
    const ModelParams p = ModelParams::from_gamma(-1.0 / 3.0);
    CHECK(p.s_star_boundary() == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(classify(1.0, -1.5, p) == ParamRegion::ExponentialInterior);
    CHECK(classify(1.0, -1.0, p) == ParamRegion::Inadmissible);
    CHECK(classify(1.0, -0.5, p) == ParamRegion::Inadmissible);
    CHECK(classify(1.0, 0.0, p) == ParamRegion::Inadmissible);
    CHECK(classify(1.0, 1.5, p) == ParamRegion::Inadmissible);
    CHECK(classify(1.0, -2.0, p) == ParamRegion::Inadmissible);
    CHECK(classify(1.0, -1.99, p) == ParamRegion::ExponentialInterior);

    // gamma = 0 keeps the same shape with s_* = 0
    const ModelParams z = ModelParams::from_b(-3.0 / 16.0);
    CHECK(z.s_star_boundary() == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(classify(1.0, -1.0, z) == ParamRegion::ExponentialInterior);
    CHECK(classify(1.0, 0.0, z) == ParamRegion::Inadmissible);
}

TEST_CASE("momentum zero crossing for positive b") {
    CHECK(s_star(0.5) == doctest::Approx(0.37436987422443835).epsilon(1e-12));
    CHECK_THROWS_AS((void)s_star(0.0), ValidationError);
    CHECK_THROWS_AS((void)s_star(-0.1), ValidationError);
}

TEST_CASE("mass threshold across the b ranges") {
    CHECK(mass_threshold(0.5) ==
          doctest::Approx(3.7153608931612814).epsilon(1e-12));
    CHECK(mass_threshold(0.0) == doctest::Approx(4.0 * kPi).epsilon(1e-13));
    const double g = 7.0 / 15.0;
    CHECK(mass_threshold(-0.1) ==
          doctest::Approx(4.0 * kPi / std::pow(g, 1.5)).epsilon(1e-13));
    CHECK_THROWS_AS((void)mass_threshold(-3.0 / 16.0), ValidationError);
    CHECK_THROWS_AS((void)mass_threshold(-0.25), ValidationError);
}

TEST_CASE("boundary velocity only defined for gamma <= 0") {
    const ModelParams p = ModelParams::from_gamma(0.5);
    CHECK_THROWS_AS((void)p.s_star_boundary(), ValidationError);
}
