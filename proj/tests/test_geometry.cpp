#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "plfilter/errors.hpp"
#include "plfilter/geometry.hpp"

using namespace plf;

namespace {

// Quadrature route: the arc-length form of the displacement integral.
double displacement_by_quadrature(const FilteredSpace& fs, const GeodesicSpec& g) {
    const double k = fs.kappa();
    const double s = std::sin(g.alpha);
    const double theta_min = std::asin(s * std::exp(-k * (g.o2 - g.o1)));
    const double integral =
        oracles::integrate([](double th) { return std::sin(th); }, theta_min, g.alpha, 1e-14);
    return std::exp(k * g.o2) / k / s * integral;
}

} // namespace

TEST_CASE("filtered space and geodesic validation") {
    CHECK_THROWS_AS(FilteredSpace(1, 1.0), Error);
    CHECK_THROWS_AS(FilteredSpace(3, -0.5), Error);
    CHECK_THROWS_AS(GeodesicSpec(1.0, 0.5, 0.1), Error);
    CHECK_THROWS_AS(GeodesicSpec(0.0, 1.0, 1.6), Error);
    CHECK_THROWS_AS(GeodesicSpec(0.0, 1.0, -0.1), Error);
}

TEST_CASE("line element") {
    const FilteredSpace fs(3, 2.0);
    SUBCASE("pure objective motion") { CHECK(line_element(fs, 1.7, 0.5, 0.0) == doctest::Approx(0.25)); }
    SUBCASE("euclidean limit at beta ~ 0") {
        const FilteredSpace flat(3, 1e-14);
        CHECK(line_element(flat, 5.0, 3.0, 4.0) == doctest::Approx(25.0).epsilon(1e-10));
    }
    SUBCASE("conformal suppression") {
        // at O = (N-1) ln 2 / beta the transverse weight is 1/4
        const FilteredSpace fs2(4, 1.5);
        const double o = 3.0 * std::log(2.0) / 1.5;
        CHECK(line_element(fs2, o, 0.0, 1.0) == doctest::Approx(0.25).epsilon(1e-12));
    }
}

TEST_CASE("poincare coordinate") {
    const FilteredSpace fs(2, 1.0);
    CHECK(poincare_coordinate(fs, 0.0) == doctest::Approx(1.0));
    CHECK(poincare_coordinate(fs, std::log(4.0)) == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(poincare_coordinate(fs, -40.0) == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
    const FilteredSpace fs5(5, 2.0);
    CHECK(poincare_coordinate(fs5, 0.0) == doctest::Approx(2.0));
    // change of variables: da/dO = beta/(N-1) * a
    const double h = 1e-6;
    const double da = (poincare_coordinate(fs5, 1.0 + h) - poincare_coordinate(fs5, 1.0 - h)) / (2.0 * h);
    CHECK(da == doctest::Approx(fs5.kappa() * poincare_coordinate(fs5, 1.0)).epsilon(1e-8));
    CHECK_THROWS_AS(poincare_coordinate(FilteredSpace(3, 0.0), 1.0), Error);
}

TEST_CASE("geodesic displacement closed form") {
    SUBCASE("vertical geodesic stays put") {
        const FilteredSpace fs(3, 1.2);
        CHECK(geodesic_displacement(fs, GeodesicSpec(0.0, 2.0, 0.0)) == 0.0);
    }
    SUBCASE("matches quadrature over random draws") {
        std::mt19937_64 rng(3);
        std::uniform_real_distribution<double> u01(0.0, 1.0);
        for (int trial = 0; trial < 100; ++trial) {
            const std::size_t n = 2 + std::size_t(rng() % 5);
            const double beta = 0.05 + 5.0 * u01(rng);
            const double o1 = -2.0 + 4.0 * u01(rng);
            const double o2 = o1 + 0.1 + 3.0 * u01(rng);
            const double alpha = 0.01 + 1.5 * u01(rng);
            const FilteredSpace fs(n, beta);
            const GeodesicSpec g(o1, o2, alpha);
            const double closed = geodesic_displacement(fs, g);
            const double quad = displacement_by_quadrature(fs, g);
            CHECK(closed == doctest::Approx(quad).epsilon(1e-8));
        }
    }
    SUBCASE("unfiltered limit reproduces the straight line") {
        for (double alpha : {0.1, 0.7, 1.2}) {
            const FilteredSpace fs(4, 1e-6);
            const GeodesicSpec g(0.0, 1.0, alpha);
            CHECK(geodesic_displacement(fs, g) ==
                  doctest::Approx(std::tan(alpha)).epsilon(1e-4));
        }
    }
    SUBCASE("monotone in alpha") {
        const FilteredSpace fs(3, 1.0);
        double prev = 0.0;
        for (double alpha = 0.0; alpha < 1.5661; alpha += 0.05) {
            const double d = geodesic_displacement(fs, GeodesicSpec(0.0, 1.5, alpha));
            CHECK(d >= prev);
            prev = d;
        }
    }
    SUBCASE("speed limit holds") {
        const FilteredSpace fs(3, 2.0);
        for (double alpha : {0.3, 1.0, 1.5}) {
            const double v = std::sin(alpha) * std::exp(-fs.kappa() * 2.0);
            CHECK(v < std::exp(-fs.kappa() * 2.0));
        }
    }
}

TEST_CASE("both integral routes of the displacement agree") {
    // change of variables maps the O-integral onto the theta-integral
    const FilteredSpace fs(3, 1.3);
    const GeodesicSpec g(-0.5, 1.7, 0.9);
    const double k = fs.kappa();
    const double s = std::sin(g.alpha);
    const double o_route = oracles::integrate(
        [&](double o) {
            const double e = std::exp(-2.0 * k * (g.o2 - o));
            return std::exp(k * g.o2) * e * s / std::sqrt(1.0 - e * s * s);
        },
        g.o1, g.o2, 1e-13);
    const double theta_route = displacement_by_quadrature(fs, g);
    CHECK(o_route == doctest::Approx(theta_route).epsilon(1e-8));
    CHECK(geodesic_displacement(fs, g) == doctest::Approx(o_route).epsilon(1e-8));
}

TEST_CASE("path length") {
    SUBCASE("constant transverse position") {
        const FilteredSpace fs(3, 1.0);
        const Vec os{0.0, 0.5, 1.0};
        const std::vector<Vec> xs{{0.0}, {0.0}, {0.0}};
        CHECK(path_length(fs, os, xs) == doctest::Approx(1.0).epsilon(1e-10));
    }
    SUBCASE("euclidean 3-4-5 segment") {
        const FilteredSpace fs(2, 0.0);
        const Vec os{0.0, 3.0};
        const std::vector<Vec> xs{{0.0}, {4.0}};
        CHECK(path_length(fs, os, xs) == doctest::Approx(5.0).epsilon(1e-10));
    }
    SUBCASE("monotonicity required") {
        const FilteredSpace fs(2, 1.0);
        CHECK_THROWS_AS(path_length(fs, {0.0, 1.0, 0.5}, {{0.0}, {1.0}, {2.0}}), Error);
        CHECK_THROWS_AS(path_length(fs, {0.0}, {{0.0}}), Error);
    }
    SUBCASE("descending parameterization works") {
        const FilteredSpace fs(3, 0.7);
        const Vec up{0.0, 0.4, 1.1};
        const Vec down{1.1, 0.4, 0.0};
        const std::vector<Vec> xs_up{{0.0}, {0.3}, {0.9}};
        const std::vector<Vec> xs_down{{0.9}, {0.3}, {0.0}};
        CHECK(path_length(fs, up, xs_up) == doctest::Approx(path_length(fs, down, xs_down)));
    }
}

TEST_CASE("geodesic paths are shorter than straight chords") {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    int strictly_shorter = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 2 + std::size_t(rng() % 3);
        const double beta = 0.3 + 2.0 * u01(rng);
        const double o1 = -1.0 + 2.0 * u01(rng);
        const double o2 = o1 + 0.5 + 2.0 * u01(rng);
        const double alpha = 0.2 + 1.2 * u01(rng);
        const FilteredSpace fs(n, beta);
        const GeodesicSpec g(o1, o2, alpha);
        const double k = fs.kappa();
        const double s = std::sin(alpha);

        // sample the geodesic x_perp(O) by integrating the velocity field
        const int m = 400;
        Vec os(m + 1);
        std::vector<Vec> geo(m + 1, Vec{0.0});
        Vec chord_x(m + 1);
        double x = 0.0;
        const auto velocity = [&](double o) {
            const double e = std::exp(-2.0 * k * (g.o2 - o));
            return std::exp(k * g.o2) * e * s / std::sqrt(1.0 - e * s * s);
        };
        for (int i = 0; i <= m; ++i) os[std::size_t(i)] = o1 + (o2 - o1) * double(i) / double(m);
        for (int i = 1; i <= m; ++i) {
            const double a = os[std::size_t(i - 1)], b = os[std::size_t(i)];
            const double mid = 0.5 * (a + b);
            x += (b - a) / 6.0 * (velocity(a) + 4.0 * velocity(mid) + velocity(b));
            geo[std::size_t(i)] = {x};
        }
        const double total = x;
        for (int i = 0; i <= m; ++i)
            chord_x[std::size_t(i)] = total * double(i) / double(m);
        std::vector<Vec> chord(m + 1);
        for (int i = 0; i <= m; ++i) chord[std::size_t(i)] = {chord_x[std::size_t(i)]};

        const double l_geo = path_length(fs, os, geo);
        const double l_chord = path_length(fs, os, chord);
        CHECK(l_geo <= l_chord * (1.0 + 1e-9));
        if (l_geo < l_chord * (1.0 - 1e-9)) ++strictly_shorter;
    }
    CHECK(strictly_shorter > 80);
}
