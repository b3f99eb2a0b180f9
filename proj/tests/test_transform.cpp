#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "plfilter/errors.hpp"
#include "plfilter/polytope.hpp"
#include "plfilter/transform.hpp"

using namespace plf;

namespace {

ConstraintSet lp2d_constraints() {
    ConstraintSet cs;
    cs.rows = {{{3.0, 6.0}, -48.0},
               {{4.0, 2.0}, -32.0},
               {{1.0, 1.0}, -10.0},
               {{-1.0, 0.0}, 0.0},
               {{0.0, -1.0}, 0.0}};
    return cs;
}

LinearObjective lp2d_objective() { return LinearObjective({-4.0, -3.0}, 36.0); }

ModeSum golden_2d_modes() {
    return lp_partition_function(slice_volume(lp2d_constraints(), lp2d_objective()));
}

ConstraintSet lp3d_constraints() {
    ConstraintSet cs;
    cs.rows = {{{5.0, 7.0, 7.0}, -19.0},
               {{-1.0, 0.0, 1.0}, 0.0},
               {{0.0, -1.0, 1.0}, 0.0},
               {{0.0, 0.0, -1.0}, 0.0}};
    return cs;
}

LinearObjective lp3d_objective() { return LinearObjective({3.0, 4.0, -12.0}, 0.0); }

// Z(beta) for the golden LP, straight from Eq.-style arithmetic.
double golden_2d_reference_Z(double beta) {
    const double b2 = beta * beta;
    return 2.5 / b2 - std::exp(-2.0 * beta) / b2 - 1.25 * std::exp(-4.0 * beta) / b2 -
           (2.0 / 3.0) * std::exp(-12.0 * beta) / b2 +
           (5.0 / 12.0) * std::exp(-36.0 * beta) / b2;
}

} // namespace

TEST_CASE("lp_partition_function reproduces golden 2-d coefficients") {
    const ModeSum ms = golden_2d_modes();
    REQUIRE(ms.modes.size() == 5);
    const Vec gammas{0.0, 2.0, 4.0, 12.0, 36.0};
    const Vec c2{2.5, -1.0, -1.25, -2.0 / 3.0, 5.0 / 12.0};
    for (std::size_t i = 0; i < 5; ++i) {
        CHECK(ms.modes[i].gamma == doctest::Approx(gammas[i]).epsilon(1e-12));
        CHECK(ms.modes[i].coeffs[2] == doctest::Approx(c2[i]).epsilon(1e-8));
        CHECK(std::abs(ms.modes[i].coeffs[1]) < 1e-8); // continuity kills beta^{-1}
    }
}

TEST_CASE("lp_partition_function reproduces golden 3-d coefficients") {
    const ModeSum ms = lp_partition_function(slice_volume(lp3d_constraints(), lp3d_objective()));
    REQUIRE(ms.modes.size() == 4);
    const Vec gammas{-5.0, 0.0, 76.0 / 7.0, 57.0 / 5.0};
    const Vec c3{4693.0 / 45510.0, -13.0 / 60.0, 637.0 / 444.0, -325.0 / 246.0};
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(ms.modes[i].gamma == doctest::Approx(gammas[i]).epsilon(1e-9));
        CHECK(ms.modes[i].coeffs[3] == doctest::Approx(c3[i]).epsilon(1e-6));
    }
}

TEST_CASE("unit slab mode sum") {
    SliceVolumeFunction sv;
    sv.breakpoints = {0.0, 1.0};
    sv.pieces = {{1.0}};
    const ModeSum ms = lp_partition_function(sv);
    REQUIRE(ms.modes.size() == 2);
    CHECK(ms.modes[0].coeffs[1] == doctest::Approx(1.0));
    CHECK(ms.modes[1].coeffs[1] == doctest::Approx(-1.0));
    // Z = (1 - e^{-beta})/beta; limit 1 as beta -> 0+
    CHECK(eval_Z(ms, 2.0) == doctest::Approx((1.0 - std::exp(-2.0)) / 2.0).epsilon(1e-12));
    CHECK(eval_Z(ms, 1e-8) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("eval_Z matches the golden closed form and quadrature") {
    const ModeSum ms = golden_2d_modes();
    const SliceVolumeFunction sv = slice_volume(lp2d_constraints(), lp2d_objective());
    CHECK(eval_Z(ms, 1.0) == doctest::Approx(2.341766).epsilon(1e-6));
    for (double beta : {0.1, 1.0, 10.0}) {
        CHECK(eval_Z(ms, beta) == doctest::Approx(golden_2d_reference_Z(beta)).epsilon(1e-12));
        // oracle: adaptive quadrature of the slice volume function
        const double quad = oracles::integrate_panels(
            [&](double o) { return sv.value(o) * std::exp(-beta * o); }, 0.0, 36.0, 72,
            1e-12 * golden_2d_reference_Z(beta));
        CHECK(eval_Z(ms, beta) == doctest::Approx(quad).epsilon(1e-8));
        CHECK(log_Z(ms, beta) == doctest::Approx(std::log(quad)).epsilon(1e-8));
    }
    CHECK_THROWS_AS(eval_Z(ms, 0.0), Error);
    CHECK_THROWS_AS(eval_Z(ms, -1.0), Error);
}

TEST_CASE("single mode pi/beta behaves like the isotropic quadratic") {
    ModeSum ms;
    ms.modes = {{0.0, {0.0, 3.14159265358979323846}}};
    CHECK(eval_Z(ms, 2.0) == doctest::Approx(3.14159265358979323846 / 2.0));
    CHECK(mean_objective(ms, 2.0) == doctest::Approx(0.5));
    CHECK(variance(ms, 2.0) == doctest::Approx(0.25));
}

TEST_CASE("moments agree with finite differences of log Z") {
    const ModeSum ms = golden_2d_modes();
    for (double beta : {0.3, 1.0, 3.0, 20.0}) {
        const double h = 1e-5 * beta;
        const auto logz = [&](double b) { return log_Z(ms, b); };
        const double fd_mean = -oracles::central_difference(logz, beta, h);
        const double fd_var = oracles::second_difference(logz, beta, h);
        CHECK(mean_objective(ms, beta) == doctest::Approx(fd_mean).epsilon(1e-5));
        CHECK(variance(ms, beta) == doctest::Approx(fd_var).epsilon(1e-4));
    }
}

TEST_CASE("golden LP moments: limits and monotonicity") {
    const ModeSum ms = golden_2d_modes();
    CHECK(mean_objective(ms, 1.0) == doctest::Approx(1.8452886).epsilon(1e-6));
    CHECK(mean_objective(ms, 1000.0) == doctest::Approx(0.002).epsilon(1e-3)); // -> Gamma_1 + nT
    double prev = mean_objective(ms, 0.01);
    for (double beta : {0.03, 0.1, 0.3, 1.0, 3.0, 10.0, 100.0}) {
        const double cur = mean_objective(ms, beta);
        CHECK(cur <= prev + 1e-12);
        CHECK(variance(ms, beta) >= 0.0);
        prev = cur;
    }
    // low-T asymptote <O> -> Gamma_1 + n T with n = 2
    const double t = 1e-3;
    CHECK(mean_objective(ms, 1.0 / t) == doctest::Approx(2.0 * t).epsilon(0.02));
}

TEST_CASE("qp_partition_function closed forms") {
    SUBCASE("isotropic 2-d gives pi/beta") {
        Matrix a = Matrix::identity(2);
        a(0, 0) = a(1, 1) = 2.0;
        const QuadraticObjective q(a, {0.0, 0.0});
        for (double beta : {0.5, 1.0, 2.0}) {
            const auto t = qp_partition_function(q, beta);
            CHECK(std::exp(t.log_z) == doctest::Approx(3.14159265358979323846 / beta).epsilon(1e-12));
        }
        CHECK(qp_slice_volume(q, 0.7) == doctest::Approx(3.14159265358979323846).epsilon(1e-12));
    }
    SUBCASE("equipartition in 3-d") {
        const QuadraticObjective q(Matrix::identity(3), {0.0, 0.0, 0.0});
        const auto t = qp_partition_function(q, 10.0);
        CHECK(t.mean == doctest::Approx(0.15).epsilon(1e-12)); // NT/2 with N=3, T=0.1
    }
    SUBCASE("general 2-d QP vs adaptive quadrature") {
        Matrix a(2, 2);
        a(0, 0) = 1.0;
        a(1, 1) = 4.0;
        const QuadraticObjective q(a, {1.0, 0.0});
        const double beta = 1.0;
        const auto t = qp_partition_function(q, beta);
        const double w = 14.0;
        const double quad = oracles::integrate2d(
            [&](double x, double y) {
                return std::exp(-beta * (0.5 * (x * x + 4.0 * y * y) - x));
            },
            q.minimizer[0] - w, q.minimizer[0] + w, q.minimizer[1] - w, q.minimizer[1] + w, 1e-10);
        CHECK(t.log_z == doctest::Approx(std::log(quad)).epsilon(1e-6));
    }
    SUBCASE("beta must be positive") {
        const QuadraticObjective q(Matrix::identity(2), {0.0, 0.0});
        CHECK_THROWS_AS(qp_partition_function(q, 0.0), Error);
    }
}

TEST_CASE("qp_slice_volume scaling and thin-shell oracle") {
    const QuadraticObjective q(Matrix::identity(3), {0.0, 0.0, 0.0});
    SUBCASE("below the minimum is zero") { CHECK(qp_slice_volume(q, -0.1) == 0.0); }
    SUBCASE("n=2 constant in O") {
        Matrix a(2, 2);
        a(0, 0) = 3.0;
        a(1, 1) = 0.5;
        const QuadraticObjective q2(a, {0.2, -0.1});
        CHECK(qp_slice_volume(q2, q2.o_min + 1.0) ==
              doctest::Approx(qp_slice_volume(q2, q2.o_min + 2.5)).epsilon(1e-12));
    }
    SUBCASE("thin shell Monte Carlo at O=1") {
        // Omega(1) for O = |x|^2/2: (2pi)^{3/2}/Gamma(3/2) * 1^{1/2}
        std::mt19937_64 rng(5);
        std::uniform_real_distribution<double> u(-2.0, 2.0);
        const double h = 0.01;
        const long n_draws = 2000000;
        long hits = 0;
        for (long i = 0; i < n_draws; ++i) {
            const Vec x{u(rng), u(rng), u(rng)};
            const double o = 0.5 * (x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
            if (std::abs(o - 1.0) <= 0.5 * h) ++hits;
        }
        const double box = 64.0;
        const double p = double(hits) / double(n_draws);
        const double omega_mc = p * box / h;
        const double sigma = box / h * std::sqrt(p * (1.0 - p) / double(n_draws));
        CHECK(std::abs(omega_mc - qp_slice_volume(q, 1.0)) <= 3.0 * sigma);
    }
}

TEST_CASE("qp slice volume integrates back to the qp partition function") {
    Matrix a(3, 3);
    a(0, 0) = 1.0;
    a(1, 1) = 2.5;
    a(2, 2) = 0.7;
    a(0, 1) = a(1, 0) = 0.3;
    const QuadraticObjective q(a, {0.4, -0.2, 1.0});
    for (double beta : {0.5, 2.0}) {
        const double z = oracles::integrate_panels(
            [&](double o) { return qp_slice_volume(q, o) * std::exp(-beta * o); }, q.o_min,
            q.o_min + 120.0 / beta, 60, 1e-10);
        CHECK(std::log(z) == doctest::Approx(qp_partition_function(q, beta).log_z).epsilon(1e-7));
    }
}

TEST_CASE("volume models") {
    SUBCASE("power law low-T mean") {
        const PowerLawModel m{1.0, 4.0, 2.0, 1.0};
        const auto ev = volume_model_Z(m, 10.0); // T = 0.1
        CHECK(ev.mean == doctest::Approx(1.2).epsilon(1e-12));
        // Z = gamma Gamma(2) e^{-beta} beta^{-2}
        CHECK(ev.log_z == doctest::Approx(std::log(std::exp(-10.0) / 100.0)).epsilon(1e-10));
    }
    SUBCASE("power law Z vs quadrature") {
        const PowerLawModel m{2.0, 3.0, 2.0, 0.5};
        for (double beta : {0.5, 2.0}) {
            const double quad = oracles::integrate_panels(
                [&](double o) { return 2.0 * std::pow(o - 0.5, 0.5) * std::exp(-beta * o); }, 0.5,
                0.5 + 60.0 / beta, 30, 1e-12);
            CHECK(volume_model_Z(m, beta).z == doctest::Approx(quad).epsilon(1e-6));
        }
    }
    SUBCASE("expansion slopes on both sides of t_star") {
        const ExpansionModel m{1.0, 1.0, 1.0, 0.0, 1.0, 2.0};
        const double t_small = 1e-3;
        CHECK(volume_model_Z(m, 1.0 / t_small).mean == doctest::Approx(t_small).epsilon(1e-3));
        const double t_large = 1e3;
        CHECK(volume_model_Z(m, 1.0 / t_large).mean == doctest::Approx(3.0 * t_large).epsilon(1e-3));
    }
    SUBCASE("expansion Z vs quadrature") {
        const ExpansionModel m{1.5, 2.0, 2.0, 0.25, 0.8, 1.0};
        for (double beta : {0.7, 3.0}) {
            const double quad = oracles::integrate_panels(
                [&](double o) {
                    const double d = o - 0.25;
                    return 1.5 * (1.0 + std::pow(d / 0.8, 1.0)) * std::exp(-beta * o);
                },
                0.25, 0.25 + 80.0 / beta, 40, 1e-12);
            CHECK(volume_model_Z(m, beta).z == doctest::Approx(quad).epsilon(1e-6));
        }
    }
    SUBCASE("two minima Z vs quadrature") {
        const TwoMinimaModel m{1.0, 0.5, 2.0, 3.0, 1.0, 0.0, 1.5};
        for (double beta : {0.5, 2.0}) {
            const double quad = oracles::integrate_panels(
                [&](double o) {
                    double v = o > 0.0 ? 1.0 * std::pow(o, 1.0) : 0.0;
                    if (o > 1.5) v += 0.5 * std::pow(o - 1.5, 2.0);
                    return v * std::exp(-beta * o);
                },
                0.0, 120.0 / beta, 40, 1e-12);
            CHECK(volume_model_Z(m, beta).z == doctest::Approx(quad).epsilon(1e-5));
        }
    }
    SUBCASE("piecewise Z and mean vs quadrature") {
        const PiecewiseModel m{1.0, 0.7, 2.0, 4.0, 1.0, 2.0, 0.0, 1.0};
        const auto omega = [&](double o) {
            if (o <= 0.0) return 0.0;
            if (o < 1.0) return std::pow(o, 1.0);
            return 1.0 + 0.7 * std::pow(o - 1.0, 1.0);
        };
        for (double beta : {0.4, 1.0, 5.0}) {
            const double z = oracles::integrate_panels(
                [&](double o) { return omega(o) * std::exp(-beta * o); }, 0.0, 200.0 / beta, 50,
                1e-13);
            const double zo = oracles::integrate_panels(
                [&](double o) { return o * omega(o) * std::exp(-beta * o); }, 0.0, 200.0 / beta, 50,
                1e-13);
            const auto ev = volume_model_Z(m, beta);
            CHECK(ev.z == doctest::Approx(z).epsilon(1e-7));
            CHECK(ev.mean == doctest::Approx(zo / z).epsilon(1e-7));
        }
    }
    SUBCASE("piecewise asymptotes") {
        const PiecewiseModel m{1.0, 1.0, 2.0, 6.0, 2.0, 2.0, 0.0, 1.0};
        // low T: o_min + (n_lo/nu_lo) T
        CHECK(volume_model_Z(m, 1e3).mean == doctest::Approx(1e-3).epsilon(1e-2));
        // high T: o_star + (n_hi/nu_hi) T
        const double t_hot = 300.0;
        CHECK(volume_model_Z(m, 1.0 / t_hot).mean ==
              doctest::Approx(1.0 + 3.0 * t_hot).epsilon(1e-2));
    }
    SUBCASE("parameter validation") {
        CHECK_THROWS_AS(volume_model_Z(PowerLawModel{-1.0, 2.0, 1.0, 0.0}, 1.0), Error);
        CHECK_THROWS_AS(volume_model_Z(TwoMinimaModel{1.0, 1.0, 2.0, 2.0, 1.0, 1.0, 0.5}, 1.0), Error);
        CHECK_THROWS_AS(volume_model_Z(PiecewiseModel{1.0, 1.0, 2.0, 2.0, 1.0, 1.0, 1.0, 0.5}, 1.0), Error);
        CHECK_THROWS_AS(volume_model_Z(PowerLawModel{1.0, 2.0, 1.0, 0.0}, 0.0), Error);
    }
}

TEST_CASE("apply_shift") {
    const ModeSum ms = golden_2d_modes();
    SUBCASE("zero shift is the identity") {
        const ModeSum same = apply_shift(ms, 0.0);
        for (double beta : {0.2, 1.0, 5.0})
            CHECK(same.eval(beta) == doctest::Approx(ms.eval(beta)).epsilon(1e-14));
    }
    SUBCASE("shift scales Z and moves the mean exactly") {
        const double delta = 3.25;
        const ModeSum shifted = apply_shift(ms, delta);
        for (double beta : {0.2, 1.0, 5.0}) {
            CHECK(shifted.eval(beta) ==
                  doctest::Approx(std::exp(-beta * delta) * ms.eval(beta)).epsilon(1e-12));
            CHECK(mean_objective(shifted, beta) ==
                  doctest::Approx(mean_objective(ms, beta) + delta).epsilon(1e-12));
            CHECK(variance(shifted, beta) == doctest::Approx(variance(ms, beta)).epsilon(1e-10));
        }
    }
}

TEST_CASE("apply_rescale satisfies the eval identity") {
    const ModeSum ms = golden_2d_modes();
    SUBCASE("alpha = 2 at beta = 1") {
        const ModeSum r = apply_rescale(ms, 2.0);
        CHECK(r.eval(1.0) == doctest::Approx(0.5 * ms.eval(0.5)).epsilon(1e-12));
    }
    SUBCASE("random alpha, beta") {
        std::mt19937_64 rng(17);
        std::uniform_real_distribution<double> ua(0.2, 5.0);
        std::uniform_real_distribution<double> ub(0.05, 8.0);
        for (int trial = 0; trial < 20; ++trial) {
            const double alpha = ua(rng);
            const double beta = ub(rng);
            const ModeSum r = apply_rescale(ms, alpha);
            CHECK(r.eval(beta) == doctest::Approx(ms.eval(beta / alpha) / alpha).epsilon(1e-11));
        }
    }
    SUBCASE("alpha must be positive") { CHECK_THROWS_AS(apply_rescale(ms, 0.0), Error); }
}

TEST_CASE("objective offset commutes with the geometric route") {
    const double delta = 2.75;
    const ModeSum shifted_algebra = apply_shift(golden_2d_modes(), delta);
    LinearObjective obj = lp2d_objective();
    obj.d0 += delta;
    const ModeSum shifted_geometry = lp_partition_function(slice_volume(lp2d_constraints(), obj));
    REQUIRE(shifted_geometry.modes.size() == shifted_algebra.modes.size());
    for (std::size_t i = 0; i < shifted_algebra.modes.size(); ++i) {
        CHECK(shifted_geometry.modes[i].gamma ==
              doctest::Approx(shifted_algebra.modes[i].gamma).epsilon(1e-10));
        CHECK(shifted_geometry.modes[i].coeffs[2] ==
              doctest::Approx(shifted_algebra.modes[i].coeffs[2]).epsilon(1e-8));
    }
}

TEST_CASE("rotation invariance of the 3-d mode sum") {
    // rotate the transverse plane about the objective axis
    const LinearObjective obj = lp3d_objective();
    const ModeSum base = lp_partition_function(slice_volume(lp3d_constraints(), obj));

    const double cn = norm(obj.c);
    const Vec axis = scaled(obj.c, 1.0 / cn);
    const double theta = 0.7;
    // Rodrigues rotation about the unit objective direction
    Matrix rot(3, 3);
    const double ct = std::cos(theta), st = std::sin(theta);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
            const double kk = axis[i] * axis[j];
            rot(i, j) = ct * (i == j ? 1.0 : 0.0) + (1.0 - ct) * kk;
        }
    rot(0, 1) -= st * axis[2];
    rot(0, 2) += st * axis[1];
    rot(1, 0) += st * axis[2];
    rot(1, 2) -= st * axis[0];
    rot(2, 0) -= st * axis[1];
    rot(2, 1) += st * axis[0];

    // x' = R x leaves c.x invariant (R c = c): transform constraint normals
    ConstraintSet cs = lp3d_constraints();
    for (auto& r : cs.rows) r.h = matvec(rot, r.h);
    const Vec c_rot = matvec(rot, obj.c);
    for (std::size_t i = 0; i < 3; ++i) CHECK(c_rot[i] == doctest::Approx(obj.c[i]).epsilon(1e-12));

    const ModeSum rotated = lp_partition_function(slice_volume(cs, LinearObjective(c_rot, obj.d0)));
    REQUIRE(rotated.modes.size() == base.modes.size());
    for (std::size_t i = 0; i < base.modes.size(); ++i) {
        CHECK(rotated.modes[i].gamma == doctest::Approx(base.modes[i].gamma).epsilon(1e-8));
        CHECK(rotated.modes[i].coeffs[3] ==
              doctest::Approx(base.modes[i].coeffs[3]).epsilon(1e-8));
    }
}

TEST_CASE("random LP mode sums track the quadrature oracle") {
    std::mt19937_64 rng(4242);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    int tested = 0;
    for (int trial = 0; trial < 8; ++trial) {
        const std::size_t n = 2 + std::size_t(trial % 2);
        ConstraintSet cs;
        cs.box = BoxBounds{Vec(n, -1.0), Vec(n, 1.0)};
        for (int j = 0; j < 3; ++j) {
            HalfSpace hs;
            hs.h.resize(n);
            double nn = 0.0;
            for (double& v : hs.h) {
                v = u(rng);
                nn += v * v;
            }
            if (nn < 1e-4) hs.h[0] += 1.0;
            hs.d = -0.5 - 0.4 * std::abs(u(rng));
            cs.rows.push_back(hs);
        }
        Vec c(n);
        double cn = 0.0;
        for (double& v : c) {
            v = u(rng);
            cn += v * v;
        }
        if (cn < 1e-4) c[0] += 1.0;
        const LinearObjective obj(c, u(rng));

        ModeSum ms;
        SliceVolumeFunction sv;
        try {
            sv = slice_volume(cs, obj);
            ms = lp_partition_function(sv);
        } catch (const Error&) {
            continue;
        }
        ++tested;
        for (double beta : {0.1, 1.0, 10.0}) {
            const double scale = std::abs(eval_Z(ms, beta));
            double quad = 0.0;
            for (std::size_t k = 0; k + 1 < sv.breakpoints.size(); ++k)
                quad += oracles::integrate(
                    [&](double o) { return sv.value(o) * std::exp(-beta * o); },
                    sv.breakpoints[k], sv.breakpoints[k + 1],
                    1e-12 * scale / double(sv.pieces.size()));
            CHECK(eval_Z(ms, beta) == doctest::Approx(quad).epsilon(1e-8));
        }
        // low-T asymptote: <O> - Gamma_1 -> n T
        const double t = 1e-3;
        CHECK(mean_objective(ms, 1.0 / t) - ms.modes.front().gamma ==
              doctest::Approx(double(n) * t).epsilon(0.02));
    }
    CHECK(tested >= 6);
}

TEST_CASE("discrete partition function") {
    std::vector<Vec> points{{0.0}, {1.0}};
    BlackBoxObjective bb{[](const Vec& x) { return x[0]; }, "x", 1};
    const ModeSum ms = discrete_partition_function(points, Objective(bb));
    REQUIRE(ms.modes.size() == 2);
    // Z(ln 2) = 1 + e^{-ln 2} = 1.5
    CHECK(eval_Z(ms, std::log(2.0)) == doctest::Approx(1.5).epsilon(1e-12));
}

TEST_CASE("mode sum validation rejects malformed sums") {
    ModeSum bad;
    bad.modes = {{1.0, {0.0, 1.0}}, {1.0, {0.0, 1.0}}};
    CHECK_THROWS_AS(bad.validate(), Error);
}
