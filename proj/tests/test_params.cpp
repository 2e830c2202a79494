#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "crane/params.hpp"

using crane::CraneParams;
using crane::LoadState;
using crane::TransportTask;

TEST_CASE("CraneParams derives omega consistently") {
    const CraneParams p(10.0, 5.0, 5.0, 15.0, 9.8);
    CHECK(p.omega == doctest::Approx(std::sqrt(9.8 / 5.0)).epsilon(1e-15));
    CHECK(p.omega * p.omega * p.l == doctest::Approx(p.g).epsilon(1e-14));
    CHECK(p.omega2() * p.l == doctest::Approx(p.g).epsilon(1e-15));
}

TEST_CASE("CraneParams rejects unphysical values") {
    CHECK_THROWS_AS(CraneParams(0.0, 0.0, 5.0), std::invalid_argument);
    CHECK_THROWS_AS(CraneParams(-1.0, 0.0, 5.0), std::invalid_argument);
    CHECK_THROWS_AS(CraneParams(1.0, 0.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(CraneParams(1.0, -2.0, 5.0), std::invalid_argument);
    CHECK_THROWS_AS(CraneParams(1.0, 0.0, 5.0, -0.1), std::invalid_argument);
    CHECK_THROWS_AS(CraneParams(1.0, 0.0, 5.0, 0.0, 0.0), std::invalid_argument);
}

TEST_CASE("TransportTask validation") {
    CHECK_NOTHROW(TransportTask(0.0, 1.0));
    CHECK_NOTHROW(TransportTask(-3.0, 1.0));
    CHECK_THROWS_AS(TransportTask(1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(TransportTask(1.0, -2.0), std::invalid_argument);
    CHECK_THROWS_AS(TransportTask(std::nan(""), 1.0), std::invalid_argument);
    CHECK_THROWS_AS(TransportTask(INFINITY, 1.0), std::invalid_argument);
}

TEST_CASE("LoadState representations stay linked") {
    const CraneParams p(1.0, 0.0, 5.0);

    const LoadState a = LoadState::from_angle(0.3, 0.2, p, 1.5, 2.0);
    CHECK(a.q == doctest::Approx(5.0 * std::sin(0.3)).epsilon(1e-15));
    CHECK(a.q_dot == doctest::Approx(5.0 * 0.2 * std::cos(0.3)).epsilon(1e-15));
    CHECK(a.X - a.q == doctest::Approx(2.0).epsilon(1e-15));

    const LoadState b = LoadState::from_deviation(a.q, a.q_dot, p, 1.5, 2.0);
    CHECK(b.theta == doctest::Approx(0.3).epsilon(1e-13));
    CHECK(b.theta_dot == doctest::Approx(0.2).epsilon(1e-13));

    const LoadState rest = LoadState::at_rest();
    CHECK(rest.theta == 0.0);
    CHECK(rest.q == 0.0);
}

TEST_CASE("LoadState deviation beyond the rope length has no angle") {
    const CraneParams p(1.0, 0.0, 5.0);
    const LoadState s = LoadState::from_deviation(5.0, 0.0, p);
    CHECK(std::isnan(s.theta));
    CHECK(std::isnan(s.theta_dot));
    CHECK(s.q == 5.0);
}
