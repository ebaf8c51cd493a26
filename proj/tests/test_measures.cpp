#include <doctest.h>

#include <cmath>

#include "qumulant/catalog.hpp"
#include "qumulant/cluster.hpp"
#include "qumulant/measures.hpp"
#include "qumulant/qstate.hpp"
#include "qumulant/random.hpp"

using namespace qumulant;
using qstate::DensityMatrix;
using qstate::PauliString;
using qstate::StateVector;

namespace {

// Haar-ish single-qubit unitary from two random complex rows via
// Gram-Schmidt; good enough for invariance tests.
std::vector<cxd> random_1q_unitary(std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    cxd a{g(rng), g(rng)}, b{g(rng), g(rng)};
    double n = std::sqrt(std::norm(a) + std::norm(b));
    a /= n;
    b /= n;
    // second row orthogonal to (a, b): (-conj(b), conj(a))
    return {a, b, -std::conj(b), std::conj(a)};
}

}  // namespace

TEST_CASE("signed concurrence of the Bell table") {
    CHECK(measures::concurrence_signed(catalog::bell(4)) == doctest::Approx(-1).epsilon(1e-12));
    CHECK(measures::concurrence_signed(catalog::bell(3)) == doctest::Approx(1).epsilon(1e-12));
    CHECK(measures::concurrence_signed(catalog::bell(2)) == doctest::Approx(1).epsilon(1e-12));
    CHECK(measures::concurrence_signed(catalog::bell(1)) == doctest::Approx(-1).epsilon(1e-12));
    CHECK(measures::concurrence_signed(StateVector::basis(2, 0)) ==
          doctest::Approx(0).epsilon(1e-12));
    CHECK_THROWS_AS(measures::concurrence_signed(StateVector::basis(3, 0)), std::invalid_argument);
}

TEST_CASE("signed concurrence equals the yy cumulant on Bell states") {
    for (int i = 1; i <= 4; ++i) {
        auto b = catalog::bell(i);
        CHECK(measures::concurrence_signed(b) ==
              doctest::Approx(cluster::cumulant(b, PauliString::parse("yy"))).epsilon(1e-10));
    }
}

TEST_CASE("Wootters concurrence") {
    SUBCASE("maximally entangled pure pair") {
        CHECK(measures::wootters_concurrence(DensityMatrix::from_pure(catalog::bell(1))) ==
              doctest::Approx(1).epsilon(1e-9));
    }
    SUBCASE("classically correlated mixture is unentangled") {
        auto rho = DensityMatrix::mixture(
            {{0.5, StateVector::basis(2, 0)}, {0.5, StateVector::basis(2, 3)}});
        CHECK(measures::wootters_concurrence(rho) == doctest::Approx(0).epsilon(1e-9));
    }
    SUBCASE("reduced pair of the W state follows the 2/N law") {
        for (int n : {3, 4, 5}) {
            auto rho = qstate::partial_trace(catalog::w_state(n), {1, 2});
            CHECK(measures::wootters_concurrence(rho) ==
                  doctest::Approx(2.0 / n).epsilon(1e-8));
        }
    }
}

TEST_CASE("three tangle") {
    SUBCASE("GHZ is fully three-way entangled") {
        auto rep = measures::three_tangle(catalog::ghz_state(3, 1));
        CHECK(rep.tau == doctest::Approx(1).epsilon(1e-9));
        CHECK(rep.tau_pair_form == doctest::Approx(1).epsilon(1e-9));
        CHECK(rep.c_sq_ab == doctest::Approx(0).epsilon(1e-9));
    }
    SUBCASE("every zeta member has unit tangle") {
        for (int i = 1; i <= 8; ++i) {
            CHECK(measures::three_tangle(catalog::zeta(i)).tau == doctest::Approx(1).epsilon(1e-8));
        }
    }
    SUBCASE("product and W states have zero tangle") {
        CHECK(measures::three_tangle(StateVector::basis(3, 0)).tau ==
              doctest::Approx(0).epsilon(1e-9));
        auto rep = measures::three_tangle(catalog::w_state(3));
        CHECK(rep.tau == doctest::Approx(0).epsilon(1e-8));
        CHECK(rep.tau_pair_form == doctest::Approx(0).epsilon(1e-8));
        CHECK(rep.c_sq_ab == doctest::Approx(4.0 / 9).epsilon(1e-8));
    }
    SUBCASE("the two printed expressions agree on random pure states") {
        auto rng = seeded_rng(42);
        for (int rep = 0; rep < 25; ++rep) {
            auto s = haar_random_state(3, rng);
            auto r = measures::three_tangle(s);
            CHECK(r.tau == doctest::Approx(r.tau_pair_form).epsilon(1e-8));
            CHECK(r.tau == doctest::Approx(r.c_sq_a_bc - r.c_sq_ab - r.c_sq_ac).epsilon(1e-12));
            CHECK(r.tau > -1e-8);
            CHECK(r.tau < 1.0 + 1e-8);
        }
    }
    SUBCASE("invariant under local unitaries") {
        auto rng = seeded_rng(43);
        auto s = haar_random_state(3, rng);
        const double tau = measures::three_tangle(s).tau;
        for (int rep = 0; rep < 20; ++rep) {
            auto t = s;
            for (int particle = 1; particle <= 3; ++particle) {
                t = qstate::apply_unitary(t, {particle}, random_1q_unitary(rng));
            }
            CHECK(measures::three_tangle(t).tau == doctest::Approx(tau).epsilon(1e-8));
        }
    }
    SUBCASE("wrong size rejected") {
        CHECK_THROWS_AS(measures::three_tangle(StateVector::basis(2, 0)), std::invalid_argument);
    }
}

TEST_CASE("W average squared concurrence") {
    CHECK(measures::w_avg_sq_concurrence(3) == doctest::Approx(4.0 / 9).epsilon(1e-15));
    CHECK(measures::w_avg_sq_concurrence(4) == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(measures::w_avg_sq_concurrence(5) == doctest::Approx(0.16).epsilon(1e-15));
    CHECK_THROWS_AS(measures::w_avg_sq_concurrence(1), std::invalid_argument);
}
