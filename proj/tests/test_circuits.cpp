#include <doctest.h>

#include <cmath>
#include <set>

#include "qumulant/catalog.hpp"
#include "qumulant/circuits.hpp"
#include "qumulant/cluster.hpp"
#include "qumulant/json_io.hpp"
#include "qumulant/qstate.hpp"
#include "qumulant/random.hpp"

using namespace qumulant;
using catalog::Family;
using catalog::StateSpec;
using circuits::Circuit;
using circuits::Gate;
using qstate::StateVector;

TEST_CASE("single gates") {
    SUBCASE("H on |0>") {
        auto s = circuits::apply_gate(StateVector::basis(1, 0), Gate::h(1));
        CHECK(std::abs(s[0] - cxd{1.0 / std::sqrt(2.0), 0}) < 1e-12);
        CHECK(std::abs(s[1] - cxd{1.0 / std::sqrt(2.0), 0}) < 1e-12);
    }
    SUBCASE("CNOT completes a Bell preparation") {
        auto s = circuits::apply_gate(StateVector::basis(2, 0), Gate::h(1));
        s = circuits::apply_gate(s, Gate::cnot(1, 2));
        CHECK(qstate::fidelity(s, catalog::bell(1)) == doctest::Approx(1).epsilon(1e-12));
    }
    SUBCASE("H on particle 2 of the first Bell state gives its primed image") {
        auto s = circuits::apply_gate(catalog::bell(1), Gate::h(2));
        CHECK(qstate::fidelity(s, catalog::bell_primed(1)) == doctest::Approx(1).epsilon(1e-12));
    }
    SUBCASE("reversed-target two-qubit gates") {
        // control above target and below target must agree with algebra
        auto s = circuits::apply_gate(StateVector::basis(2, 0b01), Gate::cnot(2, 1));
        CHECK(std::abs(s[0b11] - cxd{1, 0}) < 1e-12);
    }
    SUBCASE("all gate matrices are unitary") {
        CHECK(Gate::h(1).is_unitary());
        CHECK(Gate::y(1).is_unitary());
        CHECK(Gate::phase(1, 0.7).is_unitary());
        CHECK(Gate::cnot(1, 2).is_unitary());
        CHECK(Gate::cz(1, 2).is_unitary());
        CHECK(Gate::cz(1, 2, 0).is_unitary());
        CHECK(Gate::cnot_on(1, 2, 0).is_unitary());
    }
    SUBCASE("bad targets rejected") {
        CHECK_THROWS_AS(circuits::apply_gate(StateVector::basis(2, 0), Gate::h(3)),
                        std::invalid_argument);
        CHECK_THROWS_AS(circuits::apply_gate(StateVector::basis(2, 0), Gate::cnot(1, 1)),
                        std::invalid_argument);
    }
}

TEST_CASE("run_circuit") {
    SUBCASE("empty circuit is the identity") {
        auto rng = seeded_rng(4);
        auto s = haar_random_state(2, rng);
        auto t = circuits::run_circuit(Circuit{2, {}}, s);
        for (std::size_t i = 0; i < s.dim(); ++i) CHECK(std::abs(s[i] - t[i]) < 1e-12);
    }
    SUBCASE("Bell and GHZ ladders") {
        Circuit bell{2, {Gate::h(1), Gate::cnot(1, 2)}};
        CHECK(qstate::fidelity(circuits::run_circuit(bell, StateVector::basis(2, 0)),
                               catalog::bell(1)) == doctest::Approx(1).epsilon(1e-12));
        Circuit ghz{3, {Gate::h(1), Gate::cnot(1, 2), Gate::cnot(1, 3)}};
        CHECK(qstate::fidelity(circuits::run_circuit(ghz, StateVector::basis(3, 0)),
                               catalog::ghz_state(3, 1)) == doctest::Approx(1).epsilon(1e-12));
    }
    SUBCASE("size mismatch rejected") {
        CHECK_THROWS_AS(circuits::run_circuit(Circuit{3, {}}, StateVector::basis(2, 0)),
                        std::invalid_argument);
    }
    SUBCASE("norm preserved through a random circuit") {
        auto rng = seeded_rng(13);
        auto s = haar_random_state(3, rng);
        Circuit c{3, {Gate::h(2), Gate::cnot(2, 3), Gate::z(1), Gate::phase(3, 1.1),
                      Gate::cnot(3, 1), Gate::y(2)}};
        CHECK(circuits::run_circuit(c, s).is_normalized(1e-12));
    }
}

TEST_CASE("equal up to global phase") {
    auto rng = seeded_rng(6);
    auto s = haar_random_state(2, rng);
    auto t = s;
    const cxd phase = std::exp(cxd{0, 1.234});
    for (std::size_t i = 0; i < t.dim(); ++i) t[i] *= phase;
    CHECK(circuits::equal_up_to_global_phase(s, t, 1e-9));
    CHECK_FALSE(circuits::equal_up_to_global_phase(StateVector::basis(1, 0),
                                                   StateVector::basis(1, 1), 1e-9));
}

TEST_CASE("preparation circuits reproduce their catalog states") {
    auto verify = [](const StateSpec& spec) {
        const Circuit c = circuits::preparation_circuit(spec);
        for (const Gate& g : c.gates) CHECK(g.is_unitary(1e-10));
        const auto out = circuits::run_circuit(c, StateVector(c.num_qubits));
        const auto want = catalog::make_state(spec);
        CHECK_MESSAGE(circuits::equal_up_to_global_phase(out, want, 1e-9),
                      "family ", catalog::to_string(spec));
    };

    for (int i = 1; i <= 4; ++i) verify({Family::Bell, i, 0});
    for (int n = 2; n <= 5; ++n) {
        for (int i = 1; i <= (1 << n); ++i) verify({Family::GHZ, i, n});
    }
    for (int n = 2; n <= 5; ++n) verify({Family::W, 1, n});
    for (int i = 1; i <= 8; ++i) verify({Family::Zeta, i, 0});
    for (int i = 1; i <= 16; ++i) verify({Family::Chi4, i, 0});
    for (int i = 1; i <= 32; ++i) verify({Family::Varphi5, i, 0});
}

TEST_CASE("unsupported preparation families are rejected") {
    CHECK_THROWS_AS(circuits::preparation_circuit({Family::Brown5, 1, 0}), std::invalid_argument);
    CHECK_THROWS_AS(circuits::preparation_circuit({Family::W, 1, 6}), std::invalid_argument);
}

TEST_CASE("hadamard conjugation duality with the signature map") {
    auto rng = seeded_rng(88);
    auto s = haar_random_state(3, rng);
    auto base = cluster::correlation_tensor(s);
    for (int particle = 1; particle <= 3; ++particle) {
        auto conj = cluster::correlation_tensor(circuits::apply_gate(s, Gate::h(particle)));
        auto predicted = cluster::hadamard_signature_map(base, particle);
        std::set<std::string> a, b;
        for (auto& [k, v] : conj.entries) a.insert(k);
        for (auto& [k, v] : predicted.entries) b.insert(k);
        CHECK(a == b);
    }
}

TEST_CASE("state and density JSON round trips") {
    auto rng = seeded_rng(99);
    const auto s = haar_random_state(3, rng);
    const auto s2 = json_io::state_from_json(json_io::to_json(s));
    CHECK(qstate::fidelity(s, s2) == doctest::Approx(1).epsilon(1e-12));

    const auto rho = qstate::partial_trace(s, {1, 2});
    const auto rho2 = json_io::density_from_json(json_io::to_json(rho));
    for (std::size_t i = 0; i < rho.entries().size(); ++i) {
        CHECK(std::abs(rho.entries()[i] - rho2.entries()[i]) < 1e-12);
    }
}

TEST_CASE("circuit JSON round trip") {
    const Circuit c = circuits::preparation_circuit({Family::Varphi5, 10, 0});
    const auto j = json_io::to_json(c);
    const Circuit back = json_io::circuit_from_json(j);
    REQUIRE(back.gates.size() == c.gates.size());
    const auto a = circuits::run_circuit(c, StateVector(5));
    const auto b = circuits::run_circuit(back, StateVector(5));
    for (std::size_t i = 0; i < a.dim(); ++i) CHECK(std::abs(a[i] - b[i]) < 1e-12);
}
