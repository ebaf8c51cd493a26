// Gate-level engine and verified preparation circuits for catalog states.
// Preparation circuits are derived from each family's algebraic structure
// and accepted solely on the state-equality oracle (fidelity up to global
// phase), not on any particular printed layout.

#pragma once

#include <string>
#include <vector>

#include "qumulant/catalog.hpp"
#include "qumulant/qstate.hpp"

namespace qumulant::circuits {

using qstate::StateVector;

enum class GateKind { H, X, Y, Z, CNOT, Phase, Custom };

struct Gate {
    GateKind kind = GateKind::H;
    std::vector<int> targets;   // 1 or 2 particle indices; CNOT: {control, target}
    double angle = 0.0;         // Phase only
    std::vector<cxd> matrix;    // Custom only: row-major 2x2 (4) or 4x4 (16)

    static Gate h(int q) { return {GateKind::H, {q}, 0.0, {}}; }
    static Gate x(int q) { return {GateKind::X, {q}, 0.0, {}}; }
    static Gate y(int q) { return {GateKind::Y, {q}, 0.0, {}}; }
    static Gate z(int q) { return {GateKind::Z, {q}, 0.0, {}}; }
    static Gate cnot(int control, int target) { return {GateKind::CNOT, {control, target}, 0.0, {}}; }
    static Gate phase(int q, double angle) { return {GateKind::Phase, {q}, angle, {}}; }
    static Gate custom1(int q, std::vector<cxd> m) { return {GateKind::Custom, {q}, 0.0, std::move(m)}; }
    static Gate custom2(int q1, int q2, std::vector<cxd> m) {
        return {GateKind::Custom, {q1, q2}, 0.0, std::move(m)};
    }
    // Controlled phase/not with selectable control polarity (fire on 0 or 1).
    static Gate cz(int a, int b, int fire_on = 1);
    static Gate cnot_on(int control, int target, int fire_on);

    std::vector<cxd> unitary() const;  // dense matrix of this gate
    bool is_unitary(double tol = kTol) const;
};

struct Circuit {
    int num_qubits = 0;
    std::vector<Gate> gates;
};

StateVector apply_gate(const StateVector& s, const Gate& g);
StateVector run_circuit(const Circuit& c, const StateVector& initial);

// true iff |<a|b>| > 1 - tol.
bool equal_up_to_global_phase(const StateVector& a, const StateVector& b, double tol = 1e-9);

// Supported families: Bell, GHZ, W (N <= 5), Zeta, Chi4, Varphi5.
// Postcondition (oracle-tested): running on |0...0> reproduces
// catalog::make_state(spec) up to global phase.
Circuit preparation_circuit(const catalog::StateSpec& spec);

std::string to_string(GateKind k);
GateKind gate_kind_from_string(const std::string& name);

}  // namespace qumulant::circuits
