#include "qumulant/circuits.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace qumulant::circuits {

using catalog::Family;
using catalog::StateSpec;

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

std::vector<cxd> matrix_1q(GateKind k, double angle) {
    switch (k) {
        case GateKind::H: return {kInvSqrt2, kInvSqrt2, kInvSqrt2, -kInvSqrt2};
        case GateKind::X: return {0, 1, 1, 0};
        case GateKind::Y: return {0, cxd{0, -1}, cxd{0, 1}, 0};
        case GateKind::Z: return {1, 0, 0, -1};
        case GateKind::Phase: return {1, 0, 0, std::exp(cxd{0, angle})};
        default: throw std::invalid_argument("not a one-qubit gate kind");
    }
}

// Reorders a two-qubit matrix written for targets (a, b) into the matrix
// for the bit order (b, a).
std::vector<cxd> swap_qubit_order(const std::vector<cxd>& m) {
    auto flip = [](std::size_t i) { return ((i & 1) << 1) | ((i >> 1) & 1); };
    std::vector<cxd> out(16);
    for (std::size_t r = 0; r < 4; ++r) {
        for (std::size_t c = 0; c < 4; ++c) {
            out[flip(r) * 4 + flip(c)] = m[r * 4 + c];
        }
    }
    return out;
}

}  // namespace

Gate Gate::cz(int a, int b, int fire_on) {
    // Phase -1 when particle a reads fire_on and particle b reads 1.
    std::vector<cxd> m(16, cxd{0, 0});
    for (std::size_t i = 0; i < 4; ++i) {
        const int ba = static_cast<int>(i >> 1);
        const int bb = static_cast<int>(i & 1);
        m[i * 4 + i] = (ba == fire_on && bb == 1) ? cxd{-1, 0} : cxd{1, 0};
    }
    return custom2(a, b, std::move(m));
}

Gate Gate::cnot_on(int control, int target, int fire_on) {
    std::vector<cxd> m(16, cxd{0, 0});
    for (std::size_t i = 0; i < 4; ++i) {
        const int bc = static_cast<int>(i >> 1);
        const std::size_t j = (bc == fire_on) ? (i ^ 1) : i;
        m[j * 4 + i] = cxd{1, 0};
    }
    return custom2(control, target, std::move(m));
}

std::vector<cxd> Gate::unitary() const {
    switch (kind) {
        case GateKind::H:
        case GateKind::X:
        case GateKind::Y:
        case GateKind::Z:
        case GateKind::Phase:
            return matrix_1q(kind, angle);
        case GateKind::CNOT:
            return {1, 0, 0, 0,
                    0, 1, 0, 0,
                    0, 0, 0, 1,
                    0, 0, 1, 0};
        case GateKind::Custom:
            return matrix;
    }
    throw std::invalid_argument("unknown gate kind");
}

bool Gate::is_unitary(double tol) const {
    const auto m = unitary();
    const std::size_t d = (m.size() == 4) ? 2 : 4;
    for (std::size_t r = 0; r < d; ++r) {
        for (std::size_t c = 0; c < d; ++c) {
            cxd v{0, 0};
            for (std::size_t k = 0; k < d; ++k) v += std::conj(m[k * d + r]) * m[k * d + c];
            const cxd want = (r == c) ? cxd{1, 0} : cxd{0, 0};
            if (std::abs(v - want) > tol) return false;
        }
    }
    return true;
}

StateVector apply_gate(const StateVector& s, const Gate& g) {
    const int n = s.num_qubits();
    if (g.targets.empty() || g.targets.size() > 2) throw std::invalid_argument("gate needs 1 or 2 targets");
    for (int t : g.targets) {
        if (t < 1 || t > n) throw std::invalid_argument("gate target out of range");
    }
    auto m = g.unitary();
    if (g.targets.size() == 1) {
        if (m.size() != 4) throw std::invalid_argument("one-qubit gate needs a 2x2 matrix");
        return qstate::apply_unitary(s, {g.targets[0]}, m);
    }
    if (g.targets[0] == g.targets[1]) throw std::invalid_argument("gate targets must be distinct");
    if (m.size() != 16) throw std::invalid_argument("two-qubit gate needs a 4x4 matrix");
    std::vector<int> particles = g.targets;
    if (particles[0] > particles[1]) {
        std::swap(particles[0], particles[1]);
        m = swap_qubit_order(m);
    }
    return qstate::apply_unitary(s, particles, m);
}

StateVector run_circuit(const Circuit& c, const StateVector& initial) {
    if (initial.num_qubits() != c.num_qubits) throw std::invalid_argument("circuit size mismatch");
    StateVector s = initial;
    for (const Gate& g : c.gates) s = apply_gate(s, g);
    return s;
}

bool equal_up_to_global_phase(const StateVector& a, const StateVector& b, double tol) {
    if (a.num_qubits() != b.num_qubits()) throw std::invalid_argument("size mismatch");
    return std::abs(a.inner(b)) > 1.0 - tol;
}

namespace {

void append_bell(std::vector<Gate>& gates, int bell_index, int p, int q) {
    gates.push_back(Gate::h(p));
    gates.push_back(Gate::cnot(p, q));
    if (bell_index == 2 || bell_index == 4) gates.push_back(Gate::z(p));  // phi-, psi-
    if (bell_index == 3 || bell_index == 4) gates.push_back(Gate::x(q));  // psi+, psi-
}

Circuit bell_circuit(int index) {
    Circuit c{2, {}};
    append_bell(c.gates, index, 1, 2);
    return c;
}

Circuit ghz_circuit(int n, int index) {
    const int pattern = (index - 1) / 2;
    const bool minus = (index % 2 == 0);
    Circuit c{n, {}};
    c.gates.push_back(Gate::h(1));
    for (int q = 2; q <= n; ++q) c.gates.push_back(Gate::cnot(1, q));
    for (int q = 2; q <= n; ++q) {
        if ((pattern >> (n - q)) & 1) c.gates.push_back(Gate::x(q));
    }
    if (minus) c.gates.push_back(Gate::z(1));
    return c;
}

// Excitation-passing rotation on {|01>, |10>}: keeps the excitation on the
// first qubit with amplitude cos, hands it on with amplitude sin.
Gate excitation_split(int p, int q, double cos_theta) {
    const double c = cos_theta;
    const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
    return Gate::custom2(p, q,
                         {1, 0, 0, 0,
                          0, c, s, 0,
                          0, -s, c, 0,
                          0, 0, 0, 1});
}

Circuit w_circuit(int n) {
    Circuit c{n, {}};
    c.gates.push_back(Gate::x(1));
    for (int k = 1; k < n; ++k) {
        c.gates.push_back(excitation_split(k, k + 1, 1.0 / std::sqrt(static_cast<double>(n - k + 1))));
    }
    return c;
}

Circuit zeta_circuit(int index) {
    const int branch = (index - 1) / 2;
    const bool minus = (index % 2 == 0);
    const int base_bell = (branch < 2) ? 1 : 3;
    const int outer_bit = branch % 2;
    Circuit c{3, {}};
    if (outer_bit == 0) {
        // (B|0>_2 + s (Z1 B)|1>_2)/sqrt2: seed particle 2 with (|0> + s|1>)/sqrt2
        append_bell(c.gates, base_bell, 1, 3);
        c.gates.push_back(Gate::h(2));
        if (minus) c.gates.push_back(Gate::z(2));
    } else {
        // (B|1>_2 + s (Z1 B)|0>_2)/sqrt2 = CZ[(Z1 B) (x) (s|0> + |1>)/sqrt2]
        append_bell(c.gates, base_bell + 1, 1, 3);  // Z1 B = the '-' partner
        c.gates.push_back(Gate::h(2));
        if (minus) c.gates.push_back(Gate::z(2));
    }
    c.gates.push_back(Gate::cz(1, 2));
    return c;
}

// chi members are (|A> + s L|A>)/sqrt2 with |A> = |u>_1 B_v(2,4) |t>_3 and
// L = X1 Z2 X3 X4. Particle 1 seeds the branch; the conditional L fires on
// the branch opposite to u.
Circuit chi4_circuit(int index) {
    const int branch = (index - 1) / 2;
    const bool minus = (index % 2 == 0);
    const int u = (branch >> 2) & 1;
    const int v = (branch >> 1) & 1;
    const int t = branch & 1;
    Circuit c{4, {}};
    append_bell(c.gates, v == 0 ? 1 : 2, 2, 4);
    if (t) c.gates.push_back(Gate::x(3));
    c.gates.push_back(Gate::h(1));
    if (minus) c.gates.push_back(Gate::z(1));
    const int fire_on = 1 - u;
    c.gates.push_back(Gate::cz(1, 2, fire_on));
    c.gates.push_back(Gate::cnot_on(1, 3, fire_on));
    c.gates.push_back(Gate::cnot_on(1, 4, fire_on));
    return c;
}

// varphi members stack chi block-order members around particle 5:
// (chi_a |s>_5 + sign (-1)^u (Z1 X3 chi_a) |~s>_5)/sqrt2.
Circuit varphi5_circuit(int index) {
    const int branch = (index - 1) / 2;
    const bool minus = (index % 2 == 0);
    const int a = branch >> 1;  // 0-based block-order index, < 8
    const int s5 = branch & 1;
    const int stacked = catalog::chi4_block_to_stacked_index(a + 1);
    const int u = ((stacked - 1) / 2 >> 2) & 1;

    double seed_sign = minus ? -1.0 : 1.0;
    if (u == 1) seed_sign = -seed_sign;

    Circuit c{5, {}};
    const Circuit chi = chi4_circuit(stacked);
    c.gates = chi.gates;
    c.gates.push_back(Gate::h(5));
    if (seed_sign < 0) c.gates.push_back(Gate::z(5));
    const int fire_on = 1 - s5;
    c.gates.push_back(Gate::cz(5, 1, fire_on));
    c.gates.push_back(Gate::cnot_on(5, 3, fire_on));
    return c;
}

}  // namespace

Circuit preparation_circuit(const StateSpec& spec) {
    switch (spec.family) {
        case Family::Bell: return bell_circuit(spec.index);
        case Family::GHZ: return ghz_circuit(spec.num_particles, spec.index);
        case Family::W:
            if (spec.num_particles > 5) {
                throw std::invalid_argument("W preparation circuits are provided for N <= 5");
            }
            return w_circuit(spec.num_particles);
        case Family::Zeta: return zeta_circuit(spec.index);
        case Family::Chi4: return chi4_circuit(spec.index);
        case Family::Varphi5: return varphi5_circuit(spec.index);
        default:
            throw std::invalid_argument("no preparation circuit for family " +
                                        catalog::family_name(spec.family));
    }
}

std::string to_string(GateKind k) {
    switch (k) {
        case GateKind::H: return "h";
        case GateKind::X: return "x";
        case GateKind::Y: return "y";
        case GateKind::Z: return "z";
        case GateKind::CNOT: return "cnot";
        case GateKind::Phase: return "phase";
        case GateKind::Custom: return "custom";
    }
    return "?";
}

GateKind gate_kind_from_string(const std::string& name) {
    if (name == "h") return GateKind::H;
    if (name == "x") return GateKind::X;
    if (name == "y") return GateKind::Y;
    if (name == "z") return GateKind::Z;
    if (name == "cnot") return GateKind::CNOT;
    if (name == "phase") return GateKind::Phase;
    if (name == "custom") return GateKind::Custom;
    throw std::invalid_argument("unknown gate kind: '" + name + "'");
}

}  // namespace qumulant::circuits
