// Exact simulation of direct/controlled teleportation and direct/controlled
// dense coding over the five-particle varphi channel and its (2N+1)-qubit
// generalization. All probabilities are exact; nothing is sampled.
//
// Teleportation register layout (direct, N message qubits): particles
// 1..N hold the message, N+1..3N+1 the channel. Alice holds the message
// plus the first N+1 channel particles, Bob the last N. In the controlled
// variant Alice holds the first N channel particles, Bob the next N, and
// the controller the last one.

#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qumulant/catalog.hpp"
#include "qumulant/qstate.hpp"

namespace qumulant::protocols {

using qstate::StateVector;

// Single-particle correction: Pauli factors applied in listed order
// (first entry first). At most two factors. Empty = identity.
struct CorrectionOp {
    int particle = 0;
    std::vector<char> factors;  // from {'x','y','z'}

    bool is_identity() const { return factors.empty(); }
    std::string str() const;
};

struct TeleportOutcome {
    std::string label;
    double probability = 0.0;
    std::vector<CorrectionOp> corrections;  // one per receiver particle
    double fidelity = 0.0;                  // after corrections
    bool exact = false;                     // amplitude-exact, no residual global phase
};

struct TeleportReport {
    std::string channel;
    bool controlled = false;
    std::vector<TeleportOutcome> outcomes;
    double probability_sum = 0.0;
    bool overall_success = false;  // every outcome fidelity >= 1 - 1e-9
};

// Direct teleportation of a 2-qubit message through varphi5(channel_index):
// Alice projects particles 1..5 onto the phi5 basis (32 outcomes); Bob's
// corrections are read from a table precomputed by exhaustive search over
// single-particle Pauli products, cached per channel.
TeleportReport teleport_direct(const StateVector& message, int channel_index);

// Controlled variant: Alice projects particles 1..4 onto the chi4 basis
// (16 outcomes), the controller measures the last channel particle in the
// computational basis; 32 branches, corrections on Bob's particles only.
TeleportReport teleport_controlled(const StateVector& message, int channel_index);

// (2N+1)-qubit generalization; reduces exactly to the two functions above
// at n_pairs = 2. Full-branch simulation bound: 2N+1 <= 11.
TeleportReport teleport_generalized(int n_pairs, const StateVector& message,
                                    int channel_index, bool controlled);

// --- direct dense coding -------------------------------------------------

// The 32 encoding operators on the sender's particles 1..3, as axis
// triples over {i,x,y,z} ("izi" = sigma_z on particle 2 alone), in the
// published enumeration order.
const std::vector<std::array<char, 3>>& dense_operator_set();

bool is_published_operator(const std::array<char, 3>& ops);

// Applies the per-particle operators (must belong to the published set) to
// the sender's particles of varphi5(channel_index).
StateVector dense_encode(int channel_index, const std::array<char, 3>& ops);

// Inverse of dense_encode by inner products against the 32 encoded states;
// returns the operator-set index (0..31). Throws if no unit-overlap match.
int dense_decode(int channel_index, const StateVector& encoded);

// chi = log2 D_A + S(rho_B) - S(rho_AB); S(rho_AB) = 0 for a pure channel.
double channel_capacity(const StateVector& channel, const std::vector<int>& alice_particles);

// --- controlled dense coding ---------------------------------------------

// Controller's measurement basis: |x1> = cos t|0> + sin t|1>,
// |x2> = sin t|0> - cos t|1>. Angles above pi/4 are mirrored to pi/2 - t
// before any trigonometry; valid domain [0, pi/2].
std::pair<StateVector, StateVector> charlie_basis(double theta);
double normalize_analyzer_angle(double theta);

enum class DenseChannel { Psi5_1, Phi5_1, Varphi5_10, GHZ5 };
enum class ControlInterface { CA, CB, Direct };

std::string to_string(DenseChannel c);
std::string to_string(ControlInterface i);
DenseChannel dense_channel_from_string(const std::string& name);

struct DenseBranch {
    std::string label;        // e.g. "x1:aux0"
    double probability = 0.0; // joint probability of the branch
    int orthogonal_states = 0;
    double bits = 0.0;        // log2(orthogonal_states)
};

struct DenseReport {
    DenseChannel channel = DenseChannel::Psi5_1;
    double theta = 0.0;  // as given (before mirroring)
    ControlInterface interface_kind = ControlInterface::CA;
    bool uses_aux = false;
    // Auxiliary-qubit outcome probabilities, identical across controller
    // branches for the channels that use the aux step: {2 sin^2 t, cos 2t}.
    std::map<std::string, double> aux_probs;
    std::vector<DenseBranch> branches;
    double average_bits = 0.0;
    bool decode_verified = false;  // CB decode round trip ran and passed
};

// Simulates one controlled run: controller branch states, aux rotation
// (for the channels that need one), branch-wise orthogonal-encoding counts,
// and for the CB interface the receiver's full decode flow (two CNOTs,
// computational reads, aux discrimination), asserting the round trip.
DenseReport controlled_dense_run(DenseChannel channel, double theta, ControlInterface interface_kind);

// The 8x8 sender-side discrimination unitary (sender pair + aux) used in
// a controller branch; `subset_translate` shifts the rotated blocks by a
// receiver-readout bit pattern (CB decode). Unitary for every theta in
// [0, pi/4]. Not defined for the stacked channel.
std::vector<cxd> aux_discrimination_unitary(DenseChannel channel, double theta, int branch,
                                            int subset_translate = 0);

struct SweepRow {
    DenseChannel channel = DenseChannel::Psi5_1;
    double theta = 0.0;
    double avg_bits = 0.0;
    double p_aux0 = 0.0;
    double p_aux1 = 0.0;
};

// Grid within [0, pi/4]; rows ordered channel-major then theta-ascending.
std::vector<SweepRow> info_sweep(const std::vector<DenseChannel>& channels,
                                 const std::vector<double>& theta_grid);

}  // namespace qumulant::protocols
