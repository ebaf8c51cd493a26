// Parametric constructors for every named state family, with a documented
// index convention.
//
// Stacked +- families (Phi4, Chi4, Phi4Prime, Psi5, Phi5, Varphi5 and the
// generalized sets): members come in consecutive (+,-) pairs,
//   index = 2*(branch - 1) + {1 for '+', 2 for '-'},
// where `branch` runs row-major over the stack choices, leftmost (slowest)
// stack first. The convention is frozen against the explicitly expanded
// members of each family (e.g. varphi5:10) and regression-tested.

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "qumulant/qstate.hpp"

namespace qumulant::catalog {

using qstate::StateVector;

enum class Family {
    Bell,        // 1..4: phi+, phi-, psi+, psi-
    BellPrimed,  // 1..4: images of Bell under a Hadamard on particle 2
    GHZ,         // size-parametric: N qubits, index 1..2^N
    W,           // size-parametric: N qubits, single member
    Zeta,        // 1..8: Bell pair on particles (1,3) branched on particle 2
    Phi4,        // 1..16
    Chi4,        // 1..16
    Phi4Prime,   // 1..16
    Rigolin4,    // 1..16: Bell (x) Bell
    YeoChua4,    // single member
    Psi5,        // 1..32
    Phi5,        // 1..32
    Varphi5,     // 1..32: the five-particle channel family
    Brown5,      // single member (amplitude table, externally sourced expansion)
    Sigma5,      // single member
    Sigma5Prime, // single member; Hadamards on particles 2,3,4 map Sigma5 onto it
    GeneralizedVarphi,  // (2N+1)-qubit generalization of Varphi5, N >= 2
};

struct StateSpec {
    Family family = Family::Bell;
    int index = 1;
    int num_particles = 0;  // GHZ/W: qubit count; GeneralizedVarphi: 2N+1 (odd)
};

// Number of members; GHZ/W/GeneralizedVarphi need num_particles.
int family_size(Family f, int num_particles = 0);
std::string family_name(Family f);

// Parses CLI-facing spec strings: "bell:3", "ghz:3:1", "w:5", "zeta:2",
// "chi4:5", "varphi5:10", "yeochua4", "brown5", "genvarphi:3:1" (N, index).
StateSpec parse_spec(std::string_view text);
std::string to_string(const StateSpec& spec);

StateVector make_state(const StateSpec& spec);
std::vector<StateVector> list_family(Family f, int num_particles = 0);

// Individual constructors.
StateVector bell(int index);                       // 1..4
StateVector bell_primed(int index);                // 1..4
StateVector ghz_state(int num_qubits, int index);  // index 1..2^n
StateVector w_state(int num_qubits);
StateVector zeta(int index);        // 1..8
StateVector phi4(int index);        // 1..16
StateVector chi4(int index);        // 1..16, stacked order
StateVector phi4_prime(int index);  // 1..16
StateVector rigolin4(int index);    // 1..16
StateVector yeo_chua4();
StateVector psi5(int index);     // 1..32
StateVector phi5(int index);     // 1..32
StateVector varphi5(int index);  // 1..32
StateVector brown5();
StateVector sigma5();
StateVector sigma5_prime();

// The chi set admits a second conventional ordering that groups members by
// the middle particle's branch (all middle-bit-0 members first, sign pairs
// twisted in the second half). The five-particle family stacks chi members
// in that order. Both orderings enumerate the same set.
StateVector chi4_block_order(int index);       // 1..16
int chi4_block_to_stacked_index(int block_index);

// 2N-qubit chi basis (recursive stacked construction; two_n even >= 2).
// Base case two_n = 2 is the Bell set ordered (phi+, phi-, psi-, psi+).
std::vector<StateVector> chi_basis(int two_n);
std::vector<StateVector> chi_basis_block_order(int two_n);

// (2N+1)-qubit varphi family member; n_pairs = N >= 2, 2N+1 <= 13.
// Reduces to varphi5 at N = 2.
StateVector generalized_varphi(int n_pairs, int index);

}  // namespace qumulant::catalog
