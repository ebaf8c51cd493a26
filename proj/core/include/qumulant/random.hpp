#pragma once

#include <cstdint>
#include <random>

#include "qumulant/qstate.hpp"

namespace qumulant {

inline std::mt19937_64 seeded_rng(std::uint64_t seed) { return std::mt19937_64(seed); }

// Haar-random pure state: normalized vector of i.i.d. complex Gaussians.
qstate::StateVector haar_random_state(int num_qubits, std::mt19937_64& rng);

}  // namespace qumulant
