#include "qumulant/random.hpp"

namespace qumulant {

qstate::StateVector haar_random_state(int num_qubits, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<cxd> amps(std::size_t{1} << num_qubits);
    for (cxd& a : amps) a = cxd{gauss(rng), gauss(rng)};
    qstate::StateVector s(num_qubits, std::move(amps));
    s.normalize();
    return s;
}

}  // namespace qumulant
