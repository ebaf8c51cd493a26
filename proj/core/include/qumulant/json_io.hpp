// JSON wire formats.
//
//   state:     {"num_qubits": n, "amplitudes": [[re, im], ...]}   (2^n entries)
//   density:   {"num_qubits": n, "rows": [[[re, im], ...], ...]}
//   signature: {"num_particles": n, "tolerance": t, "entries": {"xxz": v, ...}}
//   circuit:   {"num_qubits": n, "gates": [{"kind": "h", "targets": [1]}, ...]}

#pragma once

#include <json.hpp>

#include "qumulant/circuits.hpp"
#include "qumulant/cluster.hpp"
#include "qumulant/measures.hpp"
#include "qumulant/protocols.hpp"
#include "qumulant/qstate.hpp"

namespace qumulant::json_io {

using nlohmann::json;

json to_json(const qstate::StateVector& s);
qstate::StateVector state_from_json(const json& j);

json to_json(const qstate::DensityMatrix& rho);
qstate::DensityMatrix density_from_json(const json& j);

json to_json(const cluster::CorrelationSignature& sig);
cluster::CorrelationSignature signature_from_json(const json& j);

json to_json(const cluster::FamilyRelation& rel);
json to_json(const measures::TangleReport& report);

json to_json(const circuits::Gate& g);
json to_json(const circuits::Circuit& c);
circuits::Circuit circuit_from_json(const json& j);

json to_json(const protocols::TeleportReport& report);
json to_json(const protocols::DenseReport& report);

}  // namespace qumulant::json_io
