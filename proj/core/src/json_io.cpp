#include "qumulant/json_io.hpp"

namespace qumulant::json_io {

namespace {

json complex_to_json(const cxd& c) { return json::array({c.real(), c.imag()}); }

cxd complex_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2) throw std::invalid_argument("complex entry must be [re, im]");
    return {j[0].get<double>(), j[1].get<double>()};
}

}  // namespace

json to_json(const qstate::StateVector& s) {
    json amps = json::array();
    for (std::size_t i = 0; i < s.dim(); ++i) amps.push_back(complex_to_json(s[i]));
    return {{"num_qubits", s.num_qubits()}, {"amplitudes", std::move(amps)}};
}

qstate::StateVector state_from_json(const json& j) {
    const int n = j.at("num_qubits").get<int>();
    const auto& arr = j.at("amplitudes");
    if (!arr.is_array()) throw std::invalid_argument("amplitudes must be an array");
    std::vector<cxd> amps;
    amps.reserve(arr.size());
    for (const auto& e : arr) amps.push_back(complex_from_json(e));
    return qstate::StateVector(n, std::move(amps));
}

json to_json(const qstate::DensityMatrix& rho) {
    json rows = json::array();
    for (std::size_t r = 0; r < rho.dim(); ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < rho.dim(); ++c) row.push_back(complex_to_json(rho.at(r, c)));
        rows.push_back(std::move(row));
    }
    return {{"num_qubits", rho.num_qubits()}, {"rows", std::move(rows)}};
}

qstate::DensityMatrix density_from_json(const json& j) {
    const int n = j.at("num_qubits").get<int>();
    const auto& rows = j.at("rows");
    const std::size_t dim = std::size_t{1} << n;
    if (!rows.is_array() || rows.size() != dim) throw std::invalid_argument("bad density row count");
    std::vector<cxd> m;
    m.reserve(dim * dim);
    for (const auto& row : rows) {
        if (!row.is_array() || row.size() != dim) throw std::invalid_argument("bad density row length");
        for (const auto& e : row) m.push_back(complex_from_json(e));
    }
    return qstate::DensityMatrix(n, std::move(m));
}

json to_json(const cluster::CorrelationSignature& sig) {
    json entries = json::object();
    for (const auto& [k, v] : sig.entries) entries[k] = v;
    return {{"num_particles", sig.num_particles},
            {"tolerance", sig.tolerance},
            {"entries", std::move(entries)}};
}

cluster::CorrelationSignature signature_from_json(const json& j) {
    cluster::CorrelationSignature sig;
    sig.num_particles = j.at("num_particles").get<int>();
    sig.tolerance = j.at("tolerance").get<double>();
    for (const auto& [k, v] : j.at("entries").items()) sig.entries[k] = v.get<double>();
    return sig;
}

json to_json(const cluster::FamilyRelation& rel) {
    json out{{"verdict", cluster::to_string(rel.verdict)}};
    if (rel.witness) {
        out["witness"] = {{"permutation", rel.witness->permutation},
                          {"hadamard_particles", rel.witness->hadamard_particles}};
    }
    return out;
}

json to_json(const measures::TangleReport& report) {
    return {{"tau", report.tau},
            {"tau_pair_form", report.tau_pair_form},
            {"c_sq_a_bc", report.c_sq_a_bc},
            {"c_sq_ab", report.c_sq_ab},
            {"c_sq_ac", report.c_sq_ac},
            {"lambda_ab", report.lambda_ab},
            {"lambda_ac", report.lambda_ac}};
}

json to_json(const circuits::Gate& g) {
    json out{{"kind", circuits::to_string(g.kind)}, {"targets", g.targets}};
    if (g.kind == circuits::GateKind::Phase) out["angle"] = g.angle;
    if (g.kind == circuits::GateKind::Custom) {
        json m = json::array();
        for (const cxd& e : g.matrix) m.push_back(complex_to_json(e));
        out["matrix"] = std::move(m);
    }
    return out;
}

json to_json(const circuits::Circuit& c) {
    json gates = json::array();
    for (const auto& g : c.gates) gates.push_back(to_json(g));
    return {{"num_qubits", c.num_qubits}, {"gates", std::move(gates)}};
}

circuits::Circuit circuit_from_json(const json& j) {
    circuits::Circuit c;
    c.num_qubits = j.at("num_qubits").get<int>();
    for (const auto& gj : j.at("gates")) {
        circuits::Gate g;
        g.kind = circuits::gate_kind_from_string(gj.at("kind").get<std::string>());
        g.targets = gj.at("targets").get<std::vector<int>>();
        if (gj.contains("angle")) g.angle = gj.at("angle").get<double>();
        if (gj.contains("matrix")) {
            for (const auto& e : gj.at("matrix")) g.matrix.push_back(complex_from_json(e));
        }
        c.gates.push_back(std::move(g));
    }
    return c;
}

json to_json(const protocols::TeleportReport& report) {
    json outcomes = json::array();
    for (const auto& o : report.outcomes) {
        json corrections = json::array();
        for (const auto& c : o.corrections) {
            corrections.push_back({{"particle", c.particle},
                                   {"ops", std::string(c.factors.begin(), c.factors.end())}});
        }
        outcomes.push_back({{"label", o.label},
                            {"probability", o.probability},
                            {"corrections", std::move(corrections)},
                            {"fidelity", o.fidelity},
                            {"exact", o.exact}});
    }
    return {{"channel", report.channel},
            {"controlled", report.controlled},
            {"probability_sum", report.probability_sum},
            {"overall_success", report.overall_success},
            {"outcomes", std::move(outcomes)}};
}

json to_json(const protocols::DenseReport& report) {
    json branches = json::array();
    for (const auto& b : report.branches) {
        branches.push_back({{"label", b.label},
                            {"probability", b.probability},
                            {"orthogonal_states", b.orthogonal_states},
                            {"bits", b.bits}});
    }
    return {{"channel", protocols::to_string(report.channel)},
            {"theta", report.theta},
            {"interface", protocols::to_string(report.interface_kind)},
            {"uses_aux", report.uses_aux},
            {"aux_probs", report.aux_probs},
            {"average_bits", report.average_bits},
            {"branches", std::move(branches)},
            {"decode_verified", report.decode_verified}};
}

}  // namespace qumulant::json_io
