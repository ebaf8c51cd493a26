#include "qumulant/catalog.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

namespace qumulant::catalog {

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

StateVector from_terms(int n, std::initializer_list<std::pair<std::size_t, double>> terms,
                       double scale) {
    std::vector<cxd> amps(std::size_t{1} << n, cxd{0, 0});
    for (const auto& [idx, coeff] : terms) amps[idx] = cxd{coeff * scale, 0};
    return StateVector(n, std::move(amps));
}

// Product of components covering particles 1..n exactly once; each
// component is (ascending particle list, local state).
StateVector product_embed(int n, const std::vector<std::pair<std::vector<int>, StateVector>>& comps) {
    std::vector<cxd> amps(std::size_t{1} << n, cxd{1, 0});
    std::vector<bool> covered(n + 1, false);
    for (const auto& [particles, local] : comps) {
        for (int p : particles) {
            if (p < 1 || p > n || covered[p]) throw std::invalid_argument("bad product cover");
            covered[p] = true;
        }
    }
    for (int p = 1; p <= n; ++p) {
        if (!covered[p]) throw std::invalid_argument("product cover incomplete");
    }
    for (std::size_t i = 0; i < amps.size(); ++i) {
        cxd v{1, 0};
        for (const auto& [particles, local] : comps) {
            std::size_t sub = 0;
            for (std::size_t a = 0; a < particles.size(); ++a) {
                if ((i >> (n - particles[a])) & 1u) sub |= std::size_t{1} << (particles.size() - 1 - a);
            }
            v *= local[sub];
        }
        amps[i] = v;
    }
    return StateVector(n, std::move(amps));
}

StateVector add_scaled(const StateVector& a, double sign, const StateVector& b) {
    std::vector<cxd> amps(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) amps[i] = kInvSqrt2 * (a[i] + sign * b[i]);
    return StateVector(a.num_qubits(), std::move(amps));
}

StateVector bit_state(int value) { return StateVector::basis(1, static_cast<std::size_t>(value)); }

void check_index(int index, int size, const char* family) {
    if (index < 1 || index > size) {
        throw std::invalid_argument(std::string(family) + " index " + std::to_string(index) +
                                    " out of range 1.." + std::to_string(size));
    }
}

// Splits a stacked index into (0-based branch, sign): members come in
// consecutive (+,-) pairs.
std::pair<int, double> split_index(int index) {
    return {(index - 1) / 2, (index % 2 == 1) ? 1.0 : -1.0};
}

}  // namespace

StateVector bell(int index) {
    check_index(index, 4, "bell");
    switch (index) {
        case 1: return from_terms(2, {{0, 1}, {3, 1}}, kInvSqrt2);    // phi+
        case 2: return from_terms(2, {{0, 1}, {3, -1}}, kInvSqrt2);   // phi-
        case 3: return from_terms(2, {{1, 1}, {2, 1}}, kInvSqrt2);    // psi+
        default: return from_terms(2, {{1, 1}, {2, -1}}, kInvSqrt2);  // psi-
    }
}

StateVector bell_primed(int index) {
    check_index(index, 4, "bellprime");
    switch (index) {
        case 1: return from_terms(2, {{0, 1}, {1, 1}, {2, 1}, {3, -1}}, 0.5);   // phi'+
        case 2: return from_terms(2, {{0, 1}, {1, 1}, {2, -1}, {3, 1}}, 0.5);   // phi'-
        case 3: return from_terms(2, {{0, 1}, {1, -1}, {2, 1}, {3, 1}}, 0.5);   // psi'+
        default: return from_terms(2, {{0, 1}, {1, -1}, {2, -1}, {3, -1}}, 0.5);  // psi'-
    }
}

StateVector ghz_state(int num_qubits, int index) {
    if (num_qubits < 2 || num_qubits > 12) throw std::invalid_argument("ghz qubit count out of range");
    check_index(index, 1 << num_qubits, "ghz");
    const auto [pattern, sign] = split_index(index);
    const std::size_t lo = static_cast<std::size_t>(pattern);
    const std::size_t hi = (~lo) & ((std::size_t{1} << num_qubits) - 1);
    return from_terms(num_qubits, {{lo, 1}, {hi, sign}}, kInvSqrt2);
}

StateVector w_state(int num_qubits) {
    if (num_qubits < 2 || num_qubits > 12) throw std::invalid_argument("w qubit count out of range");
    std::vector<cxd> amps(std::size_t{1} << num_qubits, cxd{0, 0});
    const double c = 1.0 / std::sqrt(static_cast<double>(num_qubits));
    for (int k = 0; k < num_qubits; ++k) amps[std::size_t{1} << k] = cxd{c, 0};
    return StateVector(num_qubits, std::move(amps));
}

StateVector zeta(int index) {
    check_index(index, 8, "zeta");
    const auto [branch, sign] = split_index(index);
    const int base_bell = (branch < 2) ? 1 : 3;  // phi+ rows first, then psi+
    const int outer_bit = branch % 2;
    const StateVector first =
        product_embed(3, {{{1, 3}, bell(base_bell)}, {{2}, bit_state(outer_bit)}});
    const StateVector second =
        product_embed(3, {{{1, 3}, bell(base_bell + 1)}, {{2}, bit_state(1 - outer_bit)}});
    return add_scaled(first, sign, second);
}

namespace {

StateVector four_particle_stacked(int index, const int b1[2], const int b2[2], const char* name) {
    check_index(index, 16, name);
    const auto [branch, sign] = split_index(index);
    const int u = (branch >> 2) & 1;
    const int v = (branch >> 1) & 1;
    const int t = branch & 1;
    const StateVector first = product_embed(
        4, {{{1}, bit_state(u)}, {{2, 4}, bell(b1[v])}, {{3}, bit_state(t)}});
    const StateVector second = product_embed(
        4, {{{1}, bit_state(1 - u)}, {{2, 4}, bell(b2[v])}, {{3}, bit_state(1 - t)}});
    return add_scaled(first, sign, second);
}

}  // namespace

StateVector phi4(int index) {
    static const int b1[2] = {1, 3};  // phi+, psi+
    static const int b2[2] = {2, 4};  // phi-, psi-
    return four_particle_stacked(index, b1, b2, "phi4");
}

StateVector chi4(int index) {
    static const int b1[2] = {1, 2};  // phi+, phi-
    static const int b2[2] = {4, 3};  // psi-, psi+
    return four_particle_stacked(index, b1, b2, "chi4");
}

StateVector phi4_prime(int index) {
    static const int b1[2] = {1, 2};  // phi+, phi-
    static const int b2[2] = {3, 4};  // psi+, psi-
    return four_particle_stacked(index, b1, b2, "phi4prime");
}

StateVector rigolin4(int index) {
    check_index(index, 16, "rigolin4");
    const int a = (index - 1) / 4 + 1;
    const int b = (index - 1) % 4 + 1;
    return qstate::tensor_product(bell(a), bell(b));
}

StateVector yeo_chua4() {
    const double s = 0.5 * kInvSqrt2;
    return from_terms(4,
                      {{0b0000, 1},
                       {0b0011, -1},
                       {0b0101, -1},
                       {0b0110, 1},
                       {0b1001, 1},
                       {0b1010, 1},
                       {0b1100, 1},
                       {0b1111, 1}},
                      s);
}

namespace {

StateVector five_particle_stacked(int index, bool partner_sign_flip, const char* name) {
    check_index(index, 32, name);
    const auto [branch, sign] = split_index(index);
    const int u = (branch >> 3) & 1;
    const int g = (branch >> 1) & 3;  // 0..3 into the 3-qubit GHZ stack
    const int s = branch & 1;
    // stack rows: patterns {000, 001} x (+,-); partner flips the middle
    // pattern bit, and for the sign-flip variant also the inner sign.
    const int g_first = g + 1;                                   // ghz index 1..4
    const int g_partner = partner_sign_flip ? (g ^ 1) + 5 : g + 5;  // 5..8
    const StateVector first =
        qstate::tensor_product(qstate::tensor_product(bit_state(u), ghz_state(3, g_first)),
                               bit_state(s));
    const StateVector second =
        qstate::tensor_product(qstate::tensor_product(bit_state(1 - u), ghz_state(3, g_partner)),
                               bit_state(1 - s));
    return add_scaled(first, sign, second);
}

}  // namespace

StateVector psi5(int index) { return five_particle_stacked(index, true, "psi5"); }
StateVector phi5(int index) { return five_particle_stacked(index, false, "phi5"); }

std::vector<StateVector> chi_basis(int two_n) {
    if (two_n < 2 || two_n % 2 != 0 || two_n > 12) {
        throw std::invalid_argument("chi basis needs an even qubit count in 2..12");
    }
    if (two_n == 2) return {bell(1), bell(2), bell(4), bell(3)};  // phi+, phi-, psi-, psi+

    // The recursion consumes the inner set in block order: its second half
    // then consists of the local-flip partners of the first half, which is
    // what keeps the whole tower a branch-linked family.
    const auto inner = chi_basis_block_order(two_n - 2);
    const int half = static_cast<int>(inner.size()) / 2;
    const int mid = two_n / 2 + 1;
    std::vector<int> inner_particles;
    for (int p = 2; p <= two_n; ++p) {
        if (p != mid) inner_particles.push_back(p);
    }

    std::vector<StateVector> out;
    out.reserve(std::size_t{1} << two_n);
    for (int u = 0; u <= 1; ++u) {
        for (int c = 0; c < half; ++c) {
            for (int s = 0; s <= 1; ++s) {
                const StateVector first = product_embed(
                    two_n,
                    {{{1}, bit_state(u)}, {inner_particles, inner[c]}, {{mid}, bit_state(s)}});
                const StateVector second = product_embed(
                    two_n, {{{1}, bit_state(1 - u)},
                            {inner_particles, inner[half + c]},
                            {{mid}, bit_state(1 - s)}});
                out.push_back(add_scaled(first, 1.0, second));
                out.push_back(add_scaled(first, -1.0, second));
            }
        }
    }
    return out;
}

int chi4_block_to_stacked_index(int block_index) {
    check_index(block_index, 16, "chi4 block order");
    // First half: middle-bit-0 members, (u, v, +,-) row-major. Second half:
    // middle-bit-1 members with each (+,-) pair swapped.
    if (block_index <= 8) {
        const int j = block_index - 1;
        const int u = (j >> 2) & 1;
        const int v = (j >> 1) & 1;
        const int sgn = j & 1;
        return ((u << 2) | (v << 1)) * 2 + 1 + sgn;
    }
    const int j = block_index - 9;
    const int u = (j >> 2) & 1;
    const int v = (j >> 1) & 1;
    const int sgn = j & 1;
    return ((u << 2) | (v << 1) | 1) * 2 + 1 + (1 - sgn);
}

StateVector chi4_block_order(int index) { return chi4(chi4_block_to_stacked_index(index)); }

std::vector<StateVector> chi_basis_block_order(int two_n) {
    if (two_n == 2) return chi_basis(2);  // no middle particle yet, nothing to regroup
    const auto basis = chi_basis(two_n);
    const int total = static_cast<int>(basis.size());
    const int half = total / 2;
    std::vector<StateVector> out;
    out.reserve(total);
    // Stacked index = 2*(u*half + c*2 + s) + 1 + sgn, with s the middle-bit
    // choice. Block order lists all s=0 members first, then the s=1 members
    // with each (+,-) pair swapped.
    const int c_count = total / 8;  // inner choices per (u, s)
    for (int s_block = 0; s_block <= 1; ++s_block) {
        for (int u = 0; u <= 1; ++u) {
            for (int c = 0; c < c_count; ++c) {
                for (int sgn = 0; sgn <= 1; ++sgn) {
                    const int eff_sgn = s_block == 0 ? sgn : 1 - sgn;
                    const int branch = u * (half / 2) + c * 2 + s_block;
                    out.push_back(basis[static_cast<std::size_t>(branch * 2 + eff_sgn)]);
                }
            }
        }
    }
    return out;
}

StateVector generalized_varphi(int n_pairs, int index) {
    if (n_pairs < 2 || 2 * n_pairs + 1 > 13) {
        throw std::invalid_argument("generalized varphi needs N >= 2 with 2N+1 <= 13");
    }
    const int two_n = 2 * n_pairs;
    check_index(index, 1 << (two_n + 1), "genvarphi");
    const auto blocks = chi_basis_block_order(two_n);
    const int half = static_cast<int>(blocks.size()) / 2;
    const auto [branch, sign] = split_index(index);
    const int a = branch >> 1;
    const int s = branch & 1;
    const StateVector first = qstate::tensor_product(blocks[a], bit_state(s));
    const StateVector second = qstate::tensor_product(blocks[half + a], bit_state(1 - s));
    return add_scaled(first, sign, second);
}

StateVector varphi5(int index) { return generalized_varphi(2, index); }

StateVector brown5() {
    // Bell pairs on the last two qubits keyed by the first three; the
    // expansion is the standard published one for this state, with qubits
    // arranged to reproduce the six-coefficient signature regression.
    const double s = 0.5 * kInvSqrt2;
    return from_terms(5,
                      {{0b00100, 1},
                       {0b00111, -1},
                       {0b01001, 1},
                       {0b01010, -1},
                       {0b10000, 1},
                       {0b10011, 1},
                       {0b11101, 1},
                       {0b11110, 1}},
                      s);
}

StateVector sigma5() {
    return from_terms(5, {{0b00000, 1}, {0b01110, 1}, {0b10001, 1}, {0b11111, -1}}, 0.5);
}

StateVector sigma5_prime() {
    const double s = 0.5 * kInvSqrt2;
    return from_terms(5,
                      {{0b00000, 1},
                       {0b00110, 1},
                       {0b01010, 1},
                       {0b01100, 1},
                       {0b10011, 1},
                       {0b10101, 1},
                       {0b11001, 1},
                       {0b11111, 1}},
                      s);
}

int family_size(Family f, int num_particles) {
    switch (f) {
        case Family::Bell:
        case Family::BellPrimed: return 4;
        case Family::GHZ:
            if (num_particles < 2 || num_particles > 12) {
                throw std::invalid_argument("ghz needs a qubit count in 2..12");
            }
            return 1 << num_particles;
        case Family::W:
            if (num_particles < 2 || num_particles > 12) {
                throw std::invalid_argument("w needs a qubit count in 2..12");
            }
            return 1;
        case Family::Zeta: return 8;
        case Family::Phi4:
        case Family::Chi4:
        case Family::Phi4Prime:
        case Family::Rigolin4: return 16;
        case Family::YeoChua4: return 1;
        case Family::Psi5:
        case Family::Phi5:
        case Family::Varphi5: return 32;
        case Family::Brown5:
        case Family::Sigma5:
        case Family::Sigma5Prime: return 1;
        case Family::GeneralizedVarphi:
            if (num_particles < 5 || num_particles > 13 || num_particles % 2 == 0) {
                throw std::invalid_argument("genvarphi needs an odd qubit count in 5..13");
            }
            return 1 << num_particles;
    }
    throw std::invalid_argument("unknown family");
}

std::string family_name(Family f) {
    switch (f) {
        case Family::Bell: return "bell";
        case Family::BellPrimed: return "bellprime";
        case Family::GHZ: return "ghz";
        case Family::W: return "w";
        case Family::Zeta: return "zeta";
        case Family::Phi4: return "phi4";
        case Family::Chi4: return "chi4";
        case Family::Phi4Prime: return "phi4prime";
        case Family::Rigolin4: return "rigolin4";
        case Family::YeoChua4: return "yeochua4";
        case Family::Psi5: return "psi5";
        case Family::Phi5: return "phi5";
        case Family::Varphi5: return "varphi5";
        case Family::Brown5: return "brown5";
        case Family::Sigma5: return "sigma5";
        case Family::Sigma5Prime: return "sigma5prime";
        case Family::GeneralizedVarphi: return "genvarphi";
    }
    return "?";
}

StateVector make_state(const StateSpec& spec) {
    switch (spec.family) {
        case Family::Bell: return bell(spec.index);
        case Family::BellPrimed: return bell_primed(spec.index);
        case Family::GHZ: return ghz_state(spec.num_particles, spec.index);
        case Family::W: return w_state(spec.num_particles);
        case Family::Zeta: return zeta(spec.index);
        case Family::Phi4: return phi4(spec.index);
        case Family::Chi4: return chi4(spec.index);
        case Family::Phi4Prime: return phi4_prime(spec.index);
        case Family::Rigolin4: return rigolin4(spec.index);
        case Family::YeoChua4: return yeo_chua4();
        case Family::Psi5: return psi5(spec.index);
        case Family::Phi5: return phi5(spec.index);
        case Family::Varphi5: return varphi5(spec.index);
        case Family::Brown5: return brown5();
        case Family::Sigma5: return sigma5();
        case Family::Sigma5Prime: return sigma5_prime();
        case Family::GeneralizedVarphi:
            return generalized_varphi((spec.num_particles - 1) / 2, spec.index);
    }
    throw std::invalid_argument("unknown family");
}

std::vector<StateVector> list_family(Family f, int num_particles) {
    const int size = family_size(f, num_particles);
    std::vector<StateVector> out;
    out.reserve(size);
    for (int i = 1; i <= size; ++i) {
        out.push_back(make_state(StateSpec{f, i, num_particles}));
    }
    return out;
}

StateSpec parse_spec(std::string_view text) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : text) {
        if (c == ':') {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
        }
    }
    parts.push_back(cur);
    if (parts.empty() || parts[0].empty()) throw std::invalid_argument("empty state spec");

    auto as_int = [&](const std::string& s, const char* what) {
        try {
            std::size_t pos = 0;
            const int v = std::stoi(s, &pos);
            if (pos != s.size()) throw std::invalid_argument("");
            return v;
        } catch (...) {
            throw std::invalid_argument(std::string("bad ") + what + " in state spec: '" + s + "'");
        }
    };

    static const std::vector<Family> all = {
        Family::Bell,   Family::BellPrimed, Family::GHZ,      Family::W,
        Family::Zeta,   Family::Phi4,       Family::Chi4,     Family::Phi4Prime,
        Family::Rigolin4, Family::YeoChua4, Family::Psi5,     Family::Phi5,
        Family::Varphi5, Family::Brown5,    Family::Sigma5,   Family::Sigma5Prime,
        Family::GeneralizedVarphi};
    Family fam;
    bool found = false;
    for (Family f : all) {
        if (family_name(f) == parts[0]) {
            fam = f;
            found = true;
            break;
        }
    }
    if (!found) throw std::invalid_argument("unknown state family: '" + parts[0] + "'");

    StateSpec spec;
    spec.family = fam;
    switch (fam) {
        case Family::GHZ:
            if (parts.size() != 3) throw std::invalid_argument("ghz spec is ghz:<N>:<index>");
            spec.num_particles = as_int(parts[1], "qubit count");
            spec.index = as_int(parts[2], "index");
            break;
        case Family::W:
            if (parts.size() != 2) throw std::invalid_argument("w spec is w:<N>");
            spec.num_particles = as_int(parts[1], "qubit count");
            spec.index = 1;
            break;
        case Family::GeneralizedVarphi: {
            if (parts.size() != 3) throw std::invalid_argument("genvarphi spec is genvarphi:<N>:<index>");
            const int n_pairs = as_int(parts[1], "pair count");
            spec.num_particles = 2 * n_pairs + 1;
            spec.index = as_int(parts[2], "index");
            break;
        }
        case Family::YeoChua4:
        case Family::Brown5:
        case Family::Sigma5:
        case Family::Sigma5Prime:
            if (parts.size() == 2) {
                spec.index = as_int(parts[1], "index");
            } else if (parts.size() != 1) {
                throw std::invalid_argument("this family takes no arguments");
            }
            break;
        default:
            if (parts.size() != 2) {
                throw std::invalid_argument("spec for " + parts[0] + " is " + parts[0] + ":<index>");
            }
            spec.index = as_int(parts[1], "index");
            break;
    }
    // Range check up front so CLI errors are uniform.
    check_index(spec.index, family_size(fam, spec.num_particles), family_name(fam).c_str());
    return spec;
}

std::string to_string(const StateSpec& spec) {
    std::ostringstream os;
    os << family_name(spec.family);
    switch (spec.family) {
        case Family::GHZ: os << ':' << spec.num_particles << ':' << spec.index; break;
        case Family::W: os << ':' << spec.num_particles; break;
        case Family::GeneralizedVarphi:
            os << ':' << (spec.num_particles - 1) / 2 << ':' << spec.index;
            break;
        case Family::YeoChua4:
        case Family::Brown5:
        case Family::Sigma5:
        case Family::Sigma5Prime: break;
        default: os << ':' << spec.index; break;
    }
    return os.str();
}

}  // namespace qumulant::catalog
