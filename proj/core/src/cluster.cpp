#include "qumulant/cluster.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <functional>
#include <mutex>

namespace qumulant::cluster {

using qstate::Axis;

namespace {

constexpr int kMaxCumulantParticles = 10;
constexpr int kMaxTensorParticles = 8;
constexpr int kMaxWitnessParticles = 6;

void check_string(const PauliString& p, int n) {
    if (p.size() != n) throw std::invalid_argument("Pauli string length does not match register");
    if (p.has_identity()) {
        throw std::invalid_argument(
            "cumulant takes all-non-identity strings; restrict to the sub-register first");
    }
    if (n < 1 || n > kMaxCumulantParticles) throw std::invalid_argument("unsupported particle count");
}

// Set partitions of {0..n-1} as block bitmasks, cached per n.
const std::vector<std::vector<std::uint32_t>>& partitions_of(int n) {
    static std::array<std::vector<std::vector<std::uint32_t>>, kMaxCumulantParticles + 1> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto& entry = cache[n];
    if (!entry.empty()) return entry;

    std::vector<int> assign(n, 0);
    std::function<void(int, int)> rec = [&](int i, int blocks) {
        if (i == n) {
            std::vector<std::uint32_t> masks(blocks, 0);
            for (int k = 0; k < n; ++k) masks[assign[k]] |= 1u << k;
            entry.push_back(std::move(masks));
            return;
        }
        for (int b = 0; b <= blocks; ++b) {
            assign[i] = b;
            rec(i + 1, std::max(blocks, b + 1));
        }
    };
    rec(0, 0);
    return entry;
}

double factorial(int k) {
    double f = 1.0;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
}

// Subset moments <prod_{i in S} sigma_i>, indexed by particle bitmask.
template <typename State>
std::vector<double> subset_moments(const State& state, const PauliString& p) {
    const int n = p.size();
    std::vector<double> mu(std::size_t{1} << n, 1.0);  // empty product = 1
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
        mu[mask] = qstate::expectation(state, p.restricted_to(mask));
    }
    return mu;
}

template <typename State>
double cumulant_impl(const State& state, const PauliString& p, int n_state) {
    check_string(p, n_state);
    const int n = p.size();
    const auto mu = subset_moments(state, p);
    double total = 0.0;
    for (const auto& part : partitions_of(n)) {
        double prod = 1.0;
        for (std::uint32_t block : part) prod *= mu[block];
        const int nb = static_cast<int>(part.size());
        total += ((nb - 1) % 2 ? -1.0 : 1.0) * factorial(nb - 1) * prod;
    }
    return total;
}

// The printed recursions, evaluated literally on the subset-moment table.
// sub: bitmask naming which particles this level acts on.
double closed_form_rec(const std::vector<double>& mu, std::uint32_t sub) {
    std::vector<std::uint32_t> ps;  // single-particle masks, ascending
    for (std::uint32_t b = sub; b;) {
        std::uint32_t lo = b & (~b + 1);
        ps.push_back(lo);
        b ^= lo;
    }
    const int k = static_cast<int>(ps.size());
    const auto m = [&](std::uint32_t mask) { return mu[mask]; };

    if (k == 2) {
        return m(sub) - m(ps[0]) * m(ps[1]);
    }
    if (k == 3) {
        return m(sub) - m(ps[0]) * m(sub ^ ps[0]) - m(ps[1]) * m(sub ^ ps[1]) -
               m(ps[2]) * m(sub ^ ps[2]) + 2.0 * m(ps[0]) * m(ps[1]) * m(ps[2]);
    }
    if (k == 4) {
        double v = m(sub);
        for (int i = 0; i < 4; ++i) v -= m(ps[i]) * closed_form_rec(mu, sub ^ ps[i]);
        v -= m(ps[0] | ps[1]) * m(ps[2] | ps[3]);
        v -= m(ps[0] | ps[2]) * m(ps[1] | ps[3]);
        v -= m(ps[0] | ps[3]) * m(ps[1] | ps[2]);
        v += 2.0 * m(ps[0]) * m(ps[1]) * m(ps[2]) * m(ps[3]);
        return v;
    }
    if (k == 5) {
        double v = m(sub);
        for (int i = 0; i < 5; ++i) v -= m(ps[i]) * closed_form_rec(mu, sub ^ ps[i]);
        // pair x triple
        for (int i = 0; i < 5; ++i) {
            for (int j = i + 1; j < 5; ++j) {
                const std::uint32_t pair = ps[i] | ps[j];
                v -= m(pair) * m(sub ^ pair);
            }
        }
        // singleton x pair x pair
        for (int i = 0; i < 5; ++i) {
            const std::uint32_t rest = sub ^ ps[i];
            std::vector<std::uint32_t> r;
            for (std::uint32_t b = rest; b;) {
                std::uint32_t lo = b & (~b + 1);
                r.push_back(lo);
                b ^= lo;
            }
            // three pairings of the remaining four
            v += m(ps[i]) * m(r[0] | r[1]) * m(r[2] | r[3]);
            v += m(ps[i]) * m(r[0] | r[2]) * m(r[1] | r[3]);
            v += m(ps[i]) * m(r[0] | r[3]) * m(r[1] | r[2]);
        }
        v -= 6.0 * m(ps[0]) * m(ps[1]) * m(ps[2]) * m(ps[3]) * m(ps[4]);
        return v;
    }
    throw std::invalid_argument("closed-form cumulant is defined for 2..5 particles only");
}

template <typename State>
double closed_form_impl(const State& state, const PauliString& p, int n_state) {
    check_string(p, n_state);
    const int n = p.size();
    if (n < 2 || n > 5) throw std::invalid_argument("closed-form cumulant is defined for 2..5 particles only");
    const auto mu = subset_moments(state, p);
    return closed_form_rec(mu, (1u << n) - 1);
}

template <typename State>
CorrelationSignature tensor_impl(const State& state, int n, double tol) {
    if (n < 2 || n > kMaxTensorParticles) {
        throw std::invalid_argument("correlation tensor scan supports 2..8 particles");
    }
    // Full moment table over {I,x,y,z}^n (base-4 index, particle 1 = most
    // significant digit); every partition-block lookup then reuses it.
    const std::size_t table_size = std::size_t{1} << (2 * n);
    std::vector<double> moment(table_size);
    std::vector<Axis> axes(n, Axis::I);
    const Axis axis_of[4] = {Axis::I, Axis::X, Axis::Y, Axis::Z};
    for (std::size_t code = 0; code < table_size; ++code) {
        std::size_t c = code;
        for (int k = n - 1; k >= 0; --k) {
            axes[k] = axis_of[c & 3];
            c >>= 2;
        }
        moment[code] = qstate::expectation(state, PauliString(axes));
    }

    const auto& parts = partitions_of(n);
    CorrelationSignature sig;
    sig.num_particles = n;
    sig.tolerance = tol;

    // digit place value of particle k (0-based from the left)
    std::vector<std::size_t> place(n);
    for (int k = 0; k < n; ++k) place[k] = std::size_t{1} << (2 * (n - 1 - k));

    std::vector<int> digit(n, 1);
    std::string key(n, 'x');
    while (true) {
        std::size_t full_code = 0;
        for (int k = 0; k < n; ++k) full_code += place[k] * digit[k];
        double total = 0.0;
        for (const auto& part : parts) {
            double prod = 1.0;
            for (std::uint32_t block : part) {
                std::size_t code = 0;
                for (int k = 0; k < n; ++k) {
                    if (block & (1u << k)) code += place[k] * digit[k];
                }
                prod *= moment[code];
            }
            const int nb = static_cast<int>(part.size());
            total += ((nb - 1) % 2 ? -1.0 : 1.0) * factorial(nb - 1) * prod;
        }
        if (std::abs(total) > tol) {
            for (int k = 0; k < n; ++k) key[k] = "ixyz"[digit[k]];
            sig.entries[key] = total;
        }
        int k = n - 1;
        while (k >= 0 && digit[k] == 3) digit[k--] = 1;
        if (k < 0) break;
        ++digit[k];
    }
    return sig;
}

std::string permute_key(const std::string& key, const std::vector<int>& perm) {
    std::string out(key.size(), '?');
    for (std::size_t j = 0; j < key.size(); ++j) out[j] = key[perm[j] - 1];
    return out;
}

}  // namespace

std::vector<std::string> CorrelationSignature::keys() const {
    std::vector<std::string> out;
    out.reserve(entries.size());
    for (const auto& [k, v] : entries) out.push_back(k);
    return out;
}

double cumulant(const StateVector& s, const PauliString& p) {
    return cumulant_impl(s, p, s.num_qubits());
}

double cumulant(const DensityMatrix& rho, const PauliString& p) {
    return cumulant_impl(rho, p, rho.num_qubits());
}

double closed_form_cumulant(const StateVector& s, const PauliString& p) {
    return closed_form_impl(s, p, s.num_qubits());
}

double closed_form_cumulant(const DensityMatrix& rho, const PauliString& p) {
    return closed_form_impl(rho, p, rho.num_qubits());
}

CorrelationSignature correlation_tensor(const StateVector& s, double tol) {
    return tensor_impl(s, s.num_qubits(), tol);
}

CorrelationSignature correlation_tensor(const DensityMatrix& rho, double tol) {
    return tensor_impl(rho, rho.num_qubits(), tol);
}

CorrelationSignature hadamard_signature_map(const CorrelationSignature& sig, int particle) {
    if (particle < 1 || particle > sig.num_particles) {
        throw std::invalid_argument("particle index out of range");
    }
    CorrelationSignature out;
    out.num_particles = sig.num_particles;
    out.tolerance = sig.tolerance;
    for (const auto& [key, value] : sig.entries) {
        std::string k = key;
        char& c = k[particle - 1];
        double v = value;
        if (c == 'x') {
            c = 'z';
        } else if (c == 'z') {
            c = 'x';
        } else {  // y conjugates to -y
            v = -v;
        }
        out.entries[k] = v;
    }
    return out;
}

std::string to_string(FamilyVerdict v) {
    switch (v) {
        case FamilyVerdict::SameState: return "same-state-up-to-tolerance";
        case FamilyVerdict::PermutationRelated: return "permutation-related";
        case FamilyVerdict::HadamardRelated: return "hadamard-related";
        case FamilyVerdict::SameFamilyCandidate: return "same-family-candidate";
        case FamilyVerdict::DifferentFamily: return "different-family";
    }
    return "?";
}

CorrelationSignature apply_witness(const CorrelationSignature& sig, const FamilyWitness& w) {
    CorrelationSignature out;
    out.num_particles = sig.num_particles;
    out.tolerance = sig.tolerance;
    if (w.permutation.empty()) {
        out.entries = sig.entries;
    } else {
        for (const auto& [key, value] : sig.entries) out.entries[permute_key(key, w.permutation)] = value;
    }
    for (int h : w.hadamard_particles) out = hadamard_signature_map(out, h);
    return out;
}

namespace {

bool matches_unsigned(const CorrelationSignature& a, const CorrelationSignature& b) {
    if (a.entries.size() != b.entries.size()) return false;
    const double tol = std::max(a.tolerance, b.tolerance);
    for (const auto& [key, value] : a.entries) {
        auto it = b.entries.find(key);
        if (it == b.entries.end()) return false;
        if (std::abs(std::abs(value) - std::abs(it->second)) > tol) return false;
    }
    return true;
}

}  // namespace

FamilyRelation classify(const CorrelationSignature& a, const CorrelationSignature& b) {
    if (a.num_particles != b.num_particles) throw std::invalid_argument("particle counts differ");
    const int n = a.num_particles;

    if (a.entries.size() != b.entries.size()) {
        return {FamilyVerdict::DifferentFamily, std::nullopt};
    }

    FamilyWitness identity;
    if (matches_unsigned(a, b)) {
        return {FamilyVerdict::SameState, identity};
    }

    if (n <= kMaxWitnessParticles) {
        std::vector<int> perm(n);
        for (int i = 0; i < n; ++i) perm[i] = i + 1;
        // permutations alone first, then composed with Hadamard subsets by size
        std::vector<std::vector<int>> perms;
        do {
            perms.push_back(perm);
        } while (std::next_permutation(perm.begin(), perm.end()));

        for (const auto& p : perms) {
            FamilyWitness w{p, {}};
            if (matches_unsigned(apply_witness(a, w), b)) {
                bool is_id = true;
                for (int i = 0; i < n; ++i) is_id = is_id && p[i] == i + 1;
                if (is_id) continue;  // handled above
                return {FamilyVerdict::PermutationRelated, w};
            }
        }
        for (int size = 1; size <= n; ++size) {
            for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
                if (std::popcount(mask) != size) continue;
                std::vector<int> hs;
                for (int i = 0; i < n; ++i) {
                    if (mask & (1u << i)) hs.push_back(i + 1);
                }
                for (const auto& p : perms) {
                    FamilyWitness w{p, hs};
                    if (matches_unsigned(apply_witness(a, w), b)) {
                        return {FamilyVerdict::HadamardRelated, w};
                    }
                }
            }
        }
    }

    // No witness: compare per-key (x,y,z) count multisets.
    auto count_multiset = [](const CorrelationSignature& s) {
        std::vector<std::array<int, 3>> counts;
        for (const auto& [key, value] : s.entries) {
            std::array<int, 3> c{0, 0, 0};
            for (char ch : key) c[ch == 'x' ? 0 : (ch == 'y' ? 1 : 2)]++;
            counts.push_back(c);
        }
        std::sort(counts.begin(), counts.end());
        return counts;
    };
    if (count_multiset(a) == count_multiset(b)) {
        return {FamilyVerdict::SameFamilyCandidate, std::nullopt};
    }
    return {FamilyVerdict::DifferentFamily, std::nullopt};
}

}  // namespace qumulant::cluster
