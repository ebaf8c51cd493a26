// Ursell-Mayer cluster correlation coefficients: joint cumulants of
// single-particle Pauli observables, the full correlation signature of a
// state, and the key-set rules that relate state families.

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qumulant/qstate.hpp"

namespace qumulant::cluster {

using qstate::DensityMatrix;
using qstate::PauliString;
using qstate::StateVector;

inline constexpr double kNonzeroTol = 1e-8;  // separates rationals like 4/9 or +-1 from numeric dust

// Sparse map from all-non-identity Pauli strings to cumulant values above
// tolerance. Keys are axis strings over {x,y,z} of length num_particles.
struct CorrelationSignature {
    int num_particles = 0;
    double tolerance = kNonzeroTol;
    std::map<std::string, double> entries;

    std::size_t size() const { return entries.size(); }
    bool has(const std::string& key) const { return entries.count(key) != 0; }
    std::vector<std::string> keys() const;
};

// Joint cumulant of the n single-particle observables named by p, via the
// set-partition formula sum_pi (-1)^(|pi|-1) (|pi|-1)! prod_B <prod_{i in B} sigma_i>.
// p must contain no identity axes (restrict to a sub-register first).
double cumulant(const StateVector& s, const PauliString& p);
double cumulant(const DensityMatrix& rho, const PauliString& p);

// The printed closed-form recursions for n in {2,3,4,5}; retained as an
// independent oracle against the set-partition engine.
double closed_form_cumulant(const StateVector& s, const PauliString& p);
double closed_form_cumulant(const DensityMatrix& rho, const PauliString& p);

// Evaluates the cumulant for every string in {x,y,z}^n and keeps entries
// with |value| > tol. Practical bound 2 <= n <= 8 (3^n scan).
CorrelationSignature correlation_tensor(const StateVector& s, double tol = kNonzeroTol);
CorrelationSignature correlation_tensor(const DensityMatrix& rho, double tol = kNonzeroTol);

// Effect of a Hadamard on one particle, at the signature level: x and z
// swap at that position, y stays with its value negated. Involution.
CorrelationSignature hadamard_signature_map(const CorrelationSignature& sig, int particle);

enum class FamilyVerdict {
    SameState,            // key sets and |values| agree as-is
    PermutationRelated,
    HadamardRelated,      // permutation plus single-particle Hadamards
    SameFamilyCandidate,  // no witness found, but per-key axis-count multisets match
    DifferentFamily,
};

std::string to_string(FamilyVerdict v);

struct FamilyWitness {
    std::vector<int> permutation;         // new particle j carries old particle permutation[j-1]
    std::vector<int> hadamard_particles;  // applied after the permutation
};

struct FamilyRelation {
    FamilyVerdict verdict = FamilyVerdict::DifferentFamily;
    std::optional<FamilyWitness> witness;
};

// Key transformation realized by a witness: permute positions, then apply
// the Hadamard key map on each listed particle.
CorrelationSignature apply_witness(const CorrelationSignature& sig, const FamilyWitness& w);

// Signature comparison ladder. Witness search is exhaustive over all n!
// permutations composed with Hadamard subsets (kept for n <= 6; beyond
// that only the count and axis-multiset checks run). Sign patterns are
// not used: matching compares key sets and |values|.
FamilyRelation classify(const CorrelationSignature& a, const CorrelationSignature& b);

}  // namespace qumulant::cluster
