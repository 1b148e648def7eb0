#ifndef ORBITLAB_HFSETS_HPP
#define ORBITLAB_HFSETS_HPP

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "orbitlab/core.hpp"
#include "orbitlab/ordered_partition.hpp"

namespace orbitlab {

/// A hereditarily finite object over bit-string atoms: an atom, or a finite
/// set of HF objects. Children are kept in canonical order (atoms before
/// sets, atoms by packed value, sets by recursive comparison of children)
/// and deduplicated, so structural equality is extensional equality.
class HFObject {
public:
    HFObject() = default;  // the empty set

    static HFObject atom(const BitString& a);
    static HFObject set(std::vector<HFObject> children);
    static HFObject empty_set() { return HFObject(); }

    bool is_atom() const { return is_atom_; }
    bool is_set() const { return !is_atom_; }
    const BitString& atom_value() const;
    const std::vector<HFObject>& children() const;

    std::strong_ordering operator<=>(const HFObject& other) const;
    bool operator==(const HFObject& other) const { return (*this <=> other) == 0; }

    /// Bracketed text form in canonical order, e.g. "{01, {10, {}}}".
    std::string str() const;

private:
    bool is_atom_ = false;
    BitString atom_;
    std::vector<HFObject> kids_;
};

/// Which group acts on HF objects. The position action (pi, 0^n) is the
/// default; the full (pi, w) hypercube action sits behind this flag.
enum class HFAction { positions, full_automorphisms };

/// Cardinality of the least transitive set containing x; x itself counts,
/// and extensionally equal members count once.
std::uint64_t transitive_closure_size(const HFObject& x);

/// Replaces every atom a by pi(a) and re-canonicalizes.
HFObject apply_perm_hf(const PositionPerm& pi, const HFObject& x);

/// Replaces every atom a by sigma(a) = pi(a) xor w.
HFObject apply_aut_hf(const AutPair& sigma, const HFObject& x);

/// The nested encoding { C_1, { C_2, { ... } } } of an ordered partition;
/// the innermost tail is the empty set, keeping every level a two-element
/// set and the class count recoverable.
HFObject encode_ordered_partition(const OrderedPartition& p);

/// True iff x is fixed by every element of the acting group.
bool is_symmetric(const HFObject& x, int n, HFAction action = HFAction::positions,
                  int cap = kDefaultBruteForceCap);

/// A polynomial with non-negative integer coefficients, c[0] + c[1]*m + ...
struct Polynomial {
    std::vector<std::uint64_t> coeffs;
    mpz_class eval(std::uint64_t m) const;
};

/// True iff |tc(x)| <= p(universe_size).
bool is_p_bounded(const HFObject& x, const Polynomial& p, std::uint64_t universe_size);

/// Number of distinct images of x under the acting group.
std::uint64_t orbit_size_hf(const HFObject& x, int n, HFAction action = HFAction::positions,
                            int cap = kDefaultBruteForceCap, int parallelism = 1);

}  // namespace orbitlab

#endif
