#ifndef ORBITLAB_BOUNDS_HPP
#define ORBITLAB_BOUNDS_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "orbitlab/group_engine.hpp"
#include "orbitlab/preorders.hpp"

namespace orbitlab {

mpz_class factorial_mpz(unsigned long n);
mpz_class pow_mpz(unsigned long base, unsigned long exp);
mpz_class pow2_mpz(unsigned long exp);

/// Smallest integer >= a/b for positive integers.
long ceil_div(long a, long b);

/// Smallest integer m with 2^m >= n^8, i.e. ceil(8*log2(n)).
int ceil_8_log2(int n);

/// Trace of the greedy colour-class selection that individualises every
/// globally-singleton position: one class added per step, each strictly
/// increasing the part count of the running intersection of supports.
struct ClassSelectionTrace {
    int n = 0;
    std::uint32_t global_singletons = 0;  // singleton positions of the intersection of all SP(C)
    std::vector<int> chosen_classes;      // 0-based class indices, in selection order
    std::vector<int> part_increases;      // part-count increase per step
    Partition final_intersection;
};

ClassSelectionTrace select_individualizing_classes(const OrderedPartition& p);

struct TupleCountBounds {
    mpz_class product_form;  // product of min(increase + 1, f)! over the trace
    mpz_class closed_form;   // (f!)^ceil(n/(f-1)) * 2^n
};

/// Both bounds on the number of realizable simultaneous part permutations
/// along a selection trace; requires f >= 2.
TupleCountBounds tuple_count_bounds(const ClassSelectionTrace& trace, int f);

struct NonSingletonReport {
    int n = 0;
    int singleton_count = 0;      // global singleton positions
    int non_singleton_count = 0;  // n minus the above
    double bound = 0;             // 8 * log2(n)
    bool holds = false;           // non_singleton_count < bound
    bool cover_ok = false;        // hypothesis: classes cover {0,1}^n (and are disjoint)
    bool size_hypothesis_ok = false;  // hypothesis: max |C| <= c*n
};

/// Report-only finite-n check of the non-singleton position bound.
NonSingletonReport check_nonsingleton_bound(const OrderedPartition& p, int c);

/// Trace of the stepwise selection of a small subset A of B whose
/// intersection of single-string splits leaves only small or rigidly
/// constrained parts on the singleton positions of SP(B).
struct SubsetSelectionTrace {
    int n = 0;
    std::uint32_t s_mask = 0;       // singleton positions of SP(B)
    std::vector<BitString> chosen;  // selected strings, in selection order
    int potential_initial = 0;
    std::vector<int> potential;     // potential after each step
    Partition final_intersection;   // intersection of splits over the chosen strings
    std::string stop_reason;        // "all-parts-small" or "no-candidates"

    StringSet chosen_set() const;
};

/// Builds the subset per the stepwise construction and verifies its output
/// conditions; a verification failure throws std::logic_error since the
/// construction cannot fail on valid input.
SubsetSelectionTrace select_constraining_subset(const StringSet& b);

/// Potential sum_P max(|P ∩ S| - 2, 0) over the parts of p.
int refinement_potential(const Partition& p, std::uint32_t s_mask);

/// An injective partial string mapping, keyed and valued by packed words.
using StringInjection = std::map<std::uint32_t, std::uint32_t>;

struct CellAssignment {
    Partition intersection;    // intersection of splits over A
    std::vector<int> part_of;  // position -> part index in `intersection`

    std::uint32_t part_mask_of(int pos) const {
        return intersection.masks()[static_cast<std::size_t>(part_of[static_cast<std::size_t>(pos)])];
    }
};

/// The forced position-to-part assignment constraining every realizer of a
/// string permutation that acts as the inverse of p on A. Returns nullopt
/// ("infeasible") when weights mismatch, a cell comes out empty, or the
/// preimage counts cannot match the part sizes; in each case no realizer
/// exists.
std::optional<CellAssignment> forced_cell_assignment(const StringSet& b, const StringSet& a,
                                                     const StringInjection& p);

/// Brute-forced { pi in Stab(B) | pi(p(a)) = a for all a in A }.
std::vector<PositionPerm> pinned_stabilizer(const StringSet& b, const StringSet& a,
                                            const StringInjection& p, int cap = kDefaultBruteForceCap,
                                            int parallelism = 1);

/// 2^ceil(s/2) * (n-s)! where s counts singleton positions of SP(B).
mpz_class pinned_stabilizer_bound(int n, int s_count);

/// Checks over the brute-forced pinned set that members agreeing off the
/// large-part positions agree everywhere.
bool large_part_rigidity_check(const StringSet& b, const StringSet& a, const StringInjection& p,
                               int cap = kDefaultBruteForceCap, int parallelism = 1);

struct BoundEntry {
    mpz_class value;
    bool hypotheses_ok = true;
    bool checkable = true;  // false for report-only formulas with free asymptotic constants
    std::string note;
};

struct BoundReport {
    int n = 0;
    int f_n = 0;       // max |SP(C)| over classes (or |SP(B)| for a bare set)
    int s_n = 0;       // singleton parts of SP(B)
    int t_n = 0;       // non-singleton parts of SP(B)
    int s_global = 0;  // singleton positions of the global intersection (preorder path)
    long cn_value = 0; // the c*n value used where a class-size constant enters
    int a_n_size = 0;  // size of the constructed subset of B
    std::map<std::string, BoundEntry> bounds;
    std::map<std::string, mpz_class> exact;  // brute-forced quantities, when computed

    /// (bound key, exact key) pairs that soundness checks compare.
    static const std::vector<std::pair<std::string, std::string>>& checked_pairs();
};

struct BoundParams {
    std::optional<long> cn;  // override for c*n; default: measured from the instance
    long asym_d = 0;         // free constant of the report-only bound; 0 derives a default
    bool compute_exact = true;
    int cap = kDefaultBruteForceCap;
    int parallelism = 1;
};

/// Evaluates every applicable closed-form stabilizer bound for a preorder,
/// pairing each with the brute-forced exact quantity when within cap.
BoundReport stab_bound_report(const OrderedPartition& p, const BoundParams& params = {});

/// Set-level bounds only (no colour-class structure).
BoundReport stab_bound_report(const StringSet& b, const BoundParams& params = {});

struct RealizerScanResult {
    std::uint64_t realizable_tuple_count = 0;
    bool unique = true;                // all realizers of a tuple induce one part permutation
    bool matches_construction = true;  // the observed permutation equals induced_intersection_permutation(tuple)
};

/// Single pass over Sym_n grouping realizers by induced tuple; checks that
/// each realizable tuple forces one part permutation on the intersection of
/// the supports and that it coincides with the inductive construction.
RealizerScanResult realizer_consistency_scan(std::span<const StringSet> sets,
                                             int cap = kDefaultBruteForceCap, int parallelism = 1);

struct PinningCheckResult {
    bool feasible = false;      // forced_cell_assignment produced an assignment
    std::uint64_t pinned_count = 0;
    bool compliance_ok = true;  // every member maps each position into its forced cell
    bool inverse_ok = true;     // preimages of each cell's singleton positions are the forced ones
    bool rigidity_ok = true;    // agreement off large parts forces agreement on them
    bool size_bound_ok = true;  // pinned_count <= 2^ceil(s/2) * (n-s)!

    bool all_ok() const { return compliance_ok && inverse_ok && rigidity_ok && size_bound_ok; }
};

/// Brute-forces the pinned stabilizer set and checks it against the forced
/// assignment. When the assignment is infeasible, the set must be empty.
PinningCheckResult pinning_check(const StringSet& b, const StringSet& a, const StringInjection& p,
                                 int cap = kDefaultBruteForceCap, int parallelism = 1);

struct GrowthRow {
    int n = 0;
    std::string family;
    std::optional<mpz_class> exact_orbit;
    std::map<std::string, BoundEntry> bounds;       // stabilizer upper bounds
    std::map<std::string, mpz_class> orbit_lower;   // n! / bound, per applicable bound
    mpz_class pow2_kn;
    std::optional<double> ratio_exact;  // exact_orbit / 2^(k*n)
    bool hypotheses_ok = false;         // the headline preorder_stab hypotheses
};

struct GrowthTable {
    std::string family;
    int k = 1;
    std::vector<GrowthRow> rows;
};

/// Per-n growth data for a generator family; exact columns only within cap.
/// Family ids: hamming, lex-block, random-block, singletons.
GrowthTable growth_report(const std::string& family, int n_from, int n_to, int k, int c,
                          std::uint64_t seed, int cap = kDefaultBruteForceCap, int parallelism = 1);

/// Generator dispatch shared by the growth report and the CLI.
OrderedPartition make_family_instance(const std::string& family, int n, int c, std::uint64_t seed);

}  // namespace orbitlab

#endif
