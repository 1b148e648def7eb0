#ifndef ORBITLAB_PREORDERS_HPP
#define ORBITLAB_PREORDERS_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "orbitlab/ordered_partition.hpp"
#include "orbitlab/partitions.hpp"

namespace orbitlab {

/// Partition of {0,1}^n by Hamming weight, classes ordered by weight.
OrderedPartition hamming_preorder(int n);

/// Consecutive blocks of c*n strings in dictionary order; the last block may
/// be smaller.
OrderedPartition lex_block_preorder(int n, int c);

/// Seeded uniform shuffle of {0,1}^n chunked into blocks of c*n strings.
OrderedPartition random_block_preorder(int n, int c, std::uint64_t seed);

/// Every string its own class, in dictionary order.
OrderedPartition singleton_preorder(int n);

struct ValidationReport {
    bool nonempty_classes = true;
    bool disjoint = true;
    bool covers = true;
    bool size_bound_ok = true;  // max |C| <= c*n
    int max_class_size = 0;
    std::vector<std::string> violations;

    bool well_formed() const { return nonempty_classes && disjoint && covers; }
    bool all_ok() const { return well_formed() && size_bound_ok; }
};

/// Checks cover, disjointness, non-empty classes, and max class size <= c*n.
/// Violations are reported, never thrown.
ValidationReport validate(const OrderedPartition& p, int c);

enum class CaseTag { sublinear_support, linear_support_few_singletons, linear_support_many_singletons };

std::string to_string(CaseTag tag);

/// Measured classification data. The asymptotic sublinear/linear case split
/// has no finite-n meaning, so the tag uses explicit threshold fractions
/// which are reported alongside the measurements.
struct CaseReport {
    int n = 0;
    int b_class_index = 0;        // class maximizing |SP(C_i)|, lowest index on ties
    int sp_size = 0;              // |SP(B_n)|
    int singleton_count_global = 0;  // singletons of the intersection of all SP(C)
    int singleton_count_b = 0;       // singletons of SP(B_n)
    int max_class_size = 0;
    CaseTag case_tag = CaseTag::sublinear_support;
    double support_fraction = 0.5;    // sublinear iff |SP(B_n)| <= support_fraction * n
    double singleton_fraction = 0.5;  // few singletons iff |S_n(B_n)| <= singleton_fraction * n

    Partition sp_b;                  // SP(B_n)
    Partition global_intersection;   // intersection of SP(C) over all classes
};

struct ClassifyOptions {
    double support_fraction = 0.5;
    double singleton_fraction = 0.5;
};

CaseReport classify(const OrderedPartition& p, const ClassifyOptions& options = {});

/// Instance file format: one class per line, words space-separated, classes
/// in order. Blank lines are ignored.
OrderedPartition read_ordered_partition(std::istream& in);
OrderedPartition read_ordered_partition_file(const std::string& path);
void write_ordered_partition(std::ostream& out, const OrderedPartition& p);

}  // namespace orbitlab

#endif
