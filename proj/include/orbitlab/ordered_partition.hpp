#ifndef ORBITLAB_ORDERED_PARTITION_HPP
#define ORBITLAB_ORDERED_PARTITION_HPP

#include <vector>

#include "orbitlab/core.hpp"

namespace orbitlab {

/// An ordered tuple of colour classes (C_1,...,C_m) over {0,1}^n. The class
/// order is significant. Instances are constructible even when they violate
/// the cover/disjointness invariants so that validation can report on them.
struct OrderedPartition {
    int n = 0;
    std::vector<StringSet> classes;

    OrderedPartition() = default;
    OrderedPartition(int dim, std::vector<StringSet> cls) : n(dim), classes(std::move(cls)) {
        for (const StringSet& c : classes)
            if (c.dim() != n) throw std::invalid_argument("OrderedPartition: mixed class dimensions");
    }

    int class_count() const { return static_cast<int>(classes.size()); }

    std::size_t total_strings() const {
        std::size_t total = 0;
        for (const StringSet& c : classes) total += c.size();
        return total;
    }

    OrderedPartition apply(const PositionPerm& p) const {
        std::vector<StringSet> mapped;
        mapped.reserve(classes.size());
        for (const StringSet& c : classes) mapped.push_back(c.apply(p));
        return OrderedPartition(n, std::move(mapped));
    }

    friend bool operator==(const OrderedPartition&, const OrderedPartition&) = default;
};

}  // namespace orbitlab

#endif
