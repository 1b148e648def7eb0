#ifndef ORBITLAB_PARTITIONS_HPP
#define ORBITLAB_PARTITIONS_HPP

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "orbitlab/core.hpp"

namespace orbitlab {

/// A partition of the position set [n]. Parts are stored as bitmasks,
/// ordered by their minimum element; positions are 0-based internally and
/// 1-based in all serialized forms.
class Partition {
public:
    Partition() = default;

    /// Finest partition: every position a singleton.
    static Partition discrete(int n);
    /// Coarsest partition: one part covering [n].
    static Partition single_part(int n);
    /// From explicit parts (0-based positions). Validates disjoint cover.
    static Partition from_parts(int n, const std::vector<std::vector<int>>& parts);
    static Partition from_masks(int n, std::vector<std::uint32_t> masks);
    /// The 0/1 position split of a single word; one part if it is constant.
    static Partition zero_one_split(const BitString& a);
    /// Parses "{1,2}|{3}|{4}" (1-based positions).
    static Partition parse(int n, std::string_view text);

    int degree() const { return n_; }
    int part_count() const { return static_cast<int>(masks_.size()); }
    const std::vector<std::uint32_t>& masks() const { return masks_; }
    int part_index_of(int pos) const { return part_of_[static_cast<std::size_t>(pos)]; }
    std::uint32_t part_mask_of(int pos) const { return masks_[static_cast<std::size_t>(part_of_[static_cast<std::size_t>(pos)])]; }

    std::vector<std::vector<int>> parts() const;  // 0-based
    std::string str() const;                      // "{1,2}|{3,4}"

    friend bool operator==(const Partition& a, const Partition& b) {
        return a.n_ == b.n_ && a.masks_ == b.masks_;
    }
    friend std::strong_ordering operator<=>(const Partition& a, const Partition& b) {
        if (auto c = a.n_ <=> b.n_; c != 0) return c;
        return a.masks_ <=> b.masks_;
    }

private:
    int n_ = 0;
    std::vector<std::uint32_t> masks_;
    std::vector<std::int8_t> part_of_;

    void rebuild_index();
};

/// Intersection: the part containing k is P(k) ∩ Q(k). Refines both inputs.
Partition intersect(const Partition& p, const Partition& q);

/// Finest partition as coarse as both inputs: connected components of the
/// part-overlap relation.
Partition coarsen_join(const Partition& p, const Partition& q);

/// True iff every part of p lies inside some part of q.
bool is_refinement(const Partition& p, const Partition& q);

/// True iff pi fixes every part of p setwise.
bool pointwise_stabilizes(PermView img, const Partition& p);
bool pointwise_stabilizes(const PositionPerm& perm, const Partition& p);

/// True iff pi induces a permutation on the parts of p.
bool setwise_stabilizes(PermView img, const Partition& p);
bool setwise_stabilizes(const PositionPerm& perm, const Partition& p);

/// True iff the transposition of positions i and j maps a onto itself setwise.
bool transposition_stabilizes(const StringSet& a, int i, int j);

/// True iff the pointwise stabilizer of p is contained in the setwise
/// stabilizer of a. Since that pointwise stabilizer is generated by
/// transpositions within parts, it suffices that every such transposition
/// stabilizes a.
bool supports(const Partition& p, const StringSet& a);

/// The unique coarsest partition supporting a.
///
/// Computed as the connected components of the swap graph on [n] whose
/// edges are the transpositions (i j) that stabilize a setwise. The swap
/// graph is a disjoint union of cliques ((i k) = (i j)(j k)(i j) keeps the
/// edge relation closed under the stabilizer group), every supporting
/// partition has parts inside these cliques, and the component partition
/// itself supports a. The all-partitions oracle in the test suite verifies
/// this characterization exhaustively for n <= 6.
Partition coarsest_supporting_partition(const StringSet& a);

/// Fold of intersect over the single-word splits of every member of a;
/// refines coarsest_supporting_partition(a).
Partition intersect_family(const StringSet& a);

/// Positions lying in singleton parts (0-based).
std::vector<int> singleton_positions(const Partition& p);

/// Bitmask of singleton-part positions.
std::uint32_t singleton_mask(const Partition& p);

}  // namespace orbitlab

#endif
