#ifndef ORBITLAB_GROUP_ENGINE_HPP
#define ORBITLAB_GROUP_ENGINE_HPP

#include <atomic>
#include <cstdint>
#include <exception>
#include <functional>
#include <mutex>
#include <optional>
#include <set>
#include <span>
#include <thread>
#include <vector>

#include "orbitlab/core.hpp"
#include "orbitlab/ordered_partition.hpp"
#include "orbitlab/partitions.hpp"

namespace orbitlab {

inline void require_brute_force_dim(int n, int cap, const char* op) {
    if (n > cap || n > kHardBruteForceCap)
        throw CapExceeded(std::string(op) + ": n=" + std::to_string(n) + " exceeds brute-force cap " +
                          std::to_string(std::min(cap, kHardBruteForceCap)));
}

/// Visits every arrangement of a[fixed..] exactly once via Heap's algorithm;
/// consecutive arrangements differ by a single swap. The initial arrangement
/// is visited first.
template <typename Visitor>
void visit_arrangements(std::vector<std::uint8_t>& a, std::size_t fixed, Visitor&& visit) {
    const std::size_t m = a.size() - fixed;
    visit(PermView(a.data(), a.size()));
    if (m <= 1) return;
    std::vector<std::size_t> c(m, 0);
    std::size_t i = 1;
    while (i < m) {
        if (c[i] < i) {
            if (i % 2 == 0)
                std::swap(a[fixed], a[fixed + i]);
            else
                std::swap(a[fixed + c[i]], a[fixed + i]);
            visit(PermView(a.data(), a.size()));
            ++c[i];
            i = 1;
        } else {
            c[i] = 0;
            ++i;
        }
    }
}

/// Streams all n! permutations, each exactly once.
template <typename Visitor>
void for_each_perm(int n, Visitor&& visit) {
    require_brute_force_dim(n, kHardBruteForceCap, "for_each_perm");
    std::vector<std::uint8_t> a(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) a[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(i);
    visit_arrangements(a, 0, visit);
}

/// Streams the (n-1)! permutations whose image of position 0 is `first`.
/// The n shards partition Sym_n; merging shard results in shard order keeps
/// every brute-force computation deterministic under any parallelism degree.
template <typename Visitor>
void for_each_perm_in_shard(int n, int first, Visitor&& visit) {
    std::vector<std::uint8_t> a(static_cast<std::size_t>(n));
    a[0] = static_cast<std::uint8_t>(first);
    int next = 0;
    for (int i = 1; i < n; ++i) {
        if (next == first) ++next;
        a[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(next++);
    }
    visit_arrangements(a, 1, visit);
}

/// Runs work(shard) for every shard index, on up to `parallelism` threads,
/// and returns the results indexed by shard.
template <typename Fn>
auto run_shards(int shards, int parallelism, Fn&& work) -> std::vector<decltype(work(0))> {
    using Result = decltype(work(0));
    std::vector<Result> results(static_cast<std::size_t>(shards));
    if (parallelism <= 1 || shards <= 1) {
        for (int s = 0; s < shards; ++s) results[static_cast<std::size_t>(s)] = work(s);
        return results;
    }
    std::atomic<int> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto runner = [&] {
        for (int s; (s = next.fetch_add(1)) < shards;) {
            try {
                results[static_cast<std::size_t>(s)] = work(s);
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        }
    };
    std::vector<std::thread> threads;
    const int degree = std::min(parallelism, shards);
    threads.reserve(static_cast<std::size_t>(degree));
    for (int t = 0; t < degree; ++t) threads.emplace_back(runner);
    for (std::thread& t : threads) t.join();
    if (failure) std::rethrow_exception(failure);
    return results;
}

/// An explicit subgroup of Sym_n, or the full symmetric group as a tag.
/// Explicit element lists are kept sorted by image vector.
class PermGroup {
public:
    PermGroup() = default;

    static PermGroup full_symmetric(int n);
    /// When verify_closure is set (and the list is small enough to afford
    /// it), closure under composition and inverses is checked.
    static PermGroup from_elements(int n, std::vector<PositionPerm> elems, bool verify_closure = false);

    int degree() const { return n_; }
    bool is_full_symmetric() const { return full_; }
    std::uint64_t order() const;
    bool contains(const PositionPerm& p) const;

    /// Explicit element access; throws for the full-Sym_n tag.
    const std::vector<PositionPerm>& elements() const;

    /// Iterates elements without materializing the full symmetric group.
    void for_each_element(const std::function<void(const PositionPerm&)>& fn) const;

    /// Generating set obtained by a plain transversal sift. Plumbing for
    /// serialization; the explicit element list stays authoritative.
    std::vector<PositionPerm> sifted_generators() const;

private:
    int n_ = 0;
    bool full_ = false;
    std::vector<PositionPerm> elems_;
};

std::uint64_t stabilizer_order_of_set(const StringSet& a, int cap = kDefaultBruteForceCap,
                                      int parallelism = 1);

/// All pi in Sym_n with pi(A) = A setwise.
PermGroup stabilizer_of_set(const StringSet& a, int cap = kDefaultBruteForceCap, int parallelism = 1);

std::uint64_t stabilizer_order_of_ordered_partition(const OrderedPartition& p,
                                                    int cap = kDefaultBruteForceCap,
                                                    int parallelism = 1);

/// All pi fixing every colour class setwise, in order.
PermGroup stabilizer_of_ordered_partition(const OrderedPartition& p, int cap = kDefaultBruteForceCap,
                                          int parallelism = 1);

/// Number of distinct images of p under Sym_n, counted by enumeration.
std::uint64_t direct_orbit_count_ordered_partition(const OrderedPartition& p,
                                                   int cap = kDefaultBruteForceCap,
                                                   int parallelism = 1);

/// n! / |Stab(p)| via the orbit-stabilizer identity; cross-checked against
/// direct enumeration for n <= kDirectOrbitCrossCheckDim.
std::uint64_t orbit_size_ordered_partition(const OrderedPartition& p, int cap = kDefaultBruteForceCap,
                                           int parallelism = 1);

/// Order of the setwise stabilizer of a position partition, by enumeration.
std::uint64_t stabilizer_order_of_partition_setwise(const Partition& p, int cap = kDefaultBruteForceCap,
                                                    int parallelism = 1);

/// Coarsest supporting partition of an explicit permutation group: connected
/// components of the positions linked by a transposition inside the group.
Partition coarsest_supporting_partition(const PermGroup& g);

/// One part permutation per string set: maps[i][j] is the image part index
/// within the canonical part order of SP(A_i).
struct PartPermTuple {
    std::vector<std::vector<int>> maps;

    static PartPermTuple identity(std::span<const Partition> sps);

    friend bool operator==(const PartPermTuple&, const PartPermTuple&) = default;
    friend auto operator<=>(const PartPermTuple&, const PartPermTuple&) = default;
};

/// A permutation of the parts of a specific partition.
struct PartPerm {
    Partition domain;
    std::vector<int> images;  // images[j] = image part index

    friend bool operator==(const PartPerm&, const PartPerm&) = default;
};

/// Coarsest supporting partitions of each set, in order.
std::vector<Partition> supporting_partitions_of(std::span<const StringSet> sets);

/// The part permutation pi induces on p, or nullopt when pi does not
/// stabilize p setwise.
std::optional<std::vector<int>> induced_part_map(PermView img, const Partition& p);

/// The tuple of part permutations pi induces simultaneously on the given
/// supporting partitions, if any.
std::optional<PartPermTuple> induced_tuple(PermView img, std::span<const Partition> sps);

/// True iff pi maps each part P of each SP(A_i) onto tuple.maps[i](P).
bool realizes(const PositionPerm& pi, const PartPermTuple& tuple, std::span<const StringSet> sets);

/// All tuples realized by at least one pi in Sym_n.
std::set<PartPermTuple> realizable_tuples(std::span<const StringSet> sets,
                                          int cap = kDefaultBruteForceCap, int parallelism = 1);

/// The part permutation on the intersection of the supports that every
/// realizer of `tuple` must induce, built by the nested-intersection
/// construction; nullopt when the constructed images are empty, are not
/// parts of the intersection, or fail bijectivity ("unrealizable").
std::optional<PartPerm> induced_intersection_permutation(const PartPermTuple& tuple, std::span<const StringSet> sets);

}  // namespace orbitlab

#endif
