#include "orbitlab/group_engine.hpp"

#include <algorithm>
#include <bit>
#include <map>

namespace orbitlab {

namespace {

std::vector<std::vector<bool>> class_membership(const OrderedPartition& p) {
    std::vector<std::vector<bool>> member(p.classes.size(), std::vector<bool>(std::size_t{1} << p.n, false));
    for (std::size_t i = 0; i < p.classes.size(); ++i)
        for (std::uint32_t v : p.classes[i].values()) member[i][v] = true;
    return member;
}

bool fixes_every_class(PermView img, const OrderedPartition& p,
                       const std::vector<std::vector<bool>>& member) {
    for (std::size_t i = 0; i < p.classes.size(); ++i)
        for (std::uint32_t v : p.classes[i].values())
            if (!member[i][apply_perm_bits(img, v)]) return false;
    return true;
}

template <typename Pred>
std::uint64_t count_perms_where(int n, int parallelism, Pred&& pred) {
    auto shard_counts = run_shards(n, parallelism, [&](int s) {
        std::uint64_t count = 0;
        for_each_perm_in_shard(n, s, [&](PermView img) {
            if (pred(img)) ++count;
        });
        return count;
    });
    std::uint64_t total = 0;
    for (std::uint64_t c : shard_counts) total += c;
    return total;
}

template <typename Pred>
std::vector<PositionPerm> collect_perms_where(int n, int parallelism, Pred&& pred) {
    auto shard_elems = run_shards(n, parallelism, [&](int s) {
        std::vector<PositionPerm> found;
        for_each_perm_in_shard(n, s, [&](PermView img) {
            if (pred(img)) found.push_back(PositionPerm::from_images(img));
        });
        return found;
    });
    std::vector<PositionPerm> all;
    for (auto& shard : shard_elems) all.insert(all.end(), shard.begin(), shard.end());
    std::sort(all.begin(), all.end());
    return all;
}

}  // namespace

PermGroup PermGroup::full_symmetric(int n) {
    if (n < 1 || n > kMaxDim) throw std::invalid_argument("PermGroup: degree out of range");
    PermGroup g;
    g.n_ = n;
    g.full_ = true;
    return g;
}

PermGroup PermGroup::from_elements(int n, std::vector<PositionPerm> elems, bool verify_closure) {
    PermGroup g;
    g.n_ = n;
    for (const PositionPerm& p : elems)
        if (p.degree() != n) throw std::invalid_argument("PermGroup: element degree mismatch");
    std::sort(elems.begin(), elems.end());
    elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
    g.elems_ = std::move(elems);
#ifndef NDEBUG
    verify_closure = true;  // debug builds always check small explicit groups
#endif
    if (verify_closure && g.elems_.size() <= 2000) {
        for (const PositionPerm& a : g.elems_) {
            if (!g.contains(a.inverse())) throw std::invalid_argument("PermGroup: not closed under inverse");
            for (const PositionPerm& b : g.elems_)
                if (!g.contains(a * b)) throw std::invalid_argument("PermGroup: not closed under composition");
        }
    }
    return g;
}

std::uint64_t PermGroup::order() const {
    return full_ ? factorial_u64(n_) : static_cast<std::uint64_t>(elems_.size());
}

bool PermGroup::contains(const PositionPerm& p) const {
    if (p.degree() != n_) return false;
    if (full_) return true;
    return std::binary_search(elems_.begin(), elems_.end(), p);
}

const std::vector<PositionPerm>& PermGroup::elements() const {
    if (full_) throw std::logic_error("PermGroup: full Sym_n is not materialized; use for_each_element");
    return elems_;
}

void PermGroup::for_each_element(const std::function<void(const PositionPerm&)>& fn) const {
    if (full_) {
        for_each_perm(n_, [&](PermView img) { fn(PositionPerm::from_images(img)); });
        return;
    }
    for (const PositionPerm& p : elems_) fn(p);
}

std::vector<PositionPerm> PermGroup::sifted_generators() const {
    if (full_) {
        std::vector<PositionPerm> gens;
        if (n_ >= 2) {
            gens.push_back(PositionPerm::transposition(n_, 0, 1));
            std::vector<int> cycle(static_cast<std::size_t>(n_));
            for (int i = 0; i < n_; ++i) cycle[static_cast<std::size_t>(i)] = (i + 1) % n_;
            PositionPerm rot = PositionPerm::from_images(cycle);
            if (!(rot == gens[0])) gens.push_back(rot);
        }
        return gens;
    }
    // Transversal sift: every group element reduces to the identity through
    // the table, so the collected entries generate the group.
    std::map<std::pair<int, int>, PositionPerm> table;
    for (const PositionPerm& g : elems_) {
        PositionPerm h = g;
        for (int level = 0; level < n_; ++level) {
            const int x = h.image(level);
            if (x == level) continue;
            auto it = table.find({level, x});
            if (it == table.end()) {
                table.emplace(std::pair<int, int>{level, x}, h);
                break;
            }
            h = it->second.inverse() * h;
        }
    }
    std::vector<PositionPerm> gens;
    gens.reserve(table.size());
    for (auto& [key, perm] : table) gens.push_back(perm);
    std::sort(gens.begin(), gens.end());
    return gens;
}

std::uint64_t stabilizer_order_of_set(const StringSet& a, int cap, int parallelism) {
    require_brute_force_dim(a.dim(), cap, "stabilizer_order_of_set");
    std::vector<bool> member(std::size_t{1} << a.dim(), false);
    for (std::uint32_t v : a.values()) member[v] = true;
    return count_perms_where(a.dim(), parallelism, [&](PermView img) {
        for (std::uint32_t v : a.values())
            if (!member[apply_perm_bits(img, v)]) return false;
        return true;
    });
}

PermGroup stabilizer_of_set(const StringSet& a, int cap, int parallelism) {
    require_brute_force_dim(a.dim(), cap, "stabilizer_of_set");
    std::vector<bool> member(std::size_t{1} << a.dim(), false);
    for (std::uint32_t v : a.values()) member[v] = true;
    auto elems = collect_perms_where(a.dim(), parallelism, [&](PermView img) {
        for (std::uint32_t v : a.values())
            if (!member[apply_perm_bits(img, v)]) return false;
        return true;
    });
    return PermGroup::from_elements(a.dim(), std::move(elems));
}

std::uint64_t stabilizer_order_of_ordered_partition(const OrderedPartition& p, int cap, int parallelism) {
    require_brute_force_dim(p.n, cap, "stabilizer_order_of_ordered_partition");
    const auto member = class_membership(p);
    return count_perms_where(p.n, parallelism,
                             [&](PermView img) { return fixes_every_class(img, p, member); });
}

PermGroup stabilizer_of_ordered_partition(const OrderedPartition& p, int cap, int parallelism) {
    require_brute_force_dim(p.n, cap, "stabilizer_of_ordered_partition");
    const auto member = class_membership(p);
    auto elems = collect_perms_where(p.n, parallelism,
                                     [&](PermView img) { return fixes_every_class(img, p, member); });
    return PermGroup::from_elements(p.n, std::move(elems));
}

std::uint64_t direct_orbit_count_ordered_partition(const OrderedPartition& p, int cap, int parallelism) {
    require_brute_force_dim(p.n, cap, "direct_orbit_count_ordered_partition");
    auto shard_images = run_shards(p.n, parallelism, [&](int s) {
        std::set<std::vector<std::uint32_t>> images;
        std::vector<std::uint32_t> flat;
        for_each_perm_in_shard(p.n, s, [&](PermView img) {
            flat.clear();
            for (const StringSet& c : p.classes) {
                const std::size_t begin = flat.size();
                for (std::uint32_t v : c.values()) flat.push_back(apply_perm_bits(img, v));
                std::sort(flat.begin() + static_cast<std::ptrdiff_t>(begin), flat.end());
            }
            images.insert(flat);
        });
        return images;
    });
    std::set<std::vector<std::uint32_t>> all;
    for (auto& shard : shard_images) all.merge(shard);
    return all.size();
}

std::uint64_t orbit_size_ordered_partition(const OrderedPartition& p, int cap, int parallelism) {
    const std::uint64_t stab = stabilizer_order_of_ordered_partition(p, cap, parallelism);
    const std::uint64_t orbit = factorial_u64(p.n) / stab;
    if (p.n <= kDirectOrbitCrossCheckDim) {
        const std::uint64_t direct = direct_orbit_count_ordered_partition(p, cap, parallelism);
        if (direct != orbit)
            throw std::logic_error("orbit_size_ordered_partition: orbit-stabilizer cross-check failed");
    }
    return orbit;
}

std::uint64_t stabilizer_order_of_partition_setwise(const Partition& p, int cap, int parallelism) {
    require_brute_force_dim(p.degree(), cap, "stabilizer_order_of_partition_setwise");
    return count_perms_where(p.degree(), parallelism,
                             [&](PermView img) { return setwise_stabilizes(img, p); });
}

Partition coarsest_supporting_partition(const PermGroup& g) {
    const int n = g.degree();
    if (g.is_full_symmetric()) return Partition::single_part(n);
    // Union positions linked by a transposition in g.
    std::vector<int> root(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) root[static_cast<std::size_t>(i)] = i;
    auto find = [&](int x) {
        while (root[static_cast<std::size_t>(x)] != x) x = root[static_cast<std::size_t>(x)];
        return x;
    };
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            if (find(i) == find(j)) continue;
            if (g.contains(PositionPerm::transposition(n, i, j)))
                root[static_cast<std::size_t>(std::max(find(i), find(j)))] = std::min(find(i), find(j));
        }
    std::vector<std::uint32_t> masks(static_cast<std::size_t>(n), 0);
    for (int i = 0; i < n; ++i) masks[static_cast<std::size_t>(find(i))] |= 1u << i;
    std::erase(masks, 0u);
    return Partition::from_masks(n, std::move(masks));
}

PartPermTuple PartPermTuple::identity(std::span<const Partition> sps) {
    PartPermTuple t;
    t.maps.reserve(sps.size());
    for (const Partition& sp : sps) {
        std::vector<int> id(static_cast<std::size_t>(sp.part_count()));
        for (int j = 0; j < sp.part_count(); ++j) id[static_cast<std::size_t>(j)] = j;
        t.maps.push_back(std::move(id));
    }
    return t;
}

std::vector<Partition> supporting_partitions_of(std::span<const StringSet> sets) {
    std::vector<Partition> sps;
    sps.reserve(sets.size());
    for (const StringSet& a : sets) sps.push_back(coarsest_supporting_partition(a));
    return sps;
}

std::optional<std::vector<int>> induced_part_map(PermView img, const Partition& p) {
    std::vector<int> map(static_cast<std::size_t>(p.part_count()));
    for (int j = 0; j < p.part_count(); ++j) {
        std::uint32_t m = p.masks()[static_cast<std::size_t>(j)];
        const int target = p.part_index_of(img[static_cast<std::size_t>(std::countr_zero(m))]);
        for (m &= m - 1; m; m &= m - 1)
            if (p.part_index_of(img[static_cast<std::size_t>(std::countr_zero(m))]) != target) return std::nullopt;
        map[static_cast<std::size_t>(j)] = target;
    }
    return map;
}

std::optional<PartPermTuple> induced_tuple(PermView img, std::span<const Partition> sps) {
    PartPermTuple t;
    t.maps.reserve(sps.size());
    for (const Partition& sp : sps) {
        auto map = induced_part_map(img, sp);
        if (!map) return std::nullopt;
        t.maps.push_back(std::move(*map));
    }
    return t;
}

namespace {

void validate_tuple(const PartPermTuple& tuple, std::span<const Partition> sps) {
    if (tuple.maps.size() != sps.size())
        throw std::invalid_argument("PartPermTuple: component count does not match set count");
    for (std::size_t i = 0; i < sps.size(); ++i) {
        const auto& map = tuple.maps[i];
        const int parts = sps[i].part_count();
        if (static_cast<int>(map.size()) != parts)
            throw std::invalid_argument("PartPermTuple: component size does not match part count");
        std::uint32_t seen = 0;
        for (int x : map) {
            if (x < 0 || x >= parts || (seen & (1u << x)))
                throw std::invalid_argument("PartPermTuple: component is not a bijection on parts");
            seen |= 1u << x;
        }
    }
}

}  // namespace

bool realizes(const PositionPerm& pi, const PartPermTuple& tuple, std::span<const StringSet> sets) {
    const auto sps = supporting_partitions_of(sets);
    for (const Partition& sp : sps)
        if (sp.degree() != pi.degree()) throw std::invalid_argument("realizes: degree mismatch");
    validate_tuple(tuple, sps);
    const auto induced = induced_tuple(pi.images(), sps);
    return induced && *induced == tuple;
}

std::set<PartPermTuple> realizable_tuples(std::span<const StringSet> sets, int cap, int parallelism) {
    if (sets.empty()) {
        std::set<PartPermTuple> just_empty;
        just_empty.insert(PartPermTuple{});
        return just_empty;
    }
    const int n = sets[0].dim();
    require_brute_force_dim(n, cap, "realizable_tuples");
    const auto sps = supporting_partitions_of(sets);
    auto shard_tuples = run_shards(n, parallelism, [&](int s) {
        std::set<PartPermTuple> tuples;
        for_each_perm_in_shard(n, s, [&](PermView img) {
            auto t = induced_tuple(img, sps);
            if (t) tuples.insert(std::move(*t));
        });
        return tuples;
    });
    std::set<PartPermTuple> all;
    for (auto& shard : shard_tuples) all.merge(shard);
    return all;
}

std::optional<PartPerm> induced_intersection_permutation(const PartPermTuple& tuple, std::span<const StringSet> sets) {
    if (sets.empty()) throw std::invalid_argument("induced_intersection_permutation: empty set family");
    const auto sps = supporting_partitions_of(sets);
    validate_tuple(tuple, sps);

    // Base case: the intersection over one set is SP(A_1) itself.
    Partition running = sps[0];
    std::vector<std::uint32_t> image_masks;
    for (int j = 0; j < running.part_count(); ++j)
        image_masks.push_back(running.masks()[static_cast<std::size_t>(tuple.maps[0][static_cast<std::size_t>(j)])]);

    for (std::size_t i = 1; i < sps.size(); ++i) {
        const Partition& sp = sps[i];
        const Partition refined = intersect(running, sp);
        std::vector<std::uint32_t> next_masks;
        next_masks.reserve(static_cast<std::size_t>(refined.part_count()));
        std::uint32_t seen = 0;
        for (std::uint32_t part : refined.masks()) {
            const int anchor = std::countr_zero(part);
            const std::uint32_t outer_image = image_masks[static_cast<std::size_t>(running.part_index_of(anchor))];
            const int sp_part = sp.part_index_of(anchor);
            const std::uint32_t sp_image =
                sp.masks()[static_cast<std::size_t>(tuple.maps[i][static_cast<std::size_t>(sp_part)])];
            const std::uint32_t image = outer_image & sp_image;
            // The image must itself be a part of the refined partition, and
            // the assignment must hit each part once.
            if (image == 0 || refined.part_mask_of(std::countr_zero(image)) != image) return std::nullopt;
            if (seen & image) return std::nullopt;
            seen |= image;
            next_masks.push_back(image);
        }
        running = refined;
        image_masks = std::move(next_masks);
    }

    PartPerm forced;
    forced.images.reserve(image_masks.size());
    for (std::uint32_t m : image_masks)
        forced.images.push_back(running.part_index_of(std::countr_zero(m)));
    forced.domain = std::move(running);
    return forced;
}

}  // namespace orbitlab
