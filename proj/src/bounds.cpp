#include "orbitlab/bounds.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

namespace orbitlab {

mpz_class factorial_mpz(unsigned long n) {
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), n);
    return f;
}

mpz_class pow_mpz(unsigned long base, unsigned long exp) {
    mpz_class b(static_cast<unsigned long>(base)), r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), exp);
    return r;
}

mpz_class pow2_mpz(unsigned long exp) { return pow_mpz(2, exp); }

long ceil_div(long a, long b) { return (a + b - 1) / b; }

int ceil_8_log2(int n) {
    const std::uint64_t n8 = [&] {
        std::uint64_t x = 1;
        for (int i = 0; i < 8; ++i) x *= static_cast<std::uint64_t>(n);
        return x;
    }();
    int m = 0;
    while ((std::uint64_t{1} << m) < n8) ++m;
    return m;
}

namespace {

bool constant_on(std::uint32_t word, std::uint32_t mask) {
    const std::uint32_t ones = word & mask;
    return ones == 0 || ones == mask;
}

bool imbalanced_on(std::uint32_t word, std::uint32_t mask) {
    const int ones = std::popcount(word & mask);
    const int zeros = std::popcount(mask) - ones;
    return ones == 1 || zeros == 1;
}

std::vector<Partition> class_supports(const OrderedPartition& p) {
    std::vector<Partition> sps;
    sps.reserve(p.classes.size());
    for (const StringSet& c : p.classes) sps.push_back(coarsest_supporting_partition(c));
    return sps;
}

Partition intersect_all(int n, const std::vector<Partition>& parts) {
    Partition acc = Partition::single_part(n);
    for (const Partition& p : parts) acc = intersect(acc, p);
    return acc;
}

}  // namespace

ClassSelectionTrace select_individualizing_classes(const OrderedPartition& p) {
    ClassSelectionTrace trace;
    trace.n = p.n;
    const auto sps = class_supports(p);
    trace.global_singletons = singleton_mask(intersect_all(p.n, sps));

    Partition running = Partition::single_part(p.n);
    std::vector<bool> chosen(p.classes.size(), false);
    while ((trace.global_singletons & ~singleton_mask(running)) != 0) {
        int pick = -1;
        Partition refined;
        for (std::size_t j = 0; j < sps.size(); ++j) {
            if (chosen[j]) continue;
            Partition candidate = intersect(running, sps[j]);
            if (candidate.part_count() > running.part_count()) {
                pick = static_cast<int>(j);
                refined = std::move(candidate);
                break;
            }
        }
        if (pick < 0)
            throw std::logic_error(
                "select_individualizing_classes: no class refines the intersection although "
                "singleton positions remain; the global singleton set must be reachable");
        chosen[static_cast<std::size_t>(pick)] = true;
        trace.chosen_classes.push_back(pick);
        trace.part_increases.push_back(refined.part_count() - running.part_count());
        running = std::move(refined);
    }
    trace.final_intersection = std::move(running);
    return trace;
}

TupleCountBounds tuple_count_bounds(const ClassSelectionTrace& trace, int f) {
    if (f < 2) throw std::invalid_argument("tuple_count_bounds: f must be >= 2");
    TupleCountBounds bound;
    bound.product_form = 1;
    for (int k : trace.part_increases)
        bound.product_form *= factorial_mpz(static_cast<unsigned long>(std::min(k + 1, f)));
    const long exponent = ceil_div(trace.n, f - 1);
    bound.closed_form = 1;
    mpz_pow_ui(bound.closed_form.get_mpz_t(), factorial_mpz(static_cast<unsigned long>(f)).get_mpz_t(),
               static_cast<unsigned long>(exponent));
    bound.closed_form *= pow2_mpz(static_cast<unsigned long>(trace.n));
    return bound;
}

NonSingletonReport check_nonsingleton_bound(const OrderedPartition& p, int c) {
    NonSingletonReport report;
    report.n = p.n;
    report.singleton_count = std::popcount(singleton_mask(intersect_all(p.n, class_supports(p))));
    report.non_singleton_count = p.n - report.singleton_count;
    report.bound = 8.0 * std::log2(static_cast<double>(p.n));
    report.holds = report.non_singleton_count < report.bound;
    const ValidationReport v = validate(p, c);
    report.cover_ok = v.covers && v.disjoint && v.nonempty_classes;
    report.size_hypothesis_ok = v.size_bound_ok;
    return report;
}

int refinement_potential(const Partition& p, std::uint32_t s_mask) {
    int potential = 0;
    for (std::uint32_t m : p.masks()) potential += std::max(std::popcount(m & s_mask) - 2, 0);
    return potential;
}

StringSet SubsetSelectionTrace::chosen_set() const {
    std::vector<std::uint32_t> values;
    values.reserve(chosen.size());
    for (const BitString& a : chosen) values.push_back(a.bits());
    return StringSet(n, std::move(values));
}

SubsetSelectionTrace select_constraining_subset(const StringSet& b) {
    if (b.empty()) throw std::invalid_argument("select_constraining_subset: empty set");
    const int n = b.dim();
    SubsetSelectionTrace trace;
    trace.n = n;
    trace.s_mask = singleton_mask(coarsest_supporting_partition(b));

    Partition running = Partition::single_part(n);
    trace.potential_initial = refinement_potential(running, trace.s_mask);
    std::vector<bool> taken_value(std::size_t{1} << n, false);

    const auto in_a = [&](std::uint32_t v) { return taken_value[v]; };
    const auto large_parts = [&](const Partition& r) {
        std::vector<std::uint32_t> larges;
        for (std::uint32_t m : r.masks())
            if (std::popcount(m & trace.s_mask) > 2) larges.push_back(m & trace.s_mask);
        return larges;
    };

    for (;;) {
        const std::vector<std::uint32_t> larges = large_parts(running);
        if (larges.empty()) {
            trace.stop_reason = "all-parts-small";
            break;
        }

        // Candidates per still-too-large position: strings splitting its
        // part, narrowed to those that either split two large parts at once
        // or split this one into two pieces of size >= 2. Positions are
        // visited in ascending order, candidate strings in dictionary order.
        std::optional<std::uint32_t> pick;
        std::uint32_t tried_parts = 0;
        for (int k = 0; k < n && !pick; ++k) {
            if (!((trace.s_mask >> k) & 1u)) continue;
            const std::uint32_t part_s = running.part_mask_of(k) & trace.s_mask;
            if (std::popcount(part_s) <= 2) continue;
            if (tried_parts & (1u << k)) continue;
            tried_parts |= part_s;
            std::uint32_t best_key = 0;
            for (std::uint32_t v : b.values()) {
                if (in_a(v)) continue;
                if (constant_on(v, part_s)) continue;  // not a candidate for this position
                int split_count = 0;
                for (std::uint32_t other : larges)
                    if (!constant_on(v, other)) ++split_count;
                const bool two_large_splits = split_count >= 2;
                const bool not_imbalanced = !imbalanced_on(v, part_s);
                if (!two_large_splits && !not_imbalanced) continue;
                const std::uint32_t key = lex_key(v, n);
                if (!pick || key < best_key) {
                    best_key = key;
                    pick = v;
                }
            }
        }

        if (!pick) {
            trace.stop_reason = "no-candidates";
            break;
        }

        const int phi_before = refinement_potential(running, trace.s_mask);
        taken_value[*pick] = true;
        trace.chosen.push_back(BitString(*pick, n));
        running = intersect(running, Partition::zero_one_split(BitString(*pick, n)));
        const int phi_after = refinement_potential(running, trace.s_mask);
        trace.potential.push_back(phi_after);
        if (phi_before - phi_after < 2)
            throw std::logic_error("select_constraining_subset: potential dropped by less than 2 in one step");
        if (static_cast<int>(trace.chosen.size()) > n)
            throw std::logic_error("select_constraining_subset: too many construction steps");
    }

    trace.final_intersection = running;

    // Post-verification of the output conditions.
    const int s_count = std::popcount(trace.s_mask);
    if (2 * static_cast<int>(trace.chosen.size()) > s_count)
        throw std::logic_error("select_constraining_subset: selected subset exceeds half the singleton positions");
    for (std::uint32_t part : running.masks()) {
        const std::uint32_t part_s = part & trace.s_mask;
        if (std::popcount(part_s) <= 2) continue;
        for (std::uint32_t v : b.values()) {
            if (in_a(v)) continue;
            if (constant_on(v, part_s)) continue;
            bool ok = imbalanced_on(v, part_s);
            if (ok)
                for (std::uint32_t other : running.masks()) {
                    if (other == part) continue;
                    const std::uint32_t other_s = other & trace.s_mask;
                    if (std::popcount(other_s) > 2 && !constant_on(v, other_s)) ok = false;
                }
            if (!ok)
                throw std::logic_error("select_constraining_subset: output conditions violated for part " +
                                       std::to_string(part) + " and string " + BitString(v, n).str());
        }
    }
    return trace;
}

std::optional<CellAssignment> forced_cell_assignment(const StringSet& b, const StringSet& a,
                                                     const StringInjection& p) {
    const int n = b.dim();
    if (a.dim() != n) throw std::invalid_argument("forced_cell_assignment: dimension mismatch");
    for (std::uint32_t v : a.values())
        if (!b.contains(v)) throw std::invalid_argument("forced_cell_assignment: A must be a subset of B");
    if (p.size() != a.size()) throw std::invalid_argument("forced_cell_assignment: p must be defined exactly on A");
    std::vector<bool> image_seen(std::size_t{1} << n, false);
    for (const auto& [from, to] : p) {
        if (!a.contains(from)) throw std::invalid_argument("forced_cell_assignment: p key outside A");
        if (!b.contains(to)) throw std::invalid_argument("forced_cell_assignment: p image outside B");
        if (image_seen[to]) throw std::invalid_argument("forced_cell_assignment: p is not injective");
        image_seen[to] = true;
    }

    const std::uint32_t everything = n == 32 ? ~0u : (1u << n) - 1u;
    for (const auto& [from, to] : p)
        if (std::popcount(from) != std::popcount(to)) return std::nullopt;  // weight mismatch

    // Start from the single-cell assignment and intersect with the 0/1 side
    // of each chosen string, switched by the corresponding bit of p(a).
    std::vector<std::uint32_t> cell(static_cast<std::size_t>(n), everything);
    for (const auto& [from, to] : p) {
        const std::uint32_t ones = from;
        for (int k = 0; k < n; ++k) {
            const std::uint32_t side = ((to >> k) & 1u) ? ones : (everything & ~ones);
            cell[static_cast<std::size_t>(k)] &= side;
            if (cell[static_cast<std::size_t>(k)] == 0) return std::nullopt;  // empty cell
        }
    }

    CellAssignment out;
    out.intersection = a.empty() ? Partition::single_part(n) : intersect_family(a);
    out.part_of.resize(static_cast<std::size_t>(n));
    std::vector<int> load(static_cast<std::size_t>(out.intersection.part_count()), 0);
    for (int k = 0; k < n; ++k) {
        // A non-empty cell is exactly one part of the intersection.
        const int idx = out.intersection.part_index_of(std::countr_zero(cell[static_cast<std::size_t>(k)]));
        if (out.intersection.masks()[static_cast<std::size_t>(idx)] != cell[static_cast<std::size_t>(k)])
            return std::nullopt;
        out.part_of[static_cast<std::size_t>(k)] = idx;
        ++load[static_cast<std::size_t>(idx)];
    }
    for (int idx = 0; idx < out.intersection.part_count(); ++idx)
        if (load[static_cast<std::size_t>(idx)] !=
            std::popcount(out.intersection.masks()[static_cast<std::size_t>(idx)]))
            return std::nullopt;  // preimage counts cannot match part sizes
    return out;
}

std::vector<PositionPerm> pinned_stabilizer(const StringSet& b, const StringSet& a,
                                            const StringInjection& p, int cap, int parallelism) {
    const int n = b.dim();
    require_brute_force_dim(n, cap, "pinned_stabilizer");
    if (a.dim() != n) throw std::invalid_argument("pinned_stabilizer: dimension mismatch");
    for (std::uint32_t v : a.values())
        if (!b.contains(v)) throw std::invalid_argument("pinned_stabilizer: A must be a subset of B");

    std::vector<bool> member(std::size_t{1} << n, false);
    for (std::uint32_t v : b.values()) member[v] = true;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> pinned(p.begin(), p.end());

    auto shard_elems = run_shards(n, parallelism, [&](int s) {
        std::vector<PositionPerm> found;
        for_each_perm_in_shard(n, s, [&](PermView img) {
            for (const auto& [target, source] : pinned)
                if (apply_perm_bits(img, source) != target) return;
            for (std::uint32_t v : b.values())
                if (!member[apply_perm_bits(img, v)]) return;
            found.push_back(PositionPerm::from_images(img));
        });
        return found;
    });
    std::vector<PositionPerm> all;
    for (auto& shard : shard_elems) all.insert(all.end(), shard.begin(), shard.end());
    std::sort(all.begin(), all.end());
    return all;
}

mpz_class pinned_stabilizer_bound(int n, int s_count) {
    return pow2_mpz(static_cast<unsigned long>(ceil_div(s_count, 2))) *
           factorial_mpz(static_cast<unsigned long>(n - s_count));
}

bool large_part_rigidity_check(const StringSet& b, const StringSet& a, const StringInjection& p,
                               int cap, int parallelism) {
    const int n = b.dim();
    const std::uint32_t s_mask = singleton_mask(coarsest_supporting_partition(b));
    const Partition inter = a.empty() ? Partition::single_part(n) : intersect_family(a);
    std::uint32_t big_mask = 0;
    for (std::uint32_t part : inter.masks())
        if (std::popcount(part & s_mask) > 2) big_mask |= part & s_mask;

    const auto pinned = pinned_stabilizer(b, a, p, cap, parallelism);
    // Two members that agree off the large positions must be equal, so each
    // off-restriction of the inverse may appear only once.
    std::set<std::vector<int>> seen;
    for (const PositionPerm& pi : pinned) {
        const PositionPerm inv = pi.inverse();
        std::vector<int> key;
        key.reserve(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i)
            if (!((big_mask >> i) & 1u)) key.push_back(inv.image(i));
        if (!seen.insert(std::move(key)).second) return false;  // two distinct members share it
    }
    return true;
}

const std::vector<std::pair<std::string, std::string>>& BoundReport::checked_pairs() {
    static const std::vector<std::pair<std::string, std::string>> pairs = {
        {"tuples_product", "realizable_tuples_selected"}, {"tuples_closed", "realizable_tuples_selected"},
        {"support_stab", "stab_sp_b_setwise"},           {"class_stab", "stab_b"},
        {"preorder_stab", "stab_ordered_partition"},
    };
    return pairs;
}

namespace {

/// Part-counting stabilizer bound from the singleton/non-singleton part
/// counts of a support, with the per-part size ceiling as its hypothesis.
BoundEntry support_stab_entry(const Partition& sp_b, int n) {
    const int s = std::popcount(singleton_mask(sp_b));
    const int t = sp_b.part_count() - s;
    BoundEntry entry;
    if (t == 0) {
        entry.value = factorial_mpz(static_cast<unsigned long>(s));
        entry.note = "degenerates to s_n! (no non-singleton parts)";
        return entry;
    }
    const long size_cap = ceil_div(n, t);
    mpz_class within;
    mpz_pow_ui(within.get_mpz_t(), factorial_mpz(static_cast<unsigned long>(size_cap)).get_mpz_t(),
               static_cast<unsigned long>(t));
    entry.value = factorial_mpz(static_cast<unsigned long>(s)) *
                  factorial_mpz(static_cast<unsigned long>(t)) * within;
    for (std::uint32_t m : sp_b.masks()) {
        const int size = std::popcount(m);
        if (size > 1 && size > size_cap) {
            entry.hypotheses_ok = false;
            entry.note = "a non-singleton part exceeds ceil(n/t_n); the counting argument assumes it does not";
        }
    }
    return entry;
}

BoundEntry class_stab_entry(int n, int s_count, long cn_value, bool size_ok) {
    BoundEntry entry;
    entry.value = pow_mpz(static_cast<unsigned long>(2 * cn_value),
                          static_cast<unsigned long>(ceil_div(s_count, 2))) *
                  factorial_mpz(static_cast<unsigned long>(n - s_count));
    entry.hypotheses_ok = size_ok;
    if (!size_ok) entry.note = "|B| exceeds the supplied c*n";
    return entry;
}

BoundEntry support_stab_asym_entry(int n, int s, int t, long d_param) {
    BoundEntry entry;
    const long d = d_param > 0 ? d_param : (t > 0 ? ceil_div(n, t) : 1);
    const long half = ceil_div(n, 2);
    mpz_class dfact_pow;
    mpz_pow_ui(dfact_pow.get_mpz_t(), factorial_mpz(static_cast<unsigned long>(d)).get_mpz_t(),
               static_cast<unsigned long>(half));
    entry.value = factorial_mpz(static_cast<unsigned long>(s)) *
                  factorial_mpz(static_cast<unsigned long>(half)) * dfact_pow;
    entry.checkable = false;
    entry.note = "free asymptotic constant d = " + std::to_string(d) + "; report only";
    return entry;
}

}  // namespace

BoundReport stab_bound_report(const StringSet& b, const BoundParams& params) {
    BoundReport report;
    const int n = b.dim();
    report.n = n;
    const Partition sp_b = coarsest_supporting_partition(b);
    report.f_n = sp_b.part_count();
    report.s_n = std::popcount(singleton_mask(sp_b));
    report.t_n = sp_b.part_count() - report.s_n;
    report.cn_value = params.cn.value_or(static_cast<long>(b.size()));
    const bool size_ok = static_cast<long>(b.size()) <= report.cn_value;
    report.a_n_size = static_cast<int>(select_constraining_subset(b).chosen.size());

    report.bounds["support_stab"] = support_stab_entry(sp_b, n);
    report.bounds["class_stab"] = class_stab_entry(n, report.s_n, report.cn_value, size_ok);
    report.bounds["support_stab_asym"] = support_stab_asym_entry(n, report.s_n, report.t_n, params.asym_d);

    if (params.compute_exact && n <= params.cap && n <= kHardBruteForceCap) {
        report.exact["stab_b"] = mpz_class(static_cast<unsigned long>(
            stabilizer_order_of_set(b, params.cap, params.parallelism)));
        report.exact["stab_sp_b_setwise"] = mpz_class(static_cast<unsigned long>(
            stabilizer_order_of_partition_setwise(sp_b, params.cap, params.parallelism)));
    }
    return report;
}

BoundReport stab_bound_report(const OrderedPartition& p, const BoundParams& params) {
    if (p.classes.empty()) throw std::invalid_argument("stab_bound_report: empty partition");
    BoundReport report;
    const int n = p.n;
    report.n = n;

    const auto sps = class_supports(p);
    int best = 0;
    int max_class = 0;
    for (std::size_t i = 0; i < sps.size(); ++i) {
        if (sps[i].part_count() > sps[static_cast<std::size_t>(best)].part_count()) best = static_cast<int>(i);
        max_class = std::max(max_class, static_cast<int>(p.classes[i].size()));
    }
    const Partition& sp_b = sps[static_cast<std::size_t>(best)];
    const StringSet& b = p.classes[static_cast<std::size_t>(best)];

    report.f_n = 0;
    for (const Partition& sp : sps) report.f_n = std::max(report.f_n, sp.part_count());
    report.s_n = std::popcount(singleton_mask(sp_b));
    report.t_n = sp_b.part_count() - report.s_n;
    report.s_global = std::popcount(singleton_mask(intersect_all(n, sps)));
    report.cn_value = params.cn.value_or(static_cast<long>(max_class));
    report.a_n_size = static_cast<int>(select_constraining_subset(b).chosen.size());

    const ValidationReport v = validate(p, 1);
    const bool structure_ok = v.covers && v.disjoint && v.nonempty_classes;
    const bool size_ok = max_class <= report.cn_value;

    report.bounds["support_stab"] = support_stab_entry(sp_b, n);
    report.bounds["class_stab"] = class_stab_entry(n, report.s_n, report.cn_value, size_ok);
    report.bounds["support_stab_asym"] = support_stab_asym_entry(n, report.s_n, report.t_n, params.asym_d);

    const ClassSelectionTrace selection = select_individualizing_classes(p);
    if (report.f_n >= 2) {
        const TupleCountBounds tuple_bounds = tuple_count_bounds(selection, report.f_n);
        BoundEntry product{tuple_bounds.product_form, true, true, ""};
        BoundEntry closed{tuple_bounds.closed_form, true, true, ""};
        report.bounds["tuples_product"] = product;
        report.bounds["tuples_closed"] = closed;

        BoundEntry preorder_entry;
        preorder_entry.value =
            tuple_bounds.closed_form * factorial_mpz(static_cast<unsigned long>(ceil_8_log2(n)));
        const bool few_nonsingletons = (n - report.s_global) <= ceil_8_log2(n);
        preorder_entry.hypotheses_ok = structure_ok && size_ok && few_nonsingletons;
        if (!preorder_entry.hypotheses_ok)
            preorder_entry.note = !structure_ok ? "classes do not form an ordered partition of {0,1}^n"
                                  : !size_ok    ? "max class size exceeds c*n"
                                                : "non-singleton positions exceed ceil(8*log2(n))";
        report.bounds["preorder_stab"] = preorder_entry;
    }

    if (params.compute_exact && n <= params.cap && n <= kHardBruteForceCap) {
        report.exact["stab_ordered_partition"] = mpz_class(static_cast<unsigned long>(
            stabilizer_order_of_ordered_partition(p, params.cap, params.parallelism)));
        report.exact["stab_b"] = mpz_class(static_cast<unsigned long>(
            stabilizer_order_of_set(b, params.cap, params.parallelism)));
        report.exact["stab_sp_b_setwise"] = mpz_class(static_cast<unsigned long>(
            stabilizer_order_of_partition_setwise(sp_b, params.cap, params.parallelism)));
        std::vector<StringSet> selected_sets;
        selected_sets.reserve(selection.chosen_classes.size());
        for (int idx : selection.chosen_classes) selected_sets.push_back(p.classes[static_cast<std::size_t>(idx)]);
        report.exact["realizable_tuples_selected"] = mpz_class(static_cast<unsigned long>(
            realizable_tuples(selected_sets, params.cap, params.parallelism).size()));
    }
    return report;
}

RealizerScanResult realizer_consistency_scan(std::span<const StringSet> sets, int cap, int parallelism) {
    if (sets.empty()) throw std::invalid_argument("realizer_consistency_scan: empty set family");
    const int n = sets[0].dim();
    require_brute_force_dim(n, cap, "realizer_consistency_scan");
    const auto sps = supporting_partitions_of(sets);
    Partition inter = Partition::single_part(n);
    for (const Partition& sp : sps) inter = intersect(inter, sp);

    using InducedMapSet = std::set<std::optional<std::vector<int>>>;
    auto shard_maps = run_shards(n, parallelism, [&](int s) {
        std::map<PartPermTuple, InducedMapSet> observed;
        for_each_perm_in_shard(n, s, [&](PermView img) {
            auto tuple = induced_tuple(img, sps);
            if (!tuple) return;
            observed[*tuple].insert(induced_part_map(img, inter));
        });
        return observed;
    });
    std::map<PartPermTuple, InducedMapSet> observed;
    for (auto& shard : shard_maps)
        for (auto& [tuple, maps] : shard) observed[tuple].merge(maps);

    RealizerScanResult result;
    result.realizable_tuple_count = observed.size();
    for (const auto& [tuple, maps] : observed) {
        if (maps.size() != 1 || !*maps.begin()) {
            result.unique = false;
            continue;
        }
        const auto constructed = induced_intersection_permutation(tuple, sets);
        if (!constructed || constructed->domain != inter || constructed->images != **maps.begin())
            result.matches_construction = false;
    }
    return result;
}

PinningCheckResult pinning_check(const StringSet& b, const StringSet& a, const StringInjection& p,
                                 int cap, int parallelism) {
    PinningCheckResult result;
    const int n = b.dim();
    const auto assignment = forced_cell_assignment(b, a, p);
    const auto pinned = pinned_stabilizer(b, a, p, cap, parallelism);
    result.feasible = assignment.has_value();
    result.pinned_count = pinned.size();
    if (!assignment) {
        // Infeasibility is a proof that no realizer exists.
        result.compliance_ok = pinned.empty();
        return result;
    }

    const std::uint32_t s_mask = singleton_mask(coarsest_supporting_partition(b));
    const int s_count = std::popcount(s_mask);
    std::vector<std::uint32_t> preimage_mask(static_cast<std::size_t>(assignment->intersection.part_count()), 0);
    for (int k = 0; k < n; ++k)
        preimage_mask[static_cast<std::size_t>(assignment->part_of[static_cast<std::size_t>(k)])] |= 1u << k;

    for (const PositionPerm& pi : pinned) {
        for (int k = 0; k < n; ++k)
            if (!((assignment->part_mask_of(k) >> pi.image(k)) & 1u)) result.compliance_ok = false;
        for (int idx = 0; idx < assignment->intersection.part_count(); ++idx) {
            const std::uint32_t part = assignment->intersection.masks()[static_cast<std::size_t>(idx)];
            std::uint32_t inv_image = 0;
            for (int k = 0; k < n; ++k)
                if ((part >> pi.image(k)) & 1u) inv_image |= 1u << k;
            if ((inv_image & s_mask) != (preimage_mask[static_cast<std::size_t>(idx)] & s_mask))
                result.inverse_ok = false;
        }
    }
    result.rigidity_ok = large_part_rigidity_check(b, a, p, cap, parallelism);
    result.size_bound_ok =
        mpz_class(static_cast<unsigned long>(pinned.size())) <= pinned_stabilizer_bound(n, s_count);
    return result;
}

OrderedPartition make_family_instance(const std::string& family, int n, int c, std::uint64_t seed) {
    if (family == "hamming") return hamming_preorder(n);
    if (family == "lex-block") return lex_block_preorder(n, c);
    if (family == "random-block") return random_block_preorder(n, c, seed);
    if (family == "singletons") return singleton_preorder(n);
    throw std::invalid_argument("unknown family: " + family +
                                " (expected hamming, lex-block, random-block, or singletons)");
}

GrowthTable growth_report(const std::string& family, int n_from, int n_to, int k, int c,
                          std::uint64_t seed, int cap, int parallelism) {
    if (n_from < 1 || n_to < n_from) throw std::invalid_argument("growth_report: bad n range");
    if (k < 0) throw std::invalid_argument("growth_report: k must be non-negative");
    GrowthTable table;
    table.family = family;
    table.k = k;
    for (int n = n_from; n <= n_to; ++n) {
        const OrderedPartition instance = make_family_instance(family, n, c, seed);
        GrowthRow row;
        row.n = n;
        row.family = family;
        row.pow2_kn = pow2_mpz(static_cast<unsigned long>(k) * static_cast<unsigned long>(n));

        BoundParams params;
        params.cap = cap;
        params.parallelism = parallelism;
        params.compute_exact = n <= cap && n <= kHardBruteForceCap;
        const BoundReport bounds = stab_bound_report(instance, params);
        row.bounds = bounds.bounds;
        const mpz_class n_factorial = factorial_mpz(static_cast<unsigned long>(n));
        // n!/bound lower-bounds the orbit only where the formula bounds a
        // stabilizer order (the tuples_* values bound tuple counts instead).
        for (const char* key : {"preorder_stab", "support_stab", "class_stab"}) {
            const auto it = bounds.bounds.find(key);
            if (it == bounds.bounds.end() || !it->second.hypotheses_ok || it->second.value <= 0) continue;
            mpz_class lower;
            mpz_cdiv_q(lower.get_mpz_t(), n_factorial.get_mpz_t(), it->second.value.get_mpz_t());
            row.orbit_lower[key] = lower;
        }
        auto headline = bounds.bounds.find("preorder_stab");
        row.hypotheses_ok = headline != bounds.bounds.end() && headline->second.hypotheses_ok;

        if (params.compute_exact) {
            const std::uint64_t orbit = orbit_size_ordered_partition(instance, cap, parallelism);
            row.exact_orbit = mpz_class(static_cast<unsigned long>(orbit));
            row.ratio_exact = static_cast<double>(orbit) / std::pow(2.0, static_cast<double>(k) * n);
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

}  // namespace orbitlab
