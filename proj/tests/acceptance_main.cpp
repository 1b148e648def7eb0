// Acceptance suite: one pass/fail line per criterion, exact oracles at
// small n. Returns the number of failed criteria.

#include <bit>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "orbitlab/group_engine.hpp"
#include "orbitlab/hfsets.hpp"
#include "orbitlab/bounds.hpp"
#include "orbitlab/preorders.hpp"
#include "orbitlab/rng.hpp"
#include "oracle_helpers.hpp"

using namespace orbitlab;

namespace {

int failures = 0;

void run_criterion(int number, const std::string& label, double time_limit_seconds,
                   const std::function<bool(std::string&)>& body) {
    std::string detail;
    bool ok = false;
    const auto start = std::chrono::steady_clock::now();
    try {
        ok = body(detail);
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (ok && time_limit_seconds > 0 && elapsed > time_limit_seconds) {
        ok = false;
        detail = "exceeded time limit of " + std::to_string(time_limit_seconds) + "s";
    }
    std::printf("criterion %2d %s (%6.2fs) %s%s%s\n", number, ok ? "PASS" : "FAIL", elapsed,
                label.c_str(), detail.empty() ? "" : " -- ", detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

bool oracle_is_refinement(const oracle::IntParts& p, const oracle::IntParts& q) {
    for (const auto& part : p) {
        bool inside_some = false;
        for (const auto& qpart : q) {
            const std::set<int> qset(qpart.begin(), qpart.end());
            bool inside = true;
            for (int i : part)
                if (!qset.count(i)) inside = false;
            if (inside) inside_some = true;
        }
        if (!inside_some) return false;
    }
    return true;
}

// ---- criterion bodies ---------------------------------------------------

bool orbit_stabilizer_exactness(std::string& detail) {
    Rng rng(100);
    for (int n = 3; n <= 7; ++n)
        for (int trial = 0; trial < 50; ++trial) {
            const OrderedPartition p = oracle::random_ordered_partition(n, rng);
            const std::uint64_t direct = direct_orbit_count_ordered_partition(p, 7, 2);
            const std::uint64_t stab = stabilizer_order_of_ordered_partition(p, 7, 2);
            if (direct * stab != factorial_u64(n)) {
                detail = "violation at n=" + std::to_string(n) + ", trial " + std::to_string(trial);
                return false;
            }
        }
    return true;
}

bool coarsest_support_oracle(std::string& detail) {
    Rng rng(200);
    std::vector<StringSet> instances;
    for (int i = 0; i < 200; ++i) {
        const int n = 1 + static_cast<int>(rng.below(5));
        instances.push_back(oracle::random_string_set(n, rng));
    }
    for (int n = 1; n <= 5; ++n)
        for (std::uint32_t v = 0; v < (1u << n); ++v) instances.push_back(StringSet(n, {v}));

    std::vector<std::vector<oracle::IntParts>> partition_cache(6);
    for (int n = 1; n <= 5; ++n) partition_cache[static_cast<std::size_t>(n)] = oracle::all_partitions(n);

    for (const StringSet& a : instances) {
        const int n = a.dim();
        const oracle::WordSet words = oracle::to_words(a);
        std::vector<oracle::IntParts> supporters;
        for (const auto& parts : partition_cache[static_cast<std::size_t>(n)])
            if (oracle::supports_by_definition(parts, words, n)) supporters.push_back(parts);
        // the unique coarsest element of the supporter set
        int coarsest = -1;
        for (std::size_t i = 0; i < supporters.size(); ++i) {
            bool refined_by_all = true;
            for (const auto& other : supporters)
                if (!oracle_is_refinement(other, supporters[i])) refined_by_all = false;
            if (refined_by_all) {
                if (coarsest >= 0) {
                    detail = "two coarsest supporters for " + a.str();
                    return false;
                }
                coarsest = static_cast<int>(i);
            }
        }
        if (coarsest < 0) {
            detail = "no coarsest supporter for " + a.str();
            return false;
        }
        const Partition expected = Partition::from_parts(n, supporters[static_cast<std::size_t>(coarsest)]);
        if (!(coarsest_supporting_partition(a) == expected)) {
            detail = "mismatch for " + a.str();
            return false;
        }
    }
    return true;
}

bool sandwich_containments(std::string& detail) {
    Rng rng(200);  // same instance stream as criterion 2
    std::vector<StringSet> instances;
    for (int i = 0; i < 200; ++i) {
        const int n = 1 + static_cast<int>(rng.below(5));
        instances.push_back(oracle::random_string_set(n, rng));
    }
    for (int n = 1; n <= 5; ++n)
        for (std::uint32_t v = 0; v < (1u << n); ++v) instances.push_back(StringSet(n, {v}));

    for (const StringSet& a : instances) {
        const int n = a.dim();
        const oracle::WordSet words = oracle::to_words(a);
        const auto parts = coarsest_supporting_partition(a).parts();
        for (const auto& images : oracle::all_perms(n)) {
            if (oracle::fixes_parts_pointwise(images, parts) &&
                !oracle::stabilizes_word_set(images, words)) {
                detail = "pointwise stabilizer escapes Stab(A) for " + a.str();
                return false;
            }
            if (oracle::stabilizes_word_set(images, words) && !oracle::permutes_parts(images, parts)) {
                detail = "Stab(A) escapes the setwise stabilizer for " + a.str();
                return false;
            }
        }
    }
    return true;
}

bool single_string_supports(std::string& detail) {
    for (int n = 1; n <= 6; ++n)
        for (std::uint32_t v = 0; v < (1u << n); ++v) {
            const BitString a(v, n);
            if (!(coarsest_supporting_partition(StringSet(n, {v})) == Partition::zero_one_split(a))) {
                detail = "mismatch for " + a.str();
                return false;
            }
        }
    return true;
}

bool induced_map_uniqueness(std::string& detail) {
    Rng rng(500);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 3 + static_cast<int>(rng.below(4));  // 3..6
        const int set_count = 1 + static_cast<int>(rng.below(3));
        std::vector<StringSet> sets;
        for (int i = 0; i < set_count; ++i) sets.push_back(oracle::random_string_set(n, rng));
        const RealizerScanResult result = realizer_consistency_scan(sets, 7, 2);
        if (!result.unique || !result.matches_construction) {
            detail = "violation in trial " + std::to_string(trial);
            return false;
        }
    }
    return true;
}

bool an_construction(std::string& detail) {
    Rng rng(600);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 4 + static_cast<int>(rng.below(4));  // 4..7
        const StringSet b = oracle::random_string_set_of_size(n, 2 + rng.below(2u * n), rng);
        SubsetSelectionTrace trace;
        try {
            trace = select_constraining_subset(b);
        } catch (const std::logic_error& e) {
            detail = std::string("construction aborted: ") + e.what();
            return false;
        }
        if (2 * static_cast<int>(trace.chosen.size()) > std::popcount(trace.s_mask)) {
            detail = "size bound violated in trial " + std::to_string(trial);
            return false;
        }
        int prev = trace.potential_initial;
        for (int potential : trace.potential) {
            if (prev - potential < 2) {
                detail = "potential drop below 2 in trial " + std::to_string(trial);
                return false;
            }
            prev = potential;
        }
        if (!oracle::an_output_conditions_hold(b, trace)) {
            detail = "output conditions violated in trial " + std::to_string(trial);
            return false;
        }
    }
    return true;
}

bool bound_soundness(std::string& detail) {
    std::vector<OrderedPartition> instances;
    Rng rng(100);  // same stream as criterion 1
    for (int n = 3; n <= 7; ++n)
        for (int trial = 0; trial < 50; ++trial) {
            const OrderedPartition p = oracle::random_ordered_partition(n, rng);
            if (n <= 6 || trial < 10) instances.push_back(p);
        }
    for (int n = 3; n <= 8; ++n) instances.push_back(hamming_preorder(n));
    for (int n = 4; n <= 8; ++n) instances.push_back(lex_block_preorder(n, 1));
    for (int n = 4; n <= 8; ++n) instances.push_back(random_block_preorder(n, 1, 123));

    BoundParams params;
    params.cap = 8;
    params.parallelism = 2;
    for (std::size_t i = 0; i < instances.size(); ++i) {
        const BoundReport report = stab_bound_report(instances[i], params);
        for (const auto& [bound_key, exact_key] : BoundReport::checked_pairs()) {
            const auto bound_it = report.bounds.find(bound_key);
            const auto exact_it = report.exact.find(exact_key);
            if (bound_it == report.bounds.end() || exact_it == report.exact.end()) continue;
            if (!bound_it->second.checkable || !bound_it->second.hypotheses_ok) continue;
            if (!(exact_it->second <= bound_it->second.value)) {
                detail = bound_key + " violated on instance " + std::to_string(i) +
                         " (n=" + std::to_string(instances[i].n) + ")";
                return false;
            }
        }
    }

    // set-level bounds over the same stream as criterion 6
    Rng set_rng(600);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 4 + static_cast<int>(set_rng.below(4));
        const StringSet b = oracle::random_string_set_of_size(n, 2 + set_rng.below(2u * n), set_rng);
        const BoundReport report = stab_bound_report(b, params);
        for (const auto& [bound_key, exact_key] : BoundReport::checked_pairs()) {
            const auto bound_it = report.bounds.find(bound_key);
            const auto exact_it = report.exact.find(exact_key);
            if (bound_it == report.bounds.end() || exact_it == report.exact.end()) continue;
            if (!bound_it->second.checkable || !bound_it->second.hypotheses_ok) continue;
            if (!(exact_it->second <= bound_it->second.value)) {
                detail = bound_key + " violated on a bare set, trial " + std::to_string(trial);
                return false;
            }
        }
    }
    return true;
}

bool encoding_transfer(std::string& detail) {
    Rng rng(800);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 3 + static_cast<int>(rng.below(4));  // 3..6
        const OrderedPartition p = oracle::random_ordered_partition(n, rng);
        const std::uint64_t hf = orbit_size_hf(encode_ordered_partition(p), n, HFAction::positions, 7, 2);
        const std::uint64_t op = orbit_size_ordered_partition(p, 7, 2);
        if (hf != op) {
            detail = "orbit mismatch in trial " + std::to_string(trial);
            return false;
        }
    }
    return true;
}

bool hamming_baseline(std::string& detail) {
    for (int n = 1; n <= 8; ++n) {
        const OrderedPartition p = hamming_preorder(n);
        if (stabilizer_order_of_ordered_partition(p, 8, 2) != factorial_u64(n)) {
            detail = "stabilizer not n! at n=" + std::to_string(n);
            return false;
        }
        if (factorial_u64(n) / stabilizer_order_of_ordered_partition(p, 8, 2) != 1) {
            detail = "orbit not 1 at n=" + std::to_string(n);
            return false;
        }
    }
    return true;
}

// ---- criterion 10: CLI determinism --------------------------------------

std::filesystem::path scratch_dir() {
    auto dir = std::filesystem::temp_directory_path() / "orbitlab_acceptance";
    std::filesystem::create_directories(dir);
    return dir;
}

bool run_cli(const std::string& args, const std::filesystem::path& stdout_file) {
    const std::string command =
        std::string(ORBITLAB_CLI_PATH) + " " + args + " > " + stdout_file.string() + " 2> /dev/null";
    return std::system(command.c_str()) == 0;
}

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

bool cli_determinism(std::string& detail) {
    const auto dir = scratch_dir();
    const auto instance = dir / "instance.txt";
    if (!run_cli("gen --family random-block --n 4 --c 1 --seed 7", instance)) {
        detail = "gen failed";
        return false;
    }

    const std::vector<std::string> commands = {
        "gen --family random-block --n 5 --c 1 --seed 9",
        "analyze " + instance.string() + " --format json",
        "analyze " + instance.string() + " --format text",
        "orbit " + instance.string(),
        "report --family lex-block --n 3..5 --k 1 --format csv",
        "report --family random-block --n 3..5 --k 1 --seed 4 --format json",
        "verify " + instance.string(),
    };
    int index = 0;
    for (const std::string& base : commands) {
        std::vector<std::string> outputs;
        for (const std::string& parallel : {" --parallel 1", " --parallel 4"})
            for (int repeat = 0; repeat < 2; ++repeat) {
                const auto file = dir / ("out_" + std::to_string(index) + "_" +
                                         std::to_string(outputs.size()) + ".txt");
                if (!run_cli(base + parallel, file)) {
                    detail = "command failed: " + base + parallel;
                    return false;
                }
                outputs.push_back(slurp(file));
            }
        for (std::size_t i = 1; i < outputs.size(); ++i)
            if (outputs[i] != outputs[0]) {
                detail = "output differs for: " + base;
                return false;
            }
        if (outputs[0].empty()) {
            detail = "empty output for: " + base;
            return false;
        }
        ++index;
    }
    return true;
}

}  // namespace

int main() {
    std::printf("orbitlab acceptance suite\n");
    run_criterion(1, "orbit-stabilizer exactness on random ordered partitions (n=3..7)", 120,
                  orbit_stabilizer_exactness);
    run_criterion(2, "coarsest support equals the all-partitions oracle (n<=5)", 60,
                  coarsest_support_oracle);
    run_criterion(3, "sandwich containments hold element-wise", 0, sandwich_containments);
    run_criterion(4, "single-string support is the 0/1 split (n<=6)", 0, single_string_supports);
    run_criterion(5, "realizers of a tuple induce a unique part permutation", 0, induced_map_uniqueness);
    run_criterion(6, "subset construction: size, potential drop, output conditions", 0, an_construction);
    run_criterion(7, "closed-form bounds dominate brute-forced exact values", 0, bound_soundness);
    run_criterion(8, "nested encoding orbit equals ordered partition orbit", 0, encoding_transfer);
    run_criterion(9, "hamming baseline: stabilizer n!, orbit 1 (n<=8)", 60, hamming_baseline);
    run_criterion(10, "CLI reruns are byte-identical, any parallelism", 0, cli_determinism);

    if (failures == 0)
        std::printf("all criteria passed\n");
    else
        std::printf("%d criterion(s) failed\n", failures);
    return failures;
}
