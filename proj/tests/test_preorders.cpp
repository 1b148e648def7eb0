#include <doctest.h>

#include <sstream>

#include "orbitlab/group_engine.hpp"
#include "orbitlab/preorders.hpp"
#include "orbitlab/rng.hpp"
#include "orbitlab/bounds.hpp"
#include "oracle_helpers.hpp"

using namespace orbitlab;

namespace {

std::string serialize(const OrderedPartition& p) {
    std::ostringstream out;
    write_ordered_partition(out, p);
    return out.str();
}

}  // namespace

TEST_CASE("hamming preorder") {
    const OrderedPartition p2 = hamming_preorder(2);
    CHECK(serialize(p2) == "00\n01 10\n11\n");
    const OrderedPartition p4 = hamming_preorder(4);
    CHECK(p4.classes[2].size() == 6);  // C(4,2)
    CHECK(orbit_size_ordered_partition(p4) == 1);
}

TEST_CASE("lexicographic block preorder") {
    CHECK(serialize(lex_block_preorder(2, 1)) == "00 01\n10 11\n");
    CHECK(serialize(lex_block_preorder(3, 1)) == "000 001 010\n011 100 101\n110 111\n");
    CHECK(validate(lex_block_preorder(3, 1), 1).all_ok());
    CHECK_THROWS_AS(lex_block_preorder(3, 0), std::invalid_argument);
    CHECK_THROWS_AS(lex_block_preorder(3, 3), std::invalid_argument);  // 9 > 2^3
}

TEST_CASE("random block preorder is seed-deterministic") {
    const OrderedPartition a = random_block_preorder(4, 1, 7);
    const OrderedPartition b = random_block_preorder(4, 1, 7);
    CHECK(serialize(a) == serialize(b));
    CHECK_FALSE(serialize(a) == serialize(random_block_preorder(4, 1, 8)));
    CHECK(validate(a, 1).all_ok());

    // orbit equals n!/|Stab| with both sides computed independently
    const std::uint64_t stab_oracle = oracle::stab_count_by_words(a);
    CHECK(orbit_size_ordered_partition(a) == factorial_u64(4) / stab_oracle);
    CHECK(oracle::orbit_count_by_words(a) * stab_oracle == factorial_u64(4));
}

TEST_CASE("singleton preorder") {
    const OrderedPartition p = singleton_preorder(3);
    CHECK(p.class_count() == 8);
    CHECK(p.classes[0].words() == std::vector<std::string>{"000"});
    CHECK(p.classes[7].words() == std::vector<std::string>{"111"});
    CHECK(orbit_size_ordered_partition(singleton_preorder(4)) == 24);
}

TEST_CASE("validate") {
    const ValidationReport hamming4 = validate(hamming_preorder(4), 1);
    CHECK(hamming4.covers);
    CHECK(hamming4.disjoint);
    CHECK_FALSE(hamming4.size_bound_ok);  // middle class has 6 > 4 strings
    CHECK(hamming4.max_class_size == 6);

    CHECK(validate(lex_block_preorder(4, 1), 1).all_ok());

    OrderedPartition missing = lex_block_preorder(4, 1);
    std::vector<std::uint32_t> last = missing.classes.back().values();
    last.pop_back();  // drops 1111, the last word in lex order
    missing.classes.back() = StringSet(4, last);
    const ValidationReport r = validate(missing, 1);
    CHECK_FALSE(r.covers);
    CHECK_FALSE(r.violations.empty());

    OrderedPartition dup = lex_block_preorder(4, 1);
    dup.classes.push_back(StringSet::of({"0000"}));
    CHECK_FALSE(validate(dup, 4).disjoint);
}

TEST_CASE("classify hamming") {
    const CaseReport r = classify(hamming_preorder(5));
    CHECK(r.sp_size == 1);
    CHECK(r.b_class_index == 0);  // ties broken by lowest index
    CHECK(r.singleton_count_global == 0);
    CHECK(r.singleton_count_b == 0);
    CHECK(r.case_tag == CaseTag::sublinear_support);
    CHECK(r.global_intersection == Partition::single_part(5));
}

TEST_CASE("classify singleton classes") {
    const CaseReport r = classify(singleton_preorder(3));
    CHECK(r.sp_size == 2);  // each SP(C) is a 0/1 split
    CHECK(r.global_intersection == Partition::discrete(3));
    CHECK(r.singleton_count_global == 3);
    CHECK(r.max_class_size == 1);
}

TEST_CASE("classify is deterministic and matches a word-level recomputation") {
    const OrderedPartition p = lex_block_preorder(5, 1);
    const CaseReport first = classify(p);
    const CaseReport second = classify(p);
    CHECK(first.b_class_index == second.b_class_index);
    CHECK(first.sp_b == second.sp_b);

    // independent recomputation of B_n and the singleton counts
    int best = -1;
    std::size_t best_parts = 0;
    std::vector<oracle::IntParts> sps;
    for (std::size_t i = 0; i < p.classes.size(); ++i) {
        const oracle::WordSet words = oracle::to_words(p.classes[i]);
        // swap graph by definition: join positions whose transposition fixes the set
        std::vector<int> root(5);
        std::iota(root.begin(), root.end(), 0);
        auto find = [&](int x) {
            while (root[static_cast<std::size_t>(x)] != x) x = root[static_cast<std::size_t>(x)];
            return x;
        };
        for (int i1 = 0; i1 < 5; ++i1)
            for (int j = i1 + 1; j < 5; ++j) {
                std::vector<int> tr(5);
                std::iota(tr.begin(), tr.end(), 0);
                std::swap(tr[static_cast<std::size_t>(i1)], tr[static_cast<std::size_t>(j)]);
                if (oracle::stabilizes_word_set(tr, words))
                    root[static_cast<std::size_t>(std::max(find(i1), find(j)))] = std::min(find(i1), find(j));
            }
        oracle::IntParts parts;
        for (int r = 0; r < 5; ++r) {
            if (find(r) != r) continue;
            std::vector<int> part;
            for (int x = 0; x < 5; ++x)
                if (find(x) == r) part.push_back(x);
            parts.push_back(part);
        }
        if (parts.size() > best_parts) {
            best_parts = parts.size();
            best = static_cast<int>(i);
        }
        sps.push_back(parts);
    }
    CHECK(first.b_class_index == best);
    CHECK(static_cast<std::size_t>(first.sp_size) == best_parts);
    CHECK(first.sp_b == Partition::from_parts(5, sps[static_cast<std::size_t>(best)]));
}

TEST_CASE("global singletons contain every refinement-chain singleton") {
    Rng rng(2711);
    for (int trial = 0; trial < 10; ++trial) {
        const int n = 3 + static_cast<int>(rng.below(3));  // 3..5
        const OrderedPartition p = oracle::random_ordered_partition(n, rng);
        const auto sps = supporting_partitions_of(p.classes);
        Partition global = Partition::single_part(n);
        for (const Partition& sp : sps) global = intersect(global, sp);
        // intersecting any subfamily can only coarsen: its singleton set is
        // contained in the global singleton set
        Partition sub = Partition::single_part(n);
        for (std::size_t i = 0; i < sps.size(); i += 2) sub = intersect(sub, sps[i]);
        CHECK((singleton_mask(sub) & ~singleton_mask(global)) == 0);
    }
}

TEST_CASE("file round trip and parse diagnostics") {
    const OrderedPartition p = random_block_preorder(4, 1, 99);
    std::stringstream io;
    write_ordered_partition(io, p);
    const OrderedPartition back = read_ordered_partition(io);
    CHECK(serialize(back) == serialize(p));

    std::stringstream bad1("0011 01x1\n");
    CHECK_THROWS_AS(read_ordered_partition(bad1), ParseError);
    std::stringstream bad2("00 01\n100 101\n");
    CHECK_THROWS_WITH_AS(read_ordered_partition(bad2),
                         "line 2: word length 3 differs from length 2 seen on line 1", ParseError);
    std::stringstream empty("\n\n");
    CHECK_THROWS_AS(read_ordered_partition(empty), ParseError);
}

TEST_CASE("nonsingleton-position bound holds for block families at small n") {
    for (int n = 4; n <= 8; ++n) {
        for (const bool randomized : {false, true}) {
            const OrderedPartition p =
                randomized ? random_block_preorder(n, 1, 42) : lex_block_preorder(n, 1);
            const NonSingletonReport r = check_nonsingleton_bound(p, 1);
            CHECK(r.cover_ok);
            CHECK(r.size_hypothesis_ok);
            CHECK(r.holds);
        }
    }
}
