#include "orbitlab/preorders.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <sstream>

#include "orbitlab/rng.hpp"

namespace orbitlab {

namespace {

std::vector<std::uint32_t> all_strings_lex(int n) {
    std::vector<std::uint32_t> order(std::size_t{1} << n);
    for (std::uint32_t v = 0; v < order.size(); ++v) order[v] = v;
    std::sort(order.begin(), order.end(),
              [n](std::uint32_t a, std::uint32_t b) { return lex_key(a, n) < lex_key(b, n); });
    return order;
}

OrderedPartition chunk_into_blocks(int n, int block, const std::vector<std::uint32_t>& order) {
    std::vector<StringSet> classes;
    for (std::size_t at = 0; at < order.size(); at += static_cast<std::size_t>(block)) {
        const std::size_t end = std::min(order.size(), at + static_cast<std::size_t>(block));
        classes.emplace_back(n, std::vector<std::uint32_t>(order.begin() + static_cast<std::ptrdiff_t>(at),
                                                           order.begin() + static_cast<std::ptrdiff_t>(end)));
    }
    return OrderedPartition(n, std::move(classes));
}

void check_block_size(int n, int c) {
    if (n < 1 || n > kMaxDim) throw std::invalid_argument("block preorder: dimension out of range");
    const long block = static_cast<long>(c) * n;
    if (block < 1 || block > (1L << n))
        throw std::invalid_argument("block preorder: block size c*n must be in 1..2^n");
}

}  // namespace

OrderedPartition hamming_preorder(int n) {
    if (n < 1 || n > kMaxDim) throw std::invalid_argument("hamming_preorder: dimension out of range");
    std::vector<std::vector<std::uint32_t>> buckets(static_cast<std::size_t>(n) + 1);
    const std::uint32_t count = 1u << n;
    for (std::uint32_t v = 0; v < count; ++v)
        buckets[static_cast<std::size_t>(std::popcount(v))].push_back(v);
    std::vector<StringSet> classes;
    classes.reserve(buckets.size());
    for (auto& bucket : buckets) classes.emplace_back(n, std::move(bucket));
    return OrderedPartition(n, std::move(classes));
}

OrderedPartition lex_block_preorder(int n, int c) {
    check_block_size(n, c);
    return chunk_into_blocks(n, c * n, all_strings_lex(n));
}

OrderedPartition random_block_preorder(int n, int c, std::uint64_t seed) {
    check_block_size(n, c);
    std::vector<std::uint32_t> order = all_strings_lex(n);
    Rng rng(seed);
    rng.shuffle(order);
    return chunk_into_blocks(n, c * n, order);
}

OrderedPartition singleton_preorder(int n) {
    if (n < 1 || n > kMaxDim) throw std::invalid_argument("singleton_preorder: dimension out of range");
    std::vector<StringSet> classes;
    classes.reserve(std::size_t{1} << n);
    for (std::uint32_t v : all_strings_lex(n)) classes.emplace_back(n, std::vector<std::uint32_t>{v});
    return OrderedPartition(n, std::move(classes));
}

ValidationReport validate(const OrderedPartition& p, int c) {
    ValidationReport report;
    std::vector<int> hits(std::size_t{1} << p.n, 0);
    for (std::size_t i = 0; i < p.classes.size(); ++i) {
        const StringSet& cls = p.classes[i];
        if (cls.empty()) {
            report.nonempty_classes = false;
            report.violations.push_back("class " + std::to_string(i + 1) + " is empty");
        }
        report.max_class_size = std::max(report.max_class_size, static_cast<int>(cls.size()));
        for (std::uint32_t v : cls.values()) ++hits[v];
    }
    for (std::uint32_t v = 0; v < hits.size(); ++v) {
        if (hits[v] == 0) {
            report.covers = false;
            report.violations.push_back("string " + BitString(v, p.n).str() + " is missing");
        } else if (hits[v] > 1) {
            report.disjoint = false;
            report.violations.push_back("string " + BitString(v, p.n).str() + " occurs in " +
                                        std::to_string(hits[v]) + " classes");
        }
    }
    const long bound = static_cast<long>(c) * p.n;
    if (report.max_class_size > bound) {
        report.size_bound_ok = false;
        report.violations.push_back("max class size " + std::to_string(report.max_class_size) +
                                    " exceeds c*n = " + std::to_string(bound));
    }
    return report;
}

std::string to_string(CaseTag tag) {
    switch (tag) {
        case CaseTag::sublinear_support: return "sublinear-support";
        case CaseTag::linear_support_few_singletons: return "linear-support-few-singletons";
        case CaseTag::linear_support_many_singletons: return "linear-support-many-singletons";
    }
    return "?";
}

CaseReport classify(const OrderedPartition& p, const ClassifyOptions& options) {
    if (p.classes.empty()) throw std::invalid_argument("classify: empty partition");
    CaseReport report;
    report.n = p.n;
    report.support_fraction = options.support_fraction;
    report.singleton_fraction = options.singleton_fraction;

    std::vector<Partition> sps;
    sps.reserve(p.classes.size());
    Partition global = Partition::single_part(p.n);
    int best = 0;
    for (std::size_t i = 0; i < p.classes.size(); ++i) {
        sps.push_back(coarsest_supporting_partition(p.classes[i]));
        global = intersect(global, sps.back());
        if (sps[i].part_count() > sps[static_cast<std::size_t>(best)].part_count()) best = static_cast<int>(i);
        report.max_class_size = std::max(report.max_class_size, static_cast<int>(p.classes[i].size()));
    }

    report.b_class_index = best;
    report.sp_b = sps[static_cast<std::size_t>(best)];
    report.global_intersection = global;
    report.sp_size = report.sp_b.part_count();
    report.singleton_count_global = static_cast<int>(singleton_positions(global).size());
    report.singleton_count_b = static_cast<int>(singleton_positions(report.sp_b).size());

    if (report.sp_size <= options.support_fraction * p.n)
        report.case_tag = CaseTag::sublinear_support;
    else if (report.singleton_count_b <= options.singleton_fraction * p.n)
        report.case_tag = CaseTag::linear_support_few_singletons;
    else
        report.case_tag = CaseTag::linear_support_many_singletons;
    return report;
}

OrderedPartition read_ordered_partition(std::istream& in) {
    std::vector<std::vector<std::string>> lines;
    std::string line;
    int line_no = 0;
    int first_line = 0;
    int n = -1;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream words(line);
        std::vector<std::string> ws;
        std::string w;
        while (words >> w) ws.push_back(w);
        if (ws.empty()) continue;
        for (const std::string& word : ws) {
            if (word.find_first_not_of("01") != std::string::npos)
                throw ParseError("'" + word + "' is not a binary word", line_no);
            if (n < 0) {
                n = static_cast<int>(word.size());
                first_line = line_no;
                if (n > kMaxDim) throw ParseError("word length exceeds the dimension cap", line_no);
            } else if (static_cast<int>(word.size()) != n) {
                throw ParseError("word length " + std::to_string(word.size()) + " differs from length " +
                                     std::to_string(n) + " seen on line " + std::to_string(first_line),
                                 line_no);
            }
        }
        lines.push_back(std::move(ws));
    }
    if (n < 0) throw ParseError("instance file contains no classes");
    std::vector<StringSet> classes;
    classes.reserve(lines.size());
    for (const auto& ws : lines) classes.push_back(StringSet::parse(n, ws));
    return OrderedPartition(n, std::move(classes));
}

OrderedPartition read_ordered_partition_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open instance file: " + path);
    return read_ordered_partition(in);
}

void write_ordered_partition(std::ostream& out, const OrderedPartition& p) {
    for (const StringSet& c : p.classes) {
        const auto words = c.words();
        for (std::size_t i = 0; i < words.size(); ++i) {
            if (i) out << ' ';
            out << words[i];
        }
        out << '\n';
    }
}

}  // namespace orbitlab
