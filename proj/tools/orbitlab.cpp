// orbitlab: generate, analyze, and verify ordered partitions of {0,1}^n
// under the position action of Sym_n. Machine output goes to stdout, logs
// to stderr; identical configurations produce byte-identical output.

#include <bit>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "orbitlab/json_io.hpp"

namespace {

using namespace orbitlab;

constexpr std::uint64_t kDefaultSeed = 1;

struct CommonOptions {
    int cap = kDefaultBruteForceCap;
    bool unsafe_cap = false;
    int parallelism = 1;
    std::string output;
};

int env_default_cap() {
    if (const char* env = std::getenv("ORBITLAB_CAP")) {
        char* end = nullptr;
        const long value = std::strtol(env, &end, 10);
        if (end && *end == '\0' && value >= 1 && value <= kHardBruteForceCap) return static_cast<int>(value);
        std::cerr << "orbitlab: ignoring invalid ORBITLAB_CAP value '" << env << "'\n";
    }
    return kDefaultBruteForceCap;
}

void add_common(CLI::App* cmd, CommonOptions& opts) {
    opts.cap = env_default_cap();
    cmd->add_option("--cap", opts.cap, "brute-force cap on n")->capture_default_str();
    cmd->add_flag("--unsafe-cap", opts.unsafe_cap,
                  "allow a cap above " + std::to_string(kDefaultBruteForceCap));
    cmd->add_option("--parallel", opts.parallelism, "number of worker threads")->capture_default_str();
    cmd->add_option("-o,--output", opts.output, "write output to a file instead of stdout");
}

void check_cap_flags(const CommonOptions& opts) {
    if (opts.cap > kDefaultBruteForceCap && !opts.unsafe_cap)
        throw CLI::ValidationError("--cap", "cap above " + std::to_string(kDefaultBruteForceCap) +
                                                " requires --unsafe-cap");
    if (opts.cap > kHardBruteForceCap)
        throw CLI::ValidationError("--cap", "cap cannot exceed " + std::to_string(kHardBruteForceCap));
    if (opts.parallelism < 1) throw CLI::ValidationError("--parallel", "must be at least 1");
}

void emit(const CommonOptions& opts, const std::string& text) {
    if (opts.output.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(opts.output, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + opts.output);
    out << text;
}

std::pair<int, int> parse_n_range(const std::string& text) {
    const auto dots = text.find("..");
    try {
        if (dots == std::string::npos) {
            const int n = std::stoi(text);
            return {n, n};
        }
        return {std::stoi(text.substr(0, dots)), std::stoi(text.substr(dots + 2))};
    } catch (const std::exception&) {
        throw CLI::ValidationError("--n", "expected N or A..B");
    }
}

OrderedPartition load_instance(const std::string& path) {
    OrderedPartition p = read_ordered_partition_file(path);
    const ValidationReport v = validate(p, p.n > 0 ? (1 << p.n) : 1);  // size bound not enforced here
    if (!v.well_formed()) {
        std::string detail;
        for (const auto& violation : v.violations) detail += "  " + violation + "\n";
        throw ParseError("instance is not an ordered partition of {0,1}^n:\n" + detail);
    }
    return p;
}

// ---- analyze ----------------------------------------------------------

std::string render_analysis_text(const OrderedPartition& p, const ValidationReport& v,
                                 const CaseReport& cr, const ClassSelectionTrace& selection,
                                 const SubsetSelectionTrace& subset, const NonSingletonReport& ns,
                                 const BoundReport& br) {
    std::ostringstream out;
    out << "n " << p.n << "\nclasses " << p.class_count() << "\n";
    out << "size_bound_ok " << (v.size_bound_ok ? "yes" : "no") << " (max class " << v.max_class_size
        << ")\n";
    out << "case " << to_string(cr.case_tag) << "\n";
    out << "b_class " << cr.b_class_index + 1 << "\n";
    out << "sp_b " << cr.sp_b.str() << "\n";
    out << "sp_size " << cr.sp_size << "\n";
    out << "singletons_global " << cr.singleton_count_global << "\n";
    out << "singletons_b " << cr.singleton_count_b << "\n";
    out << "global_intersection " << cr.global_intersection.str() << "\n";
    out << "selected_classes";
    for (int idx : selection.chosen_classes) out << ' ' << idx + 1;
    out << "\nselection_part_increases";
    for (int k : selection.part_increases) out << ' ' << k;
    out << "\nsubset_strings";
    for (const BitString& a : subset.chosen) out << ' ' << a.str();
    out << "\nsubset_stop " << subset.stop_reason << "\n";
    out << "nonsingleton_count " << ns.non_singleton_count << " bound_8log2 " << ceil_8_log2(p.n)
        << " holds " << (ns.holds ? "yes" : "no") << "\n";
    for (const auto& [key, entry] : br.bounds)
        out << "bound " << key << " " << entry.value.get_str() << " hypotheses_ok "
            << (entry.hypotheses_ok ? "yes" : "no") << "\n";
    for (const auto& [key, value] : br.exact) out << "exact " << key << " " << value.get_str() << "\n";
    return out.str();
}

int run_analyze(const std::string& path, int c, const std::string& format, const CommonOptions& opts) {
    const OrderedPartition p = load_instance(path);
    if (p.n > opts.cap)
        throw CapExceeded("analyze: n=" + std::to_string(p.n) + " exceeds cap " +
                          std::to_string(opts.cap));
    const ValidationReport v = validate(p, c);
    const CaseReport cr = classify(p);
    const ClassSelectionTrace selection = select_individualizing_classes(p);
    const SubsetSelectionTrace subset =
        select_constraining_subset(p.classes[static_cast<std::size_t>(cr.b_class_index)]);
    const NonSingletonReport ns = check_nonsingleton_bound(p, c);
    BoundParams params;
    params.cap = opts.cap;
    params.parallelism = opts.parallelism;
    params.compute_exact = p.n <= opts.cap;
    params.cn = static_cast<long>(c) * p.n;
    const BoundReport br = stab_bound_report(p, params);

    if (format == "json") {
        Json j;
        j["n"] = p.n;
        j["validation"] = to_json(v);
        j["case"] = to_json(cr);
        j["class_selection"] = to_json(selection);
        j["subset_selection"] = to_json(subset);
        j["nonsingleton"] = to_json(ns);
        j["bounds"] = to_json(br);
        emit(opts, j.dump(2) + "\n");
    } else {
        emit(opts, render_analysis_text(p, v, cr, selection, subset, ns, br));
    }
    return 0;
}

// ---- orbit ------------------------------------------------------------

int run_orbit(const std::string& path, const CommonOptions& opts) {
    const OrderedPartition p = load_instance(path);
    if (p.n > opts.cap)
        throw CapExceeded("orbit: n=" + std::to_string(p.n) + " exceeds cap " + std::to_string(opts.cap));
    const std::uint64_t stab = stabilizer_order_of_ordered_partition(p, opts.cap, opts.parallelism);
    const std::uint64_t orbit = factorial_u64(p.n) / stab;
    std::ostringstream out;
    out << "n " << p.n << "\n";
    out << "stabilizer_order " << stab << "\n";
    out << "orbit_size " << orbit << "\n";
    if (p.n <= kDirectOrbitCrossCheckDim) {
        const std::uint64_t direct = direct_orbit_count_ordered_partition(p, opts.cap, opts.parallelism);
        out << "direct_check " << (direct == orbit ? "ok" : "MISMATCH") << "\n";
        if (direct != orbit) {
            emit(opts, out.str());
            return 1;
        }
    } else {
        out << "direct_check skipped\n";
    }
    emit(opts, out.str());
    return 0;
}

// ---- verify -----------------------------------------------------------

int run_verify(const std::string& path, int c, const CommonOptions& opts) {
    const OrderedPartition p = load_instance(path);
    std::ostringstream out;
    bool all_ok = true;
    const auto check = [&](const std::string& name, bool ok) {
        out << (ok ? "ok   " : "FAIL ") << name << "\n";
        all_ok = all_ok && ok;
    };

    const ValidationReport v = validate(p, c);
    check("instance-well-formed", v.well_formed());
    out << "info size-hypothesis (max |C| <= c*n) " << (v.size_bound_ok ? "holds" : "fails") << "\n";

    const CaseReport cr = classify(p);
    const StringSet& b = p.classes[static_cast<std::size_t>(cr.b_class_index)];

    const ClassSelectionTrace selection = select_individualizing_classes(p);
    check("selection-individualizes-global-singletons",
          (selection.global_singletons & ~singleton_mask(selection.final_intersection)) == 0);

    bool subset_ok = true;
    std::optional<SubsetSelectionTrace> subset;
    try {
        subset = select_constraining_subset(b);
    } catch (const std::logic_error& e) {
        std::cerr << "orbitlab: " << e.what() << "\n";
        subset_ok = false;
    }
    check("subset-construction-postconditions", subset_ok);
    if (subset) {
        int prev = subset->potential_initial;
        bool drops = true;
        for (int value : subset->potential) {
            drops = drops && (prev - value >= 2);
            prev = value;
        }
        check("subset-potential-drops", drops);
        check("subset-size-bound", 2 * static_cast<int>(subset->chosen.size()) <=
                                       std::popcount(subset->s_mask));
    }

    if (p.n <= opts.cap) {
        BoundParams params;
        params.cap = opts.cap;
        params.parallelism = opts.parallelism;
        params.cn = static_cast<long>(c) * p.n;
        const BoundReport br = stab_bound_report(p, params);
        for (const auto& [bound_key, exact_key] : BoundReport::checked_pairs()) {
            auto bound_it = br.bounds.find(bound_key);
            auto exact_it = br.exact.find(exact_key);
            if (bound_it == br.bounds.end() || exact_it == br.exact.end()) continue;
            if (!bound_it->second.hypotheses_ok) {
                out << "info bound " << bound_key << " skipped (hypotheses fail)\n";
                continue;
            }
            check("bound-sound " + bound_key, exact_it->second <= bound_it->second.value);
        }

        if (p.n <= kDirectOrbitCrossCheckDim) {
            bool cross = true;
            try {
                orbit_size_ordered_partition(p, opts.cap, opts.parallelism);
            } catch (const std::logic_error&) {
                cross = false;
            }
            check("orbit-stabilizer-cross-check", cross);

            std::vector<StringSet> selected_sets;
            for (int idx : selection.chosen_classes)
                selected_sets.push_back(p.classes[static_cast<std::size_t>(idx)]);
            if (!selected_sets.empty()) {
                const RealizerScanResult scan =
                    realizer_consistency_scan(selected_sets, opts.cap, opts.parallelism);
                check("induced-map-unique-per-tuple", scan.unique);
                check("induced-map-matches-construction", scan.matches_construction);
            }

            if (subset) {
                StringInjection identity_p;
                for (const BitString& s : subset->chosen) identity_p[s.bits()] = s.bits();
                const PinningCheckResult pin =
                    pinning_check(b, subset->chosen_set(), identity_p, opts.cap, opts.parallelism);
                check("pinning-identity-compliance", pin.compliance_ok && pin.inverse_ok);
                check("pinning-identity-rigidity", pin.rigidity_ok);
                check("pinned-set-size-bound", pin.size_bound_ok);
            }

            const std::uint64_t hf_orbit =
                orbit_size_hf(encode_ordered_partition(p), p.n, HFAction::positions, opts.cap, opts.parallelism);
            const std::uint64_t op_orbit = orbit_size_ordered_partition(p, opts.cap, opts.parallelism);
            check("encoding-symmetry-transfer", hf_orbit == op_orbit);
        } else {
            out << "info enumeration-backed checks skipped (n > " << kDirectOrbitCrossCheckDim << ")\n";
        }
    } else {
        out << "info exact checks skipped (n above cap)\n";
    }

    out << (all_ok ? "VERIFY PASS\n" : "VERIFY FAIL\n");
    emit(opts, out.str());
    return all_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"orbitlab: symmetry analysis of ordered partitions of {0,1}^n"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "generate an instance in the one-class-per-line format");
    std::string gen_family, gen_format = "text";
    int gen_n = 4;
    int gen_c = 1;
    std::uint64_t gen_seed = kDefaultSeed;
    CommonOptions gen_opts;
    gen->add_option("--family", gen_family, "hamming | lex-block | random-block | singletons")->required();
    gen->add_option("--n", gen_n, "dimension")->required();
    gen->add_option("--c", gen_c, "block-size constant (blocks of c*n strings)")->capture_default_str();
    gen->add_option("--seed", gen_seed, "seed for random-block")->capture_default_str();
    gen->add_option("--format", gen_format, "text | json")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();
    add_common(gen, gen_opts);

    // analyze
    auto* analyze = app.add_subcommand("analyze", "classification, traces, and stabilizer bounds");
    std::string analyze_file, analyze_format = "text";
    int analyze_c = 1;
    CommonOptions analyze_opts;
    analyze->add_option("instance", analyze_file, "instance file")->required();
    analyze->add_option("--c", analyze_c, "class-size constant for hypotheses")->capture_default_str();
    analyze->add_option("--format", analyze_format, "text | json")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();
    add_common(analyze, analyze_opts);

    // orbit
    auto* orbit = app.add_subcommand("orbit", "exact stabilizer and orbit size");
    std::string orbit_file;
    CommonOptions orbit_opts;
    orbit->add_option("instance", orbit_file, "instance file")->required();
    add_common(orbit, orbit_opts);

    // report
    auto* report = app.add_subcommand("report", "growth table over a range of n");
    std::string report_family, report_range = "3..6", report_format = "csv";
    int report_k = 1, report_c = 1;
    std::uint64_t report_seed = kDefaultSeed;
    CommonOptions report_opts;
    report->add_option("--family", report_family, "hamming | lex-block | random-block | singletons")
        ->required();
    report->add_option("--n", report_range, "dimension or range A..B")->capture_default_str();
    report->add_option("--k", report_k, "compare orbits against 2^(k*n)")->capture_default_str();
    report->add_option("--c", report_c, "block-size constant")->capture_default_str();
    report->add_option("--seed", report_seed, "seed for random-block")->capture_default_str();
    report->add_option("--format", report_format, "csv | json")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    add_common(report, report_opts);

    // verify
    auto* verify = app.add_subcommand("verify", "run the property suite on an instance");
    std::string verify_file;
    int verify_c = 1;
    CommonOptions verify_opts;
    verify->add_option("instance", verify_file, "instance file")->required();
    verify->add_option("--c", verify_c, "class-size constant for hypotheses")->capture_default_str();
    add_common(verify, verify_opts);

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) {
            check_cap_flags(gen_opts);
            const OrderedPartition p = make_family_instance(gen_family, gen_n, gen_c, gen_seed);
            if (gen_format == "json") {
                emit(gen_opts, to_json(p).dump(2) + "\n");
            } else {
                std::ostringstream out;
                write_ordered_partition(out, p);
                emit(gen_opts, out.str());
            }
            return 0;
        }
        if (analyze->parsed()) {
            check_cap_flags(analyze_opts);
            return run_analyze(analyze_file, analyze_c, analyze_format, analyze_opts);
        }
        if (orbit->parsed()) {
            check_cap_flags(orbit_opts);
            return run_orbit(orbit_file, orbit_opts);
        }
        if (report->parsed()) {
            check_cap_flags(report_opts);
            const auto [n_from, n_to] = parse_n_range(report_range);
            const GrowthTable table = growth_report(report_family, n_from, n_to, report_k, report_c,
                                                    report_seed, report_opts.cap, report_opts.parallelism);
            emit(report_opts, report_format == "json" ? to_json(table).dump(2) + "\n" : growth_csv(table));
            return 0;
        }
        if (verify->parsed()) {
            check_cap_flags(verify_opts);
            return run_verify(verify_file, verify_c, verify_opts);
        }
    } catch (const CLI::Error& e) {
        std::cerr << "orbitlab: " << e.what() << "\n";
        return 1;
    } catch (const ParseError& e) {
        std::cerr << "orbitlab: " << e.what() << "\n";
        return 2;
    } catch (const CapExceeded& e) {
        std::cerr << "orbitlab: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "orbitlab: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
