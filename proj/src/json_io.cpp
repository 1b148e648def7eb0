#include "orbitlab/json_io.hpp"

#include <bit>
#include <cstdio>
#include <sstream>

namespace orbitlab {

namespace {

Json positions_1based(std::uint32_t mask) {
    Json out = Json::array();
    while (mask) {
        out.push_back(std::countr_zero(mask) + 1);
        mask &= mask - 1;
    }
    return out;
}

std::string ratio_text(double value) {
    char buffer[40];
    std::snprintf(buffer, sizeof buffer, "%.6e", value);
    return buffer;
}

Json bound_entry_json(const BoundEntry& entry) {
    Json j;
    j["value"] = entry.value.get_str();
    j["hypotheses_ok"] = entry.hypotheses_ok;
    j["checkable"] = entry.checkable;
    if (!entry.note.empty()) j["note"] = entry.note;
    return j;
}

}  // namespace

Json to_json(const Partition& p) {
    Json parts = Json::array();
    for (std::uint32_t m : p.masks()) parts.push_back(positions_1based(m));
    return parts;
}

Json to_json(const PermGroup& g) {
    Json j;
    j["n"] = g.degree();
    j["order"] = g.order();
    Json gens = Json::array();
    for (const PositionPerm& perm : g.sifted_generators()) gens.push_back(perm.str());
    j["generators"] = gens;
    return j;
}

Json to_json(const HFObject& x) {
    if (x.is_atom()) return x.atom_value().str();
    Json arr = Json::array();
    for (const HFObject& child : x.children()) arr.push_back(to_json(child));
    return arr;
}

Json to_json(const OrderedPartition& p) {
    Json j;
    j["n"] = p.n;
    Json classes = Json::array();
    for (const StringSet& c : p.classes) classes.push_back(c.words());
    j["classes"] = classes;
    return j;
}

Json to_json(const ValidationReport& r) {
    Json j;
    j["well_formed"] = r.well_formed();
    j["nonempty_classes"] = r.nonempty_classes;
    j["disjoint"] = r.disjoint;
    j["covers"] = r.covers;
    j["size_bound_ok"] = r.size_bound_ok;
    j["max_class_size"] = r.max_class_size;
    j["violations"] = r.violations;
    return j;
}

Json to_json(const CaseReport& r) {
    Json j;
    j["n"] = r.n;
    j["b_class_index"] = r.b_class_index + 1;
    j["sp_size"] = r.sp_size;
    j["singleton_count_global"] = r.singleton_count_global;
    j["singleton_count_b"] = r.singleton_count_b;
    j["max_class_size"] = r.max_class_size;
    j["case_tag"] = to_string(r.case_tag);
    j["support_fraction"] = r.support_fraction;
    j["singleton_fraction"] = r.singleton_fraction;
    j["sp_b"] = to_json(r.sp_b);
    j["global_intersection"] = to_json(r.global_intersection);
    return j;
}

Json to_json(const ClassSelectionTrace& t) {
    Json j;
    j["n"] = t.n;
    j["global_singletons"] = positions_1based(t.global_singletons);
    Json chosen = Json::array();
    for (int idx : t.chosen_classes) chosen.push_back(idx + 1);
    j["chosen_classes"] = chosen;
    j["part_increases"] = t.part_increases;
    j["final_intersection"] = to_json(t.final_intersection);
    return j;
}

Json to_json(const SubsetSelectionTrace& t) {
    Json j;
    j["n"] = t.n;
    j["singleton_positions"] = positions_1based(t.s_mask);
    Json chosen = Json::array();
    for (const BitString& a : t.chosen) chosen.push_back(a.str());
    j["chosen_strings"] = chosen;
    j["potential_initial"] = t.potential_initial;
    j["potential"] = t.potential;
    j["final_intersection"] = to_json(t.final_intersection);
    j["stop_reason"] = t.stop_reason;
    return j;
}

Json to_json(const NonSingletonReport& r) {
    Json j;
    j["n"] = r.n;
    j["singleton_count"] = r.singleton_count;
    j["non_singleton_count"] = r.non_singleton_count;
    j["bound"] = ratio_text(r.bound);
    j["holds"] = r.holds;
    j["cover_ok"] = r.cover_ok;
    j["size_hypothesis_ok"] = r.size_hypothesis_ok;
    return j;
}

Json to_json(const BoundReport& r) {
    Json j;
    j["n"] = r.n;
    j["f_n"] = r.f_n;
    j["s_n"] = r.s_n;
    j["t_n"] = r.t_n;
    j["s_global"] = r.s_global;
    j["cn_value"] = r.cn_value;
    j["a_n_size"] = r.a_n_size;
    Json bounds;
    for (const auto& [key, entry] : r.bounds) bounds[key] = bound_entry_json(entry);
    j["bounds"] = bounds;
    Json exact;
    for (const auto& [key, value] : r.exact) exact[key] = value.get_str();
    j["exact"] = exact;
    return j;
}

Json to_json(const GrowthTable& t) {
    Json rows = Json::array();
    for (const GrowthRow& row : t.rows) {
        Json j;
        j["n"] = row.n;
        j["family"] = row.family;
        j["exact_orbit"] = row.exact_orbit ? Json(row.exact_orbit->get_str()) : Json(nullptr);
        Json bounds;
        for (const auto& [key, entry] : row.bounds) bounds[key] = entry.value.get_str();
        j["bounds"] = bounds;
        j["hypotheses_ok"] = row.hypotheses_ok;
        Json lower;
        for (const auto& [key, value] : row.orbit_lower) lower[key] = value.get_str();
        j["orbit_lower_bounds"] = lower;
        j["pow2_kn"] = row.pow2_kn.get_str();
        j["ratio_exact"] = row.ratio_exact ? Json(ratio_text(*row.ratio_exact)) : Json(nullptr);
        rows.push_back(j);
    }
    Json j;
    j["family"] = t.family;
    j["k"] = t.k;
    j["rows"] = rows;
    return j;
}

std::string growth_csv(const GrowthTable& t) {
    static const char* kBoundColumns[] = {"tuples_product", "tuples_closed", "preorder_stab",
                                          "support_stab",   "class_stab",    "support_stab_asym"};
    static const char* kStabBoundColumns[] = {"preorder_stab", "support_stab", "class_stab"};
    std::ostringstream out;
    out << "n,family,exact_orbit";
    for (const char* key : kBoundColumns) out << ",bound_" << key;
    for (const char* key : kStabBoundColumns) out << ",orbit_lb_" << key;
    out << ",pow2_kn,ratio_exact,hypotheses_ok\n";
    for (const GrowthRow& row : t.rows) {
        out << row.n << ',' << row.family << ',';
        if (row.exact_orbit) out << row.exact_orbit->get_str();
        for (const char* key : kBoundColumns) {
            out << ',';
            auto it = row.bounds.find(key);
            if (it != row.bounds.end()) out << it->second.value.get_str();
        }
        for (const char* key : kStabBoundColumns) {
            out << ',';
            auto it = row.orbit_lower.find(key);
            if (it != row.orbit_lower.end()) out << it->second.get_str();
        }
        out << ',' << row.pow2_kn.get_str() << ',';
        if (row.ratio_exact) out << ratio_text(*row.ratio_exact);
        out << ',' << (row.hypotheses_ok ? "true" : "false") << '\n';
    }
    return out.str();
}

}  // namespace orbitlab
