#ifndef ORBITLAB_JSON_IO_HPP
#define ORBITLAB_JSON_IO_HPP

#include <string>

#include <json.hpp>

#include "orbitlab/group_engine.hpp"
#include "orbitlab/hfsets.hpp"
#include "orbitlab/bounds.hpp"
#include "orbitlab/preorders.hpp"

namespace orbitlab {

/// Insertion-ordered JSON so serialized output is byte-stable.
using Json = nlohmann::ordered_json;

// Big integers serialize as decimal strings; positions and class indices as
// 1-based numbers, matching the text formats.

Json to_json(const Partition& p);
Json to_json(const PermGroup& g);
Json to_json(const HFObject& x);
Json to_json(const OrderedPartition& p);
Json to_json(const ValidationReport& r);
Json to_json(const CaseReport& r);
Json to_json(const ClassSelectionTrace& t);
Json to_json(const SubsetSelectionTrace& t);
Json to_json(const NonSingletonReport& r);
Json to_json(const BoundReport& r);
Json to_json(const GrowthTable& t);

std::string growth_csv(const GrowthTable& t);

}  // namespace orbitlab

#endif
