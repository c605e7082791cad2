#pragma once

#include <string>

#include <json.hpp>

#include "crnms/classifier.hpp"
#include "crnms/verify.hpp"

namespace crnms {

using json = nlohmann::json;

inline constexpr const char* kSchemaVersion = "1.0";

json tagged(const Rational& q);  // {"exactness":"rational","value":"p/q","decimal":...}
json tagged(Real v);             // {"exactness":"float64","value":...}

json to_json(const ReactionNetwork& net);
json to_json(const ReactionNetwork& net, const OneDimStructure& s);
json to_json(const ReactionNetwork& net, const EssentialSets& e);
json to_json(const ReactionNetwork& net, const PairWitnesses& w);
json to_json(const ReactionNetwork& net, const AdReport& ad);
json to_json(const ArrowDiagram& d);
json to_json(const CapacityClass& c);
json to_json(const BiReactionProfile& p, const ReactionNetwork& net);
json to_json(const ClassificationReport& r);
json to_json(const ReactionNetwork& net, const OneDimStructure& s, const Witness& w);
json to_json(const VerificationReport& v);

/// Reads rates, conservation constants and states.  Entries may be JSON
/// numbers, numeric strings or tagged objects; a full report is accepted too.
Witness witness_from_json(const json& j, const ReactionNetwork& net);

/// Plain-text rendering of a report for terminals.
std::string pretty(const json& report);

}  // namespace crnms
