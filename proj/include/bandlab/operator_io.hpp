#pragma once

#include <string>

#include <json.hpp>

#include "bandlab/fredholm.hpp"
#include "bandlab/limit_ops.hpp"
#include "bandlab/moduli.hpp"

namespace bandlab {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

/// Operator description format: {schemaVersion, N, d, tailBound, diagonals:
/// [{offset, class, ...class fields...}]}; round-trips losslessly.
Json toJson(const BandOperator& op);
BandOperator operatorFromJson(const Json& j);

Json toJson(const OperatorSpectrum& spec);
Json toJson(const ModuliReport& report);
Json toJson(const SweepClassification& sweep);
Json toJson(const BoundedBelowResult& r);
Json toJson(const SymbolInvertibility& s);
Json toJson(const ConditionLadder& ladder);
Json toJson(const TsemiTrace& trace);
Json toJson(const std::vector<PStrongRow>& rows);

BandOperator loadOperator(const std::string& path);
void saveOperator(const BandOperator& op, const std::string& path);

}  // namespace bandlab
