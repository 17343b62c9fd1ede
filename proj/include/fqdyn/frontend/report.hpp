#pragma once

#include <string>

#include "json.hpp"

#include "fqdyn/frontend/values.hpp"
#include "fqdyn/hypotheses.hpp"
#include "fqdyn/laurent.hpp"
#include "fqdyn/riccati.hpp"

namespace fqdyn::frontend {

using json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

json to_json(const ExtInt& e);
json to_json(const Rational& r);
json to_json(const RatK& z);
json to_json(const Ratio& r);
json to_json(const OrbitRecord& r);
json to_json(const ConsistencyVerdict& v);
json to_json(const RiccatiSystem& sys);
json to_json(const SubsystemSolution& s);
json to_json(const Condition1Result& c);
json to_json(const Condition2Result& c);
json to_json(const HypothesisReport& h);
json to_json(const FamilyCheck& fc);
json to_json(const ScanReport& s);
json to_json(const LattesCertificate& c);
json to_json(const HeightEstimate& h);
json to_json(const MahlerRow& r);
json to_json(const Matrix<RatK>& m);

/// CSV tables with a header line.
std::string records_csv(const std::vector<OrbitRecord>& recs);
std::string heights_csv(const HeightEstimate& h);
std::string mahler_csv(const std::vector<MahlerRow>& rows);

}  // namespace fqdyn::frontend
