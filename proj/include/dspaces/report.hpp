#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "dspaces/analyze.hpp"
#include "dspaces/classify.hpp"
#include "dspaces/equivalence.hpp"
#include "dspaces/seqspace.hpp"
#include "dspaces/witness.hpp"

namespace dspaces {

/// Finite values become JSON numbers; infinities and NaN become the strings
/// "inf", "-inf" and "nan".
nlohmann::json json_number(double v);
/// Shortest round-trip decimal ("%.17g" fallback), with the same spellings
/// for non-finite values.  Used for CSV cells.
std::string format_double(double v);

nlohmann::json to_json(const DyadicCube& q);
nlohmann::json to_json(const NormValue& v);
nlohmann::json to_json(const GrowthReport& r);
nlohmann::json to_json(const Prop4Certificate& c);
nlohmann::json to_json(const EquivalenceReport& r);
nlohmann::json to_json(const ClassificationReport& r);
nlohmann::json to_json(const Refutation& r);
nlohmann::json to_json(const Prop2Report& r);

/// depth,log2_norm
void write_growth_csv(std::ostream& out, const GrowthReport& r);
/// sample_id,ratio_low,ratio_high
void write_ratio_csv(std::ostream& out, const std::vector<SampleRatio>& rows);

}  // namespace dspaces
