#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "hwswpt/calibration.hpp"
#include "hwswpt/curve.hpp"
#include "hwswpt/hw_model.hpp"
#include "hwswpt/pricers.hpp"
#include "hwswpt/swaption.hpp"

namespace hwswpt::io {

using nlohmann::json;

// All readers throw InputError on malformed or invalid documents.

/// {"times":[...], "dfs":[...]}
DiscountCurve curve_from_json(const json& j);
json to_json(const DiscountCurve& curve);

/// {"a":0.02, "breaks":[0, ...], "etas":[...]}
HullWhiteParams model_from_json(const json& j);
json to_json(const HullWhiteParams& params);

/// {"expiry":1, "settle":1, "pay_times":[...], "accruals":[...], "strike":0.05,
///  "side":"payer"|"receiver", "notional":1}
SwaptionSpec swaption_from_json(const json& j);
json to_json(const SwaptionSpec& spec);

/// [{"expiry":1, "tenor":10, "freq":1, "vol":0.15}, ...]; "price" may replace "vol".
std::vector<CalibrationInstrument> strip_from_json(const json& j);
json to_json(std::span<const CalibrationInstrument> strip);

json to_json(const PricingResult& result);

json read_json_file(const std::string& path);

}  // namespace hwswpt::io
