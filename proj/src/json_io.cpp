#include "hwswpt/json_io.hpp"

#include <fstream>

#include "hwswpt/errors.hpp"

namespace hwswpt::io {

namespace {

const json& field(const json& j, const char* key) {
    if (!j.is_object()) throw InputError("json: expected an object");
    const auto it = j.find(key);
    if (it == j.end()) throw InputError(std::string("json: missing field '") + key + "'");
    return *it;
}

double number(const json& j, const char* key) {
    const json& v = field(j, key);
    if (!v.is_number()) throw InputError(std::string("json: field '") + key + "' is not a number");
    return v.get<double>();
}

std::vector<double> numbers(const json& j, const char* key) {
    const json& v = field(j, key);
    if (!v.is_array()) throw InputError(std::string("json: field '") + key + "' is not an array");
    std::vector<double> out;
    out.reserve(v.size());
    for (const auto& x : v) {
        if (!x.is_number())
            throw InputError(std::string("json: field '") + key + "' has a non-numeric entry");
        out.push_back(x.get<double>());
    }
    return out;
}

}  // namespace

DiscountCurve curve_from_json(const json& j) {
    return DiscountCurve(numbers(j, "times"), numbers(j, "dfs"));
}

json to_json(const DiscountCurve& curve) {
    return {{"times", curve.pillar_times()}, {"dfs", curve.pillar_dfs()}};
}

HullWhiteParams model_from_json(const json& j) {
    return HullWhiteParams(number(j, "a"), numbers(j, "breaks"), numbers(j, "etas"));
}

json to_json(const HullWhiteParams& params) {
    return {{"a", params.mean_reversion()},
            {"breaks", params.vol_breakpoints()},
            {"etas", params.vol_values()}};
}

SwaptionSpec swaption_from_json(const json& j) {
    const json& side = field(j, "side");
    if (!side.is_string()) throw InputError("json: field 'side' is not a string");
    const double notional = j.contains("notional") ? number(j, "notional") : 1.0;
    return SwaptionSpec(number(j, "expiry"), number(j, "settle"), numbers(j, "pay_times"),
                        numbers(j, "accruals"), number(j, "strike"),
                        parse_side(side.get<std::string>().c_str()), notional);
}

json to_json(const SwaptionSpec& spec) {
    return {{"expiry", spec.expiry()},       {"settle", spec.settlement()},
            {"pay_times", spec.pay_times()}, {"accruals", spec.accruals()},
            {"strike", spec.strike_rate()},  {"side", to_string(spec.side())},
            {"notional", spec.notional()}};
}

std::vector<CalibrationInstrument> strip_from_json(const json& j) {
    if (!j.is_array()) throw InputError("json: instrument strip must be an array");
    std::vector<CalibrationInstrument> out;
    for (const auto& item : j) {
        CalibrationInstrument inst;
        inst.expiry = number(item, "expiry");
        inst.tenor = number(item, "tenor");
        const json& freq = field(item, "freq");
        if (!freq.is_number_integer()) throw InputError("json: field 'freq' is not an integer");
        inst.freq = freq.get<int>();
        const bool has_vol = item.contains("vol");
        if (has_vol == item.contains("price"))
            throw InputError("json: instrument needs exactly one of 'vol' or 'price'");
        inst.kind = has_vol ? QuoteKind::black_vol : QuoteKind::price;
        inst.quote = number(item, has_vol ? "vol" : "price");
        out.push_back(inst);
    }
    return out;
}

json to_json(std::span<const CalibrationInstrument> strip) {
    json out = json::array();
    for (const auto& inst : strip)
        out.push_back({{"expiry", inst.expiry},
                       {"tenor", inst.tenor},
                       {"freq", inst.freq},
                       {inst.kind == QuoteKind::black_vol ? "vol" : "price", inst.quote}});
    return out;
}

json to_json(const PricingResult& r) {
    json out = {{"method", to_string(r.method)},
                {"side", to_string(r.side)},
                {"price", r.price},
                {"kappa", r.kappa},
                {"bond_forward", r.bond_forward},
                {"strike", r.strike},
                {"elapsed", r.elapsed}};
    out["aggregate_vol"] = r.aggregate_vol ? json(*r.aggregate_vol) : json(nullptr);
    out["strike_state"] = r.strike_state ? json(*r.strike_state) : json(nullptr);
    if (!r.freeze_weights.empty()) out["freeze_weights"] = r.freeze_weights;
    if (!r.strike_weights.empty()) out["strike_weights"] = r.strike_weights;
    if (r.method == Method::corrector) out["exponential_fallback"] = r.used_exponential_fallback;
    return out;
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw InputError("'" + path + "': " + e.what());
    }
}

}  // namespace hwswpt::io
