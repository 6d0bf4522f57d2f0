#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "hwswpt/calibration.hpp"
#include "hwswpt/errors.hpp"
#include "hwswpt/json_io.hpp"
#include "hwswpt/oracle.hpp"
#include "hwswpt/pricers.hpp"
#include "hwswpt/report.hpp"

using namespace hwswpt;
using io::json;

namespace {

struct Inputs {
    std::string curve, model, swaption;
};

void add_inputs(CLI::App* cmd, Inputs& in) {
    cmd->add_option("--curve", in.curve, "discount curve JSON")->required();
    cmd->add_option("--model", in.model, "Hull-White model JSON")->required();
    cmd->add_option("--swaption", in.swaption, "swaption JSON")->required();
}

json number_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

int cmd_price(const Inputs& in, const std::string& method, int quad_points) {
    const auto curve = io::curve_from_json(io::read_json_file(in.curve));
    const auto params = io::model_from_json(io::read_json_file(in.model));
    const auto spec = io::swaption_from_json(io::read_json_file(in.swaption));

    json out;
    double value = 0.0;
    if (method == "quadrature") {
        OracleConfig cfg;
        cfg.quad_points = quad_points;
        value = quadrature_price(curve, params, spec, cfg);
        out = {{"method", "quadrature"}, {"side", to_string(spec.side())}, {"price", value}};
    } else {
        const Method m = method == "exact" ? Method::exact : method == "freeze" ? Method::freeze : Method::corrector;
        const auto result = price(m, curve, params, spec);
        value = result.price;
        out = io::to_json(result);
    }
    double vol = std::nan("");
    try {
        vol = swaption_implied_vol(curve, spec, value);
    } catch (const std::exception& e) {
        std::cerr << "warning: no implied vol: " << e.what() << "\n";
    }
    out["implied_vol"] = number_or_null(vol);
    out["forward_swap_rate"] = forward_swap_rate(curve, spec);
    out["annuity"] = annuity(curve, spec);
    std::cout << out.dump(2) << "\n";
    return 0;
}

int cmd_sweep(const Inputs& in, int range_bp, int step_bp) {
    const auto curve = io::curve_from_json(io::read_json_file(in.curve));
    const auto params = io::model_from_json(io::read_json_file(in.model));
    const auto spec = io::swaption_from_json(io::read_json_file(in.swaption));
    const auto report = strike_sweep(curve, params, spec, range_bp, step_bp);
    for (int off : report.skipped_offsets)
        std::cerr << "warning: skipping offset " << off << "bp (strike <= 0)\n";

    std::cout << "offset_bp,exact_price,freeze_price,corr_price,exact_vol,freeze_vol_err,corr_vol_err,"
                 "freeze_price_err,corr_price_err\n";
    char line[512];
    for (const auto& r : report.rows) {
        std::snprintf(line, sizeof line, "%d,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", r.offset_bp,
                      r.exact_price, r.freeze_price, r.corr_price, r.exact_vol, r.freeze_vol_err, r.corr_vol_err,
                      r.freeze_price_err, r.corr_price_err);
        std::cout << line;
    }
    return 0;
}

int cmd_calibrate(const std::string& curve_file, const std::string& strip_file, double a,
                  const std::string& out_file) {
    const auto curve = io::curve_from_json(io::read_json_file(curve_file));
    const auto strip = io::strip_from_json(io::read_json_file(strip_file));
    const auto result = bootstrap(curve, strip, a);

    json model = io::to_json(result.params);
    json out = model;
    json rows = json::array();
    for (std::size_t k = 0; k < strip.size(); ++k)
        rows.push_back({{"expiry", strip[k].expiry},
                        {"tenor", strip[k].tenor},
                        {"target_price", result.target_prices[k]},
                        {"model_price", result.model_prices[k]},
                        {"relative_residual", result.relative_residuals[k]}});
    out["residuals"] = rows;
    if (!out_file.empty()) {
        std::ofstream f(out_file);
        if (!f) throw InputError("cannot write '" + out_file + "'");
        f << model.dump(2) << "\n";
    }
    std::cout << out.dump(2) << "\n";
    return 0;
}

int cmd_bench(const Inputs& in, int reps, int rounds) {
    const auto curve = io::curve_from_json(io::read_json_file(in.curve));
    const auto params = io::model_from_json(io::read_json_file(in.model));
    const auto spec = io::swaption_from_json(io::read_json_file(in.swaption));
    const auto rows = benchmark(curve, params, spec, reps, rounds);

    char line[256];
    std::printf("%-10s %8s %14s %14s\n", "method", "reps", "total_s", "per_call_us");
    for (const auto& r : rows) {
        std::snprintf(line, sizeof line, "%-10s %8d %14.6f %14.4f\n", to_string(r.method), reps,
                      r.total_seconds, r.per_call_seconds * 1e6);
        std::cout << line;
    }
    std::printf("speedup exact/corrector: %.2fx\n", rows[0].total_seconds / rows[2].total_seconds);
    std::printf("speedup exact/freeze:    %.2fx\n", rows[0].total_seconds / rows[1].total_seconds);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hull-White swaption pricing: exact, initial freeze and strike corrector"};
    app.require_subcommand(1);

    Inputs price_in;
    std::string method = "exact";
    int quad_points = 201;
    auto* price_cmd = app.add_subcommand("price", "price one swaption, JSON on stdout");
    add_inputs(price_cmd, price_in);
    price_cmd->add_option("--method", method, "pricing method")
        ->check(CLI::IsMember({"exact", "freeze", "corrector", "quadrature"}));
    price_cmd->add_option("--quad-points", quad_points, "initial quadrature nodes")->check(CLI::Range(32, 1 << 20));

    Inputs sweep_in;
    int range_bp = 300, step_bp = 25;
    auto* sweep_cmd = app.add_subcommand("sweep", "strike sweep around the money, CSV on stdout");
    add_inputs(sweep_cmd, sweep_in);
    sweep_cmd->add_option("--range-bp", range_bp, "largest offset from ATM")->check(CLI::PositiveNumber);
    sweep_cmd->add_option("--step-bp", step_bp, "offset step")->check(CLI::PositiveNumber);

    std::string cal_curve, cal_strip, cal_out;
    double a = 0.02;
    auto* cal_cmd = app.add_subcommand("calibrate", "bootstrap eta to an ATM strip");
    cal_cmd->add_option("--curve", cal_curve, "discount curve JSON")->required();
    cal_cmd->add_option("--strip", cal_strip, "instrument strip JSON")->required();
    cal_cmd->add_option("--a", a, "mean reversion");
    cal_cmd->add_option("--out", cal_out, "also write the model JSON here");

    Inputs bench_in;
    int reps = 1000, rounds = 5;
    auto* bench_cmd = app.add_subcommand("bench", "time repeated pricing per method");
    add_inputs(bench_cmd, bench_in);
    bench_cmd->add_option("--reps", reps, "calls per timed block")->check(CLI::PositiveNumber);
    bench_cmd->add_option("--rounds", rounds, "timed blocks per method, fastest kept")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*price_cmd) return cmd_price(price_in, method, quad_points);
        if (*sweep_cmd) return cmd_sweep(sweep_in, range_bp, step_bp);
        if (*cal_cmd) return cmd_calibrate(cal_curve, cal_strip, a, cal_out);
        if (*bench_cmd) return cmd_bench(bench_in, reps, rounds);
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const NumericError& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
