#include <sys/wait.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "catch_amalgamated.hpp"
#include "hwswpt/calibration.hpp"
#include "hwswpt/json_io.hpp"
#include "hwswpt/pricers.hpp"

using hwswpt::io::json;

namespace {

struct Run {
    int code = -1;
    std::string out;
};

Run run(const std::string& args) {
    const std::string cmd = std::string(HWSWPT_CLI) + " " + args + " 2>/dev/null";
    Run r;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string fixture(const std::string& name) { return std::string(FIXTURE_DIR) + "/" + name; }

std::string inputs(const std::string& curve, const std::string& model, const std::string& swaption) {
    return "--curve " + fixture(curve) + " --model " + fixture(model) + " --swaption " + fixture(swaption);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) parts.push_back(item);
    return parts;
}

std::string write_temp(const std::string& name, const std::string& text) {
    std::ofstream(name) << text;
    return name;
}

}  // namespace

TEST_CASE("cli price") {
    const auto r = run("price " + inputs("flat5_curve.json", "model_flat.json", "swaption_1x5_receiver.json") +
                       " --method exact");
    REQUIRE(r.code == 0);
    const auto j = json::parse(r.out);
    CHECK(j.contains("price"));
    CHECK(j.contains("kappa"));
    CHECK(j.at("implied_vol").is_number());
    CHECK(std::abs(j.at("price").get<double>() - 0.016247469779993690483) < 1e-12);

    const auto q = run("price " + inputs("flat5_curve.json", "model_flat.json", "swaption_1x5_receiver.json") +
                       " --method quadrature");
    REQUIRE(q.code == 0);
    CHECK(std::abs(json::parse(q.out).at("price").get<double>() - 0.016247469779993690483) < 1e-12);
}

TEST_CASE("cli price: one period corrector equals exact") {
    const std::string in = inputs("flat5_curve.json", "model_flat.json", "swaption_1x1_payer.json");
    const auto e = run("price " + in + " --method exact");
    const auto c = run("price " + in + " --method corrector");
    REQUIRE(e.code == 0);
    REQUIRE(c.code == 0);
    const double pe = json::parse(e.out).at("price").get<double>();
    const double pc = json::parse(c.out).at("price").get<double>();
    CHECK(std::abs(pc - pe) <= 1e-12 * pe);
}

TEST_CASE("cli input errors exit with 2") {
    const std::string bad = write_temp("hwswpt_cli_bad.json", "{\"times\": [1,");
    CHECK(run("price --curve " + bad + " --model " + fixture("model_flat.json") + " --swaption " +
              fixture("swaption_1x1_payer.json"))
              .code == 2);
    CHECK(run("price --curve " + fixture("flat5_curve.json")).code == 2);
    CHECK(run("price " + inputs("flat5_curve.json", "model_flat.json", "swaption_1x1_payer.json") +
              " --method magic")
              .code == 2);
    CHECK(run("").code == 2);
    std::remove(bad.c_str());

    const std::string empty = write_temp("hwswpt_cli_empty.json", "[]");
    CHECK(run("calibrate --curve " + fixture("market_curve.json") + " --strip " + empty).code == 2);
    std::remove(empty.c_str());

    const std::string desc = write_temp(
        "hwswpt_cli_desc.json",
        R"([{"expiry":2,"tenor":5,"freq":1,"vol":0.2},{"expiry":1,"tenor":5,"freq":1,"vol":0.2}])");
    CHECK(run("calibrate --curve " + fixture("market_curve.json") + " --strip " + desc).code == 2);
    std::remove(desc.c_str());
}

TEST_CASE("cli calibrate: unattainable quote exits with 3") {
    const std::string zero =
        write_temp("hwswpt_cli_zero.json", R"([{"expiry":1,"tenor":5,"freq":1,"vol":0.0}])");
    CHECK(run("calibrate --curve " + fixture("market_curve.json") + " --strip " + zero).code == 3);
    std::remove(zero.c_str());
}

TEST_CASE("cli calibrate: round trip through a price strip") {
    using namespace hwswpt;
    const auto curve = io::curve_from_json(io::read_json_file(fixture("market_curve.json")));
    const std::vector<double> breaks{0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
    const std::vector<double> etas{0.012, 0.0105, 0.0099, 0.0093, 0.0088, 0.0084, 0.008, 0.0077, 0.0072, 0.007};
    const HullWhiteParams truth(0.02, breaks, etas);
    std::vector<CalibrationInstrument> strip;
    for (int k = 1; k <= 10; ++k) {
        CalibrationInstrument inst{double(k), double(11 - k), 1, QuoteKind::price, 0.0};
        inst.quote = price_exact(curve, truth, atm_swaption(curve, inst)).price;
        strip.push_back(inst);
    }
    const std::string strip_file = write_temp("hwswpt_cli_strip.json", io::to_json(strip).dump());
    const std::string model_file = "hwswpt_cli_model.json";
    const auto r = run("calibrate --curve " + fixture("market_curve.json") + " --strip " + strip_file +
                       " --a 0.02 --out " + model_file);
    REQUIRE(r.code == 0);
    const auto out = json::parse(r.out);
    CHECK(out.at("residuals").size() == 10);
    for (const auto& row : out.at("residuals")) CHECK(std::abs(row.at("relative_residual").get<double>()) <= 1e-10);
    const auto model = io::model_from_json(io::read_json_file(model_file));
    CHECK(model.vol_breakpoints() == breaks);
    for (std::size_t l = 0; l < etas.size(); ++l) CHECK(std::abs(model.vol_values()[l] - etas[l]) < 1e-8);
    std::remove(strip_file.c_str());
    std::remove(model_file.c_str());
}

TEST_CASE("cli sweep") {
    const auto r = run("sweep " + inputs("market_curve.json", "model_calibrated.json", "swaption_5x5_payer.json") +
                       " --range-bp 300 --step-bp 25");
    REQUIRE(r.code == 0);
    const auto lines = split(r.out, '\n');
    REQUIRE(lines.size() == 26);
    CHECK(lines[0] ==
          "offset_bp,exact_price,freeze_price,corr_price,exact_vol,freeze_vol_err,corr_vol_err,"
          "freeze_price_err,corr_price_err");
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto cells = split(lines[i], ',');
        REQUIRE(cells.size() == 9);
        CHECK(std::stoi(cells[0]) == -300 + 25 * int(i - 1));
        CHECK(std::abs(std::stod(cells[6])) <= 2.5e-4);
    }

    // 20Y tenor: at the extreme strike the vol error is largest but the price error is not
    const auto wide = run("sweep " + inputs("market_curve.json", "model_calibrated.json", "swaption_2x20_payer.json"));
    REQUIRE(wide.code == 0);
    const auto rows = split(wide.out, '\n');
    REQUIRE(rows.size() == 26);
    double max_vol = 0.0, max_price = 0.0;
    for (std::size_t i = 13; i < rows.size(); ++i) {
        const auto cells = split(rows[i], ',');
        max_vol = std::max(max_vol, std::abs(std::stod(cells[6])));
        max_price = std::max(max_price, std::abs(std::stod(cells[8])));
    }
    const auto far = split(rows.back(), ',');
    CHECK(std::abs(std::stod(far[6])) == max_vol);
    CHECK(std::abs(std::stod(far[8])) < max_price);

    const auto again = run("sweep " + inputs("market_curve.json", "model_calibrated.json", "swaption_5x5_payer.json"));
    CHECK(again.out == r.out);
    CHECK(run("sweep " + inputs("market_curve.json", "model_calibrated.json", "swaption_5x5_payer.json") +
              " --step-bp 0")
              .code == 2);
}

TEST_CASE("cli sweep skips non-positive strikes") {
    const auto r = run("sweep " + inputs("market_curve.json", "model_calibrated.json", "swaption_5x5_payer.json") +
                       " --range-bp 800 --step-bp 100");
    REQUIRE(r.code == 0);
    const auto lines = split(r.out, '\n');
    CHECK(lines.size() < 18);
    CHECK(split(lines.back(), ',')[0] == "800");
}

TEST_CASE("cli bench") {
    const auto r = run("bench " + inputs("market_curve.json", "model_calibrated.json", "swaption_2x20_payer.json") +
                       " --reps 1 --rounds 1");
    REQUIRE(r.code == 0);
    const auto lines = split(r.out, '\n');
    REQUIRE(lines.size() == 6);
    CHECK(lines[1].rfind("exact", 0) == 0);
    CHECK(lines[2].rfind("freeze", 0) == 0);
    CHECK(lines[3].rfind("corrector", 0) == 0);
    CHECK(lines[4].find("exact/corrector") != std::string::npos);
    CHECK(run("bench " + inputs("market_curve.json", "model_calibrated.json", "swaption_2x20_payer.json") +
              " --reps 0")
              .code == 2);
}
