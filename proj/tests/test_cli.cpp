#include <doctest.h>

#include "generators.hpp"
#include "known_fans.hpp"
#include "toricq/cli.hpp"
#include "toricq/io.hpp"

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

using namespace toricq;
using known::iv;

namespace {

const std::string fans = FANS_DIR;

struct Outcome {
    int code;
    std::string out, err;
};

Outcome call(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& content) {
    const auto p = std::filesystem::temp_directory_path() / ("toricq_test_" + name);
    std::ofstream(p) << content;
    return p.string();
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

const std::string plane_text =
    R"({"rank": 2, "rays": [[1, 0], [0, 1], [-1, -1]], "cones": [{"generators": [0, 1]}, {"generators": [1, 2]}, {"generators": [0, 2]}]})";

}  // namespace

TEST_CASE("validate accepts a single cone") {
    const auto f = temp_file("one.fan", R"({"rank": 2, "rays": [["1", "0"], ["1", "3"]], "cones": [{"generators": [0, 1]}]})");
    const auto r = call({"validate", f});
    CHECK(r.code == exit_positive);
    CHECK(r.out.find("valid fan") != std::string::npos);
}

TEST_CASE("validate rejects overlapping cones with a negative verdict") {
    const auto f = temp_file("overlap.fan",
                             R"({"rank": 2, "rays": [[1, 0], [0, 1], [1, 1]], "cones": [{"generators": [0, 1]}, {"generators": [0, 2]}]})");
    CHECK(call({"validate", f}).code == exit_negative);
}

TEST_CASE("decide on the two-planes fan reports the obstruction") {
    const auto r = call({"decide", fans + "/two-planes.fan"});
    CHECK(r.code == exit_negative);
    CHECK(r.out.find("no categorical quotient; obstruction cone [(1,0,0), (0,0,1)]") != std::string::npos);
}

TEST_CASE("divisorial on the eight-vector fan emits a Farkas refutation at the inner cone") {
    const auto path = std::filesystem::temp_directory_path() / "toricq_test_c35.json";
    const auto r = call({"divisorial", fans + "/eight-vector.fan", "--out", path.string()});
    CHECK(r.code == exit_negative);
    const Json c = Json::parse(slurp(path.string()));
    CHECK(c["divisorial"] == false);
    const Quasifan f = known::eight_fan();
    bool inner = false;
    for (const auto& ref : c["refutations"])
        if (f.maximal_cones()[ref["cone"].get<std::size_t>()] == known::eight_inner_cone()) inner = true;
    CHECK(inner);
    CHECK(call({"verify-certificate", path.string(), fans + "/eight-vector.fan"}).code == exit_positive);
}

TEST_CASE("certificates round-trip through verify-certificate and tampering is caught") {
    const auto fan = temp_file("plane.fan", plane_text);
    const auto cert = (std::filesystem::temp_directory_path() / "toricq_test_c2.json").string();
    CHECK(call({"divisorial", fan, "--out", cert}).code == exit_positive);
    CHECK(call({"verify-certificate", cert, fan}).code == exit_positive);

    Json c = Json::parse(slurp(cert));
    c["support_map"]["matrices"][1][0][1] = "5";
    const auto bad = temp_file("c2bad.json", c.dump());
    const auto r = call({"verify-certificate", bad, fan});
    CHECK(r.code == exit_negative);
    CHECK(r.out.find("certificate rejected") != std::string::npos);

    // the eight-vector refutation with one multiplier changed
    const auto eight_cert = (std::filesystem::temp_directory_path() / "toricq_test_c35b.json").string();
    call({"divisorial", fans + "/eight-vector.fan", "--out", eight_cert});
    Json n = Json::parse(slurp(eight_cert));
    n["refutations"][0]["farkas"][0] = "12345";
    CHECK(call({"verify-certificate", temp_file("eight_bad.json", n.dump()), fans + "/eight-vector.fan"}).code == exit_negative);
    // a certificate for a different fan
    CHECK(call({"verify-certificate", cert, fans + "/plane.fan"}).code == exit_negative);
}

TEST_CASE("empty certificate on a single cone verifies") {
    const auto fan = temp_file("cone.fan", R"({"rank": 3, "rays": [[1, 0, 0], [0, 1, 0], [1, 1, 2]], "cones": [{"generators": [0, 1, 2]}]})");
    const auto cert = (std::filesystem::temp_directory_path() / "toricq_test_c0.json").string();
    CHECK(call({"divisorial", fan, "--out", cert}).code == exit_positive);
    CHECK(Json::parse(slurp(cert))["support_map"]["k"] == 0);
    CHECK(call({"verify-certificate", cert, fan}).code == exit_positive);
}

TEST_CASE("malformed input exits 2 with a position") {
    const auto f = temp_file("broken.fan", "{\"rank\": 2,\n \"rays\": [[1, 0],\n   [0, 1.5]],\n \"cones\": []}");
    auto r = call({"validate", f});
    CHECK(r.code == exit_input_error);
    CHECK(r.err.find("rays[1][1]") != std::string::npos);

    const auto g = temp_file("syntax.fan", "{\"rank\": 2,\n \"rays\": [[1, 0]\n [0, 1]]}");
    r = call({"validate", g});
    CHECK(r.code == exit_input_error);
    CHECK(r.err.find(":3:") != std::string::npos);

    CHECK(call({"validate", "/nonexistent/file.fan"}).code == exit_input_error);
    CHECK(call({"frobnicate"}).code == exit_input_error);
    CHECK(call({"decide", fans + "/eight-vector.fan"}).code == exit_input_error);  // no subtorus
}

TEST_CASE("cap overflow exits 3") { CHECK(call({"--cap", "5", "tdr", fans + "/eight-vector.fan"}).code == exit_internal_error); }

TEST_CASE("text and json modes agree and json output is reproducible") {
    const std::vector<std::vector<std::string>> commands{
        {"validate", fans + "/plane.fan"},     {"faces", "--slice", fans + "/eight-vector.fan"},
        {"convex", fans + "/plane.fan"},       {"strictly-convex", fans + "/plane.fan"},
        {"divisorial", fans + "/eight-vector.fan"},   {"divisorial", fans + "/plane.fan"},
        {"tdr", fans + "/eight-vector.fan"},          {"tdr", fans + "/extra-cone.fan"},
        {"toric-quotient", fans + "/two-planes.fan"}, {"decide", fans + "/two-planes.fan"}};
    for (auto args : commands) {
        const auto text = call(args);
        args.insert(args.begin(), {"--format", "json"});
        const auto json = call(args);
        const auto again = call(args);
        CHECK(text.code == json.code);
        CHECK(json.out == again.out);
        const Json j = Json::parse(json.out);
        CHECK(j["verdict"] == (json.code == exit_positive ? "positive" : "negative"));
    }
    CHECK(call({"tdr", fans + "/extra-cone.fan"}).code == exit_negative);
    CHECK(call({"tdr", fans + "/eight-vector.fan"}).code == exit_positive);
}

TEST_CASE("serialization round-trips") {
    std::mt19937 rng(77);
    for (int it = 0; it < 30; ++it) {
        const std::size_t n = 2 + it % 3;
        const auto sub = gen::random_subdivision(rng, n, n + 3, it % 2 == 0);
        const Json j = to_json(sub.fan);
        CHECK(fan_from_json(Json::parse(j.dump())) == sub.fan);
        const SupportMap h = support_map_from_json(Json::parse(to_json(sub.h).dump()), sub.fan);
        CHECK(h.matrices() == sub.h.matrices());
        if (!sub.fan.is_fan()) continue;
        const auto cert = is_divisorial(sub.fan);
        const auto back = certificate_from_json(Json::parse(certificate_to_json(sub.fan, cert).dump()), sub.fan);
        CHECK(back.divisorial == cert.divisorial);
        CHECK(!check_certificate(sub.fan, back).has_value());
    }
    for (const char* q : {"0", "-7", "3/4", "-2/6"}) {
        const Rational r = rational_from_json(Json(q), "x");
        CHECK(rational_from_json(Json(rational_to_json(r)), "x") == r);
    }
    CHECK_THROWS_AS(rational_from_json(Json("1/0"), "x"), FormatError);
    CHECK_THROWS_AS(rational_from_json(Json("1.5"), "x"), FormatError);
}
