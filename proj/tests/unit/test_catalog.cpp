#include <doctest.h>

#include "stopmove/catalog.hpp"
#include "stopmove/error.hpp"

#include <json.hpp>

#include <fstream>
#include <functional>
#include <sstream>

using namespace stopmove;
using nlohmann::json;

namespace {

json fixture_json() {
    std::ifstream in(STOPMOVE_TEST_DATA "/catalog.json");
    return json::parse(in);
}

std::vector<std::string> problems_after(const std::function<void(json&)>& edit) {
    json j = fixture_json();
    edit(j);
    std::istringstream in(j.dump());
    return catalog_problems(in);
}

bool mentions(const std::vector<std::string>& problems, const std::string& needle) {
    for (const auto& p : problems)
        if (p.find(needle) != std::string::npos) return true;
    return false;
}

}  // namespace

TEST_CASE("the fixture loads") {
    const Catalog c = load_catalog_file(STOPMOVE_TEST_DATA "/catalog.json");
    CHECK(c.pia.pois().size() == 4);
    CHECK(c.olap.dimensions().size() == 4);
    CHECK(c.olap.time().has_category("timeOfDay"));
    CHECK(c.layer().size() == 4);
    CHECK(c.pia.find_geometry("L")->pid == "Louvre");
}

TEST_CASE("syntax and shape errors") {
    std::istringstream broken("{\"dimensions\": [");
    CHECK_THROWS_AS(load_catalog(broken), ParseError);
    std::istringstream missing("{\"dimensions\": [], \"pois\": []}");
    CHECK_THROWS_AS(load_catalog(missing), ParseError);
    std::istringstream wrong_type(R"({"dimensions": [{"name": 3}], "alpha": [], "pois": []})");
    CHECK_THROWS_AS(load_catalog(wrong_type), ParseError);
    CHECK_THROWS_AS(load_catalog_file("/nonexistent/catalog.json"), IoError);
}

TEST_CASE("validation problems") {
    CHECK(problems_after([](json&) {}).empty());

    auto overlap = problems_after([](json& j) {
        j["pois"][1]["geometry"]["coordinates"] = json::parse("[[5,5],[15,5],[15,15],[5,15]]");
    });
    CHECK(mentions(overlap, "'H1'"));
    CHECK(mentions(overlap, "'H2'"));

    CHECK(mentions(problems_after([](json& j) { j["pois"][0]["delta"] = 0; }), "H1"));
    CHECK(mentions(problems_after([](json& j) { j["pois"][2]["dimension"] = "Bars"; }), "Bars"));
    CHECK(mentions(problems_after([](json& j) { j["pois"][2]["pid"] = "Orsay"; }), "Orsay"));
    CHECK(mentions(problems_after([](json& j) { j["alpha"][1]["map"]["Louvre"] = "E"; }), "E"));
    CHECK(mentions(problems_after([](json& j) { j["pois"][3]["gid"] = "X"; }), "X"));
    CHECK_FALSE(problems_after([](json& j) {
                    j["dimensions"][0]["rollups"][0]["map"].erase("H2");
                }).empty());
    CHECK_FALSE(problems_after([](json& j) {
                    j["dimensions"][0]["values"]["hotel"]["stars"]["H1"] = "three";
                }).empty());
    CHECK_FALSE(problems_after([](json& j) {
                    j["time"]["categories"][0]["ranges"][0]["end"] = 5;
                }).empty());
    CHECK_FALSE(problems_after([](json& j) {
                    j["pois"][0]["geometry"]["coordinates"] = json::parse("[[0,0],[1,1],[2,2]]");
                }).empty());
}

TEST_CASE("load_catalog reports every problem at once") {
    json j = fixture_json();
    j["pois"][0]["delta"] = -1;
    j["pois"][2]["dimension"] = "Bars";
    std::istringstream in(j.dump());
    try {
        load_catalog(in);
        FAIL("expected a validation error");
    } catch (const ValidationError& e) {
        const std::string what = e.what();
        CHECK(what.find("H1") != std::string::npos);
        CHECK(what.find("Bars") != std::string::npos);
    }
}
