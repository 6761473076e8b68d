#include <doctest.h>

#include "generators.hpp"
#include "oracles.hpp"

#include "stopmove/catalog.hpp"
#include "stopmove/error.hpp"
#include "stopmove/stops.hpp"

#include <fstream>
#include <sstream>

using namespace stopmove;

namespace {

PoI square_poi(const std::string& id, double x, double y, double side, double delta) {
    return {id, "D", id,
            Geometry::polygon({{x, y}, {x + side, y}, {x + side, y + side}, {x, y + side}}), delta,
            0.0};
}

Trajectory path(std::initializer_list<std::tuple<double, double, double>> pts) {
    Trajectory tr{"O", {}};
    for (auto [t, x, y] : pts) tr.samples.push_back({t, {x, y}});
    return tr;
}

}  // namespace

TEST_CASE("duration must strictly exceed delta") {
    const Trajectory tr = path({{0, 1, 1}, {5, 2, 2}, {11, 3, 3}});
    const Pia ten({square_poi("C1", 0, 0, 5, 10)});
    const auto s = detect_stops(tr, ten);
    REQUIRE(s.size() == 1);
    CHECK(s[0].interval == Interval{0, 11});
    CHECK(s[0].first_index == 0);
    CHECK(s[0].last_index == 2);

    const Pia eleven({square_poi("C1", 0, 0, 5, 11)});
    CHECK(detect_stops(tr, eleven).empty());
}

TEST_CASE("a single sample is never a stop") {
    const Pia pia({square_poi("C1", 0, 0, 5, 0.001)});
    CHECK(detect_stops(path({{0, 1, 1}, {10, 20, 20}}), pia).empty());
}

TEST_CASE("two stops and three moves") {
    const Pia pia({square_poi("C1", 0, 0, 10, 5), square_poi("C2", 20, 0, 10, 5),
                   square_poi("C4", 60, 0, 10, 5)});
    const Trajectory tr = path({{0, -5, 5},
                                {1, 2, 2},
                                {4, 5, 5},
                                {9, 8, 8},
                                {10, 15, 5},
                                {11, 25, 5},
                                {12, 26, 5},
                                {13, 40, 5},
                                {20, 61, 1},
                                {30, 69, 9},
                                {31, 80, 5}});
    const auto stops = detect_stops(tr, pia);
    REQUIRE(stops.size() == 2);
    CHECK(pia.pois()[stops[0].poi].pid == "C1");
    CHECK(pia.pois()[stops[1].poi].pid == "C4");
    const auto moves = detect_moves(tr, stops);
    REQUIRE(moves.size() == 3);
    CHECK(moves[0].kind == MoveKind::before_first_stop);
    CHECK(moves[1].kind == MoveKind::between_stops);
    CHECK(moves[1].first_index == 4);
    CHECK(moves[1].last_index == 7);
    CHECK(moves[2].kind == MoveKind::after_last_stop);
}

TEST_CASE("moves of a trajectory that never stops") {
    const Pia pia({square_poi("C1", 0, 0, 1, 5)});
    const Trajectory tr = path({{0, 10, 10}, {1, 11, 11}, {2, 12, 12}});
    const auto moves = detect_moves(tr, detect_stops(tr, pia));
    REQUIRE(moves.size() == 1);
    CHECK(moves[0].kind == MoveKind::whole_trajectory);
    CHECK(moves[0].first_index == 0);
    CHECK(moves[0].last_index == 2);
}

TEST_CASE("stops at both ends leave only the moves between them") {
    const Pia pia({square_poi("A", 0, 0, 10, 1), square_poi("B", 20, 0, 10, 1)});
    const Trajectory tr = path({{0, 1, 1},
                                {2, 2, 2},
                                {3, 15, 5},
                                {4, 21, 1},
                                {6, 22, 2},
                                {7, 15, 5},
                                {8, 1, 1},
                                {10, 2, 2}});
    const auto stops = detect_stops(tr, pia);
    REQUIRE(stops.size() == 3);
    const auto moves = detect_moves(tr, stops);
    REQUIRE(moves.size() == 2);
    for (const auto& m : moves) CHECK(m.kind == MoveKind::between_stops);
}

TEST_CASE("re-entering the same PoI gives separate stops") {
    const Pia pia({square_poi("A", 0, 0, 10, 1)});
    const Trajectory tr =
        path({{0, 1, 1}, {2, 2, 2}, {3, 50, 50}, {4, 1, 1}, {6, 2, 2}});
    const auto stops = detect_stops(tr, pia);
    REQUIRE(stops.size() == 2);
    CHECK(stops[0].interval == Interval{0, 2});
    CHECK(stops[1].interval == Interval{4, 6});
}

TEST_CASE("PIA validation") {
    CHECK_THROWS_AS(Pia({}), ValidationError);
    CHECK_THROWS_AS(Pia({square_poi("A", 0, 0, 1, 1), square_poi("A", 5, 5, 1, 1)}),
                    ValidationError);
    CHECK_THROWS_AS(Pia({square_poi("A", 0, 0, 1, 0)}), ValidationError);
    CHECK_THROWS_AS(Pia({square_poi("A", 0, 0, 1, -1)}), ValidationError);
    try {
        Pia({square_poi("A", 0, 0, 10, 1), square_poi("B", 5, 5, 10, 1)});
        FAIL("overlap accepted");
    } catch (const ValidationError& e) {
        const std::string what = e.what();
        CHECK(what.find("'A'") != std::string::npos);
        CHECK(what.find("'B'") != std::string::npos);
    }
    // tolerance bands are part of the footprint
    PoI a{"A", "D", "A", Geometry::point({0, 0}), 1, 1.0};
    PoI b{"B", "D", "B", Geometry::point({3, 0}), 1, 1.0};
    CHECK_NOTHROW(Pia({a, b}));
    b.tol = 2.5;
    CHECK_THROWS_AS(Pia({a, b}), ValidationError);
}

TEST_CASE("detector agrees with the brute-force enumerator") {
    gen::Rng rng(42);
    for (int round = 0; round < 300; ++round) {
        const auto pois = gen::pia(rng, 5);
        REQUIRE_FALSE(pois.empty());
        const Pia pia(pois);
        const Trajectory tr = gen::trajectory(rng, pia.pois(), gen::uniform_int(rng, 0, 50));
        CHECK(detect_stops(tr, pia) == oracle::stops(tr, pia.pois()));
    }
}

TEST_CASE("planted stops are recovered") {
    gen::Rng rng(77);
    const Pia pia(gen::grid_pia());
    for (int round = 0; round < 200; ++round) {
        Trajectory tr{"O", {}};
        std::vector<std::pair<std::size_t, Interval>> planted;
        double t = 0;
        const int visits = gen::uniform_int(rng, 0, 6);
        auto wander = [&] {
            // corridors between the squares never touch a PoI
            const int steps = gen::uniform_int(rng, 1, 4);
            for (int k = 0; k < steps; ++k) {
                tr.samples.push_back({t, {15.0 + 20.0 * gen::uniform_int(rng, 0, 9), gen::uniform(rng, 0, 200)}});
                t += 1;
            }
        };
        for (int v = 0; v < visits; ++v) {
            wander();
            const int i = gen::uniform_int(rng, 0, 9), j = gen::uniform_int(rng, 0, 9);
            const std::size_t poi = std::size_t(i * 10 + j);
            const int n = gen::uniform_int(rng, 1, 8);
            const double start = t;
            for (int k = 0; k < n; ++k) {
                tr.samples.push_back({t, {20.0 * i + gen::uniform(rng, 0, 10), 20.0 * j + gen::uniform(rng, 0, 10)}});
                t += 1;
            }
            if (t - 1 - start > 5.0) planted.push_back({poi, {start, t - 1}});
        }
        wander();
        const auto stops = detect_stops(tr, pia);
        REQUIRE(stops.size() == planted.size());
        for (std::size_t k = 0; k < stops.size(); ++k) {
            CHECK(stops[k].poi == planted[k].first);
            CHECK(stops[k].interval == planted[k].second);
        }
    }
}

TEST_CASE("stop and move invariants on random trajectories") {
    gen::Rng rng(99);
    for (int round = 0; round < 300; ++round) {
        const Pia pia(gen::pia(rng, 5));
        const Trajectory tr = gen::trajectory(rng, pia.pois(), gen::uniform_int(rng, 1, 60));
        const auto stops = detect_stops(tr, pia);
        const auto moves = detect_moves(tr, stops);
        std::vector<int> owner(tr.samples.size(), 0);
        for (std::size_t k = 0; k < stops.size(); ++k) {
            const Stop& s = stops[k];
            const PoI& p = pia.pois()[s.poi];
            CHECK(s.interval.end - s.interval.start > p.delta);
            for (std::size_t i = s.first_index; i <= s.last_index; ++i) {
                CHECK(contains(p.geometry, tr.samples[i].position, p.tol));
                ++owner[i];
            }
            if (s.first_index > 0)
                CHECK_FALSE(contains(p.geometry, tr.samples[s.first_index - 1].position, p.tol));
            if (s.last_index + 1 < tr.samples.size())
                CHECK_FALSE(contains(p.geometry, tr.samples[s.last_index + 1].position, p.tol));
            for (std::size_t j = k + 1; j < stops.size(); ++j)
                CHECK(strictly_precedes(s.interval, stops[j].interval));
        }
        for (const Move& m : moves) {
            CHECK(m.first_index <= m.last_index);
            for (std::size_t i = m.first_index; i <= m.last_index; ++i) ++owner[i];
        }
        for (int o : owner) CHECK(o == 1);
        if (stops.empty()) {
            REQUIRE(moves.size() == 1);
            CHECK(moves[0].kind == MoveKind::whole_trajectory);
        } else {
            CHECK(moves.size() <= stops.size() + 1);
        }
    }
}

TEST_CASE("SM-MOFT from the fixture") {
    const Catalog c = load_catalog_file(STOPMOVE_TEST_DATA "/catalog.json");
    std::ifstream in(STOPMOVE_TEST_DATA "/moft.csv");
    const SmMoft sm = build_sm_moft(load_moft(in), c.pia);
    CHECK(sm.size() == 10);
    CHECK(sm.oids() == std::vector<ObjectId>{"O1", "O2", "O3"});
    const auto o2 = sm.slice("O2");
    REQUIRE(o2.size() == 4);
    CHECK(o2[0] == SmRecord{"O2", "H2", {0, 1}});
    CHECK(o2[1] == SmRecord{"O2", "L", {25, 40}});
    CHECK(o2[2] == SmRecord{"O2", "E", {50, 80}});
    CHECK(o2[3] == SmRecord{"O2", "H2", {120, 140}});
    // O1 spends only 2 time units at the Eiffel tower
    for (const auto& r : sm.slice("O1")) CHECK(r.gid != "E");

    CHECK(build_sm_moft(Moft{}, c.pia).empty());
    const Moft wanderer({{"W", 0, 30, 30}, {"W", 1, 31, 31}, {"W", 2, 32, 32}});
    CHECK(build_sm_moft(wanderer, c.pia).empty());
}

TEST_CASE("SM-MOFT import and export") {
    std::istringstream in("oid,gid,ts,tf\nO2,L,25,40\nO1,H1,0,10.5\nO2,H2,0,1\n");
    const SmMoft sm = read_sm_moft(in);
    std::ostringstream out;
    write_sm_moft(out, sm);
    CHECK(out.str() == "oid,gid,ts,tf\nO1,H1,0,10.5\nO2,H2,0,1\nO2,L,25,40\n");
    CHECK_FALSE(sm.has_oid("O3"));
    CHECK(sm.slice("O3").empty());

    std::istringstream touching("oid,gid,ts,tf\nO3,H2,0,10\nO3,E,10,40\n");
    CHECK(read_sm_moft(touching).size() == 2);
    std::istringstream overlap("oid,gid,ts,tf\nO3,H2,0,10\nO3,E,9,40\n");
    CHECK_THROWS_AS(read_sm_moft(overlap), ValidationError);
    std::istringstream reversed("oid,gid,ts,tf\nO3,H2,10,0\n");
    CHECK_THROWS_AS(read_sm_moft(reversed), ParseError);
    std::istringstream header("oid,gid,start,end\n");
    CHECK_THROWS_AS(read_sm_moft(header), ParseError);
}
