#include <doctest.h>

#include "generators.hpp"

#include "stopmove/error.hpp"
#include "stopmove/temporal.hpp"

#include <algorithm>
#include <set>

using namespace stopmove;

TEST_CASE("strictly precedes") {
    CHECK(strictly_precedes({0, 10}, {20, 30}));
    CHECK_FALSE(strictly_precedes({0, 10}, {10, 20}));
    CHECK_FALSE(strictly_precedes({5, 5}, {6, 7}));
    CHECK_FALSE(strictly_precedes({20, 30}, {0, 10}));
}

TEST_CASE("strictly precedes is a strict partial order") {
    gen::Rng rng(1);
    std::vector<Interval> xs;
    for (int k = 0; k < 40; ++k) {
        const double a = gen::uniform_int(rng, 0, 20);
        xs.push_back({a, a + gen::uniform_int(rng, 0, 5)});
    }
    for (const auto& a : xs) {
        CHECK_FALSE(strictly_precedes(a, a));
        for (const auto& b : xs) {
            if (strictly_precedes(a, b)) CHECK_FALSE(strictly_precedes(b, a));
            for (const auto& c : xs)
                if (strictly_precedes(a, b) && strictly_precedes(b, c))
                    CHECK(strictly_precedes(a, c));
        }
    }
}

TEST_CASE("inside is strict") {
    CHECK(inside(5, {0, 10}));
    CHECK_FALSE(inside(0, {0, 10}));
    CHECK_FALSE(inside(10, {0, 10}));
    CHECK_FALSE(inside(3, {3, 3}));
}

TEST_CASE("interval construction") {
    CHECK(Interval::make(1, 2).length() == 1);
    CHECK_THROWS_AS(Interval::make(2, 1), DomainError);
}

TEST_CASE("temporal element keeps intervals ordered") {
    TemporalElement te;
    te.append({0, 1});
    te.append({120, 140});
    CHECK(te.size() == 2);
    CHECK_THROWS_AS(te.append({130, 150}), DomainError);
    CHECK_THROWS_AS(te.append({140, 150}), DomainError);
    CHECK_THROWS_AS(TemporalElement({{0, 10}, {10, 20}}), DomainError);
}

TEST_CASE("interval aggregates") {
    const std::vector<Interval> two{{0, 10}, {20, 30}};
    CHECK(interval_aggregate(two, IntervalAggregate::max_l) == 10);
    CHECK(interval_aggregate(two, IntervalAggregate::min_l) == 10);
    CHECK(interval_aggregate(two, IntervalAggregate::avg_l) == 10);
    CHECK(interval_aggregate(two, IntervalAggregate::timespan_l) == 30);

    const std::vector<Interval> point{{5, 5}};
    for (auto k : {IntervalAggregate::max_l, IntervalAggregate::min_l, IntervalAggregate::avg_l,
                   IntervalAggregate::timespan_l})
        CHECK(interval_aggregate(point, k) == 0);

    const std::vector<Interval> nested{{0, 1}, {0, 100}};
    CHECK(interval_aggregate(nested, IntervalAggregate::timespan_l) == 100);
    CHECK(interval_aggregate(nested, IntervalAggregate::avg_l) == 50.5);

    CHECK_THROWS_AS(interval_aggregate({}, IntervalAggregate::max_l), DomainError);
}

TEST_CASE("timespan_l is never below max_l and covered_length lies between") {
    gen::Rng rng(2);
    for (int k = 0; k < 500; ++k) {
        std::vector<Interval> s;
        const int n = gen::uniform_int(rng, 1, 8);
        for (int i = 0; i < n; ++i) {
            const double a = gen::uniform(rng, -50, 50);
            s.push_back({a, a + gen::uniform(rng, 0, 20)});
        }
        const double span = interval_aggregate(s, IntervalAggregate::timespan_l);
        const double longest = interval_aggregate(s, IntervalAggregate::max_l);
        CHECK(span >= longest);
        CHECK(covered_length(s) <= span + 1e-9);
        CHECK(covered_length(s) >= longest - 1e-9);
    }
}

TEST_CASE("time set aggregates") {
    const std::vector<Instant> s{1, 5, 9};
    CHECK(time_set_aggregate(s, TimeSetAggregate::count) == 3);
    CHECK(time_set_aggregate(s, TimeSetAggregate::max) == 9);
    CHECK(time_set_aggregate(s, TimeSetAggregate::min) == 1);
    CHECK(time_set_aggregate(s, TimeSetAggregate::timespan) == 8);
    const std::vector<Instant> one{7};
    CHECK(time_set_aggregate(one, TimeSetAggregate::timespan) == 0);
    CHECK(time_set_aggregate({}, TimeSetAggregate::count) == 0);
    CHECK_THROWS_AS(time_set_aggregate({}, TimeSetAggregate::max), DomainError);
    const std::vector<Instant> repeated{3, 3, 4};
    CHECK(time_set_aggregate(repeated, TimeSetAggregate::count) == 2);
}

TEST_CASE("time set aggregates match a sort-based oracle") {
    gen::Rng rng(4);
    std::vector<Instant> s;
    for (int k = 0; k < 1000; ++k) s.push_back(std::round(gen::uniform(rng, -1e4, 1e4)));
    auto sorted = s;
    std::sort(sorted.begin(), sorted.end());
    const std::set<Instant> distinct(s.begin(), s.end());
    CHECK(time_set_aggregate(s, TimeSetAggregate::count) == double(distinct.size()));
    CHECK(time_set_aggregate(s, TimeSetAggregate::min) == sorted.front());
    CHECK(time_set_aggregate(s, TimeSetAggregate::max) == sorted.back());
    CHECK(time_set_aggregate(s, TimeSetAggregate::timespan) == sorted.back() - sorted.front());
}
