#pragma once

#include "stopmove/geometry.hpp"
#include "stopmove/moft.hpp"
#include "stopmove/olap.hpp"
#include "stopmove/stops.hpp"
#include "stopmove/temporal.hpp"

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace stopmove {

/// Cardinality of an explicitly materialized set.
template <class T>
std::size_t count(const std::set<T>& s) {
    return s.size();
}

/// Distinct elements of a caller-materialized collection (object ids,
/// (oid, t) pairs, MOFT rows).
template <class Range>
std::size_t count_distinct(const Range& r) {
    std::set<typename Range::value_type> s(std::begin(r), std::end(r));
    return s.size();
}

using GeometryLayer = std::map<GeometryId, Geometry>;

/// Sum of polygon areas. DomainError on an unknown id or when two of the
/// selected geometries intersect.
double area_total(const std::set<GeometryId>& gids, const GeometryLayer& layer);

/// Number of distinct objects with a sub-trajectory matching the query.
/// Propagates QueryError from parsing and binding.
std::size_t count_resm(const SmMoft& sm, std::string_view query, const OlapContext& ctx);

enum class AggregateKind {
    count_oids,
    count_pairs,
    count_tuples,
    area_geoms,
    time_count,
    time_max,
    time_min,
    timespan,
    max_l,
    min_l,
    avg_l,
    timespan_l,
    count_resm
};

struct ResmOperand {
    const SmMoft* table = nullptr;
    std::string query;
    const OlapContext* context = nullptr;
};

struct AreaOperand {
    std::set<GeometryId> gids;
    const GeometryLayer* layer = nullptr;
};

using AggregateOperand =
    std::variant<std::set<ObjectId>, std::set<std::pair<ObjectId, Instant>>, std::vector<Sample>,
                 AreaOperand, std::vector<Instant>, std::vector<Interval>, ResmOperand>;

/// One aggregation over one operand. evaluate() throws DomainError when the
/// operand alternative does not fit the kind.
struct AggregateRequest {
    AggregateKind kind = AggregateKind::count_oids;
    AggregateOperand operand;
};

double evaluate(const AggregateRequest& r);

}  // namespace stopmove
