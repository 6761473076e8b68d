#include "stopmove/aggregate.hpp"

#include "stopmove/error.hpp"
#include "stopmove/resm.hpp"

#include <tuple>

namespace stopmove {

double area_total(const std::set<GeometryId>& gids, const GeometryLayer& layer) {
    std::vector<const Geometry*> picked;
    std::vector<GeometryId> names;
    for (const GeometryId& gid : gids) {
        auto it = layer.find(gid);
        if (it == layer.end()) throw DomainError("unknown geometry '" + gid + "'");
        picked.push_back(&it->second);
        names.push_back(gid);
    }
    for (std::size_t i = 0; i < picked.size(); ++i)
        for (std::size_t j = i + 1; j < picked.size(); ++j)
            if (conflicts(*picked[i], 0.0, *picked[j], 0.0))
                throw DomainError("geometries '" + names[i] + "' and '" + names[j] +
                                  "' intersect; their total area is not a sum");
    double total = 0.0;
    for (const Geometry* g : picked) total += area(*g);
    return total;
}

std::size_t count_resm(const SmMoft& sm, std::string_view query, const OlapContext& ctx) {
    return matching_oids(sm, parse_pattern(query), ctx).size();
}

namespace {

template <class T>
const T& operand_as(const AggregateRequest& r) {
    if (const T* v = std::get_if<T>(&r.operand)) return *v;
    throw DomainError("aggregate operand does not match its kind");
}

}  // namespace

double evaluate(const AggregateRequest& r) {
    switch (r.kind) {
        case AggregateKind::count_oids:
            return double(count(operand_as<std::set<ObjectId>>(r)));
        case AggregateKind::count_pairs:
            return double(count(operand_as<std::set<std::pair<ObjectId, Instant>>>(r)));
        case AggregateKind::count_tuples: {
            const auto& rows = operand_as<std::vector<Sample>>(r);
            std::set<std::tuple<ObjectId, Instant, double, double>> s;
            for (const Sample& x : rows) s.emplace(x.oid, x.t, x.x, x.y);
            return double(s.size());
        }
        case AggregateKind::area_geoms: {
            const auto& a = operand_as<AreaOperand>(r);
            if (!a.layer) throw DomainError("area aggregate without a geometry layer");
            return area_total(a.gids, *a.layer);
        }
        case AggregateKind::time_count:
            return time_set_aggregate(operand_as<std::vector<Instant>>(r), TimeSetAggregate::count);
        case AggregateKind::time_max:
            return time_set_aggregate(operand_as<std::vector<Instant>>(r), TimeSetAggregate::max);
        case AggregateKind::time_min:
            return time_set_aggregate(operand_as<std::vector<Instant>>(r), TimeSetAggregate::min);
        case AggregateKind::timespan:
            return time_set_aggregate(operand_as<std::vector<Instant>>(r),
                                      TimeSetAggregate::timespan);
        case AggregateKind::max_l:
            return interval_aggregate(operand_as<std::vector<Interval>>(r), IntervalAggregate::max_l);
        case AggregateKind::min_l:
            return interval_aggregate(operand_as<std::vector<Interval>>(r), IntervalAggregate::min_l);
        case AggregateKind::avg_l:
            return interval_aggregate(operand_as<std::vector<Interval>>(r), IntervalAggregate::avg_l);
        case AggregateKind::timespan_l:
            return interval_aggregate(operand_as<std::vector<Interval>>(r),
                                      IntervalAggregate::timespan_l);
        case AggregateKind::count_resm: {
            const auto& q = operand_as<ResmOperand>(r);
            if (!q.table || !q.context) throw DomainError("RESM aggregate without table or context");
            return double(count_resm(*q.table, q.query, *q.context));
        }
    }
    throw DomainError("unknown aggregate kind");
}

}  // namespace stopmove
