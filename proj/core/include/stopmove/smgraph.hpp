#pragma once

#include "stopmove/olap.hpp"
#include "stopmove/stops.hpp"
#include "stopmove/temporal.hpp"

#include <string>
#include <vector>

namespace stopmove {

struct SmNode {
    int number = 0;  ///< unique within the graph, 1-based, in order of first visit
    GeometryId geometry_id;
    std::string extent;     ///< PoI member owning the geometry (alpha inverse)
    std::string dimension;  ///< dimension the PoI belongs to
    std::string label;      ///< dimension alias used by patterns, or its name
    TemporalElement ste;    ///< stop intervals at this node
};

/// Edge created by two temporally consecutive stops; parallel edges are
/// told apart by their interval pair.
struct SmEdge {
    int from = 0;
    int to = 0;
    Interval from_interval;
    Interval to_interval;
};

/// Stops of one trajectory: one node per distinct geometry, one edge per
/// pair of consecutive stops.
struct SmGraph {
    ObjectId oid;
    std::vector<SmNode> nodes;
    std::vector<SmEdge> edges;

    const SmNode& node(int number) const { return nodes.at(std::size_t(number - 1)); }
};

/// One element of an unfolded graph, i.e. one stop in time order.
struct StopEvent {
    GeometryId geometry_id;
    std::string extent;
    std::string dimension;
    std::string label;
    Interval interval;

    friend bool operator==(const StopEvent&, const StopEvent&) = default;
};

struct AsmNode {
    std::string label;
    std::vector<Interval> intervals;  ///< every stop interval under this label, in time order
};

struct AsmEdge {
    std::size_t from = 0;  ///< position in AsmGraph::nodes
    std::size_t to = 0;
    Interval from_interval;
    Interval to_interval;
};

/// SM-Graph with nodes merged by label.
struct AsmGraph {
    ObjectId oid;
    std::vector<AsmNode> nodes;
    std::vector<AsmEdge> edges;
};

/// DomainError when the oid has no rows or a geometry is not owned by any
/// alpha mapping.
SmGraph build_sm_graph(const SmMoft& sm, const ObjectId& oid, const OlapContext& ctx);

/// Stops in time order. Well defined because the intervals of one
/// trajectory never overlap.
std::vector<StopEvent> unfold(const SmGraph& g);

AsmGraph to_asm(const SmGraph& g);

/// Graphviz text. Output depends only on the graph.
std::string export_dot(const SmGraph& g);
std::string export_dot(const AsmGraph& g);

}  // namespace stopmove
