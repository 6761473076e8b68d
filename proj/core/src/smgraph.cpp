#include "stopmove/smgraph.hpp"

#include "stopmove/error.hpp"
#include "stopmove/format.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace stopmove {

namespace {

std::string quoted(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out + '"';
}

std::string interval_text(const Interval& i) {
    return "[" + format_number(i.start) + "," + format_number(i.end) + "]";
}

std::string intervals_text(const std::vector<Interval>& is) {
    std::string out;
    for (const Interval& i : is) {
        if (!out.empty()) out += ' ';
        out += interval_text(i);
    }
    return out;
}

}  // namespace

SmGraph build_sm_graph(const SmMoft& sm, const ObjectId& oid, const OlapContext& ctx) {
    const auto rows = sm.slice(oid);
    if (rows.empty()) throw DomainError("unknown object '" + oid + "'");

    SmGraph g;
    g.oid = oid;
    std::map<GeometryId, int> number_of;
    int previous = 0;
    Interval previous_interval;
    for (const SmRecord& r : rows) {
        auto [it, fresh] = number_of.emplace(r.gid, int(g.nodes.size()) + 1);
        if (fresh) {
            const Extent e = ctx.resolve(r.gid);
            SmNode n;
            n.number = it->second;
            n.geometry_id = r.gid;
            n.extent = e.member;
            n.dimension = e.dimension;
            n.label = ctx.dimension(e.dimension).schema().label();
            g.nodes.push_back(std::move(n));
        }
        SmNode& node = g.nodes[std::size_t(it->second - 1)];
        try {
            node.ste.append(r.interval);
        } catch (const DomainError&) {
            throw DomainError("object '" + oid + "' has stop intervals at '" + r.gid +
                              "' that do not strictly precede each other");
        }
        if (previous != 0) g.edges.push_back({previous, it->second, previous_interval, r.interval});
        previous = it->second;
        previous_interval = r.interval;
    }
    return g;
}

std::vector<StopEvent> unfold(const SmGraph& g) {
    std::vector<StopEvent> out;
    for (const SmNode& n : g.nodes)
        for (const Interval& i : n.ste.intervals())
            out.push_back({n.geometry_id, n.extent, n.dimension, n.label, i});
    std::sort(out.begin(), out.end(), [](const StopEvent& a, const StopEvent& b) {
        return a.interval.start < b.interval.start;
    });
    return out;
}

AsmGraph to_asm(const SmGraph& g) {
    AsmGraph a;
    a.oid = g.oid;
    std::map<std::string, std::size_t> position;
    std::vector<std::size_t> node_to_asm(g.nodes.size());
    for (const SmNode& n : g.nodes) {
        auto [it, fresh] = position.emplace(n.label, a.nodes.size());
        if (fresh) a.nodes.push_back({n.label, {}});
        auto& target = a.nodes[it->second].intervals;
        target.insert(target.end(), n.ste.intervals().begin(), n.ste.intervals().end());
        node_to_asm[std::size_t(n.number - 1)] = it->second;
    }
    for (AsmNode& n : a.nodes)
        std::sort(n.intervals.begin(), n.intervals.end(),
                  [](const Interval& x, const Interval& y) { return x.start < y.start; });
    for (const SmEdge& e : g.edges)
        a.edges.push_back({node_to_asm[std::size_t(e.from - 1)], node_to_asm[std::size_t(e.to - 1)],
                           e.from_interval, e.to_interval});
    return a;
}

std::string export_dot(const SmGraph& g) {
    std::ostringstream out;
    out << "digraph " << quoted(g.oid.empty() ? "sm" : g.oid) << " {\n";
    for (const SmNode& n : g.nodes)
        out << "  n" << n.number << " [label=" << quoted(n.geometry_id)
            << ", extent=" << quoted(n.extent) << ", dimension=" << quoted(n.dimension)
            << ", ste=" << quoted(intervals_text(n.ste.intervals())) << "];\n";
    for (const SmEdge& e : g.edges)
        out << "  n" << e.from << " -> n" << e.to << " [label="
            << quoted(interval_text(e.from_interval) + "->" + interval_text(e.to_interval))
            << "];\n";
    out << "}\n";
    return out.str();
}

std::string export_dot(const AsmGraph& g) {
    std::ostringstream out;
    out << "digraph " << quoted(g.oid.empty() ? "asm" : g.oid) << " {\n";
    for (std::size_t k = 0; k < g.nodes.size(); ++k)
        out << "  a" << k + 1 << " [label=" << quoted(g.nodes[k].label)
            << ", ste=" << quoted(intervals_text(g.nodes[k].intervals)) << "];\n";
    for (const AsmEdge& e : g.edges)
        out << "  a" << e.from + 1 << " -> a" << e.to + 1 << " [label="
            << quoted(interval_text(e.from_interval) + "->" + interval_text(e.to_interval))
            << "];\n";
    out << "}\n";
    return out.str();
}

}  // namespace stopmove
