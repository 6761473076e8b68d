#include "stopmove/olap.hpp"

#include "stopmove/error.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace stopmove {

ValueKind kind_of(const Value& v) {
    return std::holds_alternative<double>(v) ? ValueKind::number : ValueKind::text;
}

std::string to_string(ValueKind k) { return k == ValueKind::number ? "number" : "text"; }

const AttributeDecl* DimensionSchema::find_attribute(const std::string& level,
                                                     const std::string& attr) const {
    auto it = attributes.find(level);
    if (it == attributes.end()) return nullptr;
    for (const AttributeDecl& d : it->second)
        if (d.name == attr) return &d;
    return nullptr;
}

// ---------------------------------------------------------------------------

DimensionInstance::DimensionInstance(DimensionSchema schema, MemberSets members,
                                     RollupMaps rollups, AttributeValues values)
    : schema_(std::move(schema)),
      members_(std::move(members)),
      rollups_(std::move(rollups)),
      values_(std::move(values)) {
    std::sort(schema_.edges.begin(), schema_.edges.end());
}

const std::set<std::string>& DimensionInstance::members(const std::string& level) const {
    static const std::set<std::string> none;
    auto it = members_.find(level);
    return it == members_.end() ? none : it->second;
}

bool DimensionInstance::has_member(const std::string& level, const std::string& m) const {
    return members(level).contains(m);
}

std::vector<std::vector<std::string>> DimensionInstance::paths(const std::string& from,
                                                               const std::string& to) const {
    std::vector<std::vector<std::string>> out;
    std::vector<std::string> current{from};
    std::function<void(const std::string&)> walk = [&](const std::string& level) {
        if (level == to) {
            out.push_back(current);
            return;
        }
        // Bounded by the number of levels so a cyclic schema cannot recurse forever.
        if (current.size() > schema_.levels.size()) return;
        for (const auto& [child, parent] : schema_.edges) {
            if (child != level) continue;
            current.push_back(parent);
            walk(parent);
            current.pop_back();
        }
    };
    walk(from);
    return out;
}

std::string DimensionInstance::follow(const std::vector<std::string>& path,
                                      const std::string& m) const {
    std::string cur = m;
    for (std::size_t k = 0; k + 1 < path.size(); ++k) {
        auto map = rollups_.find({path[k], path[k + 1]});
        if (map == rollups_.end())
            throw DomainError("no rollup map for " + path[k] + " -> " + path[k + 1]);
        auto it = map->second.find(cur);
        if (it == map->second.end())
            throw DomainError("rollup " + path[k] + " -> " + path[k + 1] + " undefined for '" +
                              cur + "'");
        cur = it->second;
    }
    return cur;
}

std::string DimensionInstance::rollup(const std::string& from, const std::string& to,
                                      const std::string& m) const {
    if (!has_member(from, m))
        throw DomainError("'" + m + "' is not a member of " + schema_.name + "." + from);
    if (from == to) return m;
    const auto all = paths(from, to);
    if (all.empty())
        throw DomainError("no rollup path from " + from + " to " + to + " in " + schema_.name);
    return follow(all.front(), m);
}

const Value& DimensionInstance::attribute(const std::string& level, const std::string& attr,
                                          const std::string& m) const {
    if (!schema_.find_attribute(level, attr))
        throw DomainError("attribute '" + attr + "' is not declared on " + schema_.name + "." +
                          level);
    auto lvl = values_.find(level);
    if (lvl != values_.end()) {
        auto a = lvl->second.find(attr);
        if (a != lvl->second.end()) {
            auto v = a->second.find(m);
            if (v != a->second.end()) return v->second;
        }
    }
    throw DomainError("no value of '" + attr + "' for member '" + m + "' of " + schema_.name +
                      "." + level);
}

std::vector<std::string> DimensionInstance::problems() const {
    std::vector<std::string> out;
    const std::string dim = "dimension " + schema_.name + ": ";
    if (schema_.name.empty()) out.push_back("dimension with empty name");
    if (schema_.levels.empty()) {
        out.push_back(dim + "no levels");
        return out;
    }
    std::set<std::string> levels;
    for (const auto& l : schema_.levels)
        if (!levels.insert(l).second) out.push_back(dim + "duplicate level " + l);
    std::set<std::string> has_child;
    for (const auto& [child, parent] : schema_.edges) {
        if (!levels.contains(child) || !levels.contains(parent)) {
            out.push_back(dim + "edge " + child + " -> " + parent + " names an unknown level");
            continue;
        }
        if (child == parent) out.push_back(dim + "self edge on " + child);
        has_child.insert(parent);
    }
    if (!out.empty()) return out;

    // Acyclicity: Kahn's algorithm over the level graph.
    std::map<std::string, int> indegree;
    for (const auto& l : schema_.levels) indegree[l] = 0;
    for (const auto& e : schema_.edges) ++indegree[e.second];
    std::vector<std::string> ready;
    for (const auto& [l, d] : indegree)
        if (d == 0) ready.push_back(l);
    std::size_t visited = 0;
    while (!ready.empty()) {
        std::string l = ready.back();
        ready.pop_back();
        ++visited;
        for (const auto& [child, parent] : schema_.edges)
            if (child == l && --indegree[parent] == 0) ready.push_back(parent);
    }
    if (visited != schema_.levels.size()) {
        out.push_back(dim + "level hierarchy has a cycle");
        return out;
    }
    for (const auto& l : schema_.levels)
        if (l != schema_.bottom() && !has_child.contains(l))
            out.push_back(dim + "level " + l + " is a second bottom level");
    if (has_child.contains(schema_.bottom()))
        out.push_back(dim + "bottom level " + schema_.bottom() + " has a child level");

    for (const auto& [level, ms] : members_)
        if (!levels.contains(level)) out.push_back(dim + "members listed for unknown level " + level);

    for (const auto& [child, parent] : schema_.edges) {
        auto map = rollups_.find({child, parent});
        for (const auto& m : members(child)) {
            if (map == rollups_.end() || !map->second.contains(m)) {
                out.push_back(dim + "rollup " + child + " -> " + parent + " undefined for '" + m +
                              "'");
                continue;
            }
            if (!has_member(parent, map->second.at(m)))
                out.push_back(dim + "rollup " + child + " -> " + parent + " maps '" + m +
                              "' to unknown member '" + map->second.at(m) + "'");
        }
    }
    for (const auto& [edge, map] : rollups_) {
        if (!std::binary_search(schema_.edges.begin(), schema_.edges.end(), edge))
            out.push_back(dim + "rollup map for undeclared edge " + edge.first + " -> " +
                          edge.second);
        for (const auto& [m, _] : map)
            if (!has_member(edge.first, m))
                out.push_back(dim + "rollup " + edge.first + " -> " + edge.second +
                              " defined on unknown member '" + m + "'");
    }
    if (!out.empty()) return out;

    // Path consistency: every pair of levels joined by several paths must agree.
    for (const auto& from : schema_.levels)
        for (const auto& to : schema_.levels) {
            const auto all = paths(from, to);
            if (all.size() < 2) continue;
            for (const auto& m : members(from)) {
                const std::string first = follow(all.front(), m);
                for (std::size_t k = 1; k < all.size(); ++k)
                    if (follow(all[k], m) != first) {
                        out.push_back(dim + "rollup " + from + " -> " + to +
                                      " is path-inconsistent for '" + m + "'");
                        break;
                    }
            }
        }

    for (const auto& [level, decls] : schema_.attributes) {
        if (!levels.contains(level)) {
            out.push_back(dim + "attributes declared on unknown level " + level);
            continue;
        }
        for (const auto& decl : decls)
            for (const auto& m : members(level)) {
                try {
                    const Value& v = attribute(level, decl.name, m);
                    if (kind_of(v) != decl.kind)
                        out.push_back(dim + "attribute " + level + "." + decl.name + " of '" + m +
                                      "' is not " + to_string(decl.kind));
                } catch (const DomainError&) {
                    out.push_back(dim + "attribute " + level + "." + decl.name +
                                  " has no value for '" + m + "'");
                }
            }
    }
    for (const auto& [level, attrs] : values_)
        for (const auto& [attr, vals] : attrs) {
            if (!schema_.find_attribute(level, attr))
                out.push_back(dim + "values given for undeclared attribute " + level + "." + attr);
            for (const auto& [m, _] : vals)
                if (!has_member(level, m))
                    out.push_back(dim + "attribute " + level + "." + attr +
                                  " given for unknown member '" + m + "'");
        }
    return out;
}

// ---------------------------------------------------------------------------

AlphaMapping::AlphaMapping(std::string layer, std::string dimension,
                           std::map<std::string, GeometryId> map)
    : layer_(std::move(layer)), dimension_(std::move(dimension)), forward_(std::move(map)) {
    for (const auto& [m, gid] : forward_) {
        auto [it, fresh] = inverse_.emplace(gid, m);
        if (!fresh)
            throw ValidationError("alpha " + dimension_ + " -> " + layer_ + " is not injective: '" +
                                  it->second + "' and '" + m + "' both map to geometry '" + gid +
                                  "'");
    }
}

const GeometryId& AlphaMapping::alpha(const std::string& member) const {
    auto it = forward_.find(member);
    if (it == forward_.end())
        throw DomainError("'" + member + "' is not a bottom-level member mapped by alpha " +
                          dimension_ + " -> " + layer_);
    return it->second;
}

const std::string& AlphaMapping::alpha_inverse(const GeometryId& gid) const {
    auto it = inverse_.find(gid);
    if (it == inverse_.end())
        throw DomainError("geometry '" + gid + "' is not in the image of alpha " + dimension_ +
                          " -> " + layer_);
    return it->second;
}

// ---------------------------------------------------------------------------

void TimeDimension::add_category(const std::string& name, TimeCategory category) {
    if (name.empty()) throw ValidationError("time category with empty name");
    if (categories_.contains(name)) throw ValidationError("duplicate time category " + name);
    const std::string where = "time category " + name + ": ";
    Compiled c;
    if (const auto* r = std::get_if<RangeCategory>(&category)) {
        if (!(r->period > 0.0) || !std::isfinite(r->period))
            throw ValidationError(where + "period must be positive");
        std::vector<TimeRange> ranges = r->ranges;
        std::sort(ranges.begin(), ranges.end(),
                  [](const TimeRange& a, const TimeRange& b) { return a.start < b.start; });
        if (ranges.empty()) throw ValidationError(where + "no ranges");
        double expect = 0.0;
        for (const auto& tr : ranges) {
            if (tr.start != expect)
                throw ValidationError(where + "ranges do not partition [0, period) near " +
                                      std::to_string(expect));
            if (!(tr.end > tr.start)) throw ValidationError(where + "empty range " + tr.label);
            c.slots.push_back({tr.label, tr.start, tr.end});
            expect = tr.end;
        }
        if (expect != r->period)
            throw ValidationError(where + "ranges do not cover the whole period");
        c.origin = 0.0;
        c.period = r->period;
    } else {
        const auto& cy = std::get<CycleCategory>(category);
        if (!(cy.unit > 0.0) || !std::isfinite(cy.unit))
            throw ValidationError(where + "unit must be positive");
        if (cy.labels.empty()) throw ValidationError(where + "no labels");
        if (!std::isfinite(cy.offset)) throw ValidationError(where + "offset must be finite");
        for (std::size_t k = 0; k < cy.labels.size(); ++k)
            c.slots.push_back({cy.labels[k], double(k) * cy.unit, double(k + 1) * cy.unit});
        c.origin = cy.offset;
        c.period = cy.unit * double(cy.labels.size());
    }
    categories_.emplace(name, std::move(c));
}

const TimeDimension::Compiled& TimeDimension::find(const std::string& category) const {
    auto it = categories_.find(category);
    if (it == categories_.end()) throw DomainError("undefined time category '" + category + "'");
    return it->second;
}

bool TimeDimension::has_label(const std::string& category, const std::string& label) const {
    auto it = categories_.find(category);
    if (it == categories_.end()) return false;
    return std::any_of(it->second.slots.begin(), it->second.slots.end(),
                       [&](const Slot& s) { return s.label == label; });
}

std::vector<std::string> TimeDimension::category_names() const {
    std::vector<std::string> out;
    for (const auto& [name, _] : categories_) out.push_back(name);
    return out;
}

std::string TimeDimension::time_label(const std::string& category, Instant t) const {
    const Compiled& c = find(category);
    const double u = t - c.origin;
    double r = u - std::floor(u / c.period) * c.period;
    if (r >= c.period || r < 0.0) r = 0.0;
    auto it = std::upper_bound(c.slots.begin(), c.slots.end(), r,
                               [](double v, const Slot& s) { return v < s.start; });
    return std::prev(it)->label;
}

std::vector<Interval> TimeDimension::label_instant_set(const std::string& category,
                                                       const std::string& label,
                                                       const Interval& window) const {
    const Compiled& c = find(category);
    if (!has_label(category, label))
        throw DomainError("time category '" + category + "' has no label '" + label + "'");
    const double k0 = std::floor((window.start - c.origin) / c.period);
    const double k1 = std::floor((window.end - c.origin) / c.period);
    if (k1 - k0 > 1e7) throw DomainError("time window spans too many periods");
    std::vector<Interval> out;
    for (double k = k0; k <= k1; k += 1.0) {
        const double base = c.origin + k * c.period;
        for (const Slot& s : c.slots) {
            if (s.label != label) continue;
            const double lo = std::max(window.start, base + s.start);
            const double hi = std::min(window.end, base + s.end);
            if (!(hi > lo)) continue;
            if (!out.empty() && out.back().end >= lo)
                out.back().end = std::max(out.back().end, hi);
            else
                out.push_back({lo, hi});
        }
    }
    return out;
}

// ---------------------------------------------------------------------------

void OlapContext::add_dimension(DimensionInstance d) {
    const std::string name = d.schema().name;
    const std::string alias = d.schema().alias;
    if (dimensions_.contains(name) || aliases_.contains(name))
        throw ValidationError("duplicate dimension name " + name);
    if (!alias.empty() && alias != name) {
        if (dimensions_.contains(alias) || aliases_.contains(alias))
            throw ValidationError("dimension alias " + alias + " clashes with another dimension");
        aliases_.emplace(alias, name);
    }
    dimensions_.emplace(name, std::move(d));
}

void OlapContext::add_alpha(AlphaMapping a) { alphas_.push_back(std::move(a)); }

const DimensionInstance* OlapContext::find_dimension(const std::string& name_or_alias) const {
    auto it = dimensions_.find(name_or_alias);
    if (it != dimensions_.end()) return &it->second;
    auto al = aliases_.find(name_or_alias);
    if (al != aliases_.end()) return &dimensions_.at(al->second);
    return nullptr;
}

const DimensionInstance& OlapContext::dimension(const std::string& name_or_alias) const {
    if (const auto* d = find_dimension(name_or_alias)) return *d;
    throw DomainError("unknown dimension '" + name_or_alias + "'");
}

Extent OlapContext::resolve(const GeometryId& gid) const {
    for (const AlphaMapping& a : alphas_)
        if (a.owns(gid)) return {a.alpha_inverse(gid), a.dimension()};
    throw DomainError("geometry '" + gid + "' is not owned by any place of interest");
}

std::vector<std::string> OlapContext::problems() const {
    std::vector<std::string> out;
    for (const auto& [_, d] : dimensions_) {
        auto p = d.problems();
        out.insert(out.end(), p.begin(), p.end());
    }
    std::map<GeometryId, std::string> owner;
    for (const AlphaMapping& a : alphas_) {
        const DimensionInstance* d = find_dimension(a.dimension());
        if (!d) {
            out.push_back("alpha for unknown dimension " + a.dimension());
            continue;
        }
        for (const auto& [m, gid] : a.pairs()) {
            if (!d->has_member(d->schema().bottom(), m))
                out.push_back("alpha " + a.dimension() + ": '" + m +
                              "' is not a member of the bottom level " + d->schema().bottom());
            auto [it, fresh] = owner.emplace(gid, a.dimension() + "." + m);
            if (!fresh)
                out.push_back("geometry '" + gid + "' is owned by both " + it->second + " and " +
                              a.dimension() + "." + m);
        }
    }
    return out;
}

}  // namespace stopmove
