#pragma once

#include "stopmove/geometry.hpp"
#include "stopmove/temporal.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace stopmove {

enum class ValueKind { text, number };

using Value = std::variant<std::string, double>;

ValueKind kind_of(const Value& v);
std::string to_string(ValueKind k);

struct AttributeDecl {
    std::string name;
    ValueKind kind = ValueKind::text;
};

/// Levels are listed bottom first; edges run child level -> parent level.
struct DimensionSchema {
    std::string name;
    /// Short label used in query patterns and ASM graphs ("H" for Hotels).
    std::string alias;
    std::vector<std::string> levels;
    std::vector<std::pair<std::string, std::string>> edges;
    std::map<std::string, std::vector<AttributeDecl>> attributes;

    const std::string& bottom() const { return levels.front(); }
    const std::string& label() const { return alias.empty() ? name : alias; }
    const AttributeDecl* find_attribute(const std::string& level, const std::string& attr) const;
};

using MemberSets = std::map<std::string, std::set<std::string>>;
using RollupMap = std::map<std::string, std::string>;
using RollupMaps = std::map<std::pair<std::string, std::string>, RollupMap>;
/// level -> attribute -> member -> value
using AttributeValues =
    std::map<std::string, std::map<std::string, std::map<std::string, Value>>>;

/// A finite dimension: members per level, one rollup map per hierarchy edge,
/// and attribute maps. Construction does not throw; call problems() (the
/// catalog loader does) to get every violated invariant.
class DimensionInstance {
public:
    DimensionInstance(DimensionSchema schema, MemberSets members, RollupMaps rollups,
                      AttributeValues values);

    const DimensionSchema& schema() const noexcept { return schema_; }
    const std::set<std::string>& members(const std::string& level) const;
    bool has_member(const std::string& level, const std::string& m) const;

    /// Composition of edge maps along a path from `from` up to `to`;
    /// identity when from == to. DomainError on a missing path or member.
    std::string rollup(const std::string& from, const std::string& to, const std::string& m) const;

    /// DomainError on an undeclared attribute or unknown member.
    const Value& attribute(const std::string& level, const std::string& attr,
                           const std::string& m) const;

    /// Every level path from `from` to `to` (each path lists its levels).
    std::vector<std::vector<std::string>> paths(const std::string& from,
                                                const std::string& to) const;

    /// Human-readable invariant violations; empty when the instance is
    /// well formed (DAG with unique bottom, total and consistent rollups,
    /// total typed attributes).
    std::vector<std::string> problems() const;

private:
    std::string follow(const std::vector<std::string>& path, const std::string& m) const;

    DimensionSchema schema_;
    MemberSets members_;
    RollupMaps rollups_;
    AttributeValues values_;
};

/// Injective map from bottom-level members of one dimension to geometry ids
/// of one layer.
class AlphaMapping {
public:
    /// Throws ValidationError if two members map to the same geometry.
    AlphaMapping(std::string layer, std::string dimension, std::map<std::string, GeometryId> map);

    const std::string& layer() const noexcept { return layer_; }
    const std::string& dimension() const noexcept { return dimension_; }
    const std::map<std::string, GeometryId>& pairs() const noexcept { return forward_; }

    const GeometryId& alpha(const std::string& member) const;
    const std::string& alpha_inverse(const GeometryId& gid) const;
    bool owns(const GeometryId& gid) const { return inverse_.contains(gid); }

private:
    std::string layer_;
    std::string dimension_;
    std::map<std::string, GeometryId> forward_;
    std::map<GeometryId, std::string> inverse_;
};

struct TimeRange {
    std::string label;
    double start = 0.0;
    double end = 0.0;
};

/// Labels repeating every `period`, each on the half-open range [start, end)
/// of the period; the ranges partition [0, period).
struct RangeCategory {
    double period = 24.0;
    std::vector<TimeRange> ranges;
};

/// labels[k] holds on [offset + k*unit, offset + (k+1)*unit), repeating
/// with period unit * labels.size() (hour of day, day of week).
struct CycleCategory {
    double unit = 1.0;
    double offset = 0.0;
    std::vector<std::string> labels;
};

using TimeCategory = std::variant<RangeCategory, CycleCategory>;

/// Time instants are reals relative to an application epoch; each category
/// maps an instant to a label.
class TimeDimension {
public:
    /// Throws ValidationError on a malformed category or a duplicate name.
    void add_category(const std::string& name, TimeCategory category);

    bool has_category(const std::string& name) const { return categories_.contains(name); }
    bool has_label(const std::string& category, const std::string& label) const;
    std::vector<std::string> category_names() const;

    /// DomainError on an unknown category.
    std::string time_label(const std::string& category, Instant t) const;

    /// Maximal positive-length pieces of `window` on which time_label equals
    /// `label`, ordered and pairwise disjoint. Each piece is closed at its
    /// start and open at its end unless the end is window.end.
    std::vector<Interval> label_instant_set(const std::string& category, const std::string& label,
                                            const Interval& window) const;

private:
    struct Slot {
        std::string label;
        double start;
        double end;
    };
    struct Compiled {
        double origin;
        double period;
        std::vector<Slot> slots;
    };
    const Compiled& find(const std::string& category) const;

    std::map<std::string, Compiled> categories_;
};

/// Where a geometry id lands in the OLAP part.
struct Extent {
    std::string member;
    std::string dimension;
};

/// Finite OLAP context: dimensions, alpha mappings and the time dimension.
class OlapContext {
public:
    void add_dimension(DimensionInstance d);
    void add_alpha(AlphaMapping a);
    void set_time(TimeDimension t) { time_ = std::move(t); }

    /// Lookup by dimension name or alias.
    const DimensionInstance* find_dimension(const std::string& name_or_alias) const;
    const DimensionInstance& dimension(const std::string& name_or_alias) const;
    const std::map<std::string, DimensionInstance>& dimensions() const noexcept {
        return dimensions_;
    }
    const std::vector<AlphaMapping>& alphas() const noexcept { return alphas_; }
    const TimeDimension& time() const noexcept { return time_; }

    /// alpha-inverse across every mapping; DomainError when no mapping owns
    /// the geometry.
    Extent resolve(const GeometryId& gid) const;

    /// Dimension invariants plus alpha checks (mapped members exist in the
    /// bottom level of their dimension, no geometry owned twice).
    std::vector<std::string> problems() const;

private:
    std::map<std::string, DimensionInstance> dimensions_;
    std::map<std::string, std::string> aliases_;
    std::vector<AlphaMapping> alphas_;
    TimeDimension time_;
};

}  // namespace stopmove
