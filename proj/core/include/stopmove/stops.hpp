#pragma once

#include "stopmove/geometry.hpp"
#include "stopmove/moft.hpp"
#include "stopmove/temporal.hpp"

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace stopmove {

/// Place of interest: a closed geometry and the minimum duration an object
/// must spend in it for a visit to count as a stop.
struct PoI {
    std::string pid;        ///< bottom-level member of its dimension
    std::string dimension;  ///< e.g. "Hotels"
    GeometryId geometry_id;
    Geometry geometry;
    double delta = 0.0;  ///< minimum duration, same units as t, > 0
    double tol = 0.0;    ///< containment band for polylines and points
};

/// Places of interest of an application: PoIs with pairwise disjoint
/// geometries, unique pids and unique geometry ids. Owns the spatial index
/// used for detection.
class Pia {
public:
    /// Throws ValidationError listing every problem.
    explicit Pia(std::vector<PoI> pois);

    /// Every violated invariant, in a stable order. Overlaps name both PoIs.
    static std::vector<std::string> problems(std::span<const PoI> pois);

    const std::vector<PoI>& pois() const noexcept { return pois_; }
    const SpatialIndex& index() const noexcept { return index_; }
    double max_tol() const noexcept { return max_tol_; }

    /// Position of the PoI whose geometry contains p, if any.
    std::optional<std::size_t> locate(Point p) const;
    const PoI* find_geometry(const GeometryId& gid) const;

private:
    std::vector<PoI> pois_;
    SpatialIndex index_;
    double max_tol_ = 0.0;
};

struct Stop {
    ObjectId oid;
    std::size_t poi = 0;  ///< position in Pia::pois()
    std::size_t first_index = 0;
    std::size_t last_index = 0;
    Interval interval;

    friend bool operator==(const Stop&, const Stop&) = default;
};

enum class MoveKind { between_stops, before_first_stop, after_last_stop, whole_trajectory };

struct Move {
    ObjectId oid;
    MoveKind kind = MoveKind::whole_trajectory;
    std::size_t first_index = 0;
    std::size_t last_index = 0;

    friend bool operator==(const Move&, const Move&) = default;
};

/// Maximal runs of consecutive samples inside one PoI whose duration
/// strictly exceeds the PoI's minimum duration, in temporal order. One
/// point location per sample.
std::vector<Stop> detect_stops(const Trajectory& tr, const Pia& pia);

/// The non-empty sample ranges outside the given stops: before the first
/// stop, between consecutive stops, after the last one; the whole
/// trajectory when there are no stops.
std::vector<Move> detect_moves(const Trajectory& tr, std::span<const Stop> stops);

struct SmRecord {
    ObjectId oid;
    GeometryId gid;
    Interval interval;

    friend bool operator==(const SmRecord&, const SmRecord&) = default;
};

/// Stops-and-moves fact table: (oid, gid, ts, tf) tuples kept sorted by
/// (oid, ts). Per object, intervals are ordered and do not overlap.
class SmMoft {
public:
    SmMoft() = default;

    /// Sorts and validates; throws ValidationError when two intervals of one
    /// object overlap beyond a shared endpoint.
    explicit SmMoft(std::vector<SmRecord> records);

    const std::vector<SmRecord>& records() const noexcept { return records_; }
    std::size_t size() const noexcept { return records_.size(); }
    bool empty() const noexcept { return records_.empty(); }

    /// Distinct object ids, ascending.
    std::vector<ObjectId> oids() const;
    bool has_oid(const ObjectId& oid) const;

    /// The object's rows, ordered by ts (empty if the oid is absent).
    std::span<const SmRecord> slice(const ObjectId& oid) const;

private:
    std::vector<SmRecord> records_;
};

/// One record per detected stop of every trajectory, ordered by (oid, ts).
SmMoft build_sm_moft(const Moft& m, const Pia& pia);

/// CSV with header `oid,gid,ts,tf`; ParseError on malformed rows,
/// ValidationError on overlapping intervals.
SmMoft read_sm_moft(std::istream& in);
void write_sm_moft(std::ostream& out, const SmMoft& sm);

}  // namespace stopmove
