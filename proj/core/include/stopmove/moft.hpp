#pragma once

#include "stopmove/geometry.hpp"
#include "stopmove/temporal.hpp"

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace stopmove {

using ObjectId = std::string;

/// One row of a moving-object fact table.
struct Sample {
    ObjectId oid;
    Instant t = 0.0;
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Sample&, const Sample&) = default;
};

struct TrajectoryPoint {
    Instant t = 0.0;
    Point position;

    friend bool operator==(const TrajectoryPoint&, const TrajectoryPoint&) = default;
};

/// Samples of one object with strictly increasing timestamps.
struct Trajectory {
    ObjectId oid;
    std::vector<TrajectoryPoint> samples;

    friend bool operator==(const Trajectory&, const Trajectory&) = default;
};

/// [first timestamp, last timestamp]; DomainError on an empty trajectory.
Interval time_domain(const Trajectory& tr);

/// Moving Object Fact Table: a set of (oid, t, x, y) samples, grouped per
/// object and kept in time order. Timestamps are strictly increasing per
/// object.
class Moft {
public:
    Moft() = default;

    /// Throws ValidationError on a duplicate (oid, t) or non-finite value.
    explicit Moft(const std::vector<Sample>& samples);

    /// Throws ValidationError on a duplicate (oid, t) or non-finite value.
    void insert(const Sample& s);

    /// One trajectory per object, ordered by oid.
    std::vector<Trajectory> trajectories() const;
    const Trajectory* find(const ObjectId& oid) const;

    std::size_t object_count() const noexcept { return objects_.size(); }
    std::size_t sample_count() const noexcept { return samples_; }
    bool empty() const noexcept { return samples_ == 0; }

private:
    std::map<ObjectId, Trajectory> objects_;
    std::size_t samples_ = 0;
};

/// Reads CSV with header `oid,t,x,y`. Rows may come in any order. Throws
/// ParseError (malformed input, with line number) or ValidationError
/// (duplicate (oid, t), naming the oid, t and line).
Moft load_moft(std::istream& in);

/// Writes the header and one row per sample in (oid, t) order, with
/// round-trip exact numbers.
void write_moft(std::ostream& out, const Moft& m);

}  // namespace stopmove
