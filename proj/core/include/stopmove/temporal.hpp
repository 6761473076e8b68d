#pragma once

#include <span>
#include <vector>

namespace stopmove {

using Instant = double;

/// Closed time interval [start, end] with start <= end.
struct Interval {
    Instant start = 0.0;
    Instant end = 0.0;

    /// Throws DomainError unless start <= end and both are finite.
    static Interval make(Instant start, Instant end);

    double length() const noexcept { return end - start; }

    friend bool operator==(const Interval&, const Interval&) = default;
};

/// a ⋖ b: a.start < a.end < b.start < b.end.
bool strictly_precedes(const Interval& a, const Interval& b);

/// t ◁ i: strict interior membership, i.start < t < i.end.
bool inside(Instant t, const Interval& i);

/// Ordered list of intervals, each strictly preceding the next.
class TemporalElement {
public:
    TemporalElement() = default;

    /// Throws DomainError unless the sequence is ⋖-ordered.
    explicit TemporalElement(std::vector<Interval> intervals);

    /// Appends at the end; throws DomainError if the new interval does not
    /// strictly follow the current last one.
    void append(const Interval& i);

    const std::vector<Interval>& intervals() const noexcept { return intervals_; }
    std::size_t size() const noexcept { return intervals_.size(); }
    bool empty() const noexcept { return intervals_.empty(); }

private:
    std::vector<Interval> intervals_;
};

enum class IntervalAggregate { max_l, min_l, avg_l, timespan_l };
enum class TimeSetAggregate { count, max, min, timespan };

/// Length statistics of a non-empty interval set. timespan_l is the span of
/// the union: latest end minus earliest start. Throws DomainError on an
/// empty set.
double interval_aggregate(std::span<const Interval> s, IntervalAggregate kind);

/// The span is read as a set: count ignores repeated instants. count of an
/// empty set is 0; the other kinds throw DomainError on it.
double time_set_aggregate(std::span<const Instant> s, TimeSetAggregate kind);

/// Measure of the union of the intervals (overlaps counted once).
double covered_length(std::span<const Interval> s);

}  // namespace stopmove
