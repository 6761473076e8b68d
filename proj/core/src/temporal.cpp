#include "stopmove/temporal.hpp"

#include "stopmove/error.hpp"

#include <algorithm>
#include <cmath>

namespace stopmove {

Interval Interval::make(Instant start, Instant end) {
    if (!std::isfinite(start) || !std::isfinite(end))
        throw DomainError("interval bounds must be finite");
    if (start > end) throw DomainError("interval start exceeds end");
    return {start, end};
}

bool strictly_precedes(const Interval& a, const Interval& b) {
    return a.start < a.end && a.end < b.start && b.start < b.end;
}

bool inside(Instant t, const Interval& i) { return i.start < t && t < i.end; }

TemporalElement::TemporalElement(std::vector<Interval> intervals) {
    intervals_.reserve(intervals.size());
    for (const Interval& i : intervals) append(i);
}

void TemporalElement::append(const Interval& i) {
    if (!intervals_.empty() && !strictly_precedes(intervals_.back(), i))
        throw DomainError("temporal element intervals must strictly precede each other");
    intervals_.push_back(i);
}

double interval_aggregate(std::span<const Interval> s, IntervalAggregate kind) {
    if (s.empty()) throw DomainError("interval aggregate over an empty set");
    double max_len = s.front().length();
    double min_len = max_len;
    double sum = 0.0;
    Instant first = s.front().start;
    Instant last = s.front().end;
    for (const Interval& i : s) {
        max_len = std::max(max_len, i.length());
        min_len = std::min(min_len, i.length());
        sum += i.length();
        first = std::min(first, i.start);
        last = std::max(last, i.end);
    }
    switch (kind) {
        case IntervalAggregate::max_l: return max_len;
        case IntervalAggregate::min_l: return min_len;
        case IntervalAggregate::avg_l: return sum / double(s.size());
        case IntervalAggregate::timespan_l: return last - first;
    }
    return 0.0;
}

double time_set_aggregate(std::span<const Instant> s, TimeSetAggregate kind) {
    if (kind == TimeSetAggregate::count) {
        std::vector<Instant> distinct(s.begin(), s.end());
        std::sort(distinct.begin(), distinct.end());
        return double(std::unique(distinct.begin(), distinct.end()) - distinct.begin());
    }
    if (s.empty()) throw DomainError("time aggregate over an empty set");
    const auto [lo, hi] = std::minmax_element(s.begin(), s.end());
    switch (kind) {
        case TimeSetAggregate::max: return *hi;
        case TimeSetAggregate::min: return *lo;
        case TimeSetAggregate::timespan: return *hi - *lo;
        case TimeSetAggregate::count: break;
    }
    return 0.0;
}

double covered_length(std::span<const Interval> s) {
    std::vector<Interval> sorted(s.begin(), s.end());
    std::sort(sorted.begin(), sorted.end(),
              [](const Interval& a, const Interval& b) { return a.start < b.start; });
    double total = 0.0;
    std::size_t k = 0;
    while (k < sorted.size()) {
        Instant lo = sorted[k].start;
        Instant hi = sorted[k].end;
        for (++k; k < sorted.size() && sorted[k].start <= hi; ++k) hi = std::max(hi, sorted[k].end);
        total += hi - lo;
    }
    return total;
}

}  // namespace stopmove
