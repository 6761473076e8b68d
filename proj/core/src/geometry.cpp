#include "stopmove/geometry.hpp"

#include "stopmove/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

namespace stopmove {

namespace {

double orient(Point a, Point b, Point c) {
    return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
}

int sign(double v) { return (v > 0.0) - (v < 0.0); }

// p is known to be collinear with [a, b].
bool within_box(Point p, Point a, Point b) {
    return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y &&
           p.y <= std::max(a.y, b.y);
}

bool on_segment(Point p, Point a, Point b) { return orient(a, b, p) == 0.0 && within_box(p, a, b); }

// Closed segments, degenerate segments allowed.
bool segments_intersect(Point a, Point b, Point c, Point d) {
    const int d1 = sign(orient(c, d, a));
    const int d2 = sign(orient(c, d, b));
    const int d3 = sign(orient(a, b, c));
    const int d4 = sign(orient(a, b, d));
    if (d1 * d2 < 0 && d3 * d4 < 0) return true;
    if (d1 == 0 && within_box(a, c, d)) return true;
    if (d2 == 0 && within_box(b, c, d)) return true;
    if (d3 == 0 && within_box(c, a, b)) return true;
    if (d4 == 0 && within_box(d, a, b)) return true;
    return false;
}

double point_segment_distance(Point p, Point a, Point b) {
    const double dx = b.x - a.x;
    const double dy = b.y - a.y;
    const double len2 = dx * dx + dy * dy;
    double s = 0.0;
    if (len2 > 0.0) s = std::clamp(((p.x - a.x) * dx + (p.y - a.y) * dy) / len2, 0.0, 1.0);
    return std::hypot(p.x - (a.x + s * dx), p.y - (a.y + s * dy));
}

double segment_distance(Point a, Point b, Point c, Point d) {
    if (segments_intersect(a, b, c, d)) return 0.0;
    return std::min({point_segment_distance(a, c, d), point_segment_distance(b, c, d),
                     point_segment_distance(c, a, b), point_segment_distance(d, a, b)});
}

double signed_area(const std::vector<Point>& ring) {
    double twice = 0.0;
    const std::size_t n = ring.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Point& p = ring[i];
        const Point& q = ring[(i + 1) % n];
        twice += p.x * q.y - q.x * p.y;
    }
    return twice / 2.0;
}

bool finite(Point p) { return std::isfinite(p.x) && std::isfinite(p.y); }

bool ring_is_simple(const std::vector<Point>& ring) {
    const std::size_t n = ring.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Point a = ring[i];
        const Point b = ring[(i + 1) % n];
        // Adjacent edge folding back over this one.
        const Point c = ring[(i + 2) % n];
        if (orient(a, b, c) == 0.0 && (a.x - b.x) * (c.x - b.x) + (a.y - b.y) * (c.y - b.y) > 0.0)
            return false;
        for (std::size_t j = i + 2; j < n; ++j) {
            if (i == 0 && j == n - 1) continue;
            if (segments_intersect(a, b, ring[j], ring[(j + 1) % n])) return false;
        }
    }
    return true;
}

bool polygon_contains(const Geometry& g, Point p) {
    const auto& ring = g.vertices();
    const std::size_t n = ring.size();
    bool inside = false;
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
        const Point a = ring[j];
        const Point b = ring[i];
        if (on_segment(p, a, b)) return true;
        if ((b.y > p.y) != (a.y > p.y)) {
            const double x = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
            if (p.x < x) inside = !inside;
        }
    }
    return inside;
}

bool intersects(const Geometry& a, const Geometry& b) {
    if (!a.bounds().intersects(b.bounds())) return false;
    for (std::size_t i = 0; i < a.segment_count(); ++i) {
        const auto [p, q] = a.segment(i);
        for (std::size_t j = 0; j < b.segment_count(); ++j) {
            const auto [r, s] = b.segment(j);
            if (segments_intersect(p, q, r, s)) return true;
        }
    }
    // No boundary contact: either disjoint or one lies inside a polygon.
    if (a.kind() == GeometryKind::polygon && polygon_contains(a, b.vertices().front())) return true;
    if (b.kind() == GeometryKind::polygon && polygon_contains(b, a.vertices().front())) return true;
    return false;
}

}  // namespace

double BoundingBox::diagonal() const { return std::hypot(max.x - min.x, max.y - min.y); }

Geometry::Geometry(GeometryKind kind, std::vector<Point> vertices)
    : kind_(kind), vertices_(std::move(vertices)) {
    bounds_ = {vertices_.front(), vertices_.front()};
    for (const Point& p : vertices_) {
        bounds_.min.x = std::min(bounds_.min.x, p.x);
        bounds_.min.y = std::min(bounds_.min.y, p.y);
        bounds_.max.x = std::max(bounds_.max.x, p.x);
        bounds_.max.y = std::max(bounds_.max.y, p.y);
    }
}

Geometry Geometry::polygon(std::vector<Point> ring) {
    if (ring.size() >= 2 && ring.front() == ring.back()) ring.pop_back();
    if (ring.size() < 3) throw ValidationError("polygon needs at least 3 vertices");
    for (std::size_t i = 0; i < ring.size(); ++i) {
        if (!finite(ring[i])) throw ValidationError("polygon has a non-finite coordinate");
        if (ring[i] == ring[(i + 1) % ring.size()])
            throw ValidationError("polygon has repeated consecutive vertices");
    }
    const double a = signed_area(ring);
    if (a == 0.0) throw ValidationError("polygon is degenerate (zero area)");
    if (!ring_is_simple(ring)) throw ValidationError("polygon ring self-intersects");
    if (a < 0.0) std::reverse(ring.begin(), ring.end());
    return Geometry(GeometryKind::polygon, std::move(ring));
}

Geometry Geometry::polyline(std::vector<Point> vertices) {
    if (vertices.size() < 2) throw ValidationError("polyline needs at least 2 vertices");
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        if (!finite(vertices[i])) throw ValidationError("polyline has a non-finite coordinate");
        if (i > 0 && vertices[i] == vertices[i - 1])
            throw ValidationError("polyline has a zero-length segment");
    }
    return Geometry(GeometryKind::polyline, std::move(vertices));
}

Geometry Geometry::point(Point p) {
    if (!finite(p)) throw ValidationError("point has a non-finite coordinate");
    return Geometry(GeometryKind::point, {p});
}

std::size_t Geometry::segment_count() const noexcept {
    switch (kind_) {
        case GeometryKind::polygon: return vertices_.size();
        case GeometryKind::polyline: return vertices_.size() - 1;
        case GeometryKind::point: return 1;
    }
    return 0;
}

std::pair<Point, Point> Geometry::segment(std::size_t i) const {
    if (kind_ == GeometryKind::point) return {vertices_[0], vertices_[0]};
    return {vertices_[i], vertices_[(i + 1) % vertices_.size()]};
}

bool contains(const Geometry& g, Point p, double tol) {
    switch (g.kind()) {
        case GeometryKind::polygon:
            if (p.x < g.bounds().min.x || p.x > g.bounds().max.x || p.y < g.bounds().min.y ||
                p.y > g.bounds().max.y)
                return false;
            return polygon_contains(g, p);
        case GeometryKind::polyline:
            for (std::size_t i = 0; i < g.segment_count(); ++i) {
                const auto [a, b] = g.segment(i);
                if (tol == 0.0 ? on_segment(p, a, b) : point_segment_distance(p, a, b) <= tol)
                    return true;
            }
            return false;
        case GeometryKind::point:
            return std::hypot(p.x - g.vertices()[0].x, p.y - g.vertices()[0].y) <= tol;
    }
    return false;
}

double area(const Geometry& g) {
    if (g.kind() != GeometryKind::polygon) return 0.0;
    return std::abs(signed_area(g.vertices()));
}

double distance(const Geometry& a, const Geometry& b) {
    if (intersects(a, b)) return 0.0;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < a.segment_count(); ++i) {
        const auto [p, q] = a.segment(i);
        for (std::size_t j = 0; j < b.segment_count(); ++j) {
            const auto [r, s] = b.segment(j);
            best = std::min(best, segment_distance(p, q, r, s));
        }
    }
    return best;
}

bool conflicts(const Geometry& a, double tol_a, const Geometry& b, double tol_b) {
    const double ra = a.kind() == GeometryKind::polygon ? 0.0 : tol_a;
    const double rb = b.kind() == GeometryKind::polygon ? 0.0 : tol_b;
    const double reach = ra + rb;
    if (!a.bounds().inflated(reach).intersects(b.bounds())) return false;
    if (reach == 0.0) return intersects(a, b);
    return distance(a, b) <= reach;
}

std::vector<std::pair<std::size_t, std::size_t>> conflicting_pairs(std::span<const Geometry> geoms,
                                                                   std::span<const double> tols) {
    auto tol_of = [&](std::size_t i) { return tols.empty() ? 0.0 : tols[i]; };
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t i = 0; i < geoms.size(); ++i)
        for (std::size_t j = i + 1; j < geoms.size(); ++j)
            if (conflicts(geoms[i], tol_of(i), geoms[j], tol_of(j))) out.emplace_back(i, j);
    return out;
}

bool pairwise_disjoint(std::span<const Geometry> geoms, double tol) {
    const std::vector<double> tols(geoms.size(), tol);
    for (std::size_t i = 0; i < geoms.size(); ++i)
        for (std::size_t j = i + 1; j < geoms.size(); ++j)
            if (conflicts(geoms[i], tols[i], geoms[j], tols[j])) return false;
    return true;
}

// ---------------------------------------------------------------------------

namespace {
constexpr std::size_t kMaxAxisCells = 2048;
constexpr std::size_t kMaxCells = std::size_t{1} << 22;
}  // namespace

SpatialIndex::SpatialIndex(std::vector<Entry> entries) : entries_(std::move(entries)) {
    if (entries_.empty()) throw ValidationError("spatial index needs at least one geometry");
    std::set<GeometryId> seen;
    for (const Entry& e : entries_)
        if (!seen.insert(e.id).second) throw ValidationError("duplicate geometry id '" + e.id + "'");

    extent_ = entries_.front().geometry.bounds();
    std::vector<double> diagonals;
    diagonals.reserve(entries_.size());
    for (const Entry& e : entries_) {
        const BoundingBox& b = e.geometry.bounds();
        extent_.min.x = std::min(extent_.min.x, b.min.x);
        extent_.min.y = std::min(extent_.min.y, b.min.y);
        extent_.max.x = std::max(extent_.max.x, b.max.x);
        extent_.max.y = std::max(extent_.max.y, b.max.y);
        diagonals.push_back(b.diagonal());
    }
    const auto mid = diagonals.begin() + static_cast<std::ptrdiff_t>(diagonals.size() / 2);
    std::nth_element(diagonals.begin(), mid, diagonals.end());
    const double width = extent_.max.x - extent_.min.x;
    const double height = extent_.max.y - extent_.min.y;
    cell_ = *mid;
    if (!(cell_ > 0.0)) cell_ = std::max(width, height) / std::sqrt(double(entries_.size()));
    if (!(cell_ > 0.0)) cell_ = 1.0;
    // Keep the grid bounded for layers with a few tiny geometries spread far apart.
    cell_ = std::max({cell_, width / double(kMaxAxisCells), height / double(kMaxAxisCells)});
    auto axis = [&](double span) { return std::size_t(std::floor(span / cell_)) + 1; };
    columns_ = axis(width);
    rows_ = axis(height);
    while (columns_ * rows_ > kMaxCells) {
        cell_ *= 2.0;
        columns_ = axis(width);
        rows_ = axis(height);
    }

    cells_.assign(columns_ * rows_, {});
    for (std::size_t k = 0; k < entries_.size(); ++k) {
        const BoundingBox& b = entries_[k].geometry.bounds();
        const auto [c0, r0] = clamp_cell(b.min.x, b.min.y);
        const auto [c1, r1] = clamp_cell(b.max.x, b.max.y);
        for (std::size_t r = r0; r <= r1; ++r)
            for (std::size_t c = c0; c <= c1; ++c) cells_[r * columns_ + c].push_back(k);
    }
}

std::pair<std::size_t, std::size_t> SpatialIndex::clamp_cell(double x, double y) const {
    auto to_cell = [&](double v, double origin, std::size_t count) {
        const double f = std::floor((v - origin) / cell_);
        if (!(f > 0.0)) return std::size_t{0};
        return std::min(std::size_t(f), count - 1);
    };
    return {to_cell(x, extent_.min.x, columns_), to_cell(y, extent_.min.y, rows_)};
}

std::vector<std::size_t> SpatialIndex::candidates(Point p, double radius) const {
    const BoundingBox query{{p.x - radius, p.y - radius}, {p.x + radius, p.y + radius}};
    if (!query.intersects(extent_)) return {};
    const auto [c0, r0] = clamp_cell(query.min.x, query.min.y);
    const auto [c1, r1] = clamp_cell(query.max.x, query.max.y);
    if (c0 == c1 && r0 == r1) return cells_[r0 * columns_ + c0];
    std::vector<std::size_t> out;
    for (std::size_t r = r0; r <= r1; ++r)
        for (std::size_t c = c0; c <= c1; ++c) {
            const auto& cell = cells_[r * columns_ + c];
            out.insert(out.end(), cell.begin(), cell.end());
        }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::span<const std::size_t> SpatialIndex::cell_entries(Point p) const {
    if (p.x < extent_.min.x || p.x > extent_.max.x || p.y < extent_.min.y || p.y > extent_.max.y)
        return {};
    const auto [c, r] = clamp_cell(p.x, p.y);
    return cells_[r * columns_ + c];
}

std::vector<GeometryId> SpatialIndex::point_query(Point p, double tol) const {
    std::vector<GeometryId> out;
    for (std::size_t k : candidates(p, tol))
        if (contains(entries_[k].geometry, p, tol)) out.push_back(entries_[k].id);
    return out;
}

SpatialIndex build_index(std::vector<SpatialIndex::Entry> entries) {
    return SpatialIndex(std::move(entries));
}

}  // namespace stopmove
