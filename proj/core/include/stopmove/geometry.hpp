#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace stopmove {

struct Point {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point&, const Point&) = default;
};

struct BoundingBox {
    Point min;
    Point max;

    bool intersects(const BoundingBox& other) const {
        return min.x <= other.max.x && other.min.x <= max.x && min.y <= other.max.y &&
               other.min.y <= max.y;
    }
    BoundingBox inflated(double r) const {
        return {{min.x - r, min.y - r}, {max.x + r, max.y + r}};
    }
    double diagonal() const;
};

using GeometryId = std::string;

enum class GeometryKind { polygon, polyline, point };

/// Closed planar point set: a simple polygon (boundary included), a
/// polyline, or a single point. Immutable once constructed; factories
/// validate and throw ValidationError.
class Geometry {
public:
    /// Accepts an open or explicitly closed ring. The ring is stored open
    /// and counter-clockwise. Rejects rings with fewer than three distinct
    /// vertices, repeated consecutive vertices, zero area, or
    /// self-intersections.
    static Geometry polygon(std::vector<Point> ring);
    static Geometry polyline(std::vector<Point> vertices);
    static Geometry point(Point p);

    GeometryKind kind() const noexcept { return kind_; }
    const std::vector<Point>& vertices() const noexcept { return vertices_; }
    const BoundingBox& bounds() const noexcept { return bounds_; }

    /// Number of boundary segments (ring edges for polygons).
    std::size_t segment_count() const noexcept;
    std::pair<Point, Point> segment(std::size_t i) const;

private:
    Geometry(GeometryKind kind, std::vector<Point> vertices);

    GeometryKind kind_;
    std::vector<Point> vertices_;
    BoundingBox bounds_;
};

/// Closed-set membership. Polygon boundaries count as inside and `tol` is
/// ignored for polygons; for polylines and points a sample within `tol`
/// (Euclidean distance) is on the geometry.
bool contains(const Geometry& g, Point p, double tol = 0.0);

/// Shoelace area of a polygon, 0 for polylines and points.
double area(const Geometry& g);

/// Euclidean distance between two closed point sets (0 when they meet,
/// including when one polygon encloses the other geometry).
double distance(const Geometry& a, const Geometry& b);

/// True iff the closed sets intersect once each 1-/0-dimensional geometry
/// is inflated by its own tolerance. Polygon pairs are tested exactly.
bool conflicts(const Geometry& a, double tol_a, const Geometry& b, double tol_b);

/// Index pairs (i < j) of conflicting geometries, lexicographically ordered.
/// `tols` may be empty (all zero) or hold one tolerance per geometry.
std::vector<std::pair<std::size_t, std::size_t>> conflicting_pairs(
    std::span<const Geometry> geoms, std::span<const double> tols = {});

/// No two geometries share a point; `tol` applies to every 1-/0-dimensional
/// geometry in the list.
bool pairwise_disjoint(std::span<const Geometry> geoms, double tol = 0.0);

/// Uniform grid over the bounding box of the indexed geometries. Every
/// geometry is registered in each cell its bounding box overlaps. The cell
/// side is the median bounding-box diagonal.
class SpatialIndex {
public:
    struct Entry {
        GeometryId id;
        Geometry geometry;
    };

    /// Throws ValidationError on an empty list or duplicate ids.
    explicit SpatialIndex(std::vector<Entry> entries);

    /// Positions (into entries()) of geometries whose bounding box lies
    /// within `radius` of p, ascending and without duplicates.
    std::vector<std::size_t> candidates(Point p, double radius = 0.0) const;

    /// Entries registered in the single cell containing p (empty outside the
    /// grid). Allocation-free; used on the per-sample detection path.
    std::span<const std::size_t> cell_entries(Point p) const;

    /// Ids of the geometries containing p, in index order. Equivalent to a
    /// linear scan over contains().
    std::vector<GeometryId> point_query(Point p, double tol = 0.0) const;

    const std::vector<Entry>& entries() const noexcept { return entries_; }
    std::size_t columns() const noexcept { return columns_; }
    std::size_t rows() const noexcept { return rows_; }
    double cell_size() const noexcept { return cell_; }

private:
    std::pair<std::size_t, std::size_t> clamp_cell(double x, double y) const;

    std::vector<Entry> entries_;
    BoundingBox extent_;
    double cell_ = 1.0;
    std::size_t columns_ = 1;
    std::size_t rows_ = 1;
    std::vector<std::vector<std::size_t>> cells_;
};

SpatialIndex build_index(std::vector<SpatialIndex::Entry> entries);

}  // namespace stopmove
