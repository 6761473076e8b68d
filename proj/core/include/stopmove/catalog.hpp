#pragma once

#include "stopmove/aggregate.hpp"
#include "stopmove/olap.hpp"
#include "stopmove/stops.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace stopmove {

/// Application context assembled from one JSON document with top-level
/// keys `dimensions`, `alpha`, `pois` and `time`:
///
///   dimensions: [{name, alias?, levels: [bottom, ...], edges?: [[child, parent]],
///                 attributes?: {level: {attr: "text"|"number"}},
///                 members: {level: [member]}, rollups?: [{from, to, map: {m: parent}}],
///                 values?: {level: {attr: {member: value}}}}]
///   alpha:      [{layer?, dimension, map: {member: gid}}]
///   pois:       [{pid, dimension, gid, delta, tol?,
///                 geometry: {type: "polygon"|"polyline"|"point", coordinates}}]
///   time:       {categories: [{name, kind: "ranges", period, ranges: [{label, start, end}]}
///                           | {name, kind: "cycle", unit, offset?, labels: [label]}]}
struct Catalog {
    OlapContext olap;
    Pia pia;

    GeometryLayer layer() const;
};

/// Every validation problem in the document (empty when it is valid).
/// Throws ParseError when the text is not JSON of the expected shape.
std::vector<std::string> catalog_problems(std::istream& in);

/// Throws ParseError on malformed JSON and ValidationError listing every
/// problem otherwise.
Catalog load_catalog(std::istream& in);

/// IoError when the file cannot be opened.
Catalog load_catalog_file(const std::filesystem::path& path);

}  // namespace stopmove
