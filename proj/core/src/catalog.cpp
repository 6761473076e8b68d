#include "stopmove/catalog.hpp"

#include "stopmove/error.hpp"

#include <json.hpp>

#include <fstream>
#include <istream>

namespace stopmove {

namespace {

using nlohmann::json;

struct Parts {
    OlapContext olap;
    std::vector<PoI> pois;
    std::vector<std::string> problems;
};

const json& required(const json& j, const char* key, const std::string& where) {
    if (!j.is_object() || !j.contains(key))
        throw ParseError(where + ": missing key '" + std::string(key) + "'");
    return j.at(key);
}

Point point_of(const json& j) {
    if (!j.is_array() || j.size() != 2) throw ParseError("coordinate must be [x, y]");
    return {j.at(0).get<double>(), j.at(1).get<double>()};
}

Geometry geometry_of(const json& j, const std::string& where) {
    const std::string type = required(j, "type", where).get<std::string>();
    const json& coords = required(j, "coordinates", where);
    if (type == "point") return Geometry::point(point_of(coords));
    if (!coords.is_array()) throw ParseError(where + ": coordinates must be an array");
    std::vector<Point> pts;
    for (const json& c : coords) pts.push_back(point_of(c));
    if (type == "polygon") return Geometry::polygon(std::move(pts));
    if (type == "polyline") return Geometry::polyline(std::move(pts));
    throw ParseError(where + ": unknown geometry type '" + type + "'");
}

ValueKind value_kind_of(const json& j, const std::string& where) {
    const std::string k = j.get<std::string>();
    if (k == "text") return ValueKind::text;
    if (k == "number") return ValueKind::number;
    throw ParseError(where + ": attribute kind must be 'text' or 'number'");
}

Value value_of(const json& j, const std::string& where) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) return j.get<std::string>();
    throw ParseError(where + ": attribute values must be strings or numbers");
}

DimensionInstance dimension_of(const json& j) {
    DimensionSchema schema;
    schema.name = required(j, "name", "dimension").get<std::string>();
    const std::string where = "dimension " + schema.name;
    schema.alias = j.value("alias", std::string());
    schema.levels = required(j, "levels", where).get<std::vector<std::string>>();
    if (j.contains("edges"))
        for (const json& e : j.at("edges")) {
            if (!e.is_array() || e.size() != 2)
                throw ParseError(where + ": edges must be [child, parent] pairs");
            schema.edges.emplace_back(e.at(0).get<std::string>(), e.at(1).get<std::string>());
        }
    if (j.contains("attributes"))
        for (const auto& [level, attrs] : j.at("attributes").items())
            for (const auto& [name, kind] : attrs.items())
                schema.attributes[level].push_back({name, value_kind_of(kind, where)});

    MemberSets members;
    for (const auto& [level, ms] : required(j, "members", where).items())
        for (const json& m : ms) members[level].insert(m.get<std::string>());

    RollupMaps rollups;
    if (j.contains("rollups"))
        for (const json& r : j.at("rollups")) {
            auto key = std::make_pair(required(r, "from", where).get<std::string>(),
                                      required(r, "to", where).get<std::string>());
            rollups[key] = required(r, "map", where).get<std::map<std::string, std::string>>();
        }

    AttributeValues values;
    if (j.contains("values"))
        for (const auto& [level, attrs] : j.at("values").items())
            for (const auto& [attr, per_member] : attrs.items())
                for (const auto& [member, v] : per_member.items())
                    values[level][attr][member] = value_of(v, where);

    return DimensionInstance(std::move(schema), std::move(members), std::move(rollups),
                             std::move(values));
}

TimeDimension time_of(const json& j, std::vector<std::string>& problems) {
    TimeDimension td;
    if (j.is_null()) return td;
    for (const json& c : required(j, "categories", "time")) {
        const std::string name = required(c, "name", "time category").get<std::string>();
        const std::string where = "time category " + name;
        const std::string kind = required(c, "kind", where).get<std::string>();
        TimeCategory category;
        if (kind == "ranges") {
            RangeCategory r;
            r.period = required(c, "period", where).get<double>();
            for (const json& tr : required(c, "ranges", where))
                r.ranges.push_back({required(tr, "label", where).get<std::string>(),
                                    required(tr, "start", where).get<double>(),
                                    required(tr, "end", where).get<double>()});
            category = std::move(r);
        } else if (kind == "cycle") {
            CycleCategory cy;
            cy.unit = required(c, "unit", where).get<double>();
            cy.offset = c.value("offset", 0.0);
            cy.labels = required(c, "labels", where).get<std::vector<std::string>>();
            category = std::move(cy);
        } else {
            throw ParseError(where + ": kind must be 'ranges' or 'cycle'");
        }
        try {
            td.add_category(name, std::move(category));
        } catch (const ValidationError& e) {
            problems.push_back(e.what());
        }
    }
    return td;
}

Parts parts_of(const json& doc) {
    if (!doc.is_object()) throw ParseError("catalog must be a JSON object");
    Parts p;
    for (const json& d : required(doc, "dimensions", "catalog")) {
        try {
            p.olap.add_dimension(dimension_of(d));
        } catch (const ValidationError& e) {
            p.problems.push_back(e.what());
        }
    }
    for (const json& a : required(doc, "alpha", "catalog")) {
        try {
            p.olap.add_alpha(AlphaMapping(a.value("layer", std::string("L_PoI")),
                                          required(a, "dimension", "alpha").get<std::string>(),
                                          required(a, "map", "alpha")
                                              .get<std::map<std::string, std::string>>()));
        } catch (const ValidationError& e) {
            p.problems.push_back(e.what());
        }
    }
    p.olap.set_time(time_of(doc.contains("time") ? doc.at("time") : json(), p.problems));
    auto olap_problems = p.olap.problems();
    p.problems.insert(p.problems.end(), olap_problems.begin(), olap_problems.end());

    bool geometries_ok = true;
    for (const json& j : required(doc, "pois", "catalog")) {
        const std::string pid = required(j, "pid", "poi").get<std::string>();
        const std::string where = "PoI '" + pid + "'";
        try {
            p.pois.push_back({pid, required(j, "dimension", where).get<std::string>(),
                              required(j, "gid", where).get<std::string>(),
                              geometry_of(required(j, "geometry", where), where),
                              required(j, "delta", where).get<double>(), j.value("tol", 0.0)});
        } catch (const ValidationError& e) {
            p.problems.push_back(where + ": " + e.what());
            geometries_ok = false;
        }
    }
    if (geometries_ok) {
        auto pia_problems = Pia::problems(p.pois);
        p.problems.insert(p.problems.end(), pia_problems.begin(), pia_problems.end());
    }

    std::set<GeometryId> poi_gids;
    for (const PoI& poi : p.pois) {
        poi_gids.insert(poi.geometry_id);
        const DimensionInstance* d = p.olap.find_dimension(poi.dimension);
        if (!d) {
            p.problems.push_back("PoI '" + poi.pid + "' names unknown dimension " + poi.dimension);
            continue;
        }
        if (!d->has_member(d->schema().bottom(), poi.pid))
            p.problems.push_back("PoI '" + poi.pid + "' is not a member of " + d->schema().name +
                                 "." + d->schema().bottom());
        try {
            const Extent e = p.olap.resolve(poi.geometry_id);
            if (e.member != poi.pid || e.dimension != d->schema().name)
                p.problems.push_back("PoI '" + poi.pid + "': alpha maps geometry '" +
                                     poi.geometry_id + "' to " + e.dimension + "." + e.member);
        } catch (const DomainError&) {
            p.problems.push_back("PoI '" + poi.pid + "': geometry '" + poi.geometry_id +
                                 "' is not in the image of any alpha mapping");
        }
    }
    for (const AlphaMapping& a : p.olap.alphas())
        for (const auto& [member, gid] : a.pairs())
            if (!poi_gids.contains(gid))
                p.problems.push_back("alpha " + a.dimension() + " maps '" + member +
                                     "' to geometry '" + gid + "' which no PoI defines");
    return p;
}

Parts read_parts(std::istream& in) {
    try {
        const json doc = json::parse(in);
        return parts_of(doc);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("catalog is not valid JSON: ") + e.what());
    } catch (const json::exception& e) {
        throw ParseError(std::string("catalog has an unexpected shape: ") + e.what());
    }
}

}  // namespace

GeometryLayer Catalog::layer() const {
    GeometryLayer out;
    for (const PoI& p : pia.pois()) out.emplace(p.geometry_id, p.geometry);
    return out;
}

std::vector<std::string> catalog_problems(std::istream& in) { return read_parts(in).problems; }

Catalog load_catalog(std::istream& in) {
    Parts p = read_parts(in);
    if (!p.problems.empty()) {
        std::string msg = "invalid catalog:";
        for (const auto& line : p.problems) msg += "\n  " + line;
        throw ValidationError(msg);
    }
    return Catalog{std::move(p.olap), Pia(std::move(p.pois))};
}

Catalog load_catalog_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open catalog " + path.string());
    return load_catalog(in);
}

}  // namespace stopmove
