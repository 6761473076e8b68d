#include "generators.hpp"

#include "stopmove/error.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

namespace gen {

double uniform(Rng& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

int uniform_int(Rng& rng, int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

namespace {

bool chance(Rng& rng, double p) { return uniform(rng, 0, 1) < p; }

Geometry random_geometry(Rng& rng, double& tol) {
    const double x = std::round(uniform(rng, 0, 90)), y = std::round(uniform(rng, 0, 90));
    tol = 0.0;
    switch (uniform_int(rng, 0, 4)) {
        case 0:
        case 1: {
            const double w = std::round(uniform(rng, 2, 20)), h = std::round(uniform(rng, 2, 20));
            return Geometry::polygon({{x, y}, {x + w, y}, {x + w, y + h}, {x, y + h}});
        }
        case 2:
            return Geometry::polygon(
                {{x, y}, {x + uniform(rng, 3, 15), y + uniform(rng, -2, 2)},
                 {x + uniform(rng, 0, 5), y + uniform(rng, 3, 15)}});
        case 3:
            tol = chance(rng, 0.3) ? 0.0 : uniform(rng, 0.1, 1.5);
            return Geometry::polyline(
                {{x, y}, {x + uniform(rng, 3, 12), y + uniform(rng, -5, 5)},
                 {x + uniform(rng, 5, 20), y + uniform(rng, 5, 15)}});
        default:
            tol = chance(rng, 0.3) ? 0.0 : uniform(rng, 0.2, 2.0);
            return Geometry::point({x, y});
    }
}

Point near(Rng& rng, const PoI& p) {
    const auto& v = p.geometry.vertices();
    switch (p.geometry.kind()) {
        case GeometryKind::point:
            if (chance(rng, 0.4)) return v[0];
            return {v[0].x + uniform(rng, -1.5, 1.5) * std::max(p.tol, 0.5),
                    v[0].y + uniform(rng, -1.5, 1.5) * std::max(p.tol, 0.5)};
        case GeometryKind::polyline: {
            if (chance(rng, 0.3)) return v[std::size_t(uniform_int(rng, 0, int(v.size()) - 1))];
            const std::size_t s = std::size_t(uniform_int(rng, 0, int(v.size()) - 2));
            const double u = uniform(rng, 0, 1);
            const Point a = v[s], b = v[s + 1];
            const double off = uniform(rng, -1.5, 1.5) * std::max(p.tol, 0.3);
            const double len = std::hypot(b.x - a.x, b.y - a.y);
            return {a.x + u * (b.x - a.x) - off * (b.y - a.y) / len,
                    a.y + u * (b.y - a.y) + off * (b.x - a.x) / len};
        }
        case GeometryKind::polygon: {
            if (chance(rng, 0.2)) return v[std::size_t(uniform_int(rng, 0, int(v.size()) - 1))];
            const auto& bb = p.geometry.bounds();
            return {uniform(rng, bb.min.x - 1, bb.max.x + 1), uniform(rng, bb.min.y - 1, bb.max.y + 1)};
        }
    }
    return v[0];
}

}  // namespace

std::vector<PoI> pia(Rng& rng, int max_pois) {
    const int n = uniform_int(rng, 1, max_pois);
    std::vector<PoI> out;
    int attempts = 0;
    while (int(out.size()) < n && attempts++ < 200) {
        double tol = 0.0;
        std::optional<Geometry> g;
        try {
            g = random_geometry(rng, tol);
        } catch (const ValidationError&) {
            continue;  // degenerate triangle
        }
        const std::string id = "P" + std::to_string(out.size());
        const double delta = chance(rng, 0.5) ? double(uniform_int(rng, 1, 8)) : uniform(rng, 0.3, 8);
        out.push_back({id, "D", id, *g, delta, tol});
        if (!Pia::problems(out).empty()) out.pop_back();
    }
    return out;
}

Trajectory trajectory(Rng& rng, const std::vector<PoI>& pois, int n, const ObjectId& oid) {
    Trajectory tr{oid, {}};
    double t = uniform_int(rng, 0, 5);
    int target = -1;
    for (int i = 0; i < n; ++i) {
        if (pois.empty())
            target = -1;
        else if (!chance(rng, 0.75) || target < 0)
            target = chance(rng, 0.25) ? -1 : uniform_int(rng, 0, int(pois.size()) - 1);
        const Point p = target < 0 ? Point{uniform(rng, 0, 110), uniform(rng, 0, 110)}
                                   : near(rng, pois[std::size_t(target)]);
        tr.samples.push_back({t, p});
        t += chance(rng, 0.8) ? uniform_int(rng, 1, 4) : 0.5;
    }
    return tr;
}

OlapContext resm_context() {
    OlapContext ctx;
    for (const std::string name : {"A", "B", "C", "D"}) {
        DimensionSchema schema;
        schema.name = name;
        schema.levels = {"m"};
        schema.attributes["m"] = {{"w", ValueKind::number}, {"name", ValueKind::text}};
        MemberSets members;
        AttributeValues values;
        for (int k = 0; k < 3; ++k) {
            const std::string m = "x" + std::to_string(k);
            members["m"].insert(m);
            values["m"]["w"][m] = double(k + (name[0] - 'A'));
            values["m"]["name"][m] = "n" + std::to_string(k);
        }
        ctx.add_dimension(DimensionInstance(schema, members, {}, values));
    }
    TimeDimension td;
    td.add_category("tod", RangeCategory{24, {{"N", 0, 6}, {"M", 6, 12}, {"A", 12, 18}, {"E", 18, 24}}});
    td.add_category("dow", CycleCategory{24, 0, {"d0", "d1", "d2", "d3", "d4", "d5", "d6"}});
    ctx.set_time(td);
    return ctx;
}

oracle::TimeGrids resm_time_grids() {
    oracle::TimeGrids g;
    g["tod"] = {24, {0, 6, 12, 18}};
    g["dow"] = {168, {0, 24, 48, 72, 96, 120, 144}};
    return g;
}

namespace {

Condition condition(Rng& rng, int depth) {
    Condition c;
    if (depth > 0 && chance(rng, 0.4)) {
        const int k = uniform_int(rng, 0, 2);
        c.kind = k == 0 ? Condition::Kind::all_of
                        : k == 1 ? Condition::Kind::any_of : Condition::Kind::negation;
        const int arity = c.kind == Condition::Kind::negation ? 1 : 2;
        for (int i = 0; i < arity; ++i) c.operands.push_back(condition(rng, depth - 1));
        return c;
    }
    switch (uniform_int(rng, 0, 2)) {
        case 0:
            c.kind = Condition::Kind::compare;
            c.attribute = "w";
            c.op = CmpOp(uniform_int(rng, 0, 5));
            c.literal = double(uniform_int(rng, 0, 5));
            break;
        case 1:
            c.kind = Condition::Kind::compare;
            c.attribute = "name";
            c.op = chance(rng, 0.5) ? CmpOp::eq : CmpOp::ne;
            c.literal = "n" + std::to_string(uniform_int(rng, 0, 3));
            break;
        default: {
            c.kind = Condition::Kind::time_label;
            if (chance(rng, 0.7)) {
                static const char* labels[] = {"N", "M", "A", "E"};
                c.category = "tod";
                c.label = labels[uniform_int(rng, 0, 3)];
            } else {
                c.category = "dow";
                c.label = "d" + std::to_string(uniform_int(rng, 0, 6));
            }
        }
    }
    return c;
}

}  // namespace

Pattern pattern(Rng& rng, int max_depth, bool with_conditions) {
    if (max_depth <= 1 || chance(rng, 0.3)) {
        const int k = uniform_int(rng, 0, 9);
        if (k == 0) return Pattern::epsilon();
        if (k == 1) return Pattern::wildcard();
        std::string dim(1, char('A' + uniform_int(rng, 0, 3)));
        if (with_conditions && chance(rng, 0.6)) return Pattern::atom(dim, condition(rng, 2));
        return Pattern::atom(dim);
    }
    if (chance(rng, 0.3)) return Pattern::star(pattern(rng, max_depth - 1, with_conditions));
    std::vector<Pattern> parts;
    const int n = uniform_int(rng, 2, 3);
    for (int i = 0; i < n; ++i) parts.push_back(pattern(rng, max_depth - 1, with_conditions));
    return Pattern::concat(std::move(parts));
}

std::vector<StopEvent> stop_sequence(Rng& rng, int max_len) {
    const int n = uniform_int(rng, 0, max_len);
    std::vector<StopEvent> out;
    double t = uniform(rng, 0, 48);
    for (int i = 0; i < n; ++i) {
        const std::string dim(1, char('A' + uniform_int(rng, 0, 3)));
        const std::string member = "x" + std::to_string(uniform_int(rng, 0, 2));
        const double len = chance(rng, 0.2) ? double(uniform_int(rng, 1, 30)) : uniform(rng, 0.2, 30);
        const Interval iv{t, t + len};
        out.push_back({dim + member, member, dim, dim, iv});
        t = iv.end + uniform(rng, 0.1, 20);
    }
    return out;
}

std::vector<PoI> grid_pia() {
    std::vector<PoI> out;
    for (int i = 0; i < 10; ++i)
        for (int j = 0; j < 10; ++j) {
            const double x = 20.0 * i, y = 20.0 * j;
            const std::string id = "G" + std::to_string(i) + "_" + std::to_string(j);
            out.push_back({id, "D", id,
                           Geometry::polygon({{x, y}, {x + 10, y}, {x + 10, y + 10}, {x, y + 10}}),
                           5.0, 0.0});
        }
    return out;
}

std::vector<Trajectory> grid_trajectories(Rng& rng, std::size_t total) {
    std::vector<Trajectory> out;
    std::size_t made = 0;
    while (made < total) {
        Trajectory tr{"T" + std::to_string(out.size()), {}};
        const std::size_t n = std::min<std::size_t>(1000, total - made);
        tr.samples.reserve(n);
        double t = 0;
        Point p{uniform(rng, 0, 200), uniform(rng, 0, 200)};
        int dwell = 0;
        for (std::size_t k = 0; k < n; ++k) {
            if (dwell > 0) {
                --dwell;
                p = {p.x + uniform(rng, -0.2, 0.2), p.y + uniform(rng, -0.2, 0.2)};
            } else if (chance(rng, 0.05)) {
                p = {20.0 * uniform_int(rng, 0, 9) + uniform(rng, 2, 8),
                     20.0 * uniform_int(rng, 0, 9) + uniform(rng, 2, 8)};
                dwell = uniform_int(rng, 3, 30);
            } else {
                p = {std::clamp(p.x + uniform(rng, -3, 3), 0.0, 200.0),
                     std::clamp(p.y + uniform(rng, -3, 3), 0.0, 200.0)};
            }
            tr.samples.push_back({t, p});
            t += 1.0;
        }
        made += n;
        out.push_back(std::move(tr));
    }
    return out;
}

}  // namespace gen
