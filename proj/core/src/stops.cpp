#include "stopmove/stops.hpp"

#include "stopmove/error.hpp"
#include "stopmove/format.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <set>

namespace stopmove {

namespace {

std::vector<SpatialIndex::Entry> index_entries(const std::vector<PoI>& pois) {
    std::vector<SpatialIndex::Entry> entries;
    entries.reserve(pois.size());
    for (const PoI& p : pois) entries.push_back({p.geometry_id, p.geometry});
    return entries;
}

std::string join(const std::vector<std::string>& lines) {
    std::string out;
    for (const auto& l : lines) {
        if (!out.empty()) out += "; ";
        out += l;
    }
    return out;
}

const std::vector<PoI>& checked(const std::vector<PoI>& pois) {
    if (auto p = Pia::problems(pois); !p.empty()) throw ValidationError(join(p));
    return pois;
}

}  // namespace

Pia::Pia(std::vector<PoI> pois)
    : pois_(std::move(checked(pois))), index_(index_entries(pois_)) {
    for (const PoI& p : pois_)
        if (p.geometry.kind() != GeometryKind::polygon) max_tol_ = std::max(max_tol_, p.tol);
}

std::vector<std::string> Pia::problems(std::span<const PoI> pois) {
    std::vector<std::string> out;
    if (pois.empty()) out.push_back("PIA has no places of interest");
    std::set<std::string> pids;
    std::set<GeometryId> gids;
    for (const PoI& p : pois) {
        if (p.pid.empty()) out.push_back("PoI with empty pid");
        if (!pids.insert(p.pid).second) out.push_back("duplicate PoI pid '" + p.pid + "'");
        if (!gids.insert(p.geometry_id).second)
            out.push_back("duplicate geometry id '" + p.geometry_id + "'");
        if (!(p.delta > 0.0) || !std::isfinite(p.delta))
            out.push_back("PoI '" + p.pid + "': minimum duration must be a positive number");
        if (!(p.tol >= 0.0) || !std::isfinite(p.tol))
            out.push_back("PoI '" + p.pid + "': tolerance must be non-negative");
    }
    std::vector<Geometry> geoms;
    std::vector<double> tols;
    for (const PoI& p : pois) {
        geoms.push_back(p.geometry);
        tols.push_back(std::isfinite(p.tol) && p.tol > 0.0 ? p.tol : 0.0);
    }
    for (const auto& [i, j] : conflicting_pairs(geoms, tols))
        out.push_back("PoIs '" + pois[i].pid + "' and '" + pois[j].pid +
                      "' have intersecting geometries");
    return out;
}

std::optional<std::size_t> Pia::locate(Point p) const {
    if (max_tol_ == 0.0) {
        for (std::size_t k : index_.cell_entries(p))
            if (contains(pois_[k].geometry, p)) return k;
        return std::nullopt;
    }
    for (std::size_t k : index_.candidates(p, max_tol_))
        if (contains(pois_[k].geometry, p, pois_[k].tol)) return k;
    return std::nullopt;
}

const PoI* Pia::find_geometry(const GeometryId& gid) const {
    for (const PoI& p : pois_)
        if (p.geometry_id == gid) return &p;
    return nullptr;
}

std::vector<Stop> detect_stops(const Trajectory& tr, const Pia& pia) {
    std::vector<Stop> out;
    const auto& s = tr.samples;
    std::optional<std::size_t> run_poi;
    std::size_t run_start = 0;
    auto close_run = [&](std::size_t last) {
        if (!run_poi) return;
        const Interval span{s[run_start].t, s[last].t};
        if (span.length() > pia.pois()[*run_poi].delta)
            out.push_back({tr.oid, *run_poi, run_start, last, span});
    };
    for (std::size_t i = 0; i < s.size(); ++i) {
        const auto here = pia.locate(s[i].position);
        if (here == run_poi) continue;
        if (i > 0) close_run(i - 1);
        run_poi = here;
        run_start = i;
    }
    if (!s.empty()) close_run(s.size() - 1);
    return out;
}

std::vector<Move> detect_moves(const Trajectory& tr, std::span<const Stop> stops) {
    std::vector<Move> out;
    const std::size_t n = tr.samples.size();
    if (n == 0) return out;
    if (stops.empty()) {
        out.push_back({tr.oid, MoveKind::whole_trajectory, 0, n - 1});
        return out;
    }
    if (stops.front().first_index > 0)
        out.push_back({tr.oid, MoveKind::before_first_stop, 0, stops.front().first_index - 1});
    for (std::size_t k = 0; k + 1 < stops.size(); ++k) {
        const std::size_t from = stops[k].last_index + 1;
        const std::size_t to = stops[k + 1].first_index;
        if (from < to) out.push_back({tr.oid, MoveKind::between_stops, from, to - 1});
    }
    if (stops.back().last_index + 1 < n)
        out.push_back({tr.oid, MoveKind::after_last_stop, stops.back().last_index + 1, n - 1});
    return out;
}

// ---------------------------------------------------------------------------

SmMoft::SmMoft(std::vector<SmRecord> records) : records_(std::move(records)) {
    for (const SmRecord& r : records_) {
        if (r.oid.empty() || r.gid.empty()) throw ValidationError("SM-MOFT row with empty id");
        if (!std::isfinite(r.interval.start) || !std::isfinite(r.interval.end) ||
            r.interval.start > r.interval.end)
            throw ValidationError("SM-MOFT row for " + r.oid + " has an invalid interval");
    }
    std::stable_sort(records_.begin(), records_.end(), [](const SmRecord& a, const SmRecord& b) {
        return std::tie(a.oid, a.interval.start, a.interval.end) <
               std::tie(b.oid, b.interval.start, b.interval.end);
    });
    for (std::size_t k = 1; k < records_.size(); ++k) {
        const SmRecord& a = records_[k - 1];
        const SmRecord& b = records_[k];
        if (a.oid == b.oid && a.interval.end > b.interval.start)
            throw ValidationError("object " + a.oid + " has overlapping stops at '" + a.gid +
                                  "' and '" + b.gid + "' (t=" + format_number(b.interval.start) +
                                  ")");
    }
}

std::vector<ObjectId> SmMoft::oids() const {
    std::vector<ObjectId> out;
    for (const SmRecord& r : records_)
        if (out.empty() || out.back() != r.oid) out.push_back(r.oid);
    return out;
}

bool SmMoft::has_oid(const ObjectId& oid) const { return !slice(oid).empty(); }

std::span<const SmRecord> SmMoft::slice(const ObjectId& oid) const {
    auto lo = std::lower_bound(records_.begin(), records_.end(), oid,
                               [](const SmRecord& r, const ObjectId& o) { return r.oid < o; });
    auto hi = std::upper_bound(lo, records_.end(), oid,
                               [](const ObjectId& o, const SmRecord& r) { return o < r.oid; });
    return {lo, hi};
}

SmMoft build_sm_moft(const Moft& m, const Pia& pia) {
    std::vector<SmRecord> records;
    for (const Trajectory& tr : m.trajectories())
        for (const Stop& s : detect_stops(tr, pia))
            records.push_back({s.oid, pia.pois()[s.poi].geometry_id, s.interval});
    return SmMoft(std::move(records));
}

SmMoft read_sm_moft(std::istream& in) {
    std::string line;
    std::size_t lineno = 0;
    bool header = false;
    std::vector<SmRecord> rows;
    while (std::getline(in, line)) {
        ++lineno;
        if (lineno == 1 && line.starts_with("\xEF\xBB\xBF")) line.erase(0, 3);
        auto fields = split_csv_line(line);
        if (fields.size() == 1 && fields[0].empty()) continue;
        if (!header) {
            if (fields != std::vector<std::string>{"oid", "gid", "ts", "tf"})
                throw ParseError("expected header 'oid,gid,ts,tf'", lineno);
            header = true;
            continue;
        }
        if (fields.size() != 4)
            throw ParseError("expected 4 fields, got " + std::to_string(fields.size()), lineno);
        SmRecord r;
        r.oid = fields[0];
        r.gid = fields[1];
        if (r.oid.empty() || r.gid.empty()) throw ParseError("empty identifier", lineno);
        if (!parse_number(fields[2], r.interval.start))
            throw ParseError("bad ts '" + fields[2] + "'", lineno);
        if (!parse_number(fields[3], r.interval.end))
            throw ParseError("bad tf '" + fields[3] + "'", lineno);
        if (r.interval.start > r.interval.end) throw ParseError("ts exceeds tf", lineno);
        rows.push_back(std::move(r));
    }
    if (in.bad()) throw IoError("read error in SM-MOFT stream");
    if (!header) throw ParseError("missing header 'oid,gid,ts,tf'", lineno);
    return SmMoft(std::move(rows));
}

void write_sm_moft(std::ostream& out, const SmMoft& sm) {
    out << "oid,gid,ts,tf\n";
    for (const SmRecord& r : sm.records())
        out << r.oid << ',' << r.gid << ',' << format_number(r.interval.start) << ','
            << format_number(r.interval.end) << '\n';
}

}  // namespace stopmove
