#include "stopmove/moft.hpp"

#include "stopmove/error.hpp"
#include "stopmove/format.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>

namespace stopmove {

Interval time_domain(const Trajectory& tr) {
    if (tr.samples.empty()) throw DomainError("time domain of an empty trajectory");
    return {tr.samples.front().t, tr.samples.back().t};
}

Moft::Moft(const std::vector<Sample>& samples) {
    for (const Sample& s : samples) insert(s);
}

void Moft::insert(const Sample& s) {
    if (!std::isfinite(s.t) || !std::isfinite(s.x) || !std::isfinite(s.y))
        throw ValidationError("non-finite value in sample of object " + s.oid);
    Trajectory& tr = objects_[s.oid];
    tr.oid = s.oid;
    auto pos = std::lower_bound(tr.samples.begin(), tr.samples.end(), s.t,
                                [](const TrajectoryPoint& p, Instant t) { return p.t < t; });
    if (pos != tr.samples.end() && pos->t == s.t)
        throw ValidationError("duplicate timestamp t=" + format_exact(s.t) + " for object " + s.oid);
    tr.samples.insert(pos, {s.t, {s.x, s.y}});
    ++samples_;
}

std::vector<Trajectory> Moft::trajectories() const {
    std::vector<Trajectory> out;
    out.reserve(objects_.size());
    for (const auto& [_, tr] : objects_) out.push_back(tr);
    return out;
}

const Trajectory* Moft::find(const ObjectId& oid) const {
    auto it = objects_.find(oid);
    return it == objects_.end() ? nullptr : &it->second;
}

Moft load_moft(std::istream& in) {
    std::string line;
    std::size_t lineno = 0;
    bool header = false;
    std::vector<std::pair<Sample, std::size_t>> rows;
    while (std::getline(in, line)) {
        ++lineno;
        if (lineno == 1 && line.starts_with("\xEF\xBB\xBF")) line.erase(0, 3);
        auto fields = split_csv_line(line);
        if (fields.size() == 1 && fields[0].empty()) continue;
        if (!header) {
            if (fields != std::vector<std::string>{"oid", "t", "x", "y"})
                throw ParseError("expected header 'oid,t,x,y'", lineno);
            header = true;
            continue;
        }
        if (fields.size() != 4)
            throw ParseError("expected 4 fields, got " + std::to_string(fields.size()), lineno);
        Sample s;
        s.oid = fields[0];
        if (s.oid.empty()) throw ParseError("empty oid", lineno);
        if (!parse_number(fields[1], s.t)) throw ParseError("bad t '" + fields[1] + "'", lineno);
        if (!parse_number(fields[2], s.x)) throw ParseError("bad x '" + fields[2] + "'", lineno);
        if (!parse_number(fields[3], s.y)) throw ParseError("bad y '" + fields[3] + "'", lineno);
        rows.emplace_back(std::move(s), lineno);
    }
    if (in.bad()) throw IoError("read error in MOFT stream");
    if (!header) throw ParseError("missing header 'oid,t,x,y'", lineno);

    // Stable sort keeps the first occurrence ahead of its duplicate for the message.
    std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
        return std::tie(a.first.oid, a.first.t) < std::tie(b.first.oid, b.first.t);
    });
    for (std::size_t k = 1; k < rows.size(); ++k) {
        const auto& [prev, prev_line] = rows[k - 1];
        const auto& [cur, cur_line] = rows[k];
        if (prev.oid == cur.oid && prev.t == cur.t)
            throw ValidationError("line " + std::to_string(cur_line) + ": duplicate timestamp t=" +
                                  format_exact(cur.t) + " for object " + cur.oid +
                                  " (first seen on line " + std::to_string(prev_line) + ")");
    }
    Moft m;
    for (const auto& [s, _] : rows) m.insert(s);
    return m;
}

void write_moft(std::ostream& out, const Moft& m) {
    out << "oid,t,x,y\n";
    for (const Trajectory& tr : m.trajectories())
        for (const TrajectoryPoint& p : tr.samples)
            out << tr.oid << ',' << format_exact(p.t) << ',' << format_exact(p.position.x) << ','
                << format_exact(p.position.y) << '\n';
}

}  // namespace stopmove
