#include "cli.hpp"

#include "stopmove/aggregate.hpp"
#include "stopmove/error.hpp"
#include "stopmove/format.hpp"
#include "stopmove/moft.hpp"
#include "stopmove/resm.hpp"
#include "stopmove/smgraph.hpp"

#include <CLI11.hpp>

#include <cctype>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace stopmove::cli {

namespace {

std::ifstream open_input(const std::string& path, const char* what) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError(std::string("cannot open ") + what + " " + path);
    return in;
}

Moft read_moft_file(const std::string& path) {
    auto in = open_input(path, "MOFT");
    return load_moft(in);
}

SmMoft read_sm_moft_file(const std::string& path) {
    auto in = open_input(path, "SM-MOFT");
    return read_sm_moft(in);
}

/// Maps library exceptions onto exit codes.
int guarded(std::ostream& err, const std::function<int()>& body) {
    try {
        return body();
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return exit_io;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return exit_io;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_invalid;
    }
}

std::string_view trim(std::string_view s, std::size_t& offset) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
        s.remove_prefix(1);
        ++offset;
    }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

struct Selection {
    std::map<std::string, std::set<std::string>> filters;  // key -> alternatives

    bool admits(const SmRecord& r, const Catalog& c) const {
        for (const auto& [key, values] : filters) {
            if (key == "oid" && !values.contains(r.oid)) return false;
            if (key == "gid" && !values.contains(r.gid)) return false;
            if (key == "dim") {
                const PoI* p = c.pia.find_geometry(r.gid);
                if (!p) return false;
                const DimensionInstance& d = c.olap.dimension(p->dimension);
                if (!values.contains(d.schema().name) && !values.contains(d.schema().alias))
                    return false;
            }
        }
        return true;
    }
};

Selection parse_selection(std::string_view text, std::size_t offset) {
    Selection sel;
    text = trim(text, offset);
    if (text.empty() || text == "all") return sel;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t comma = text.find(',', pos);
        if (comma == std::string_view::npos) comma = text.size();
        std::size_t at = offset + pos;
        std::string_view item = trim(text.substr(pos, comma - pos), at);
        const std::size_t eq = item.find('=');
        if (eq == std::string_view::npos)
            throw QueryError("expected key=value in selection", at);
        std::size_t key_at = at;
        std::size_t value_at = at + eq + 1;
        const std::string key(trim(item.substr(0, eq), key_at));
        const std::string value(trim(item.substr(eq + 1), value_at));
        if (key != "oid" && key != "gid" && key != "dim")
            throw QueryError("unknown selection key '" + key + "' (use oid, gid or dim)", key_at);
        if (value.empty()) throw QueryError("empty selection value", value_at);
        sel.filters[key].insert(value);
        pos = comma + 1;
    }
    return sel;
}

std::vector<Interval> selected_intervals(const Selection& sel, const Catalog& c,
                                         const SmMoft& sm) {
    std::vector<Interval> out;
    for (const SmRecord& r : sm.records())
        if (sel.admits(r, c)) out.push_back(r.interval);
    return out;
}

Pattern parse_offset(std::string_view text, std::size_t offset) {
    try {
        return parse_pattern(text);
    } catch (const QueryError& e) {
        throw QueryError(e.detail(), offset + e.position());
    }
}

std::string run_aggregate(AggregateKind kind, AggregateOperand operand, std::size_t at) {
    try {
        const double v = evaluate({kind, std::move(operand)});
        return format_number(v);
    } catch (const DomainError& e) {
        throw QueryError(e.what(), at);
    }
}

}  // namespace

std::string evaluate_query(std::string_view expression, const Catalog& catalog,
                           const SmMoft& sm) {
    std::size_t base = 0;
    const std::string_view text = trim(expression, base);
    const std::size_t open = text.find('(');
    if (open == std::string_view::npos || text.empty() || text.back() != ')')
        throw QueryError("expected name(argument)", base);
    std::size_t name_at = base;
    const std::string name(trim(text.substr(0, open), name_at));
    const std::size_t arg_at = base + open + 1;
    const std::string_view arg = text.substr(open + 1, text.size() - open - 2);

    if (name == "count" || name == "oids") {
        const Pattern p = parse_offset(arg, arg_at);
        std::vector<ObjectId> ids;
        try {
            ids = matching_oids(sm, p, catalog.olap);
        } catch (const QueryError& e) {
            throw QueryError(e.detail(), arg_at + e.position());
        }
        if (name == "count") return std::to_string(ids.size());
        std::string out;
        for (const auto& id : ids) out += (out.empty() ? "" : "\n") + id;
        return out;
    }

    static const std::map<std::string, AggregateKind, std::less<>> interval_kinds{
        {"max_l", AggregateKind::max_l},
        {"min_l", AggregateKind::min_l},
        {"avg_l", AggregateKind::avg_l},
        {"timespan_l", AggregateKind::timespan_l}};
    static const std::map<std::string, AggregateKind, std::less<>> instant_kinds{
        {"time_count", AggregateKind::time_count},
        {"time_max", AggregateKind::time_max},
        {"time_min", AggregateKind::time_min},
        {"timespan", AggregateKind::timespan}};

    if (auto it = interval_kinds.find(name); it != interval_kinds.end()) {
        auto intervals = selected_intervals(parse_selection(arg, arg_at), catalog, sm);
        return run_aggregate(it->second, std::move(intervals), name_at);
    }
    if (auto it = instant_kinds.find(name); it != instant_kinds.end()) {
        std::vector<Instant> instants;
        for (const Interval& i : selected_intervals(parse_selection(arg, arg_at), catalog, sm)) {
            instants.push_back(i.start);
            instants.push_back(i.end);
        }
        return run_aggregate(it->second, std::move(instants), name_at);
    }
    if (name == "area") {
        const GeometryLayer layer = catalog.layer();
        AreaOperand operand{{}, &layer};
        std::size_t pos = 0;
        while (pos <= arg.size()) {
            std::size_t comma = arg.find(',', pos);
            if (comma == std::string_view::npos) comma = arg.size();
            std::size_t at = arg_at + pos;
            const std::string gid(trim(arg.substr(pos, comma - pos), at));
            if (gid.empty()) {
                if (arg.find_first_not_of(" \t") == std::string_view::npos) break;
                throw QueryError("empty geometry id", at);
            }
            if (!layer.contains(gid)) throw QueryError("unknown geometry '" + gid + "'", at);
            operand.gids.insert(gid);
            pos = comma + 1;
        }
        return run_aggregate(AggregateKind::area_geoms, std::move(operand), name_at);
    }
    throw QueryError("unknown function '" + name + "'", name_at);
}

int cmd_validate(const std::string& catalog_path, const std::optional<std::string>& moft_path,
                 std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        auto in = open_input(catalog_path, "catalog");
        const auto problems = catalog_problems(in);
        for (const auto& p : problems) err << "error: " << p << '\n';
        if (!problems.empty()) return exit_invalid;
        out << catalog_path << ": ok\n";
        if (moft_path) {
            const Moft m = read_moft_file(*moft_path);
            out << *moft_path << ": ok (" << m.object_count() << " objects, " << m.sample_count()
                << " samples)\n";
        }
        return exit_ok;
    });
}

int cmd_detect(const std::string& catalog_path, const std::string& moft_path,
               const std::optional<std::string>& out_path, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const Catalog c = load_catalog_file(catalog_path);
        const SmMoft sm = build_sm_moft(read_moft_file(moft_path), c.pia);
        if (!out_path) {
            write_sm_moft(out, sm);
            return exit_ok;
        }
        std::ostringstream buf;
        write_sm_moft(buf, sm);
        std::ofstream file(*out_path, std::ios::binary | std::ios::trunc);
        if (!file) throw IoError("cannot write " + *out_path);
        file << buf.str();
        if (!file.flush()) throw IoError("cannot write " + *out_path);
        return exit_ok;
    });
}

int cmd_graph(const std::string& catalog_path, const std::string& smmoft_path,
              const std::string& oid, bool collapse, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const Catalog c = load_catalog_file(catalog_path);
        const SmMoft sm = read_sm_moft_file(smmoft_path);
        if (!sm.has_oid(oid)) throw DomainError("unknown object '" + oid + "'");
        const SmGraph g = build_sm_graph(sm, oid, c.olap);
        out << (collapse ? export_dot(to_asm(g)) : export_dot(g));
        return exit_ok;
    });
}

int cmd_query(const std::string& catalog_path, const std::string& smmoft_path,
              const std::string& expression, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const Catalog c = load_catalog_file(catalog_path);
        const SmMoft sm = read_sm_moft_file(smmoft_path);
        const std::string result = evaluate_query(expression, c, sm);
        out << result;
        if (!result.empty()) out << '\n';
        return exit_ok;
    });
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Stops and moves analysis over moving object fact tables", "stopmove"};
    app.require_subcommand(1);

    std::string catalog;
    std::string moft;
    std::optional<std::string> moft_opt;
    std::optional<std::string> out_path;
    std::string smmoft;
    std::string oid;
    std::string expression;
    bool collapse = false;

    auto* validate = app.add_subcommand("validate", "Check a catalog and optionally a MOFT");
    validate->add_option("--catalog", catalog, "Catalog JSON")->required();
    validate->add_option("--moft", moft_opt, "MOFT CSV (oid,t,x,y)");

    auto* detect = app.add_subcommand("detect", "Compute the SM-MOFT of a MOFT");
    detect->add_option("--catalog", catalog, "Catalog JSON")->required();
    detect->add_option("--moft", moft, "MOFT CSV (oid,t,x,y)")->required();
    detect->add_option("--out,-o", out_path, "Output CSV (default: standard output)");

    auto* graph = app.add_subcommand("graph", "Print the SM-Graph of one object as Graphviz");
    graph->add_option("--catalog", catalog, "Catalog JSON")->required();
    graph->add_option("--smmoft", smmoft, "SM-MOFT CSV (oid,gid,ts,tf)")->required();
    graph->add_flag("--asm", collapse, "Merge nodes by dimension label");
    graph->add_option("oid", oid, "Object identifier")->required();

    auto* query = app.add_subcommand("query", "Evaluate a count, oids or aggregate expression");
    query->add_option("--catalog", catalog, "Catalog JSON")->required();
    query->add_option("--smmoft", smmoft, "SM-MOFT CSV (oid,gid,ts,tf)")->required();
    query->add_option("expression", expression, "e.g. 'count(H.?.M.?.T)'")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        if (auto* sub = app.get_subcommands().empty() ? &app : app.get_subcommands().front())
            err << sub->help();
        return exit_io;
    }

    if (validate->parsed()) return cmd_validate(catalog, moft_opt, out, err);
    if (detect->parsed()) return cmd_detect(catalog, moft, out_path, out, err);
    if (graph->parsed()) return cmd_graph(catalog, smmoft, oid, collapse, out, err);
    return cmd_query(catalog, smmoft, expression, out, err);
}

}  // namespace stopmove::cli
