#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>

#include <json.hpp>

#include "conductor/harness.hpp"

namespace conductor {

using json = nlohmann::ordered_json;

namespace {

json id_list(const IdSet& s) { return json(s.ids()); }

IdSet id_set_from(const json& j, std::size_t universe, const char* field) {
    if (!j.is_array()) throw GameError(ErrorKind::parse_error, std::string(field) + " must be a list of ids");
    IdSet out(universe);
    std::size_t previous = 0;
    bool first = true;
    for (const auto& v : j) {
        const auto id = v.get<std::size_t>();
        if (id >= universe)
            throw GameError(ErrorKind::out_of_range_id, std::string(field) + " id " + std::to_string(id) +
                                                            " out of range");
        if (!first && id <= previous)
            throw GameError(ErrorKind::parse_error, std::string(field) + " must be sorted without duplicates");
        out.insert(id);
        previous = id;
        first = false;
    }
    return out;
}

template <class F>
auto parsing(F&& f) {
    try {
        return f();
    } catch (const json::exception& e) {
        throw GameError(ErrorKind::parse_error, e.what());
    }
}

std::ofstream open_out(const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw GameError(ErrorKind::io_failure, "cannot open " + path + " for writing");
    return os;
}

void finish(std::ofstream& os, const std::string& path) {
    os.flush();
    if (!os) throw GameError(ErrorKind::io_failure, "failed writing " + path);
}

std::string format_double(double x) {
    std::ostringstream os;
    os << std::setprecision(17) << x;
    return os.str();
}

}  // namespace

void write_trace(std::ostream& os, const GameTrace& trace) {
    const auto& p = trace.params;
    json j;
    j["format"] = "conductor-trace";
    j["version"] = 1;
    j["params"] = {{"n", p.n},
                   {"t", p.t},
                   {"conflict_rule", to_string(p.rule)},
                   {"seed", p.seed},
                   {"strategy", p.strategy},
                   {"adversary", p.adversary},
                   {"max_on", p.shape.max_on},
                   {"max_off", p.shape.max_off}};
    j["truncated"] = trace.truncated;
    json stops = json::array();
    for (std::size_t i = 0; i < trace.stops.size(); ++i) {
        const auto& s = trace.stops[i];
        stops.push_back({{"stop_index", i},
                         {"on_set", id_list(s.request.on_set)},
                         {"off_set", id_list(s.request.off_set)},
                         {"decision", to_string(s.decision)}});
    }
    j["stops"] = std::move(stops);
    j["final"] = {{"stops_played", trace.final.stops_played}, {"unhappiness", trace.final.unhappiness}};
    os << j.dump(1) << '\n';
}

GameTrace read_trace(std::istream& is) {
    return parsing([&] {
        const auto j = json::parse(is);
        if (j.value("format", "") != "conductor-trace")
            throw GameError(ErrorKind::unknown_format, "not a conductor trace");
        GameTrace trace;
        const auto& p = j.at("params");
        trace.params.n = p.at("n").get<std::size_t>();
        trace.params.t = p.at("t").get<std::size_t>();
        trace.params.rule = conflict_rule_from_string(p.at("conflict_rule").get<std::string>());
        trace.params.seed = p.at("seed").get<std::uint64_t>();
        trace.params.strategy = p.at("strategy").get<std::string>();
        trace.params.adversary = p.at("adversary").get<std::string>();
        trace.params.shape.max_on = p.value("max_on", std::size_t{1});
        trace.params.shape.max_off = p.value("max_off", std::size_t{1});
        trace.truncated = j.value("truncated", false);
        if (trace.params.n == 0) throw GameError(ErrorKind::invalid_parameters, "trace has n = 0");

        const auto& stops = j.at("stops");
        for (std::size_t i = 0; i < stops.size(); ++i) {
            const auto& s = stops[i];
            if (s.at("stop_index").get<std::size_t>() != i)
                throw GameError(ErrorKind::parse_error, "stop_index out of sequence at stop " + std::to_string(i));
            trace.stops.push_back(StopRecord{StopRequest(id_set_from(s.at("on_set"), trace.params.n, "on_set"),
                                                         id_set_from(s.at("off_set"), trace.params.n, "off_set")),
                                             decision_from_string(s.at("decision").get<std::string>())});
        }
        trace.final = replay(trace);
        const auto& fin = j.at("final");
        auto recorded = fin.at("unhappiness").get<std::vector<std::uint32_t>>();
        if (recorded.size() != trace.params.n)
            throw GameError(ErrorKind::parse_error, "final unhappiness has the wrong length");
        trace.final.unhappiness = std::move(recorded);
        return trace;
    });
}

void write_rect_trace(std::ostream& os, const RectTrace& trace) {
    const auto& p = trace.params;
    json j;
    j["format"] = "rectangle-trace";
    j["version"] = 1;
    j["params"] = {{"m_u", p.m_u}, {"m_v", p.m_v}, {"a", p.a}, {"b", p.b}, {"k", p.k}, {"T", p.moves()}};
    json moves = json::array();
    for (std::size_t i = 0; i < trace.moves.size(); ++i) {
        const auto& [r, l] = trace.moves[i];
        moves.push_back(
            {{"move_index", i}, {"u_set", id_list(r.u_set)}, {"v_set", id_list(r.v_set)}, {"label", to_string(l)}});
    }
    j["moves"] = std::move(moves);
    j["final"] = {{"hcount", trace.final.hcount}, {"vcount", trace.final.vcount}};
    os << j.dump(1) << '\n';
}

RectTrace read_rect_trace(std::istream& is) {
    return parsing([&] {
        const auto j = json::parse(is);
        if (j.value("format", "") != "rectangle-trace")
            throw GameError(ErrorKind::unknown_format, "not a rectangle trace");
        RectTrace trace;
        const auto& p = j.at("params");
        trace.params.m_u = p.at("m_u").get<std::size_t>();
        trace.params.m_v = p.at("m_v").get<std::size_t>();
        trace.params.a = p.at("a").get<std::uint32_t>();
        trace.params.b = p.at("b").get<std::uint32_t>();
        trace.params.k = p.at("k").get<std::uint32_t>();
        const auto& moves = j.at("moves");
        for (std::size_t i = 0; i < moves.size(); ++i) {
            const auto& mv = moves[i];
            if (mv.at("move_index").get<std::size_t>() != i)
                throw GameError(ErrorKind::parse_error, "move_index out of sequence at move " + std::to_string(i));
            trace.moves.emplace_back(Rectangle(id_set_from(mv.at("u_set"), trace.params.m_u, "u_set"),
                                               id_set_from(mv.at("v_set"), trace.params.m_v, "v_set")),
                                     rect_label_from_string(mv.at("label").get<std::string>()));
        }
        trace.final = replay(trace);
        return trace;
    });
}

void write_sweep(std::ostream& os, std::span<const SweepRow> rows) {
    os << kSweepHeader << '\n';
    for (const auto& r : rows)
        os << r.t << ',' << r.seed << ',' << r.strategy << ',' << r.adversary << ',' << r.max_unhappiness << ','
           << r.sum_unhappiness << ',' << (r.truncated ? 1 : 0) << '\n';
}

std::vector<SweepRow> read_sweep(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line != kSweepHeader)
        throw GameError(ErrorKind::unknown_format, "sweep table must start with the header \"" +
                                                       std::string(kSweepHeader) + "\"");
    std::vector<SweepRow> rows;
    std::size_t line_no = 1;
    while (std::getline(is, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::stringstream ss(line);
        for (std::string cell; std::getline(ss, cell, ',');) cells.push_back(cell);
        if (cells.size() != 7)
            throw GameError(ErrorKind::parse_error, "line " + std::to_string(line_no) + ": expected 7 columns");
        try {
            SweepRow r;
            r.t = std::stoull(cells[0]);
            r.seed = std::stoull(cells[1]);
            r.strategy = cells[2];
            r.adversary = cells[3];
            r.max_unhappiness = std::stoull(cells[4]);
            r.sum_unhappiness = std::stoull(cells[5]);
            r.truncated = cells[6] == "1";
            rows.push_back(std::move(r));
        } catch (const std::logic_error&) {
            throw GameError(ErrorKind::parse_error, "line " + std::to_string(line_no) + ": malformed number");
        }
    }
    return rows;
}

void write_fit(std::ostream& os, const FitResult& fit) {
    os << "alpha,c,residual,points_used,dropped_zero\n"
       << format_double(fit.alpha) << ',' << format_double(fit.c) << ',' << format_double(fit.residual) << ','
       << fit.points_used << ',' << fit.dropped_zero << '\n';
}

ExportFormat export_format_from_string(std::string_view s) {
    if (s == "trace") return ExportFormat::trace;
    if (s == "table") return ExportFormat::table;
    throw GameError(ErrorKind::unknown_format, "unknown export format \"" + std::string(s) + "\"");
}

void export_to_file(const GameTrace& trace, ExportFormat format, const std::string& path) {
    if (format != ExportFormat::trace) throw GameError(ErrorKind::unknown_format, "traces use the trace format");
    auto os = open_out(path);
    write_trace(os, trace);
    finish(os, path);
}

void export_to_file(const RectTrace& trace, ExportFormat format, const std::string& path) {
    if (format != ExportFormat::trace) throw GameError(ErrorKind::unknown_format, "traces use the trace format");
    auto os = open_out(path);
    write_rect_trace(os, trace);
    finish(os, path);
}

void export_to_file(std::span<const SweepRow> rows, ExportFormat format, const std::string& path) {
    if (format != ExportFormat::table) throw GameError(ErrorKind::unknown_format, "sweeps use the table format");
    auto os = open_out(path);
    write_sweep(os, rows);
    finish(os, path);
}

void export_to_file(const FitResult& fit, ExportFormat format, const std::string& path) {
    if (format != ExportFormat::table) throw GameError(ErrorKind::unknown_format, "fits use the table format");
    auto os = open_out(path);
    write_fit(os, fit);
    finish(os, path);
}

GameTrace import_trace(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw GameError(ErrorKind::io_failure, "cannot open " + path);
    return read_trace(is);
}

std::vector<SweepRow> import_sweep(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw GameError(ErrorKind::io_failure, "cannot open " + path);
    return read_sweep(is);
}

}  // namespace conductor
