#pragma once

// CSV readers and writers for graphs, attributes, partitions, bipartite data and session tables.
// Lines starting with '#' and blank lines are skipped; every parse error carries its line number.

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "signet/effectiveness_stats.hpp"
#include "signet/errors.hpp"
#include "signet/sdsm_backbone.hpp"
#include "signet/signed_graph.hpp"

namespace signet::io {

struct CsvRow {
    std::size_t line = 0;
    std::vector<std::string> fields;
};

struct CsvTable {
    std::size_t header_line = 0;
    std::vector<std::string> header;
    std::vector<CsvRow> rows;

    std::optional<std::size_t> column(std::string_view name) const {
        for (std::size_t k = 0; k < header.size(); ++k)
            if (header[k] == name) return k;
        return std::nullopt;
    }

    std::size_t require_column(std::string_view name) const {
        if (auto k = column(name)) return *k;
        throw ParseError(header_line, "missing required column '" + std::string(name) + "'");
    }
};

namespace detail {

inline std::string trim(std::string_view s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

/// Splits one record; supports double-quoted fields with "" escapes.
inline std::vector<std::string> split_record(const std::string& line, std::size_t line_no) {
    std::vector<std::string> out;
    std::string cur;
    bool quoted = false, was_quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char ch = line[i];
        if (quoted) {
            if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                cur += '"';
                ++i;
            } else if (ch == '"') {
                quoted = false;
            } else {
                cur += ch;
            }
        } else if (ch == '"' && trim(cur).empty()) {
            quoted = was_quoted = true;
            cur.clear();
        } else if (ch == ',') {
            out.push_back(was_quoted ? cur : trim(cur));
            cur.clear();
            was_quoted = false;
        } else {
            cur += ch;
        }
    }
    if (quoted) throw ParseError(line_no, "unterminated quoted field");
    out.push_back(was_quoted ? cur : trim(cur));
    return out;
}

} // namespace detail

/// Reads a CSV with a header row. Every data row must have as many fields as the header.
inline CsvTable read_csv(std::istream& in) {
    CsvTable t;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line_no == 1 && line.starts_with("\xEF\xBB\xBF")) line.erase(0, 3);
        const auto stripped = detail::trim(line);
        if (stripped.empty() || stripped.front() == '#') continue;
        auto fields = detail::split_record(line, line_no);
        if (t.header.empty()) {
            t.header = std::move(fields);
            t.header_line = line_no;
            continue;
        }
        if (fields.size() != t.header.size())
            throw ParseError(line_no, "expected " + std::to_string(t.header.size()) + " fields, found " +
                                          std::to_string(fields.size()));
        t.rows.push_back({line_no, std::move(fields)});
    }
    if (t.header.empty()) throw ParseError(0, "no header row found");
    return t;
}

inline std::ifstream open_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open '" + path + "'");
    return in;
}

inline CsvTable read_csv_file(const std::string& path) {
    auto in = open_input(path);
    return read_csv(in);
}

inline std::int64_t parse_int(const std::string& s, std::size_t line, std::string_view what) {
    std::int64_t v = 0;
    std::string_view sv = s;
    if (!sv.empty() && sv.front() == '+') sv.remove_prefix(1);
    const auto [p, ec] = std::from_chars(sv.data(), sv.data() + sv.size(), v);
    if (ec != std::errc() || p != sv.data() + sv.size() || sv.empty())
        throw ParseError(line, std::string(what) + ": '" + s + "' is not an integer");
    return v;
}

inline double parse_double(const std::string& s, std::size_t line, std::string_view what) {
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::logic_error&) {
        throw ParseError(line, std::string(what) + ": '" + s + "' is not a number");
    }
}

// ---------------------------------------------------------------------------
// Signed graphs

/// Header `source,target,sign`, sign in {-1, 1}.
inline SignedGraph read_signed_edge_list(std::istream& in) {
    const auto t = read_csv(in);
    const auto cs = t.require_column("source"), ct = t.require_column("target"), cg = t.require_column("sign");
    std::vector<EdgeRow> rows;
    rows.reserve(t.rows.size());
    for (const auto& r : t.rows) {
        const auto sign = parse_int(r.fields[cg], r.line, "sign");
        if (sign != 1 && sign != -1) throw ParseError(r.line, "sign must be -1 or 1, found '" + r.fields[cg] + "'");
        rows.push_back({r.fields[cs], r.fields[ct], static_cast<int>(sign)});
    }
    if (rows.empty()) throw ParseError(t.header_line, "edge list has no edges");
    try {
        return SignedGraph::from_edge_list(rows);
    } catch (const Error& e) {
        throw ParseError(0, e.what());
    }
}

/// Square matrix: first row and first column hold node ids, cells in {-1, 0, 1}, symmetric, zero diagonal.
inline SignedGraph read_adjacency_csv(std::istream& in) {
    const auto t = read_csv(in);
    const std::vector<std::string> ids(t.header.begin() + 1, t.header.end());
    const std::size_t n = ids.size();
    if (n == 0) throw ParseError(t.header_line, "adjacency matrix has no columns");
    if (t.rows.size() != n)
        throw ParseError(t.header_line, "adjacency matrix is not square: " + std::to_string(n) + " columns, " +
                                            std::to_string(t.rows.size()) + " rows");
    std::vector<std::vector<int>> a(n, std::vector<int>(n));
    for (std::size_t i = 0; i < n; ++i) {
        const auto& r = t.rows[i];
        if (r.fields[0] != ids[i])
            throw ParseError(r.line, "row id '" + r.fields[0] + "' does not match column id '" + ids[i] + "'");
        for (std::size_t j = 0; j < n; ++j) {
            const auto cell = "cell (" + ids[i] + ", " + ids[j] + ")";
            const auto v = parse_int(r.fields[j + 1], r.line, cell);
            if (v < -1 || v > 1) throw ParseError(r.line, cell + " must be -1, 0 or 1");
            a[i][j] = static_cast<int>(v);
        }
        if (a[i][i] != 0) throw ParseError(r.line, "cell (" + ids[i] + ", " + ids[i] + ") on the diagonal must be 0");
    }
    std::vector<SignedEdge> edges;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            if (a[i][j] != a[j][i])
                throw ParseError(t.rows[j].line, "asymmetric cell (" + ids[j] + ", " + ids[i] + "): " +
                                                     std::to_string(a[j][i]) + " but (" + ids[i] + ", " + ids[j] +
                                                     ") is " + std::to_string(a[i][j]));
            if (a[i][j] != 0) edges.push_back({static_cast<NodeIndex>(i), static_cast<NodeIndex>(j), sign_from_int(a[i][j])});
        }
    std::set<std::string> seen;
    for (const auto& id : ids)
        if (!seen.insert(id).second) throw ParseError(t.header_line, "duplicate node id '" + id + "'");
    return SignedGraph::from_edges(ids, edges);
}

/// Dispatches on the header: `source,target,sign` is an edge list, anything else an adjacency matrix.
inline SignedGraph read_graph_file(const std::string& path) {
    auto in = open_input(path);
    std::string first;
    std::streampos start = in.tellg();
    while (std::getline(in, first)) {
        const auto s = detail::trim(first);
        if (!s.empty() && s.front() != '#') break;
    }
    in.clear();
    in.seekg(start);
    const auto header = detail::split_record(first, 0);
    if (std::find(header.begin(), header.end(), "source") != header.end()) return read_signed_edge_list(in);
    return read_adjacency_csv(in);
}

inline void write_signed_edge_list(std::ostream& out, const SignedGraph& g) {
    out << "source,target,sign\n";
    for (const auto& e : g.edges()) out << g.node_id(e.u) << ',' << g.node_id(e.v) << ',' << to_int(e.sign) << '\n';
}

// ---------------------------------------------------------------------------
// Attributes and partitions

/// Header `node,party`; extra columns become metadata. Nodes absent from the graph are errors.
inline NodeAttributes read_attributes(std::istream& in, const SignedGraph& g) {
    const auto t = read_csv(in);
    const auto cn = t.require_column("node"), cp = t.require_column("party");
    NodeAttributes attrs(g.node_count());
    std::vector<char> seen(g.node_count(), 0);
    for (const auto& r : t.rows) {
        const auto idx = g.index_of(r.fields[cn]);
        if (!idx) throw ParseError(r.line, "node '" + r.fields[cn] + "' is not in the graph");
        const auto i = static_cast<std::size_t>(*idx);
        if (seen[i]++) throw ParseError(r.line, "duplicate attribute row for node '" + r.fields[cn] + "'");
        const auto party = parse_party(r.fields[cp]);
        if (!party) throw ParseError(r.line, "unknown party '" + r.fields[cp] + "' (expected D, R or I)");
        attrs.set_party(i, *party);
        for (std::size_t k = 0; k < t.header.size(); ++k)
            if (k != cn && k != cp) attrs.metadata(i)[t.header[k]] = r.fields[k];
    }
    return attrs;
}

inline void write_partition(std::ostream& out, const SignedGraph& g, const Partition& p) {
    require_partition_size(g, p);
    out << "node,coalition\n";
    for (std::size_t i = 0; i < g.node_count(); ++i) out << g.node_id(static_cast<NodeIndex>(i)) << ',' << int{p[i]} << '\n';
}

inline Partition read_partition(std::istream& in, const SignedGraph& g) {
    const auto t = read_csv(in);
    const auto cn = t.require_column("node"), cc = t.require_column("coalition");
    std::vector<std::uint8_t> side(g.node_count(), 0);
    std::vector<char> seen(g.node_count(), 0);
    for (const auto& r : t.rows) {
        const auto idx = g.index_of(r.fields[cn]);
        if (!idx) throw ParseError(r.line, "node '" + r.fields[cn] + "' is not in the graph");
        const auto v = parse_int(r.fields[cc], r.line, "coalition");
        if (v != 0 && v != 1) throw ParseError(r.line, "coalition must be 0 or 1");
        const auto i = static_cast<std::size_t>(*idx);
        if (seen[i]++) throw ParseError(r.line, "duplicate partition row for node '" + r.fields[cn] + "'");
        side[i] = static_cast<std::uint8_t>(v);
    }
    for (std::size_t i = 0; i < g.node_count(); ++i)
        if (!seen[i]) throw ParseError(0, "partition has no row for node '" + g.node_id(static_cast<NodeIndex>(i)) + "'");
    return Partition(std::move(side));
}

// ---------------------------------------------------------------------------
// Bipartite incidence

/// Either `legislator,bill` event rows or a dense 0/1 matrix whose first column holds row ids.
inline BipartiteGraph read_bipartite(std::istream& in) {
    const auto t = read_csv(in);
    const auto cl = t.column("legislator"), cb = t.column("bill");
    if (cl && cb && t.header.size() == 2) {
        std::vector<std::pair<std::string, std::string>> events;
        for (const auto& r : t.rows) {
            if (r.fields[*cl].empty() || r.fields[*cb].empty()) throw ParseError(r.line, "empty identifier");
            events.emplace_back(r.fields[*cl], r.fields[*cb]);
        }
        if (events.empty()) throw ParseError(t.header_line, "no sponsorship rows");
        return BipartiteGraph::from_events(events);
    }
    if (t.header.size() < 2) throw ParseError(t.header_line, "bipartite matrix needs an id column and at least one bill column");
    std::vector<std::string> col_ids(t.header.begin() + 1, t.header.end()), row_ids;
    std::vector<std::vector<int>> cells;
    for (const auto& r : t.rows) {
        row_ids.push_back(r.fields[0]);
        std::vector<int> row;
        for (std::size_t j = 1; j < r.fields.size(); ++j) {
            const auto v = parse_int(r.fields[j], r.line, "cell (" + r.fields[0] + ", " + t.header[j] + ")");
            if (v != 0 && v != 1) throw ParseError(r.line, "cell (" + r.fields[0] + ", " + t.header[j] + ") must be 0 or 1");
            row.push_back(static_cast<int>(v));
        }
        cells.push_back(std::move(row));
    }
    if (cells.empty()) throw ParseError(t.header_line, "bipartite matrix has no rows");
    return BipartiteGraph::from_matrix(cells, row_ids, col_ids);
}

// ---------------------------------------------------------------------------
// Session tables

/// Published derived values that may accompany a session row.
struct TabulatedSession {
    std::optional<std::int64_t> party_control;
    std::optional<double> coalition_control;
    std::optional<double> passage_rate;
};

struct SessionTable {
    std::vector<SessionRecord> records;
    std::vector<TabulatedSession> tabulated;
};

/// Header `session,dems,reps,cc_size,dems_cc,reps_cc,bills,laws` plus optional
/// `party_control,coalition_control,passage_rate` columns.
inline SessionTable read_session_table(std::istream& in) {
    const auto t = read_csv(in);
    const char* required[] = {"session", "dems", "reps", "cc_size", "dems_cc", "reps_cc", "bills", "laws"};
    std::size_t col[8];
    for (int k = 0; k < 8; ++k) col[k] = t.require_column(required[k]);
    const auto opc = t.column("party_control"), occ = t.column("coalition_control"), opr = t.column("passage_rate");
    SessionTable out;
    for (const auto& r : t.rows) {
        std::int64_t v[8];
        for (int k = 0; k < 8; ++k) v[k] = parse_int(r.fields[col[k]], r.line, required[k]);
        try {
            out.records.push_back(make_session_record(v[0], v[1], v[2], v[3], v[4], v[5], v[6], v[7]));
        } catch (const Error& e) {
            throw ParseError(r.line, e.what());
        }
        TabulatedSession tab;
        if (opc && !r.fields[*opc].empty()) tab.party_control = parse_int(r.fields[*opc], r.line, "party_control");
        if (occ && !r.fields[*occ].empty()) tab.coalition_control = parse_double(r.fields[*occ], r.line, "coalition_control");
        if (opr && !r.fields[*opr].empty()) tab.passage_rate = parse_double(r.fields[*opr], r.line, "passage_rate");
        out.tabulated.push_back(tab);
    }
    if (out.records.empty()) throw ParseError(t.header_line, "session table has no rows");
    return out;
}

inline SessionTable read_session_table_file(const std::string& path) {
    auto in = open_input(path);
    return read_session_table(in);
}

// ---------------------------------------------------------------------------
// Published per-network balance rows

struct NetworkRow {
    std::int64_t session = 0;
    std::int64_t year = 0;
    std::int64_t n = 0, m = 0, m_neg = 0, m_pos = 0;
    double density = 0.0, triangle_index = 0.0, normalized_frustration = 0.0;
    std::int64_t frustration_index = 0;
    double lp_bound = 0.0;
};

/// Header `session,year,n,m,density,m_neg,m_pos,T,F,L,Ystar`.
inline std::vector<NetworkRow> read_network_table(std::istream& in) {
    const auto t = read_csv(in);
    const char* names[] = {"session", "year", "n", "m", "density", "m_neg", "m_pos", "T", "F", "L", "Ystar"};
    std::size_t c[11];
    for (int k = 0; k < 11; ++k) c[k] = t.require_column(names[k]);
    std::vector<NetworkRow> out;
    for (const auto& r : t.rows) {
        NetworkRow x;
        x.session = parse_int(r.fields[c[0]], r.line, "session");
        x.year = parse_int(r.fields[c[1]], r.line, "year");
        x.n = parse_int(r.fields[c[2]], r.line, "n");
        x.m = parse_int(r.fields[c[3]], r.line, "m");
        x.density = parse_double(r.fields[c[4]], r.line, "density");
        x.m_neg = parse_int(r.fields[c[5]], r.line, "m_neg");
        x.m_pos = parse_int(r.fields[c[6]], r.line, "m_pos");
        x.triangle_index = parse_double(r.fields[c[7]], r.line, "T");
        x.normalized_frustration = parse_double(r.fields[c[8]], r.line, "F");
        x.frustration_index = parse_int(r.fields[c[9]], r.line, "L");
        x.lp_bound = parse_double(r.fields[c[10]], r.line, "Ystar");
        out.push_back(x);
    }
    return out;
}

inline std::vector<NetworkRow> read_network_table_file(const std::string& path) {
    auto in = open_input(path);
    return read_network_table(in);
}

} // namespace signet::io
