#include "pdptw/model.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>
#include <string_view>

namespace pdptw {

namespace {

auto split_ws(std::string_view line) -> std::vector<std::string_view>
{
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) {
            ++i;
        }
        auto start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') {
            ++i;
        }
        if (i > start) {
            out.push_back(line.substr(start, i - start));
        }
    }
    return out;
}

template <typename T>
auto parse_number(std::string_view token, std::size_t line, char const* what) -> T
{
    T value{};
    auto const* end = token.data() + token.size();
    auto [ptr, ec] = std::from_chars(token.data(), end, value);
    if (ec != std::errc{} || ptr != end) {
        throw ParseError(line, std::string("malformed ") + what + " '" + std::string(token) + "'");
    }
    return value;
}

auto parse_links(std::string_view token, std::size_t line, char const* what) -> std::vector<NodeId>
{
    std::vector<NodeId> ids;
    if (token == "-" || token == "0") {
        // "0" alone is the tabular convention for "no link"
        return ids;
    }
    std::size_t start = 0;
    while (start <= token.size()) {
        auto comma = token.find(',', start);
        auto part = token.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
        ids.push_back(parse_number<NodeId>(part, line, what));
        if (comma == std::string_view::npos) {
            break;
        }
        start = comma + 1;
    }
    return ids;
}

auto format_number(double v) -> std::string
{
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return { buf, ptr };
}

auto format_links(std::vector<NodeId> const& ids) -> std::string
{
    if (ids.empty()) {
        return "-";
    }
    std::string out;
    for (std::size_t i = 0; i < ids.size(); ++i) {
        if (i > 0) {
            out += ',';
        }
        out += std::to_string(ids[i]);
    }
    return out;
}

} // namespace

auto parse_instance(std::string_view text) -> Instance
{
    std::vector<Node> nodes;
    std::vector<std::size_t> node_lines;
    std::vector<VehicleSpec> vehicles;
    std::vector<EdgeOverride> overrides;
    std::vector<std::size_t> edge_lines;
    std::optional<std::size_t> declared_vehicles;
    std::optional<std::size_t> declared_nodes;
    std::size_t vehicles_line = 0;
    std::size_t nodes_line = 0;
    bool header_seen = false;

    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto nl = text.find('\n', pos);
        auto raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;

        if (auto hash = raw.find('#'); hash != std::string_view::npos) {
            raw = raw.substr(0, hash);
        }
        auto tok = split_ws(raw);
        if (tok.empty()) {
            continue;
        }
        auto const key = tok[0];
        auto expect = [&](std::size_t n) {
            if (tok.size() != n) {
                throw ParseError(line_no,
                    std::string(key) + " expects " + std::to_string(n - 1) + " fields, got " + std::to_string(tok.size() - 1));
            }
        };

        if (!header_seen) {
            if (key != "PDPTW" || tok.size() != 2 || tok[1] != "1") {
                throw ParseError(line_no, "expected header 'PDPTW 1'");
            }
            header_seen = true;
            continue;
        }

        if (key == "VEHICLES") {
            expect(2);
            if (declared_vehicles) {
                throw ParseError(line_no, "duplicate VEHICLES section");
            }
            declared_vehicles = parse_number<std::size_t>(tok[1], line_no, "vehicle count");
            vehicles_line = line_no;
        } else if (key == "V") {
            expect(5);
            if (!declared_vehicles) {
                throw ParseError(line_no, "V line before VEHICLES");
            }
            VehicleSpec v{
                .id = parse_number<VehicleId>(tok[1], line_no, "vehicle id"),
                .capacity = parse_number<double>(tok[2], line_no, "capacity"),
                .unit_cost = parse_number<double>(tok[3], line_no, "unit cost"),
                .speed = parse_number<double>(tok[4], line_no, "speed"),
            };
            if (v.id != static_cast<VehicleId>(vehicles.size() + 1)) {
                throw ParseError(line_no, "vehicle ids must run 1..K in order");
            }
            if (!(v.capacity >= 0) || !(v.unit_cost >= 0) || !(v.speed > 0)) {
                throw ParseError(line_no, "capacity and unit cost must be >= 0, speed > 0");
            }
            vehicles.push_back(v);
        } else if (key == "NODES") {
            expect(2);
            if (declared_nodes) {
                throw ParseError(line_no, "duplicate NODES section");
            }
            declared_nodes = parse_number<std::size_t>(tok[1], line_no, "node count");
            nodes_line = line_no;
        } else if (key == "N") {
            expect(10);
            if (!declared_nodes) {
                throw ParseError(line_no, "N line before NODES");
            }
            Node n{
                .id = parse_number<NodeId>(tok[1], line_no, "node id"),
                .x = parse_number<double>(tok[2], line_no, "x"),
                .y = parse_number<double>(tok[3], line_no, "y"),
                .q = parse_number<double>(tok[4], line_no, "q"),
                .e = parse_number<double>(tok[5], line_no, "e"),
                .l = parse_number<double>(tok[6], line_no, "l"),
                .s = parse_number<double>(tok[7], line_no, "s"),
                .succ = parse_links(tok[8], line_no, "succ id"),
                .pred = parse_links(tok[9], line_no, "pred id"),
            };
            if (n.id < 0 || static_cast<std::size_t>(n.id) >= *declared_nodes) {
                throw ParseError(line_no, "node id " + std::to_string(n.id) + " outside 0.." + std::to_string(*declared_nodes - 1));
            }
            for (std::size_t i = 0; i < nodes.size(); ++i) {
                if (nodes[i].id == n.id) {
                    throw ParseError(line_no, "duplicate node id " + std::to_string(n.id) + " (first on line "
                        + std::to_string(node_lines[i]) + ")");
                }
            }
            if (n.s < 0) {
                throw ParseError(line_no, "negative service time");
            }
            if (n.e > n.l) {
                throw ParseError(line_no, "window open e > close l");
            }
            if (n.id == kDepot && (n.q != 0 || !n.succ.empty() || !n.pred.empty())) {
                throw ParseError(line_no, "depot must have q = 0 and no succ/pred links");
            }
            nodes.push_back(std::move(n));
            node_lines.push_back(line_no);
        } else if (key == "EDGE") {
            expect(4);
            EdgeOverride o{
                .from = parse_number<NodeId>(tok[1], line_no, "edge endpoint"),
                .to = parse_number<NodeId>(tok[2], line_no, "edge endpoint"),
                .length = tok[3] == "INF" ? Length{} : Length{ parse_number<double>(tok[3], line_no, "edge length") },
            };
            overrides.push_back(o);
            edge_lines.push_back(line_no);
        } else {
            throw ParseError(line_no, "unknown record '" + std::string(key) + "'");
        }
    }

    if (!header_seen) {
        throw ParseError(line_no, "empty instance file");
    }
    if (!declared_nodes) {
        throw ParseError(line_no, "missing NODES section");
    }
    if (nodes.size() != *declared_nodes) {
        throw ParseError(nodes_line, "NODES declares " + std::to_string(*declared_nodes) + " nodes, found "
            + std::to_string(nodes.size()));
    }
    if (declared_vehicles && vehicles.size() != *declared_vehicles) {
        throw ParseError(vehicles_line, "VEHICLES declares " + std::to_string(*declared_vehicles) + ", found "
            + std::to_string(vehicles.size()));
    }

    bool has_depot = false;
    for (auto const& n : nodes) {
        has_depot = has_depot || n.id == kDepot;
    }
    if (!has_depot) {
        throw ParseError(nodes_line, "missing depot (node 0)");
    }

    auto const count = static_cast<NodeId>(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        for (auto const* links : { &nodes[i].succ, &nodes[i].pred }) {
            for (auto id : *links) {
                if (id < 0 || id >= count) {
                    throw ParseError(node_lines[i], "reference to unknown node " + std::to_string(id));
                }
                if (id == nodes[i].id) {
                    throw ParseError(node_lines[i], "node lists itself in succ/pred");
                }
                if (id == kDepot) {
                    throw ParseError(node_lines[i], "succ/pred may not reference the depot");
                }
            }
        }
    }
    for (std::size_t i = 0; i < overrides.size(); ++i) {
        if (overrides[i].from < 0 || overrides[i].from >= count || overrides[i].to < 0 || overrides[i].to >= count) {
            throw ParseError(edge_lines[i], "edge references unknown node");
        }
        if (overrides[i].length && *overrides[i].length < 0) {
            throw ParseError(edge_lines[i], "edge length must be >= 0");
        }
    }

    // Remaining invariant failures (same-sign links, duplicate overrides) surface as ModelError.
    return Instance(std::move(nodes), std::move(vehicles), std::move(overrides));
}

auto serialize_instance(Instance const& instance) -> std::string
{
    std::ostringstream out;
    out << "PDPTW 1\n";
    out << "VEHICLES " << instance.vehicles().size() << '\n';
    for (auto const& v : instance.vehicles()) {
        out << "V " << v.id << ' ' << format_number(v.capacity) << ' ' << format_number(v.unit_cost) << ' '
            << format_number(v.speed) << '\n';
    }
    out << "NODES " << instance.size() << '\n';
    for (auto const& n : instance.nodes()) {
        out << "N " << n.id << ' ' << format_number(n.x) << ' ' << format_number(n.y) << ' ' << format_number(n.q) << ' '
            << format_number(n.e) << ' ' << format_number(n.l) << ' ' << format_number(n.s) << ' ' << format_links(n.succ)
            << ' ' << format_links(n.pred) << '\n';
    }
    for (auto const& o : instance.overrides()) {
        out << "EDGE " << o.from << ' ' << o.to << ' ' << (o.length ? format_number(*o.length) : std::string("INF")) << '\n';
    }
    return out.str();
}

auto read_text_file(std::string const& path) -> std::string
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError(path + ": file not found or unreadable");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

auto load_instance(std::string const& path) -> Instance
{
    auto text = read_text_file(path);
    try {
        return parse_instance(text);
    } catch (ParseError const& e) {
        throw ParseError(e.line(), e.reason(), path);
    }
}

} // namespace pdptw
