#include "pdptw/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>

namespace pdptw {

ParseError::ParseError(std::size_t line, std::string const& reason, std::string const& file)
    : ModelError((file.empty() ? "line " : file + ":") + std::to_string(line) + ": " + reason)
    , line_(line)
    , reason_(reason)
    , file_(file)
{
}

namespace {

auto describe(NodeId id) -> std::string { return "node " + std::to_string(id); }

void check_node(Node const& n, std::size_t count)
{
    if (!(n.e <= n.l)) {
        throw ModelError(describe(n.id) + ": window open e > close l");
    }
    if (!(n.s >= 0)) {
        throw ModelError(describe(n.id) + ": negative service time");
    }
    if (!std::isfinite(n.x) || !std::isfinite(n.y) || !std::isfinite(n.q)) {
        throw ModelError(describe(n.id) + ": non-finite coordinate or quantity");
    }
    auto check_links = [&](std::vector<NodeId> const& links, char const* column) {
        for (auto other : links) {
            if (other < 0 || static_cast<std::size_t>(other) >= count) {
                throw ModelError(describe(n.id) + ": " + column + " references unknown node " + std::to_string(other));
            }
            if (other == n.id) {
                throw ModelError(describe(n.id) + ": lists itself in " + column);
            }
            if (other == kDepot) {
                throw ModelError(describe(n.id) + ": " + column + " references the depot");
            }
        }
    };
    check_links(n.succ, "succ");
    check_links(n.pred, "pred");
}

} // namespace

Instance::Instance(std::vector<Node> nodes, std::vector<VehicleSpec> vehicles, std::vector<EdgeOverride> overrides)
    : nodes_(std::move(nodes))
    , vehicles_(std::move(vehicles))
    , overrides_(std::move(overrides))
{
    std::ranges::sort(nodes_, {}, &Node::id);
    if (nodes_.empty() || nodes_.front().id != kDepot) {
        throw ModelError("missing depot (node 0)");
    }
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        if (nodes_[i].id != static_cast<NodeId>(i)) {
            if (i > 0 && nodes_[i].id == nodes_[i - 1].id) {
                throw ModelError("duplicate " + describe(nodes_[i].id));
            }
            throw ModelError("node ids must be 0.." + std::to_string(nodes_.size() - 1));
        }
        check_node(nodes_[i], nodes_.size());
    }
    auto const& depot = nodes_.front();
    if (depot.q != 0 || !depot.succ.empty() || !depot.pred.empty()) {
        throw ModelError("depot must have q = 0 and no succ/pred links");
    }

    for (std::size_t k = 0; k < vehicles_.size(); ++k) {
        auto const& v = vehicles_[k];
        if (v.id != static_cast<VehicleId>(k + 1)) {
            throw ModelError("vehicle ids must be 1.." + std::to_string(vehicles_.size()) + " in order");
        }
        if (!(v.capacity >= 0) || !(v.unit_cost >= 0) || !(v.speed > 0)) {
            throw ModelError("vehicle " + std::to_string(v.id) + ": capacity/unit_cost must be >= 0 and speed > 0");
        }
    }

    auto const n = nodes_.size();
    dist_.resize(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            dist_[i * n + j] = std::hypot(nodes_[i].x - nodes_[j].x, nodes_[i].y - nodes_[j].y);
        }
    }

    std::set<std::pair<NodeId, NodeId>> explicit_arcs;
    for (auto const& o : overrides_) {
        if (!contains(o.from) || !contains(o.to)) {
            throw ModelError("edge override references unknown node");
        }
        if (o.length && !(*o.length >= 0)) {
            throw ModelError("edge override length must be >= 0");
        }
        if (!explicit_arcs.emplace(o.from, o.to).second) {
            throw ModelError("duplicate edge override " + std::to_string(o.from) + " " + std::to_string(o.to));
        }
    }
    for (auto const& o : overrides_) {
        dist_[static_cast<std::size_t>(o.from) * n + static_cast<std::size_t>(o.to)] = o.length;
        if (!explicit_arcs.contains({ o.to, o.from })) {
            dist_[static_cast<std::size_t>(o.to) * n + static_cast<std::size_t>(o.from)] = o.length;
        }
    }

    pairs_ = derive_precedence_pairs(std::span<Node const>(nodes_));
    suppliers_.resize(n);
    for (auto const& p : pairs_) {
        suppliers_[static_cast<std::size_t>(p.client)].push_back(p.supplier);
    }
}

auto Instance::vehicle(VehicleId id) const -> VehicleSpec const&
{
    if (!has_vehicle(id)) {
        throw std::out_of_range("unknown vehicle " + std::to_string(id));
    }
    return vehicles_[static_cast<std::size_t>(id - 1)];
}

auto Instance::has_vehicle(VehicleId id) const noexcept -> bool
{
    return id >= 1 && static_cast<std::size_t>(id) <= vehicles_.size();
}

auto Instance::distance(NodeId i, NodeId j) const -> Length
{
    if (!contains(i) || !contains(j)) {
        throw std::out_of_range("unknown node in distance query");
    }
    return dist_[static_cast<std::size_t>(i) * nodes_.size() + static_cast<std::size_t>(j)];
}

auto Instance::travel_time(VehicleId k, NodeId i, NodeId j) const -> Length
{
    auto d = distance(i, j);
    if (!d) {
        return std::nullopt;
    }
    return *d / vehicle(k).speed;
}

auto Instance::suppliers_of(NodeId client) const -> std::span<NodeId const>
{
    return suppliers_.at(static_cast<std::size_t>(client));
}

auto Instance::total_supply() const noexcept -> double
{
    double total = 0;
    for (auto const& n : nodes_) {
        total += std::max(n.q, 0.0);
    }
    return total;
}

auto Instance::total_demand() const noexcept -> double
{
    double total = 0;
    for (auto const& n : nodes_) {
        total += std::max(-n.q, 0.0);
    }
    return total;
}

auto derive_precedence_pairs(std::span<Node const> nodes) -> std::vector<PrecedencePair>
{
    std::set<PrecedencePair> pairs;
    auto lookup = [&](NodeId id) -> Node const& {
        auto it = std::ranges::find(nodes, id, &Node::id);
        if (it == nodes.end()) {
            throw ModelError("link references unknown node " + std::to_string(id));
        }
        return *it;
    };
    for (auto const& a : nodes) {
        for (auto const* links : { &a.succ, &a.pred }) {
            for (auto other : *links) {
                auto const& b = lookup(other);
                if (a.is_supplier() && b.is_client()) {
                    pairs.insert({ a.id, b.id });
                } else if (a.is_client() && b.is_supplier()) {
                    pairs.insert({ b.id, a.id });
                } else {
                    throw ModelError("nodes " + std::to_string(a.id) + " and " + std::to_string(b.id)
                        + " are linked but are not a supplier/client couple");
                }
            }
        }
    }
    return { pairs.begin(), pairs.end() };
}

auto derive_precedence_pairs(Instance const& instance) -> std::vector<PrecedencePair>
{
    auto pairs = instance.precedence_pairs();
    return { pairs.begin(), pairs.end() };
}

auto reciprocity_warnings(Instance const& instance) -> std::vector<std::string>
{
    std::vector<std::string> warnings;
    auto lists = [](std::vector<NodeId> const& v, NodeId id) { return std::ranges::find(v, id) != v.end(); };
    for (auto const& n : instance.nodes()) {
        for (auto other : n.succ) {
            if (!lists(instance.node(other).pred, n.id)) {
                warnings.push_back("node " + std::to_string(n.id) + " lists " + std::to_string(other)
                    + " as succ but node " + std::to_string(other) + " does not list " + std::to_string(n.id)
                    + " as pred");
            }
        }
        for (auto other : n.pred) {
            if (!lists(instance.node(other).succ, n.id)) {
                warnings.push_back("node " + std::to_string(n.id) + " lists " + std::to_string(other)
                    + " as pred but node " + std::to_string(other) + " does not list " + std::to_string(n.id)
                    + " as succ");
            }
        }
    }
    return warnings;
}

} // namespace pdptw
