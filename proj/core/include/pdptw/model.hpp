#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace pdptw {

using NodeId = int;
using VehicleId = int;

inline constexpr NodeId kDepot = 0;

/// Raised when instance data violates a model invariant.
class ModelError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised when a file cannot be read.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A ModelError tied to a line of an instance or route file (1-based).
class ParseError : public ModelError {
public:
    ParseError(std::size_t line, std::string const& reason, std::string const& file = {});

    [[nodiscard]] auto line() const noexcept -> std::size_t { return line_; }
    [[nodiscard]] auto reason() const noexcept -> std::string const& { return reason_; }
    [[nodiscard]] auto file() const noexcept -> std::string const& { return file_; }

private:
    std::size_t line_;
    std::string reason_;
    std::string file_;
};

/// Depot (q == 0), supplier (q > 0) or client (q < 0).
struct Node {
    NodeId id{};
    double x{};
    double y{};
    double q{};
    double e{};
    double l{};
    double s{};
    std::vector<NodeId> succ;
    std::vector<NodeId> pred;

    [[nodiscard]] auto is_supplier() const noexcept -> bool { return q > 0; }
    [[nodiscard]] auto is_client() const noexcept -> bool { return q < 0; }

    friend auto operator==(Node const&, Node const&) -> bool = default;
};

struct VehicleSpec {
    VehicleId id{};
    double capacity{};
    double unit_cost{};
    double speed{1.0};

    friend auto operator==(VehicleSpec const&, VehicleSpec const&) -> bool = default;
};

struct PrecedencePair {
    NodeId supplier{};
    NodeId client{};

    friend auto operator<=>(PrecedencePair const&, PrecedencePair const&) = default;
};

/// Edge length; std::nullopt is the absent-edge marker (no road between the nodes).
using Length = std::optional<double>;

struct EdgeOverride {
    NodeId from{};
    NodeId to{};
    Length length;

    friend auto operator==(EdgeOverride const&, EdgeOverride const&) -> bool = default;
};

/// Immutable problem instance. Node ids are 0..n-1 with node 0 the depot;
/// vehicles carry ids 1..K in fleet order.
class Instance {
public:
    Instance(std::vector<Node> nodes, std::vector<VehicleSpec> vehicles, std::vector<EdgeOverride> overrides = {});

    [[nodiscard]] auto nodes() const noexcept -> std::span<Node const> { return nodes_; }
    [[nodiscard]] auto node(NodeId id) const -> Node const& { return nodes_.at(static_cast<std::size_t>(id)); }
    [[nodiscard]] auto size() const noexcept -> std::size_t { return nodes_.size(); }
    [[nodiscard]] auto contains(NodeId id) const noexcept -> bool
    {
        return id >= 0 && static_cast<std::size_t>(id) < nodes_.size();
    }

    [[nodiscard]] auto vehicles() const noexcept -> std::span<VehicleSpec const> { return vehicles_; }
    [[nodiscard]] auto vehicle(VehicleId id) const -> VehicleSpec const&;
    [[nodiscard]] auto has_vehicle(VehicleId id) const noexcept -> bool;

    [[nodiscard]] auto overrides() const noexcept -> std::span<EdgeOverride const> { return overrides_; }

    /// Override value if one exists, else the Euclidean distance.
    [[nodiscard]] auto distance(NodeId i, NodeId j) const -> Length;
    /// distance(i, j) / speed of vehicle k.
    [[nodiscard]] auto travel_time(VehicleId k, NodeId i, NodeId j) const -> Length;

    /// Normalized (supplier, client) links, sorted.
    [[nodiscard]] auto precedence_pairs() const noexcept -> std::span<PrecedencePair const> { return pairs_; }
    /// Listed suppliers of a client (empty for non-clients).
    [[nodiscard]] auto suppliers_of(NodeId client) const -> std::span<NodeId const>;

    [[nodiscard]] auto total_supply() const noexcept -> double;
    [[nodiscard]] auto total_demand() const noexcept -> double;

    friend auto operator==(Instance const& a, Instance const& b) -> bool
    {
        return a.nodes_ == b.nodes_ && a.vehicles_ == b.vehicles_ && a.overrides_ == b.overrides_;
    }

private:
    std::vector<Node> nodes_;
    std::vector<VehicleSpec> vehicles_;
    std::vector<EdgeOverride> overrides_;
    std::vector<Length> dist_;
    std::vector<PrecedencePair> pairs_;
    std::vector<std::vector<NodeId>> suppliers_;
};

/// Union of all Succ/Pred links, each oriented supplier -> client by the sign of q.
/// Throws ModelError when a link joins two nodes that are not a supplier/client couple.
auto derive_precedence_pairs(std::span<Node const> nodes) -> std::vector<PrecedencePair>;
auto derive_precedence_pairs(Instance const& instance) -> std::vector<PrecedencePair>;

/// Succ/Pred entries that the partner node does not mirror.
auto reciprocity_warnings(Instance const& instance) -> std::vector<std::string>;

// instance file I/O
auto parse_instance(std::string_view text) -> Instance;
auto serialize_instance(Instance const& instance) -> std::string;
auto load_instance(std::string const& path) -> Instance;

auto read_text_file(std::string const& path) -> std::string;

} // namespace pdptw
