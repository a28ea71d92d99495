#pragma once

// Core domain types for multi-channel multi-radio networks: channels, nodes
// with per-interface channel assignment, regions, links, flow configurations
// and single-channel single-radio projections.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "mcmr/errors.hpp"
#include "mcmr/rational.hpp"

namespace mcmr {

using ChannelId = int;
using NodeIndex = std::size_t;

struct Point {
  Rational x;
  Rational y;
  friend bool operator==(const Point&, const Point&) = default;
};

inline Rational squared_distance(const Point& a, const Point& b) {
  Rational dx = a.x - b.x, dy = a.y - b.y;
  return dx * dx + dy * dy;
}

enum class RegionKind { square, disk, abstract };

struct Region {
  RegionKind kind = RegionKind::abstract;
  Rational extent;  // side (square) or diameter (disk), meters

  static Region square(Rational side) { return {RegionKind::square, std::move(side)}; }
  static Region disk(Rational diameter) { return {RegionKind::disk, std::move(diameter)}; }
  static Region abstract() { return {RegionKind::abstract, Rational(0)}; }

  bool geometric() const { return kind != RegionKind::abstract; }

  /// Closure membership. Squares span [0, side]^2; disks are centered at the origin.
  bool contains(const Point& p) const {
    switch (kind) {
      case RegionKind::square:
        return p.x >= 0 && p.y >= 0 && p.x <= extent && p.y <= extent;
      case RegionKind::disk: {
        Rational r = extent / 2;
        return p.x * p.x + p.y * p.y <= r * r;
      }
      case RegionKind::abstract:
        return false;
    }
    return false;
  }

  friend bool operator==(const Region&, const Region&) = default;
};

enum class Guard { transmitter, receiver };

struct InterferenceSpec {
  enum class Kind { protocol, single_collision_domain };
  Kind kind = Kind::single_collision_domain;
  Rational delta;  // guard factor is (1 + delta)
  Guard guard = Guard::transmitter;

  static InterferenceSpec protocol(Rational delta, Guard guard = Guard::transmitter) {
    return {Kind::protocol, std::move(delta), guard};
  }
  static InterferenceSpec single_collision_domain() { return {}; }

  friend bool operator==(const InterferenceSpec&, const InterferenceSpec&) = default;
};

struct Channel {
  ChannelId id = 0;
  Rational rate;  // bits/s

  /// Time to move one bit one hop.
  Rational tick() const { return 1 / rate; }

  friend bool operator==(const Channel&, const Channel&) = default;
};

struct NodeSpec {
  std::string id;
  std::vector<ChannelId> channels;  // one interface per listed channel
  std::optional<Point> location;

  bool has_channel(ChannelId c) const { return std::find(channels.begin(), channels.end(), c) != channels.end(); }

  friend bool operator==(const NodeSpec&, const NodeSpec&) = default;
};

/// Unvalidated network description as read from a file or written in code.
struct NetworkDescription {
  std::vector<NodeSpec> nodes;
  std::vector<Channel> channels;
  Region region = Region::abstract();
  std::optional<InterferenceSpec> interference;  // abstract regions default to a single collision domain
};

/// Node locations indexed like Network::nodes().
struct Placement {
  std::vector<Point> coords;
  friend bool operator==(const Placement&, const Placement&) = default;
};

/// One-hop transmission src -> dst on a channel. Ordered by channel, then src, then dst.
struct Link {
  NodeIndex src = 0;
  NodeIndex dst = 0;
  ChannelId channel = 0;

  friend bool operator==(const Link&, const Link&) = default;
  friend std::strong_ordering operator<=>(const Link& a, const Link& b) {
    if (auto c = a.channel <=> b.channel; c != 0) return c;
    if (auto c = a.src <=> b.src; c != 0) return c;
    return a.dst <=> b.dst;
  }
};

/// Validated, immutable network.
class Network {
 public:
  static Network build(NetworkDescription desc);

  const std::vector<NodeSpec>& nodes() const { return nodes_; }
  const std::vector<Channel>& channels() const { return channels_; }
  const Region& region() const { return region_; }
  const InterferenceSpec& interference() const { return interference_; }

  std::size_t node_count() const { return nodes_.size(); }
  std::size_t channel_count() const { return channels_.size(); }
  /// m: the largest interface count over all nodes.
  std::size_t interfaces_per_node() const { return m_; }
  std::size_t total_interfaces() const {
    std::size_t total = 0;
    for (const auto& n : nodes_) total += n.channels.size();
    return total;
  }

  const Channel& channel(ChannelId id) const { return channels_.at(static_cast<std::size_t>(id - 1)); }
  const Rational& rate(ChannelId id) const { return channel(id).rate; }

  std::optional<NodeIndex> find_node(std::string_view id) const {
    for (NodeIndex i = 0; i < nodes_.size(); ++i)
      if (nodes_[i].id == id) return i;
    return std::nullopt;
  }
  NodeIndex node_index(std::string_view id) const {
    if (auto i = find_node(id)) return *i;
    throw InputError(ErrorCode::unknown_node, "", "no node named '" + std::string(id) + "'");
  }
  const std::string& node_id(NodeIndex i) const { return nodes_.at(i).id; }

  bool has_interface(NodeIndex node, ChannelId ch) const { return nodes_.at(node).has_channel(ch); }

  /// Node locations, when every node carries one.
  std::optional<Placement> placement() const {
    Placement p;
    for (const auto& n : nodes_) {
      if (!n.location) return std::nullopt;
      p.coords.push_back(*n.location);
    }
    return p;
  }

  NetworkDescription description() const { return {nodes_, channels_, region_, interference_}; }

  friend bool operator==(const Network&, const Network&) = default;

 private:
  Network() = default;

  std::vector<NodeSpec> nodes_;
  std::vector<Channel> channels_;
  Region region_;
  InterferenceSpec interference_;
  std::size_t m_ = 0;
};

inline Network Network::build(NetworkDescription desc) {
  Network net;
  // Channels: ids unique, contiguous from 1, positive rates.
  std::vector<Channel> channels = std::move(desc.channels);
  std::sort(channels.begin(), channels.end(), [](const Channel& a, const Channel& b) { return a.id < b.id; });
  for (std::size_t i = 0; i < channels.size(); ++i) {
    const std::string path = "channels[" + std::to_string(i) + "]";
    if (i > 0 && channels[i].id == channels[i - 1].id)
      throw InputError(ErrorCode::duplicate_channel, path, "channel id " + std::to_string(channels[i].id) + " repeated");
    if (channels[i].id != static_cast<ChannelId>(i + 1))
      throw InputError(ErrorCode::non_contiguous_channels, path, "channel ids must be 1..c");
    if (channels[i].rate <= 0) throw InputError(ErrorCode::non_positive_rate, path, "rate must be positive");
  }
  const std::size_t c = channels.size();

  const Region& region = desc.region;
  if (region.geometric() && region.extent <= 0)
    throw InputError(ErrorCode::invalid_region, "region", "side/diameter must be positive");

  InterferenceSpec interference = desc.interference.value_or(InterferenceSpec::single_collision_domain());
  if (interference.kind == InterferenceSpec::Kind::protocol) {
    if (!region.geometric())
      throw InputError(ErrorCode::invalid_interference, "interference", "protocol model needs a geometric region");
    if (interference.delta < 0) throw InputError(ErrorCode::invalid_interference, "interference.delta", "delta < 0");
  }

  std::set<std::string> seen_ids;
  std::size_t located = 0;
  std::size_t m = 0;
  for (std::size_t i = 0; i < desc.nodes.size(); ++i) {
    const auto& node = desc.nodes[i];
    const std::string path = "nodes[" + std::to_string(i) + "]";
    if (node.id.empty()) throw InputError(ErrorCode::schema, path + ".id", "empty node id");
    if (!seen_ids.insert(node.id).second)
      throw InputError(ErrorCode::duplicate_node, path + ".id", "node id '" + node.id + "' repeated");
    std::set<ChannelId> own;
    for (std::size_t k = 0; k < node.channels.size(); ++k) {
      ChannelId ch = node.channels[k];
      const std::string cpath = path + ".channels[" + std::to_string(k) + "]";
      if (ch < 1 || static_cast<std::size_t>(ch) > c)
        throw InputError(ErrorCode::unknown_channel, cpath, "channel " + std::to_string(ch) + " not declared");
      if (!own.insert(ch).second)
        throw InputError(ErrorCode::duplicate_channel_interface, cpath,
                         "node '" + node.id + "' has two interfaces on channel " + std::to_string(ch));
    }
    m = std::max(m, node.channels.size());
    if (node.location) {
      if (!region.geometric())
        throw InputError(ErrorCode::invalid_region, path + ".location", "abstract region carries no coordinates");
      if (!region.contains(*node.location))
        throw InputError(ErrorCode::invalid_region, path + ".location", "location outside region");
      ++located;
    }
  }
  if (m > c) throw InputError(ErrorCode::too_many_interfaces, "nodes", "m > c");
  if (located != 0 && located != desc.nodes.size())
    throw InputError(ErrorCode::missing_location, "nodes", "either every node or no node carries a location");

  net.nodes_ = std::move(desc.nodes);
  net.channels_ = std::move(channels);
  net.region_ = region;
  net.interference_ = std::move(interference);
  net.m_ = m;
  return net;
}

inline Network build_network(NetworkDescription desc) { return Network::build(std::move(desc)); }

/// Interfaces assigned to one channel; each owner becomes a free-standing single-radio node.
struct SubNetwork {
  ChannelId channel = 0;
  std::vector<NodeIndex> owners;
};

inline SubNetwork project_single_channel(const Network& net, ChannelId ch) {
  if (ch < 1 || static_cast<std::size_t>(ch) > net.channel_count())
    throw InputError(ErrorCode::unknown_channel, "", "channel " + std::to_string(ch) + " not declared");
  SubNetwork sub{ch, {}};
  for (NodeIndex v = 0; v < net.node_count(); ++v)
    if (net.has_interface(v, ch)) sub.owners.push_back(v);
  return sub;
}

/// The projection as a standalone single-channel network (its channel renumbered to 1).
/// Owners keep their ids and locations; `placement`, when given, overrides locations.
inline Network scsr_network(const Network& net, const SubNetwork& sub, const Placement* placement = nullptr) {
  NetworkDescription d;
  d.channels.push_back({1, net.rate(sub.channel)});
  d.region = net.region();
  d.interference = net.interference();
  for (NodeIndex v : sub.owners) {
    NodeSpec spec{net.node_id(v), {1}, net.nodes()[v].location};
    if (placement) spec.location = placement->coords.at(v);
    d.nodes.push_back(std::move(spec));
  }
  return Network::build(std::move(d));
}

/// Every ordered co-channel node pair, sorted by channel then src then dst.
inline std::vector<Link> derive_links(const Network& net) {
  std::vector<Link> links;
  for (const auto& ch : net.channels())
    for (NodeIndex u = 0; u < net.node_count(); ++u) {
      if (!net.has_interface(u, ch.id)) continue;
      for (NodeIndex v = 0; v < net.node_count(); ++v)
        if (u != v && net.has_interface(v, ch.id)) links.push_back({u, v, ch.id});
    }
  return links;
}

/// One unicast flow per node: dest[v] is the destination of the flow sourced at v.
struct FlowConfig {
  std::vector<NodeIndex> dest;

  std::size_t size() const { return dest.size(); }
  friend bool operator==(const FlowConfig&, const FlowConfig&) = default;
};

inline void validate_flows(const Network& net, const FlowConfig& flows) {
  if (flows.dest.size() != net.node_count())
    throw InputError(ErrorCode::invalid_flow, "flows", "every node needs exactly one flow");
  for (NodeIndex v = 0; v < flows.dest.size(); ++v) {
    if (flows.dest[v] >= net.node_count())
      throw InputError(ErrorCode::invalid_flow, "flows." + net.node_id(v), "destination out of range");
    if (flows.dest[v] == v)
      throw InputError(ErrorCode::invalid_flow, "flows." + net.node_id(v), "a node cannot send to itself");
  }
}

/// Builds a FlowConfig from (src id, dst id) pairs.
inline FlowConfig make_flows(const Network& net, const std::vector<std::pair<std::string, std::string>>& pairs) {
  FlowConfig f;
  f.dest.assign(net.node_count(), net.node_count());
  for (const auto& [s, d] : pairs) f.dest[net.node_index(s)] = net.node_index(d);
  for (NodeIndex v = 0; v < f.dest.size(); ++v)
    if (f.dest[v] == net.node_count())
      throw InputError(ErrorCode::invalid_flow, "flows", "node '" + net.node_id(v) + "' has no flow");
  validate_flows(net, f);
  return f;
}

/// Number of flow configurations, (n-1)^n, or nullopt on overflow past `cap`.
inline std::optional<std::size_t> flow_config_count(std::size_t n, std::size_t cap) {
  if (n < 2) return 0;
  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (total > cap / (n - 1)) return std::nullopt;
    total *= n - 1;
  }
  return total;
}

/// All (n-1)^n configurations; the first node varies slowest and destinations ascend.
inline std::vector<FlowConfig> enumerate_flow_configs(std::size_t n, std::size_t cap = 1'000'000) {
  if (n < 2) throw InputError(ErrorCode::invalid_flow, "nodes", "flow configurations need at least two nodes");
  if (!flow_config_count(n, cap)) throw LimitExceeded("flow configuration count exceeds cap");
  // Digit k of node v selects the k-th node other than v.
  std::vector<std::size_t> digit(n, 0);
  std::vector<FlowConfig> out;
  for (;;) {
    FlowConfig f;
    f.dest.resize(n);
    for (NodeIndex v = 0; v < n; ++v) f.dest[v] = digit[v] < v ? digit[v] : digit[v] + 1;
    out.push_back(std::move(f));
    std::size_t pos = n;
    while (pos > 0) {
      --pos;
      if (++digit[pos] < n - 1) break;
      digit[pos] = 0;
      if (pos == 0) return out;
    }
  }
}

inline std::vector<FlowConfig> enumerate_flow_configs(const Network& net, std::size_t cap = 1'000'000) {
  return enumerate_flow_configs(net.node_count(), cap);
}

}  // namespace mcmr
