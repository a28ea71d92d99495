#pragma once

// JSON file formats: network, flows (with optional fixed routes), placement and
// STS log. Every document carries "format_version": 1. Rationals are written as
// integers or "p/q" strings.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "mcmr/capacity.hpp"
#include "mcmr/errors.hpp"
#include "mcmr/model.hpp"
#include "mcmr/rational.hpp"
#include "mcmr/replay.hpp"

namespace mcmr::io {

using json = nlohmann::json;

inline constexpr int kFormatVersion = 1;

inline json rational_to_json(const Rational& r) {
  if (r.get_den() == 1 && r.get_num().fits_slong_p()) return r.get_num().get_si();
  return to_string(r);
}

inline Rational rational_from_json(const json& j, const std::string& path) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw InputError(ErrorCode::schema, path, e.what());
    }
  }
  if (j.is_number_float())
    throw InputError(ErrorCode::schema, path, "write non-integers as \"p/q\" or decimal strings");
  throw InputError(ErrorCode::schema, path, "expected a rational");
}

namespace detail {

inline const json& field(const json& obj, const char* key, const std::string& path) {
  if (!obj.is_object()) throw InputError(ErrorCode::schema, path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw InputError(ErrorCode::schema, path + "." + key, "missing field");
  return *it;
}

inline std::string string_field(const json& obj, const char* key, const std::string& path) {
  const json& v = field(obj, key, path);
  if (!v.is_string()) throw InputError(ErrorCode::schema, path + "." + key, "expected a string");
  return v.get<std::string>();
}

inline long int_value(const json& v, const std::string& path) {
  if (!v.is_number_integer()) throw InputError(ErrorCode::schema, path, "expected an integer");
  return v.get<long>();
}

inline const json& array_field(const json& obj, const char* key, const std::string& path) {
  const json& v = field(obj, key, path);
  if (!v.is_array()) throw InputError(ErrorCode::schema, path + "." + key, "expected an array");
  return v;
}

inline void check_version(const json& doc) {
  if (!doc.is_object()) throw InputError(ErrorCode::schema, "", "document must be a JSON object");
  auto it = doc.find("format_version");
  if (it == doc.end()) throw InputError(ErrorCode::schema, "format_version", "missing field");
  if (!it->is_number_integer() || it->get<long>() != kFormatVersion)
    throw InputError(ErrorCode::schema, "format_version", "unsupported format version");
}

inline Point point_from_json(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2) throw InputError(ErrorCode::schema, path, "expected [x, y]");
  return {rational_from_json(j[0], path + "[0]"), rational_from_json(j[1], path + "[1]")};
}

inline json point_to_json(const Point& p) { return json::array({rational_to_json(p.x), rational_to_json(p.y)}); }

}  // namespace detail

/// Parses JSON text; syntax errors become schema errors.
inline json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(ErrorCode::schema, "", std::string("malformed JSON: ") + e.what());
  }
}

// --- network ---------------------------------------------------------------

inline NetworkDescription network_description_from_json(const json& doc) {
  detail::check_version(doc);
  NetworkDescription d;

  const json& region = detail::field(doc, "region", "");
  std::string kind = detail::string_field(region, "kind", "region");
  if (kind == "square") {
    d.region = Region::square(rational_from_json(detail::field(region, "side_m", "region"), "region.side_m"));
  } else if (kind == "disk") {
    d.region = Region::disk(rational_from_json(detail::field(region, "diameter_m", "region"), "region.diameter_m"));
  } else if (kind == "abstract") {
    d.region = Region::abstract();
  } else {
    throw InputError(ErrorCode::schema, "region.kind", "unknown region kind '" + kind + "'");
  }

  if (auto it = doc.find("interference"); it != doc.end()) {
    std::string ik = detail::string_field(*it, "kind", "interference");
    if (ik == "protocol") {
      Rational delta = rational_from_json(detail::field(*it, "delta", "interference"), "interference.delta");
      Guard guard = Guard::transmitter;
      if (auto g = it->find("guard"); g != it->end()) {
        if (*g == "transmitter") guard = Guard::transmitter;
        else if (*g == "receiver") guard = Guard::receiver;
        else throw InputError(ErrorCode::schema, "interference.guard", "expected \"transmitter\" or \"receiver\"");
      }
      d.interference = InterferenceSpec::protocol(delta, guard);
    } else if (ik == "single_collision_domain") {
      d.interference = InterferenceSpec::single_collision_domain();
    } else {
      throw InputError(ErrorCode::schema, "interference.kind", "unknown interference kind '" + ik + "'");
    }
  }

  const json& channels = detail::array_field(doc, "channels", "");
  for (std::size_t i = 0; i < channels.size(); ++i) {
    const std::string path = "channels[" + std::to_string(i) + "]";
    long id = detail::int_value(detail::field(channels[i], "id", path), path + ".id");
    d.channels.push_back({static_cast<ChannelId>(id), rational_from_json(detail::field(channels[i], "rate", path), path + ".rate")});
  }

  const json& nodes = detail::array_field(doc, "nodes", "");
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const std::string path = "nodes[" + std::to_string(i) + "]";
    NodeSpec spec;
    spec.id = detail::string_field(nodes[i], "id", path);
    const json& chs = detail::array_field(nodes[i], "channels", path);
    for (std::size_t k = 0; k < chs.size(); ++k)
      spec.channels.push_back(
          static_cast<ChannelId>(detail::int_value(chs[k], path + ".channels[" + std::to_string(k) + "]")));
    if (auto loc = nodes[i].find("location"); loc != nodes[i].end() && !loc->is_null())
      spec.location = detail::point_from_json(*loc, path + ".location");
    d.nodes.push_back(std::move(spec));
  }
  return d;
}

inline Network network_from_json(const json& doc) { return Network::build(network_description_from_json(doc)); }

inline Network parse_network(const std::string& text) { return network_from_json(parse_json(text)); }

inline json network_to_json(const Network& net) {
  json doc;
  doc["format_version"] = kFormatVersion;
  const Region& r = net.region();
  switch (r.kind) {
    case RegionKind::square: doc["region"] = {{"kind", "square"}, {"side_m", rational_to_json(r.extent)}}; break;
    case RegionKind::disk: doc["region"] = {{"kind", "disk"}, {"diameter_m", rational_to_json(r.extent)}}; break;
    case RegionKind::abstract: doc["region"] = {{"kind", "abstract"}}; break;
  }
  const auto& in = net.interference();
  if (in.kind == InterferenceSpec::Kind::protocol) {
    doc["interference"] = {{"kind", "protocol"},
                           {"delta", rational_to_json(in.delta)},
                           {"guard", in.guard == Guard::transmitter ? "transmitter" : "receiver"}};
  } else {
    doc["interference"] = {{"kind", "single_collision_domain"}};
  }
  doc["channels"] = json::array();
  for (const auto& c : net.channels()) doc["channels"].push_back({{"id", c.id}, {"rate", rational_to_json(c.rate)}});
  doc["nodes"] = json::array();
  for (const auto& n : net.nodes()) {
    json node = {{"id", n.id}, {"channels", n.channels}};
    if (n.location) node["location"] = detail::point_to_json(*n.location);
    doc["nodes"].push_back(std::move(node));
  }
  return doc;
}

// --- flows -------------------------------------------------------------------

struct FlowFile {
  FlowConfig flows;
  RouteHints routes;
};

inline FlowFile flows_from_json(const Network& net, const json& doc) {
  detail::check_version(doc);
  const json& flows = detail::field(doc, "flows", "");
  if (!flows.is_object()) throw InputError(ErrorCode::schema, "flows", "expected an object");
  FlowFile out;
  out.flows.dest.assign(net.node_count(), net.node_count());
  for (const auto& [src, dst] : flows.items()) {
    const std::string path = "flows." + src;
    auto s = net.find_node(src);
    if (!s) throw InputError(ErrorCode::unknown_node, path, "no node named '" + src + "'");
    if (!dst.is_string()) throw InputError(ErrorCode::schema, path, "expected a node id");
    auto d = net.find_node(dst.get<std::string>());
    if (!d) throw InputError(ErrorCode::unknown_node, path, "no node named '" + dst.get<std::string>() + "'");
    out.flows.dest[*s] = *d;
  }
  for (NodeIndex v = 0; v < net.node_count(); ++v)
    if (out.flows.dest[v] == net.node_count())
      throw InputError(ErrorCode::invalid_flow, "flows", "node '" + net.node_id(v) + "' has no flow");
  validate_flows(net, out.flows);

  if (auto routes = doc.find("routes"); routes != doc.end()) {
    if (!routes->is_object()) throw InputError(ErrorCode::schema, "routes", "expected an object");
    for (const auto& [src, path_json] : routes->items()) {
      const std::string path = "routes." + src;
      auto s = net.find_node(src);
      if (!s) throw InputError(ErrorCode::unknown_node, path, "no node named '" + src + "'");
      if (!path_json.is_array()) throw InputError(ErrorCode::schema, path, "expected an array of node ids");
      std::vector<NodeIndex> hops;
      for (const auto& h : path_json) {
        if (!h.is_string()) throw InputError(ErrorCode::schema, path, "expected node ids");
        auto v = net.find_node(h.get<std::string>());
        if (!v) throw InputError(ErrorCode::unknown_node, path, "no node named '" + h.get<std::string>() + "'");
        hops.push_back(*v);
      }
      if (hops.size() < 2 || hops.front() != *s || hops.back() != out.flows.dest[*s])
        throw InputError(ErrorCode::invalid_flow, path, "route must run from the source to its destination");
      out.routes[*s] = std::move(hops);
    }
  }
  return out;
}

inline json flows_to_json(const Network& net, const FlowConfig& flows, const RouteHints& routes = {}) {
  json doc;
  doc["format_version"] = kFormatVersion;
  doc["flows"] = json::object();
  for (NodeIndex v = 0; v < flows.dest.size(); ++v) doc["flows"][net.node_id(v)] = net.node_id(flows.dest[v]);
  if (!routes.empty()) {
    doc["routes"] = json::object();
    for (const auto& [src, hops] : routes) {
      json ids = json::array();
      for (NodeIndex h : hops) ids.push_back(net.node_id(h));
      doc["routes"][net.node_id(src)] = std::move(ids);
    }
  }
  return doc;
}

// --- placement ---------------------------------------------------------------

inline Placement placement_from_json(const Network& net, const json& doc) {
  detail::check_version(doc);
  const json& coords = detail::field(doc, "coords", "");
  if (!coords.is_object()) throw InputError(ErrorCode::schema, "coords", "expected an object");
  std::vector<std::optional<Point>> pts(net.node_count());
  for (const auto& [id, p] : coords.items()) {
    auto v = net.find_node(id);
    if (!v) throw InputError(ErrorCode::unknown_node, "coords." + id, "no node named '" + id + "'");
    Point pt = detail::point_from_json(p, "coords." + id);
    if (!net.region().contains(pt)) throw InputError(ErrorCode::invalid_region, "coords." + id, "location outside region");
    pts[*v] = pt;
  }
  Placement out;
  for (NodeIndex v = 0; v < pts.size(); ++v) {
    if (!pts[v]) throw InputError(ErrorCode::missing_location, "coords", "no location for '" + net.node_id(v) + "'");
    out.coords.push_back(*pts[v]);
  }
  return out;
}

inline json placement_to_json(const Network& net, const Placement& p) {
  json doc;
  doc["format_version"] = kFormatVersion;
  doc["coords"] = json::object();
  for (NodeIndex v = 0; v < p.coords.size(); ++v) doc["coords"][net.node_id(v)] = detail::point_to_json(p.coords[v]);
  return doc;
}

// --- STS log -----------------------------------------------------------------

inline StsLog sts_log_from_json(const json& doc) {
  detail::check_version(doc);
  StsLog log;
  log.horizon = rational_from_json(detail::field(doc, "horizon", ""), "horizon");
  const json& entries = detail::array_field(doc, "entries", "");
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const std::string path = "entries[" + std::to_string(i) + "]";
    StsEntry e;
    e.time = rational_from_json(detail::field(entries[i], "t", path), path + ".t");
    e.channel = static_cast<ChannelId>(detail::int_value(detail::field(entries[i], "channel", path), path + ".channel"));
    const json& links = detail::array_field(entries[i], "links", path);
    for (std::size_t k = 0; k < links.size(); ++k) {
      const auto& l = links[k];
      if (!l.is_array() || l.size() != 2 || !l[0].is_string() || !l[1].is_string())
        throw InputError(ErrorCode::schema, path + ".links[" + std::to_string(k) + "]", "expected [\"u\", \"v\"]");
      e.links.push_back({l[0].get<std::string>(), l[1].get<std::string>()});
    }
    if (auto ids = entries[i].find("bit_ids"); ids != entries[i].end()) {
      if (!ids->is_array()) throw InputError(ErrorCode::schema, path + ".bit_ids", "expected an array");
      for (const auto& id : *ids) {
        if (!id.is_string()) throw InputError(ErrorCode::schema, path + ".bit_ids", "expected strings");
        e.bit_ids.push_back(id.get<std::string>());
      }
      if (e.bit_ids.size() != e.links.size())
        throw InputError(ErrorCode::invalid_log, path + ".bit_ids", "bit_ids must parallel links");
    }
    log.entries.push_back(std::move(e));
  }
  return log;
}

inline json sts_log_to_json(const StsLog& log) {
  json doc;
  doc["format_version"] = kFormatVersion;
  doc["horizon"] = rational_to_json(log.horizon);
  doc["entries"] = json::array();
  for (const auto& e : log.entries) {
    json entry = {{"t", rational_to_json(e.time)}, {"channel", e.channel}, {"links", json::array()}};
    for (const auto& l : e.links) entry["links"].push_back(json::array({l.src, l.dst}));
    if (!e.bit_ids.empty()) entry["bit_ids"] = e.bit_ids;
    doc["entries"].push_back(std::move(entry));
  }
  return doc;
}

}  // namespace mcmr::io
