#pragma once

// Table and JSON renderings of capacity results, replay results and scenario
// reports. Output depends only on the inputs, so repeated runs are byte-identical.

#include <charconv>
#include <cstddef>
#include <sstream>
#include <string>
#include <type_traits>
#include <vector>

#include <nlohmann/json.hpp>

#include "mcmr/capacity.hpp"
#include "mcmr/io.hpp"
#include "mcmr/rational.hpp"
#include "mcmr/replay.hpp"

namespace mcmr::report {

using ojson = nlohmann::ordered_json;

enum class Format { table, json };

/// Shortest text that round-trips the double.
inline std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

inline std::string format_value(const Rational& v) { return to_string(v); }
inline std::string format_value(double v) { return format_double(v); }

inline ojson value_json(const Rational& v) { return to_string(v); }
inline ojson value_json(double v) { return v; }

template <class F>
constexpr const char* backend_name() {
  return std::is_same_v<F, Rational> ? "exact" : "float";
}

/// Pads columns to a common width.
class Table {
 public:
  explicit Table(std::vector<std::string> header) : rows_{std::move(header)} {}
  void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }

  std::string str() const {
    std::vector<std::size_t> width;
    for (const auto& r : rows_)
      for (std::size_t c = 0; c < r.size(); ++c) {
        if (width.size() <= c) width.push_back(0);
        width[c] = std::max(width[c], r[c].size());
      }
    std::ostringstream os;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      line(os, rows_[i], width);
      if (i == 0) {
        std::vector<std::string> rule;
        for (std::size_t w : width) rule.push_back(std::string(w, '-'));
        line(os, rule, width);
      }
    }
    return os.str();
  }

 private:
  static void line(std::ostringstream& os, const std::vector<std::string>& r, const std::vector<std::size_t>& width) {
    std::string s;
    for (std::size_t c = 0; c < r.size(); ++c) {
      if (c) s += "  ";
      s += r[c];
      if (c + 1 < r.size()) s += std::string(width[c] - r[c].size(), ' ');
    }
    os << s << "\n";
  }

  std::vector<std::vector<std::string>> rows_;
};

inline std::string path_name(const Network& net, const std::vector<Link>& links) {
  if (links.empty()) return "";
  std::string s = net.node_id(links.front().src);
  for (const auto& l : links) s += " -" + std::to_string(l.channel) + "-> " + net.node_id(l.dst);
  return s;
}

inline std::string set_name(const Network& net, const ActivationSet& set) {
  std::string s = "{";
  for (std::size_t k = 0; k < set.links.size(); ++k) {
    if (k) s += ", ";
    s += detail::link_name(net, set.links[k]);
  }
  return s + "}";
}

// --- capacity ------------------------------------------------------------------

template <class F>
ojson capacity_json(const Network& net, const CapacityResult<F>& r, const Placement* placement = nullptr) {
  ojson j;
  j["backend"] = backend_name<F>();
  j["objective"] = r.objective.name();
  if (r.objective.kind == Objective::Kind::ms) j["scale_by_n"] = r.objective.scale_by_n;
  j["routing"] = routing_name(r.routing);
  j["units"] = r.units;
  j["value"] = value_json(r.value);
  j["flows"] = ojson::object();
  for (NodeIndex v = 0; v < r.flows.dest.size(); ++v) j["flows"][net.node_id(v)] = net.node_id(r.flows.dest[v]);
  j["flow_rates"] = ojson::object();
  for (NodeIndex v = 0; v < r.flow_rates.size(); ++v) j["flow_rates"][net.node_id(v)] = value_json(r.flow_rates[v]);
  j["per_channel"] = ojson::object();
  for (const auto& [ch, v] : r.per_channel) j["per_channel"][std::to_string(ch)] = value_json(v);
  j["paths"] = ojson::array();
  for (const auto& p : r.paths)
    j["paths"].push_back({{"flow", net.node_id(p.source)}, {"path", path_name(net, p.links)}, {"rate", value_json(p.rate)}});
  j["schedule"] = ojson::array();
  for (const auto& [set, share] : r.activation_shares)
    j["schedule"].push_back({{"set", set_name(net, set)}, {"share", value_json(share)}});
  if (placement) j["placement"] = io::placement_to_json(net, *placement)["coords"];
  return j;
}

template <class F>
std::string capacity_table(const Network& net, const CapacityResult<F>& r) {
  std::ostringstream os;
  os << "objective " << r.objective.name();
  if (r.objective.kind == Objective::Kind::ms) os << (r.objective.scale_by_n ? " (x n)" : " (raw min)");
  os << ", routing " << routing_name(r.routing) << ", backend " << backend_name<F>() << "\n";
  os << "value " << format_value(r.value) << " " << r.units << "\n\n";
  Table flows({"flow", "rate"});
  for (NodeIndex v = 0; v < r.flow_rates.size(); ++v)
    flows.add({net.node_id(v) + " -> " + net.node_id(r.flows.dest[v]), format_value(r.flow_rates[v])});
  os << flows.str() << "\n";
  Table paths({"path", "rate"});
  for (const auto& p : r.paths) paths.add({path_name(net, p.links), format_value(p.rate)});
  os << paths.str() << "\n";
  Table sched({"activation set", "share"});
  for (const auto& [set, share] : r.activation_shares) sched.add({set_name(net, set), format_value(share)});
  os << sched.str();
  return os.str();
}

// --- replay --------------------------------------------------------------------

inline ojson replay_json(const ReplayResult& r, const ReplicationReport& rep) {
  ojson j;
  j["durations"] = ojson::object();
  for (const auto& s : r.schedules) j["durations"][std::to_string(s.target)] = to_string(s.duration);
  j["s_hat"] = to_string(r.max_duration);
  j["bound_ok"] = r.bound_ok;
  j["replication_ok"] = rep.ok;
  j["schedules"] = ojson::array();
  for (const auto& s : r.schedules) {
    ojson items = ojson::array();
    for (const auto& it : s.items) items.push_back({{"t", to_string(it.original_time)}, {"channel", it.channel}});
    j["schedules"].push_back({{"channel", s.target},
                              {"segment", {to_string(s.segment.start), to_string(s.segment.end)}},
                              {"duration", to_string(s.duration)},
                              {"items", std::move(items)}});
  }
  j["issues"] = rep.issues;
  j["cross_segment_hops"] = rep.cross_segment_hops;
  j["warnings"] = r.warnings;
  return j;
}

inline std::string replay_table(const ReplayResult& r, const ReplicationReport& rep) {
  std::ostringstream os;
  Table t({"projection", "segment", "STSs", "s_j"});
  for (const auto& s : r.schedules)
    t.add({std::to_string(s.target), "[" + to_string(s.segment.start) + ", " + to_string(s.segment.end) + "]",
           std::to_string(s.items.size()), to_string(s.duration)});
  os << t.str();
  os << "s_hat " << to_string(r.max_duration) << "\n";
  os << "bounds " << (r.bound_ok ? "hold" : "VIOLATED") << "\n";
  os << "replication " << (rep.ok ? "ok" : "FAILED") << "\n";
  for (const auto& i : rep.issues) os << "  issue: " << i << "\n";
  for (const auto& h : rep.cross_segment_hops) os << "  cross-segment: " << h << "\n";
  for (const auto& w : r.warnings) os << "  warning: " << w << "\n";
  return os.str();
}

// --- scenarios -----------------------------------------------------------------

struct Check {
  std::string description;
  std::string expected;
  std::string actual;
  bool pass = false;
  std::string basis;  // "quoted" for stated values, "derived" for values worked out here
};

struct ScenarioReport {
  std::string id;
  std::string title;
  std::vector<Check> checks;
  std::vector<std::string> notes;

  bool pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return !checks.empty();
  }
};

inline ojson scenario_json(const ScenarioReport& r) {
  ojson j;
  j["scenario"] = r.id;
  j["title"] = r.title;
  j["checks"] = ojson::array();
  for (const auto& c : r.checks)
    j["checks"].push_back({{"description", c.description},
                           {"expected", c.expected},
                           {"actual", c.actual},
                           {"pass", c.pass},
                           {"basis", c.basis}});
  j["notes"] = r.notes;
  j["overall"] = r.pass() ? "pass" : "fail";
  return j;
}

inline std::string scenario_table(const ScenarioReport& r) {
  std::ostringstream os;
  os << r.id << ": " << r.title << "\n";
  Table t({"check", "expected", "actual", "result", "basis"});
  for (const auto& c : r.checks) t.add({c.description, c.expected, c.actual, c.pass ? "PASS" : "FAIL", c.basis});
  os << t.str();
  for (const auto& n : r.notes) os << "note: " << n << "\n";
  os << "overall " << (r.pass() ? "PASS" : "FAIL") << "\n";
  return os.str();
}

}  // namespace mcmr::report
