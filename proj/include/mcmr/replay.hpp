#pragma once

// Replays a multi-channel transmission history on the single-channel
// projections. The horizon T is cut into segments T_j proportional to the
// channel rates; projection j replays, in completion-time order, every
// simultaneous transmission set (STS) completed during segment j, taking one of
// its own ticks per STS. The replay time s_j = tau_j * sum_i L_ij satisfies
// T <= s_j < T + c * tau_j.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mcmr/errors.hpp"
#include "mcmr/interference.hpp"
#include "mcmr/model.hpp"
#include "mcmr/rational.hpp"

namespace mcmr {

struct LoggedLink {
  std::string src;
  std::string dst;
  friend bool operator==(const LoggedLink&, const LoggedLink&) = default;
  friend auto operator<=>(const LoggedLink&, const LoggedLink&) = default;
};

/// One STS: the transmissions that completed on `channel` at `time`.
/// An empty `links` list records an idle tick. `bit_ids`, when present, runs
/// parallel to `links`.
struct StsEntry {
  Rational time;
  ChannelId channel = 0;
  std::vector<LoggedLink> links;
  std::vector<std::string> bit_ids;
  friend bool operator==(const StsEntry&, const StsEntry&) = default;
};

struct StsLog {
  Rational horizon;
  std::vector<StsEntry> entries;
  friend bool operator==(const StsLog&, const StsLog&) = default;
};

struct Segment {
  Rational start;
  Rational end;
  Rational length() const { return end - start; }
};

/// T_j = w_j / (sum_i w_i) * T.
inline std::vector<Rational> partition_interval(const Rational& horizon, std::span<const Channel> channels) {
  if (horizon <= 0) throw InputError(ErrorCode::invalid_log, "horizon", "T must be positive");
  if (channels.empty()) throw InputError(ErrorCode::invalid_log, "channels", "no channels");
  Rational total(0);
  for (const auto& c : channels) total += c.rate;
  std::vector<Rational> out;
  for (const auto& c : channels) {
    Rational t = c.rate / total * horizon;
    t.canonicalize();
    out.push_back(t);
  }
  return out;
}

inline std::vector<Segment> segments(const Rational& horizon, std::span<const Channel> channels) {
  std::vector<Segment> out;
  Rational at(0);
  for (const auto& t : partition_interval(horizon, channels)) {
    out.push_back({at, at + t});
    at += t;
  }
  return out;
}

/// L_ij = ceil(T_j / tau_i) = ceil(T_j * w_i) for every channel i.
inline std::vector<mpz_class> sts_counts(const Rational& segment_length, std::span<const Channel> channels) {
  if (segment_length <= 0) throw InputError(ErrorCode::invalid_log, "segment", "segment length must be positive");
  std::vector<mpz_class> out;
  for (const auto& c : channels) out.push_back(ceil(Rational(segment_length * c.rate)));
  return out;
}

namespace detail {

inline const Channel& channel_of(std::span<const Channel> channels, ChannelId id, const std::string& path) {
  for (const auto& c : channels)
    if (c.id == id) return c;
  throw InputError(ErrorCode::unknown_channel, path, "channel " + std::to_string(id) + " not declared");
}

// Segment index and tick number k of an entry: time = start_j + k * tau_i with 1 <= k <= L_ij.
inline std::pair<std::size_t, mpz_class> locate_tick(const StsEntry& e, const std::vector<Segment>& segs,
                                                     std::span<const Channel> channels, const std::string& path) {
  const Channel& ch = channel_of(channels, e.channel, path + ".channel");
  if (e.time <= 0 || e.time > segs.back().end + ch.tick())
    throw InputError(ErrorCode::invalid_log, path + ".t", "entry outside the horizon");
  for (std::size_t j = 0; j < segs.size(); ++j) {
    Rational k = (e.time - segs[j].start) * ch.rate;
    if (k.get_den() != 1 || k < 1) continue;
    if (k.get_num() <= ceil(Rational(segs[j].length() * ch.rate))) return {j, k.get_num()};
  }
  throw InputError(ErrorCode::tick_misalignment, path + ".t",
                   "time " + to_string(e.time) + " is not a tick of channel " + std::to_string(e.channel) +
                       " within any segment");
}

}  // namespace detail

struct ReplayItem {
  Rational original_time;
  ChannelId channel = 0;
  std::size_t entry = 0;  // index into the log
};

/// The ordered replay on projection `target` of segment `segment`.
struct ReplaySchedule {
  ChannelId target = 0;
  Segment segment;
  std::vector<ReplayItem> items;
  Rational duration;  // s_j
};

/// Builds the replay schedule for projection j: the segment's STSs sorted by
/// completion time, ties broken by channel id.
inline ReplaySchedule build_replay_schedule(const StsLog& log, ChannelId target, std::span<const Channel> channels,
                                            std::vector<std::string>* warnings = nullptr) {
  auto segs = segments(log.horizon, channels);
  std::size_t j = 0;
  while (j < channels.size() && channels[j].id != target) ++j;
  if (j == channels.size()) throw InputError(ErrorCode::unknown_channel, "target", "unknown target channel");
  ReplaySchedule s;
  s.target = target;
  s.segment = segs[j];
  for (std::size_t e = 0; e < log.entries.size(); ++e) {
    const std::string path = "entries[" + std::to_string(e) + "]";
    const auto& entry = log.entries[e];
    if (!entry.bit_ids.empty() && entry.bit_ids.size() != entry.links.size())
      throw InputError(ErrorCode::invalid_log, path + ".bit_ids", "bit_ids must parallel links");
    auto [seg, k] = detail::locate_tick(entry, segs, channels, path);
    if (seg == j) s.items.push_back({entry.time, entry.channel, e});
  }
  std::stable_sort(s.items.begin(), s.items.end(), [](const ReplayItem& a, const ReplayItem& b) {
    if (a.original_time != b.original_time) return a.original_time < b.original_time;
    return a.channel < b.channel;
  });
  s.duration = channels[j].tick() * Rational(static_cast<long>(s.items.size()));
  if (s.items.empty() && warnings) warnings->push_back("segment " + std::to_string(target) + " is empty; bound check skipped");
  return s;
}

struct ReplayResult {
  std::vector<ReplaySchedule> schedules;  // by channel id
  std::vector<Rational> durations;        // s_j
  Rational max_duration;                  // s-hat
  bool bound_ok = false;
  std::vector<std::string> warnings;
};

/// Requires every segment to log exactly L_ij ticks per channel (idle ticks as
/// empty entries). Checks T <= s_j < T + c*tau_j and T <= s-hat < T + c*max tau.
inline ReplayResult run_replay(const StsLog& log, std::span<const Channel> channels) {
  auto segs = segments(log.horizon, channels);
  const std::size_t c = channels.size();
  // (segment, channel) -> seen tick numbers.
  std::vector<std::vector<std::vector<mpz_class>>> seen(c, std::vector<std::vector<mpz_class>>(c));
  for (std::size_t e = 0; e < log.entries.size(); ++e) {
    const std::string path = "entries[" + std::to_string(e) + "]";
    auto [seg, k] = detail::locate_tick(log.entries[e], segs, channels, path);
    std::size_t ci = 0;
    while (channels[ci].id != log.entries[e].channel) ++ci;
    seen[seg][ci].push_back(k);
  }
  for (std::size_t j = 0; j < c; ++j) {
    auto counts = sts_counts(segs[j].length(), channels);
    for (std::size_t i = 0; i < c; ++i) {
      auto& ticks = seen[j][i];
      std::sort(ticks.begin(), ticks.end());
      if (std::adjacent_find(ticks.begin(), ticks.end()) != ticks.end())
        throw InputError(ErrorCode::invalid_log, "entries",
                         "duplicate tick on channel " + std::to_string(channels[i].id));
      if (mpz_class(static_cast<unsigned long>(ticks.size())) != counts[i])
        throw InputError(ErrorCode::incomplete_log, "entries",
                         "segment " + std::to_string(channels[j].id) + " logs " + std::to_string(ticks.size()) +
                             " ticks of channel " + std::to_string(channels[i].id) + ", expected " +
                             counts[i].get_str());
    }
  }
  ReplayResult r;
  r.bound_ok = true;
  Rational max_tau(0);
  for (const auto& ch : channels) {
    auto s = build_replay_schedule(log, ch.id, channels, &r.warnings);
    const Rational& d = s.duration;
    if (!(log.horizon <= d && d < log.horizon + Rational(static_cast<long>(c)) * ch.tick())) r.bound_ok = false;
    if (ch.tick() > max_tau) max_tau = ch.tick();
    if (r.durations.empty() || d > r.max_duration) r.max_duration = d;
    r.durations.push_back(d);
    r.schedules.push_back(std::move(s));
  }
  if (!(log.horizon <= r.max_duration && r.max_duration < log.horizon + Rational(static_cast<long>(c)) * max_tau))
    r.bound_ok = false;
  return r;
}

struct ReplicationReport {
  bool ok = true;
  std::vector<std::string> issues;
  /// Bits whose consecutive hops fall in different segments (replayed on different projections).
  std::vector<std::string> cross_segment_hops;
};

/// Replayed STSs must equal the logged ones as a multiset, each schedule must be
/// in nondecreasing completion-time order, and for bits with ids, hop k must
/// replay before hop k+1 (same segment) or sit in an earlier segment.
inline ReplicationReport verify_replication(const StsLog& log, const std::vector<ReplaySchedule>& schedules,
                                            std::span<const Channel> channels) {
  ReplicationReport rep;
  auto fail = [&](std::string msg) {
    rep.ok = false;
    rep.issues.push_back(std::move(msg));
  };
  auto segs = segments(log.horizon, channels);
  std::vector<int> uses(log.entries.size(), 0);
  // entry -> (schedule index, position)
  std::vector<std::pair<std::size_t, std::size_t>> where(log.entries.size(), {0, 0});
  for (std::size_t s = 0; s < schedules.size(); ++s) {
    const auto& items = schedules[s].items;
    for (std::size_t p = 0; p < items.size(); ++p) {
      const auto& it = items[p];
      if (it.entry >= log.entries.size()) {
        fail("schedule item refers to a missing entry");
        continue;
      }
      const auto& e = log.entries[it.entry];
      if (e.time != it.original_time || e.channel != it.channel)
        fail("schedule item differs from logged entry " + std::to_string(it.entry));
      ++uses[it.entry];
      where[it.entry] = {s, p};
      if (p > 0) {
        const auto& prev = items[p - 1];
        if (prev.original_time > it.original_time ||
            (prev.original_time == it.original_time && prev.channel > it.channel))
          fail("schedule " + std::to_string(schedules[s].target) + " out of completion order at position " +
               std::to_string(p));
      }
    }
  }
  for (std::size_t e = 0; e < uses.size(); ++e) {
    if (uses[e] == 0) fail("entry " + std::to_string(e) + " is never replayed");
    if (uses[e] > 1) fail("entry " + std::to_string(e) + " is replayed " + std::to_string(uses[e]) + " times");
  }
  if (!rep.ok) return rep;

  // Hop ordering for identified bits.
  std::map<std::string, std::vector<std::size_t>> hops;
  for (std::size_t e = 0; e < log.entries.size(); ++e)
    for (const auto& id : log.entries[e].bit_ids) hops[id].push_back(e);
  for (auto& [bit, entries] : hops) {
    std::stable_sort(entries.begin(), entries.end(),
                     [&](std::size_t a, std::size_t b) { return log.entries[a].time < log.entries[b].time; });
    for (std::size_t k = 0; k + 1 < entries.size(); ++k) {
      const auto& a = log.entries[entries[k]];
      const auto& b = log.entries[entries[k + 1]];
      if (a.time == b.time) {
        fail("bit " + bit + " makes two hops in the same instant");
        continue;
      }
      auto [sa, pa] = where[entries[k]];
      auto [sb, pb] = where[entries[k + 1]];
      if (sa == sb) {
        if (pa >= pb) fail("bit " + bit + " hop " + std::to_string(k + 2) + " replays before hop " + std::to_string(k + 1));
      } else {
        if (schedules[sa].segment.start >= schedules[sb].segment.start)
          fail("bit " + bit + " hop " + std::to_string(k + 2) + " sits in an earlier segment than hop " +
               std::to_string(k + 1));
        rep.cross_segment_hops.push_back(bit + ": hop " + std::to_string(k + 1) + " on projection " +
                                         std::to_string(schedules[sa].target) + ", hop " + std::to_string(k + 2) +
                                         " on projection " + std::to_string(schedules[sb].target));
      }
    }
  }
  return rep;
}

/// Checks each entry's transmissions against a network: real links on the entry's
/// channel forming a feasible activation set. Returns violations.
inline std::vector<std::string> check_log_transmissions(const StsLog& log, const Network& net,
                                                        const Placement* placement = nullptr) {
  std::vector<std::string> problems;
  for (std::size_t e = 0; e < log.entries.size(); ++e) {
    const auto& entry = log.entries[e];
    ActivationSet set;
    bool ok = true;
    for (const auto& l : entry.links) {
      auto s = net.find_node(l.src), d = net.find_node(l.dst);
      if (!s || !d || *s == *d || !net.has_interface(*s, entry.channel) || !net.has_interface(*d, entry.channel)) {
        problems.push_back("entry " + std::to_string(e) + ": " + l.src + "->" + l.dst + " is not a link on channel " +
                           std::to_string(entry.channel));
        ok = false;
        continue;
      }
      set.links.push_back({*s, *d, entry.channel});
    }
    std::sort(set.links.begin(), set.links.end());
    if (ok && !activation_feasible(set, net, placement))
      problems.push_back("entry " + std::to_string(e) + ": transmissions are not simultaneously feasible");
  }
  return problems;
}

/// A complete tick-aligned log: for each segment and channel, ticks
/// start_j + k*tau_i for k = 1..L_ij, with transmissions chosen by `fill`.
inline StsLog build_tick_aligned_log(
    const Rational& horizon, std::span<const Channel> channels,
    const std::function<std::vector<LoggedLink>(ChannelId, std::size_t /*segment*/, const Rational& /*time*/)>& fill) {
  StsLog log;
  log.horizon = horizon;
  auto segs = segments(horizon, channels);
  for (std::size_t j = 0; j < segs.size(); ++j) {
    auto counts = sts_counts(segs[j].length(), channels);
    for (std::size_t i = 0; i < channels.size(); ++i) {
      for (mpz_class k = 1; k <= counts[i]; ++k) {
        StsEntry e;
        e.time = segs[j].start + Rational(k) * channels[i].tick();
        e.channel = channels[i].id;
        if (fill) e.links = fill(e.channel, j, e.time);
        log.entries.push_back(std::move(e));
      }
    }
  }
  std::stable_sort(log.entries.begin(), log.entries.end(), [](const StsEntry& a, const StsEntry& b) {
    if (a.time != b.time) return a.time < b.time;
    return a.channel < b.channel;
  });
  return log;
}

/// Bit-meters delivered by a log: bits with ids travel from their first hop's
/// source to their last hop's destination; anonymous transmissions are one-hop bits.
inline double delivered_bit_meters(const StsLog& log, const std::map<std::string, Point>& coords) {
  auto dist = [&](const std::string& a, const std::string& b) {
    return std::sqrt(squared_distance(coords.at(a), coords.at(b)).get_d());
  };
  double total = 0;
  std::map<std::string, std::pair<std::pair<Rational, std::string>, std::pair<Rational, std::string>>> ends;
  for (const auto& e : log.entries)
    for (std::size_t k = 0; k < e.links.size(); ++k) {
      if (e.bit_ids.empty()) {
        total += dist(e.links[k].src, e.links[k].dst);
        continue;
      }
      auto [it, fresh] = ends.try_emplace(e.bit_ids[k], std::pair{e.time, e.links[k].src}, std::pair{e.time, e.links[k].dst});
      if (!fresh) {
        if (e.time < it->second.first.first) it->second.first = {e.time, e.links[k].src};
        if (e.time > it->second.second.first) it->second.second = {e.time, e.links[k].dst};
      }
    }
  for (const auto& [bit, se] : ends) total += dist(se.first.second, se.second.second);
  return total;
}

}  // namespace mcmr
