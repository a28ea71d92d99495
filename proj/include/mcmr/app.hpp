#pragma once

// Command-line front end. `run` parses arguments, dispatches a subcommand and
// returns the process exit code: 0 success, 1 internal error, 2 invalid input,
// 3 failed scenario or strict check.

#include <fstream>
#include <iterator>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mcmr/capacity.hpp"
#include "mcmr/interference.hpp"
#include "mcmr/io.hpp"
#include "mcmr/placement.hpp"
#include "mcmr/replay.hpp"
#include "mcmr/report.hpp"
#include "mcmr/scenarios.hpp"

namespace mcmr::app {

enum ExitCode : int { ok = 0, internal_error = 1, invalid_input = 2, check_failed = 3 };

struct Args {
  std::string network;
  std::string flows;
  std::string placement;
  std::string search;
  std::string routing = "mr";
  std::string objective = "transport";
  bool scale_n = false;
  std::string backend = "exact";
  std::string output = "table";
  bool strict = false;
  std::size_t budget = kDefaultEvaluationBudget;
  std::string log;
  std::string what = "sets";
  std::vector<std::string> ids;
  bool list = false;
  std::uint64_t seed = scenarios::ScenarioOptions{}.seed;
};

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(ErrorCode::schema, path, "cannot read file");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline CandidateStrategy parse_search(const std::string& s) {
  if (s == "corners") return CornersAndMidpoints{};
  if (s == "diameter") return DiameterEndpoints{};
  if (s.rfind("grid:", 0) == 0) {
    const std::string k = s.substr(5);
    if (k.empty() || k.find_first_not_of("0123456789") != std::string::npos || k.size() > 4)
      throw InputError(ErrorCode::schema, "--search", "expected grid:K");
    return GridStrategy{std::stoul(k)};
  }
  throw InputError(ErrorCode::schema, "--search", "expected grid:K, corners or diameter");
}

/// Inputs shared by the capacity-style subcommands.
struct Inputs {
  Network net;
  std::optional<io::FlowFile> flows;
  std::optional<Placement> placement;
  std::optional<CandidateStrategy> search;
  Routing routing;
  Objective objective;
};

inline Inputs load_inputs(const Args& a) {
  if (a.network.empty()) throw InputError(ErrorCode::schema, "--network", "a network file is required");
  Inputs in{io::parse_network(read_file(a.network)), {}, {}, {}, Routing::multi_channel, Objective::as()};
  if (!a.flows.empty()) in.flows = io::flows_from_json(in.net, io::parse_json(read_file(a.flows)));
  if (!a.placement.empty() && !a.search.empty())
    throw InputError(ErrorCode::schema, "--placement", "--placement and --search are exclusive");
  if (!a.placement.empty()) {
    if (!in.net.region().geometric())
      throw InputError(ErrorCode::invalid_region, "--placement", "abstract regions take no placement");
    in.placement = io::placement_from_json(in.net, io::parse_json(read_file(a.placement)));
  } else if (in.net.region().geometric()) {
    in.placement = in.net.placement();
  }
  if (!a.search.empty()) {
    in.search = parse_search(a.search);
    in.placement.reset();
  }
  in.routing = a.routing == "sr" ? Routing::single_channel : Routing::multi_channel;
  if (a.objective == "ms") in.objective = Objective::ms(a.scale_n);
  else if (a.objective == "as") in.objective = Objective::as();
  else in.objective = Objective::transport();
  return in;
}

inline void require_located(const Inputs& in) {
  if (in.net.region().geometric() && !in.placement && !in.search)
    throw InputError(ErrorCode::missing_location, "--placement", "geometric networks need locations, --placement or --search");
}

inline void emit(std::ostream& out, const Args& a, const report::ojson& j, const std::string& table) {
  if (a.output == "json") out << j.dump(2) << "\n";
  else out << table;
}

// --- subcommands -------------------------------------------------------------

template <class F>
int cmd_capacity(const Args& a, const Inputs& in, std::ostream& out) {
  require_located(in);
  const Placement* p = in.placement ? &*in.placement : nullptr;
  if (in.search) {
    FlowHandling fh = in.flows ? FlowHandling::fixed_flows(in.flows->flows, in.flows->routes) : FlowHandling::enumerate();
    auto best = optimize_over_placements<F>(in.net, *in.search, in.routing, in.objective, fh, a.budget);
    auto j = report::capacity_json(in.net, best.result, &best.placement);
    j["evaluations"] = best.evaluations;
    std::string table = report::capacity_table(in.net, best.result);
    table += "\nbest placement " + io::placement_to_json(in.net, best.placement)["coords"].dump() + "\n";
    table += "evaluations " + std::to_string(best.evaluations) + "\n";
    emit(out, a, j, table);
    return ok;
  }
  if (in.flows) {
    auto r = conditional_capacity<F>(in.net, p, in.flows->flows, in.routing, in.objective, in.flows->routes);
    emit(out, a, report::capacity_json(in.net, r, p), report::capacity_table(in.net, r));
    return ok;
  }
  auto best = optimize_over_flows<F>(in.net, p, in.routing, in.objective, a.budget);
  auto j = report::capacity_json(in.net, best.result, p);
  j["evaluations"] = best.evaluations;
  emit(out, a, j, report::capacity_table(in.net, best.result) + "evaluations " + std::to_string(best.evaluations) + "\n");
  return ok;
}

inline std::string flows_text(const Network& net, const FlowConfig& f) {
  std::string s;
  for (NodeIndex v = 0; v < f.dest.size(); ++v) s += (v ? " " : "") + net.node_id(v) + ">" + net.node_id(f.dest[v]);
  return s;
}

inline int cmd_expected(const Args& a, const Inputs& in, std::ostream& out) {
  if (a.backend != "exact") throw InputError(ErrorCode::unsupported, "--backend", "expectations use the exact backend");
  auto e = expected_capacity_detail(in.net, in.routing, in.objective);
  auto configs = enumerate_flow_configs(in.net);
  report::ojson j;
  j["backend"] = "exact";
  j["objective"] = in.objective.name();
  if (in.objective.kind == Objective::Kind::ms) j["scale_by_n"] = in.objective.scale_by_n;
  j["routing"] = routing_name(in.routing);
  j["value"] = to_string(e.value);
  j["configs"] = report::ojson::array();
  report::Table t({"flows", "value"});
  for (std::size_t i = 0; i < configs.size(); ++i) {
    j["configs"].push_back({{"flows", flows_text(in.net, configs[i])}, {"value", to_string(e.per_config[i])}});
    t.add({flows_text(in.net, configs[i]), to_string(e.per_config[i])});
  }
  emit(out, a, j,
       "expected " + std::string(in.objective.name()) + " capacity (" + routing_name(in.routing) + ", " +
           std::to_string(configs.size()) + " configurations) " + to_string(e.value) + "\n\n" + t.str());
  return ok;
}

template <class F>
int cmd_separability_search(const Args& a, const Inputs& in, std::ostream& out) {
  auto proj = projected_capacity_sum_over_candidates<F>(in.net, *in.search, in.objective, a.budget);
  auto best = optimize_over_placements<F>(in.net, *in.search, in.routing, in.objective, FlowHandling::enumerate(), a.budget);
  const double eps = 1e-9;
  int sign = 0;
  if constexpr (std::is_floating_point_v<F>) {
    sign = best.value < proj.sum - eps ? 1 : (best.value > proj.sum + eps ? -1 : 0);
  } else {
    sign = sgn(Rational(proj.sum - best.value));
  }
  report::ojson j;
  j["backend"] = report::backend_name<F>();
  j["capacity"] = report::value_json(best.value);
  j["projected_sum"] = report::value_json(proj.sum);
  j["per_channel"] = report::ojson::object();
  for (const auto& [ch, v] : proj.per_channel) j["per_channel"][std::to_string(ch)] = report::value_json(v);
  j["relation"] = sign > 0 ? "capacity < sum" : (sign < 0 ? "capacity > sum" : "capacity = sum");
  j["evaluations"] = proj.evaluations + best.evaluations;
  std::ostringstream os;
  os << "capacity " << report::format_value(best.value) << "\n";
  for (const auto& [ch, v] : proj.per_channel) os << "C'_" << ch << " " << report::format_value(v) << "\n";
  os << "projected sum " << report::format_value(proj.sum) << "\n" << j["relation"].get<std::string>() << "\n";
  emit(out, a, j, os.str());
  return a.strict && sign <= 0 ? check_failed : ok;
}

inline int cmd_separability(const Args& a, const Inputs& in, std::ostream& out) {
  if (in.search) {
    if (a.backend == "float") return cmd_separability_search<double>(a, in, out);
    return cmd_separability_search<Rational>(a, in, out);
  }
  if (in.net.region().geometric())
    throw InputError(ErrorCode::unsupported, "--search", "geometric networks need --search for separability");
  auto r = separability_report(in.net, in.objective, in.routing);
  report::ojson j;
  j["backend"] = "exact";
  j["capacity"] = to_string(r.capacity);
  j["projected_sum"] = to_string(r.projected_sum);
  j["gap"] = to_string(r.gap);
  j["relation"] = r.sign() > 0 ? "capacity < sum" : (r.sign() < 0 ? "capacity > sum" : "capacity = sum");
  emit(out, a, j,
       "capacity " + to_string(r.capacity) + "\nprojected sum " + to_string(r.projected_sum) + "\ngap " +
           to_string(r.gap) + "\n" + j["relation"].get<std::string>() + "\n");
  return a.strict && r.sign() <= 0 ? check_failed : ok;
}

template <class F>
int cmd_compare_routing(const Args& a, const Inputs& in, std::ostream& out) {
  require_located(in);
  F multi{}, single{};
  const Placement* p = in.placement ? &*in.placement : nullptr;
  if (!in.net.region().geometric() && !in.flows) {
    if constexpr (std::is_same_v<F, Rational>) {
      auto c = compare_routing(in.net, in.objective, std::nullopt);
      multi = c.multi;
      single = c.single;
    } else {
      throw InputError(ErrorCode::unsupported, "--backend", "expectations use the exact backend");
    }
  } else {
    auto value = [&](Routing routing) -> F {
      if (in.search) {
        FlowHandling fh = in.flows ? FlowHandling::fixed_flows(in.flows->flows) : FlowHandling::enumerate();
        return optimize_over_placements<F>(in.net, *in.search, routing, in.objective, fh, a.budget).value;
      }
      if (in.flows) return conditional_capacity<F>(in.net, p, in.flows->flows, routing, in.objective).value;
      return optimize_over_flows<F>(in.net, p, routing, in.objective, a.budget).value;
    };
    multi = value(Routing::multi_channel);
    single = value(Routing::single_channel);
  }
  report::ojson j;
  j["backend"] = report::backend_name<F>();
  j["objective"] = in.objective.name();
  j["mr"] = report::value_json(multi);
  j["sr"] = report::value_json(single);
  j["difference"] = report::value_json(F(multi - single));
  emit(out, a, j,
       "mr " + report::format_value(multi) + "\nsr " + report::format_value(single) + "\ndifference " +
           report::format_value(F(multi - single)) + "\n");
  return a.strict && !(multi >= single) ? check_failed : ok;
}

inline int cmd_replay(const Args& a, std::ostream& out) {
  if (a.log.empty()) throw InputError(ErrorCode::schema, "--log", "an STS log file is required");
  if (a.network.empty()) throw InputError(ErrorCode::schema, "--network", "a network file is required");
  Network net = io::parse_network(read_file(a.network));
  StsLog log = io::sts_log_from_json(io::parse_json(read_file(a.log)));
  auto res = run_replay(log, net.channels());
  auto rep = verify_replication(log, res.schedules, net.channels());
  std::optional<Placement> placement = net.placement();
  if (!a.placement.empty()) placement = io::placement_from_json(net, io::parse_json(read_file(a.placement)));
  std::vector<std::string> infeasible;
  if (net.interference().kind == InterferenceSpec::Kind::protocol && !placement)
    res.warnings.push_back("no locations: transmissions not checked against the protocol model");
  else
    infeasible = check_log_transmissions(log, net, placement ? &*placement : nullptr);
  for (const auto& s : infeasible) rep.issues.push_back(s);
  auto j = report::replay_json(res, rep);
  j["transmissions_ok"] = infeasible.empty();
  emit(out, a, j, report::replay_table(res, rep) + "transmissions " + (infeasible.empty() ? "feasible" : "INFEASIBLE") + "\n");
  return a.strict && !(res.bound_ok && rep.ok && infeasible.empty()) ? check_failed : ok;
}

inline int cmd_scenario(const Args& a, std::ostream& out) {
  if (a.list) {
    for (const auto& e : scenarios::registry()) out << e.id << "\n";
    return ok;
  }
  std::vector<std::string> ids = a.ids;
  if (ids.empty()) throw InputError(ErrorCode::schema, "scenario", "name a scenario id, all, or --list");
  if (ids.size() == 1 && ids.front() == "all") {
    ids.clear();
    for (const auto& e : scenarios::registry()) ids.push_back(e.id);
  }
  for (const auto& id : ids) {
    bool known = false;
    for (const auto& e : scenarios::registry()) known = known || id == e.id;
    if (!known) throw InputError(ErrorCode::unknown_scenario, "scenario", "unknown scenario '" + id + "'");
  }
  scenarios::ScenarioOptions opts;
  opts.seed = a.seed;
  opts.budget = a.budget;
  bool all_pass = true;
  report::ojson reports = report::ojson::array();
  for (const auto& id : ids) {
    auto r = scenarios::run_scenario(id, opts);
    all_pass = all_pass && r.pass();
    if (a.output == "json") reports.push_back(report::scenario_json(r));
    else out << report::scenario_table(r) << "\n";
  }
  if (a.output == "json") out << (reports.size() == 1 ? reports[0] : reports).dump(2) << "\n";
  return a.strict && !all_pass ? check_failed : ok;
}

inline int cmd_enumerate(const Args& a, const Inputs& in, std::ostream& out) {
  report::ojson j = report::ojson::array();
  report::Table t({a.what == "flows" ? "flow configuration" : "maximal activation set"});
  if (a.what == "flows") {
    for (const auto& f : enumerate_flow_configs(in.net, a.budget)) {
      j.push_back(flows_text(in.net, f));
      t.add({flows_text(in.net, f)});
    }
  } else {
    require_located(in);
    if (in.search) throw InputError(ErrorCode::unsupported, "--search", "enumerate needs one placement");
    for (const auto& s : enumerate_maximal_activation_sets(in.net, in.placement ? &*in.placement : nullptr, a.budget)) {
      j.push_back(report::set_name(in.net, s));
      t.add({report::set_name(in.net, s)});
    }
  }
  emit(out, a, j, t.str() + std::to_string(j.size()) + " total\n");
  return ok;
}

// --- entry point ---------------------------------------------------------------

inline void add_common(CLI::App* sub, Args& a) {
  sub->add_option("--network", a.network, "network JSON file");
  sub->add_option("--flows", a.flows, "flow configuration JSON file");
  sub->add_option("--placement", a.placement, "placement JSON file");
  sub->add_option("--search", a.search, "candidate placements: grid:K, corners or diameter");
  sub->add_option("--routing", a.routing, "mr or sr")->check(CLI::IsMember({"mr", "sr"}));
  sub->add_option("--objective", a.objective, "transport, ms or as")->check(CLI::IsMember({"transport", "ms", "as"}));
  sub->add_flag("--scale-n", a.scale_n, "report MS as n x min rate");
  sub->add_option("--backend", a.backend, "exact or float")->check(CLI::IsMember({"exact", "float"}));
  sub->add_option("--output", a.output, "table or json")->check(CLI::IsMember({"table", "json"}));
  sub->add_flag("--strict", a.strict, "exit 3 when a check fails");
  sub->add_option("--budget", a.budget, "maximum number of LP evaluations or enumerated sets");
}

inline int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  Args a;
  CLI::App cli("Capacity of multi-channel multi-radio wireless networks", "mcmr");
  cli.require_subcommand(1);
  auto* capacity = cli.add_subcommand("capacity", "conditional capacity for given flows, or its max over flows/placements");
  auto* expected = cli.add_subcommand("expected", "expectation over all flow configurations (abstract region)");
  auto* separability = cli.add_subcommand("separability", "capacity versus the sum of single-channel projections");
  auto* compare = cli.add_subcommand("compare-routing", "multi-channel versus single-channel routing");
  auto* replay = cli.add_subcommand("replay", "replay an STS log on the single-channel projections");
  auto* scenario = cli.add_subcommand("scenario", "run built-in scenarios");
  auto* enumerate = cli.add_subcommand("enumerate", "list maximal activation sets or flow configurations");
  for (auto* sub : {capacity, expected, separability, compare, replay, scenario, enumerate}) add_common(sub, a);
  replay->add_option("--log", a.log, "STS log JSON file");
  scenario->add_option("ids", a.ids, "scenario ids, or all");
  scenario->add_flag("--list", a.list, "list scenario ids");
  scenario->add_option("--seed", a.seed, "seed for randomized scenarios");
  enumerate->add_option("--what", a.what, "sets or flows")->check(CLI::IsMember({"sets", "flows"}));

  std::vector<std::string> args(argv.rbegin(), argv.rend());
  try {
    cli.parse(args);
  } catch (const CLI::ParseError& e) {
    int code = cli.exit(e, out, err);
    return code == 0 ? ok : invalid_input;
  }

  try {
    if (replay->parsed()) return cmd_replay(a, out);
    if (scenario->parsed()) return cmd_scenario(a, out);
    Inputs in = load_inputs(a);
    const bool flt = a.backend == "float";
    if (capacity->parsed()) return flt ? cmd_capacity<double>(a, in, out) : cmd_capacity<Rational>(a, in, out);
    if (expected->parsed()) return cmd_expected(a, in, out);
    if (separability->parsed()) return cmd_separability(a, in, out);
    if (compare->parsed()) return flt ? cmd_compare_routing<double>(a, in, out) : cmd_compare_routing<Rational>(a, in, out);
    if (enumerate->parsed()) return cmd_enumerate(a, in, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return invalid_input;
  } catch (const LimitExceeded& e) {
    err << "error: " << e.what() << "\n";
    return invalid_input;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return internal_error;
  }
  return internal_error;
}

}  // namespace mcmr::app
