#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

#include "lcs/cycle.hpp"
#include "lcs/format.hpp"
#include "lcs/generate.hpp"
#include "lcs/liveness.hpp"
#include "lcs/reach_subsets.hpp"
#include "lcs/semantics.hpp"
#include "lcs/witness.hpp"

namespace lcs::cli {

namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

OracleLimits oracle_limits_from_env() {
  OracleLimits limits;
  if (const char* cap = std::getenv("LCS_MAX_STATES")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(cap, &end, 10);
    if (end && *end == '\0' && v > 0) limits.max_configurations = v;
  }
  return limits;
}

System load_system(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::ios_base::failure("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_system(buf.str());
}

json interface_json(const Interface& i, const System& s) {
  json contributors = json::array();
  for (StateId p : states_of_mask(i.contributor_set))
    contributors.push_back(s.contributor.state_names.at(p));
  return json{{"contributors", contributors},
              {"leader", s.leader.state_names.at(i.leader_state)},
              {"memory", s.symbol_names.at(i.memory_value)}};
}

json gamma_json(SymbolMask gamma, const System& s) {
  json out = json::array();
  for (Symbol b = 0; b < s.domain_size; ++b)
    if ((gamma >> b) & 1) out.push_back(s.symbol_names[b]);
  return out;
}

json configuration_json(const Configuration& c, const System& s) {
  json counts = json::object();
  for (const auto& [p, n] : c.counts)
    counts[s.contributor.state_names.at(p)] = n;
  return json{{"leader", s.leader.state_names.at(c.leader)},
              {"memory", s.symbol_names.at(c.memory)},
              {"contributors", counts}};
}

json trace_json(const Trace& t, const System& s) {
  json steps = json::array();
  for (const auto& step : t.steps)
    steps.push_back(json{{"op", op_to_string(step.op, s)},
                         {"to", configuration_json(step.to, s)}});
  return json{{"start", configuration_json(t.start, s)}, {"steps", steps}};
}

json lasso_json(const LassoCertificate& cert, const System& s) {
  return json{{"prefix", trace_json(cert.prefix, s)},
              {"cycle", trace_json(cert.cycle, s)},
              {"knot", configuration_json(cert.knot, s)}};
}

// Parses `c0+c1:q0:x` against the model's name tables.
Interface parse_interface_spec(const std::string& spec, const System& s) {
  auto fail = [&](const std::string& why) -> Interface {
    throw CLI::ValidationError("--interface", why);
  };
  std::size_t first = spec.find(':');
  std::size_t second = first == std::string::npos ? std::string::npos
                                                  : spec.find(':', first + 1);
  if (second == std::string::npos)
    return fail("expected STATES:LEADER:MEMORY, e.g. c0+c1:q0:x");
  std::string states = spec.substr(0, first);
  std::string leader = spec.substr(first + 1, second - first - 1);
  std::string memory = spec.substr(second + 1);

  auto index_of = [&](const std::vector<std::string>& names,
                      const std::string& name, const char* what) {
    for (std::size_t i = 0; i < names.size(); ++i)
      if (names[i] == name) return static_cast<std::uint32_t>(i);
    fail("unknown " + std::string(what) + " '" + name + "'");
    return 0u;
  };

  Interface out{};
  std::size_t at = 0;
  while (at <= states.size()) {
    std::size_t plus = states.find('+', at);
    std::string name = states.substr(at, plus == std::string::npos
                                             ? std::string::npos
                                             : plus - at);
    if (name.empty()) fail("empty contributor state name");
    StateId p = index_of(s.contributor.state_names, name, "contributor state");
    if (p >= kMaskBits) fail("contributor state beyond mask width");
    out.contributor_set |= StateMask{1} << p;
    if (plus == std::string::npos) break;
    at = plus + 1;
  }
  out.leader_state = index_of(s.leader.state_names, leader, "leader state");
  out.memory_value = index_of(s.symbol_names, memory, "memory value");
  return out;
}

struct Output {
  bool json_format = true;
  std::ostream& out;

  void emit(const json& doc, const std::string& text_line) {
    if (json_format)
      out << doc.dump(2) << "\n";
    else
      out << text_line << "\n";
  }
};

int run_check_reach(const std::string& path, const std::string& algo,
                    std::uint64_t bound, Output& output) {
  auto start = Clock::now();
  System s = load_system(path);
  json doc{{"problem", "LCR"}, {"backend", algo}};
  std::string text;
  int code = kOk;
  if (algo == "subsets") {
    SubsetsResult r = lcr_subsets(s);
    doc["answer"] = r.reachable;
    doc["stats"] = {{"abstract_states", r.explored}};
    if (r.interface) doc["interface"] = interface_json(*r.interface, s);
    text = std::string("LCR (subsets): ") + (r.reachable ? "reachable" : "unreachable");
  } else if (algo == "witness") {
    WitnessReachResult r = lcr_witness(s);
    doc["answer"] = r.reachable;
    doc["stats"] = {{"table_entries", r.stats.true_entries},
                    {"witness_universe", r.stats.universe}};
    text = std::string("LCR (witness): ") + (r.reachable ? "reachable" : "unreachable");
  } else {
    ReachResult r = bounded_reach_oracle(s, s.final_states, bound,
                                         oracle_limits_from_env());
    doc["stats"] = {{"explored_configurations", r.explored}, {"bound", bound}};
    if (r.outcome == Outcome::kYes) {
      doc["answer"] = true;
      if (r.trace) doc["trace"] = trace_json(*r.trace, s);
      text = "LCR (oracle): reachable";
    } else if (r.outcome == Outcome::kNo) {
      // A bounded search cannot prove a parameterized "no".
      doc["answer"] = "no-at-bound";
      text = "LCR (oracle): not reachable with " + std::to_string(bound) +
             " contributors";
    } else {
      doc["answer"] = "inconclusive";
      text = "LCR (oracle): inconclusive (cap exceeded)";
      code = kCapacity;
    }
  }
  doc["timings"] = {{"total_ms", ms_since(start)}};
  output.emit(doc, text);
  return code;
}

int run_check_cycle(const std::string& path, const std::string& spec,
                    const std::string& algo, std::optional<std::uint64_t> bound,
                    Output& output) {
  auto start = Clock::now();
  System s = load_system(path);
  Interface iface = parse_interface_spec(spec, s);
  json doc{{"problem", "CYC"},
           {"backend", algo},
           {"interface", interface_json(iface, s)}};
  std::string text;
  int code = kOk;
  if (algo == "fixpoint") {
    CycResult r = cyc(s, iface);
    doc["answer"] = r.exists;
    doc["stats"] = {{"fixpoint_evaluations", r.evaluations},
                    {"chain_length", r.chain.size()}};
    if (r.exists && !r.via_read_only) doc["gamma"] = gamma_json(r.gamma, s);
    if (r.exists && r.via_read_only) doc["read_only"] = true;
    text = std::string("CYC (fixpoint): ") + (r.exists ? "cycle" : "no cycle");
  } else if (algo == "enum") {
    bool r = cyc_bruteforce(s, iface);
    doc["answer"] = r;
    doc["stats"] = json::object();
    text = std::string("CYC (enum): ") + (r ? "cycle" : "no cycle");
  } else {
    std::uint64_t size = states_of_mask(iface.contributor_set).size();
    std::uint64_t t = bound.value_or(size + 1);
    if (t < size) t = size;
    auto r = bounded_saturated_cycle_oracle(s, iface, t, oracle_limits_from_env());
    doc["stats"] = {{"explored_configurations", r.explored}, {"bound", t}};
    if (r.outcome == Outcome::kYes) {
      doc["answer"] = true;
      text = "CYC (oracle): cycle";
    } else if (r.outcome == Outcome::kNo) {
      doc["answer"] = "no-at-bound";
      text = "CYC (oracle): no cycle with " + std::to_string(t) + " contributors";
    } else {
      doc["answer"] = "inconclusive";
      text = "CYC (oracle): inconclusive (cap exceeded)";
      code = kCapacity;
    }
  }
  doc["timings"] = {{"total_ms", ms_since(start)}};
  output.emit(doc, text);
  return code;
}

int run_check_liveness(const std::string& path, const std::string& algo,
                       std::optional<std::uint64_t> confirm_bound,
                       Output& output, std::ostream& err) {
  auto start = Clock::now();
  System s = load_system(path);
  ReachBackend backend =
      algo == "witness" ? ReachBackend::kWitness : ReachBackend::kSubsets;
  Verdict v = lcl(s, backend);
  json doc{{"problem", "LCL"}, {"backend", algo}, {"answer", v.answer}};
  doc["stats"] = {{"interfaces_enumerated", v.stats.interfaces_enumerated},
                  {"cyc_calls", v.stats.cyc_calls},
                  {"abstract_states", v.stats.abstract_states},
                  {"table_entries", v.stats.table_entries}};
  if (v.interface) doc["interface"] = interface_json(*v.interface, s);
  if (v.evidence && v.evidence->exists) {
    if (v.evidence->via_read_only)
      doc["read_only"] = true;
    else
      doc["gamma"] = gamma_json(v.evidence->gamma, s);
  }
  std::string text = std::string("LCL (") + algo + "): " +
                     (v.answer ? "live" : "not live");
  if (v.answer && v.interface)
    text += " at " + interface_to_string(*v.interface, s);

  int code = kOk;
  if (confirm_bound) {
    OracleLimits limits = oracle_limits_from_env();
    bool confirmed = false;
    for (std::uint64_t t = 1; t <= *confirm_bound && !confirmed; ++t) {
      LiveResult r = bounded_live_oracle(s, t, limits);
      if (r.outcome == Outcome::kYes) {
        if (!v.answer) {
          err << "error: bounded oracle found a live run at t=" << t
              << " but the engine answered false\n";
          return kDisagreement;
        }
        confirmed = true;
        doc["confirmation"] = {{"t", t}, {"lasso", lasso_json(*r.certificate, s)}};
      }
    }
    if (v.answer && !confirmed) doc["confirmation"] = "unconfirmed-at-bound";
  }
  doc["timings"] = {{"total_ms", ms_since(start)}};
  output.emit(doc, text);
  return code;
}

struct CrosscheckReport {
  std::uint64_t seed = 0;
  bool disagreement = false;
  std::string kind;
};

// One instance, every engine pair. Returns the first disagreement kind, or
// the empty string. Capacity errors are treated as "cannot compare".
std::string check_instance(const System& s, std::uint64_t oracle_bound,
                           const OracleLimits& limits) {
  bool lcr_sub, lcl_sub;
  try {
    lcr_sub = lcr_subsets(s).reachable;
    lcl_sub = lcl(s, ReachBackend::kSubsets).answer;
  } catch (const CapacityError&) {
    return "";
  }
  try {
    if (lcr_witness(s).reachable != lcr_sub) return "lcr-subsets-vs-witness";
    if (lcl(s, ReachBackend::kWitness).answer != lcl_sub)
      return "lcl-subsets-vs-witness";
  } catch (const CapacityError&) {
  }
  try {
    ReachTable table = saturate_abstract(s);
    for (const Interface& iface : interfaces_from_table(table, s.final_states))
      if (cyc(s, iface).exists != cyc_bruteforce(s, iface))
        return "cyc-fixpoint-vs-enum";
  } catch (const CapacityError&) {
  }
  for (std::uint64_t t = 1; t <= oracle_bound; ++t) {
    if (bounded_reach_oracle(s, s.final_states, t, limits).outcome ==
            Outcome::kYes &&
        !lcr_sub)
      return "lcr-oracle-unsound";
    if (bounded_live_oracle(s, t, limits).outcome == Outcome::kYes && !lcl_sub)
      return "lcl-oracle-unsound";
  }
  return "";
}

int run_crosscheck(std::uint64_t seed_from, std::uint64_t seed_to,
                   const GenParams& base, std::uint64_t oracle_bound,
                   unsigned jobs, const std::string& out_dir, Output& output,
                   std::ostream& err) {
  auto start = Clock::now();
  OracleLimits limits = oracle_limits_from_env();
  std::uint64_t count = seed_to - seed_from + 1;
  std::vector<CrosscheckReport> reports(count);

  std::atomic<std::uint64_t> next{0};
  auto worker = [&]() {
    while (true) {
      std::uint64_t at = next.fetch_add(1);
      if (at >= count) return;
      GenParams p = base;
      p.seed = seed_from + at;
      System s = generate_instance(p);
      std::string kind = check_instance(s, oracle_bound, limits);
      reports[at] = {p.seed, !kind.empty(), kind};
    }
  };
  if (jobs == 0) jobs = 1;
  std::vector<std::thread> pool;
  for (unsigned i = 0; i + 1 < jobs; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  json failures = json::array();
  int code = kOk;
  for (const auto& report : reports) {
    if (!report.disagreement) continue;
    code = kDisagreement;
    GenParams p = base;
    p.seed = report.seed;
    System s = generate_instance(p);
    // Greedy transition deletion preserving the disagreement.
    auto still_bad = [&](const System& candidate) {
      try {
        return check_instance(candidate, oracle_bound, limits) == report.kind;
      } catch (const ModelError&) {
        return false;
      }
    };
    bool shrunk = true;
    while (shrunk) {
      shrunk = false;
      for (Automaton System::*member :
           {&System::leader, &System::contributor}) {
        auto& transitions = (s.*member).transitions;
        for (std::size_t i = 0; i < transitions.size(); ++i) {
          System candidate = s;
          auto& ct = (candidate.*member).transitions;
          ct.erase(ct.begin() + static_cast<std::ptrdiff_t>(i));
          if (still_bad(candidate)) {
            s = candidate;
            shrunk = true;
            break;
          }
        }
        if (shrunk) break;
      }
    }
    std::string file = out_dir + "/crosscheck-seed" +
                       std::to_string(report.seed) + ".lcs";
    std::ofstream out_file(file, std::ios::binary);
    out_file << serialize_system(s);
    err << "disagreement (" << report.kind << ") at seed " << report.seed
        << "; reproducer: " << file << "\n";
    failures.push_back(json{{"seed", report.seed},
                            {"kind", report.kind},
                            {"reproducer", file}});
  }

  json doc{{"problem", "crosscheck"},
           {"answer", code == kOk},
           {"backend", "all"},
           {"stats",
            {{"instances", count},
             {"disagreements", failures.size()},
             {"seed_from", seed_from},
             {"seed_to", seed_to}}},
           {"failures", failures}};
  doc["timings"] = {{"total_ms", ms_since(start)}};
  output.emit(doc, "crosscheck: " + std::to_string(count) + " instances, " +
                       std::to_string(failures.size()) + " disagreements");
  return code;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Verifier for leader-contributor systems: reachability (LCR), "
               "saturated cycles (CYC), and liveness (LCL)"};
  app.require_subcommand(1);
  std::string format = "json";
  app.add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"json", "text"}))
      ->capture_default_str();

  std::string file, algo, interface_spec, out_path, out_dir = ".";
  std::uint64_t bound = 2;
  std::optional<std::uint64_t> opt_bound, confirm_bound;

  auto* reach = app.add_subcommand("check-reach", "Leader reachability");
  reach->fallthrough();
  reach->add_option("file", file, "Model file")->required();
  std::string reach_algo = "subsets";
  reach->add_option("--algo", reach_algo, "Engine")
      ->check(CLI::IsMember({"subsets", "witness", "oracle"}))
      ->capture_default_str();
  reach->add_option("--bound", bound, "Contributor count for the oracle")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  auto* cycle = app.add_subcommand("check-cycle", "Saturated cycle at an interface");
  cycle->fallthrough();
  cycle->add_option("file", file, "Model file")->required();
  cycle->add_option("--interface", interface_spec,
                    "Interface as STATES:LEADER:MEMORY, e.g. c0+c1:q0:x")
      ->required();
  std::string cycle_algo = "fixpoint";
  cycle->add_option("--algo", cycle_algo, "Engine")
      ->check(CLI::IsMember({"fixpoint", "enum", "oracle"}))
      ->capture_default_str();
  cycle->add_option("--bound", opt_bound, "Contributor count for the oracle")
      ->check(CLI::PositiveNumber);

  auto* live = app.add_subcommand("check-liveness", "Leader liveness");
  live->fallthrough();
  live->add_option("file", file, "Model file")->required();
  std::string live_algo = "subsets";
  live->add_option("--algo", live_algo, "Reachability backend")
      ->check(CLI::IsMember({"subsets", "witness"}))
      ->capture_default_str();
  live->add_option("--confirm-bound", confirm_bound,
                   "Confirm a positive verdict with the bounded oracle up to "
                   "this contributor count")
      ->check(CLI::PositiveNumber);

  GenParams gen_params;
  auto* gen = app.add_subcommand("gen", "Generate a random instance");
  gen->fallthrough();
  auto add_gen_options = [](CLI::App* cmd, GenParams& p) {
    cmd->add_option("--leader", p.leader_states, "Leader states")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--contrib", p.contributor_states, "Contributor states")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--domain", p.domain_size, "Domain size")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--density", p.density, "Transition probability")
        ->check(CLI::Range(std::numeric_limits<double>::min(), 1.0))
        ->capture_default_str();
    cmd->add_option("--final-fraction", p.final_fraction,
                    "Final-state probability")
        ->check(CLI::Range(std::numeric_limits<double>::min(), 1.0))
        ->capture_default_str();
  };
  add_gen_options(gen, gen_params);
  gen->add_option("--seed", gen_params.seed, "Seed")->capture_default_str();
  gen->add_option("-o,--output", out_path, "Write to file instead of stdout");

  GenParams cross_params;
  std::string seeds_spec;
  std::uint64_t oracle_bound = 0;
  unsigned jobs = std::thread::hardware_concurrency();
  auto* cross = app.add_subcommand(
      "crosscheck", "Generate instances and compare every engine");
  cross->fallthrough();
  cross->add_option("--seeds", seeds_spec, "Seed range A..B")->required();
  add_gen_options(cross, cross_params);
  cross->add_option("--oracle-bound", oracle_bound,
                    "Also check oracle soundness up to this contributor count")
      ->capture_default_str();
  cross->add_option("--jobs", jobs, "Worker threads")->capture_default_str();
  cross->add_option("--out-dir", out_dir, "Directory for reproducer files")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kUsage;
  }

  Output output{format == "json", out};
  try {
    if (reach->parsed()) return run_check_reach(file, reach_algo, bound, output);
    if (cycle->parsed())
      return run_check_cycle(file, interface_spec, cycle_algo, opt_bound, output);
    if (live->parsed())
      return run_check_liveness(file, live_algo, confirm_bound, output, err);
    if (gen->parsed()) {
      System s = generate_instance(gen_params);
      std::string text = serialize_system(s);
      if (out_path.empty()) {
        out << text;
      } else {
        std::ofstream f(out_path, std::ios::binary);
        if (!f) throw std::ios_base::failure("cannot open '" + out_path + "'");
        f << text;
      }
      return kOk;
    }
    if (cross->parsed()) {
      std::size_t dots = seeds_spec.find("..");
      if (dots == std::string::npos)
        throw CLI::ValidationError("--seeds", "expected A..B");
      std::uint64_t from = std::stoull(seeds_spec.substr(0, dots));
      std::uint64_t to = std::stoull(seeds_spec.substr(dots + 2));
      if (to < from) throw CLI::ValidationError("--seeds", "expected A <= B");
      return run_crosscheck(from, to, cross_params, oracle_bound, jobs,
                            out_dir, output, err);
    }
  } catch (const CLI::ValidationError& e) {
    err << e.what() << "\n";
    return kUsage;
  } catch (const ParseError& e) {
    err << e.what() << "\n";
    return kParse;
  } catch (const CapacityError& e) {
    err << e.what() << "\n";
    return kCapacity;
  } catch (const SemanticError& e) {
    err << e.what() << "\n";
    return kParse;
  } catch (const std::ios_base::failure& e) {
    err << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace lcs::cli
