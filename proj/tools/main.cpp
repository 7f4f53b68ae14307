// Command-line driver. Talks to the library exclusively through the C API.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "interplan.h"

namespace {

// Exit codes: 0 success, 1 usage/parse error, 2 knowledge conflict,
// 3 conjecture violation or guard failure.
int exit_code(ip_status st) {
  switch (st) {
    case IP_OK: return 0;
    case IP_ERR_CONFLICT: return 2;
    case IP_ERR_GUARD: return 3;
    default: return 1;
  }
}

[[noreturn]] void fail(ip_status st) {
  std::cerr << "error: " << ip_last_error() << "\n";
  std::exit(exit_code(st));
}

void check(ip_status st) {
  if (st != IP_OK) fail(st);
}

std::string take_string(char* s) {
  std::string out = s ? s : "";
  ip_string_free(s);
  return out;
}

int find_vertex(const ip_kg* kg, const std::string& name) {
  int n = ip_kg_vertex_count(kg);
  for (int i = 0; i < n; ++i)
    if (name == ip_kg_vertex_name(kg, i)) return i;
  return -1;
}

std::string set_names(const ip_kg* kg, uint64_t mask) {
  std::string out;
  for (int v = 0; v < 64; ++v)
    if (mask >> v & 1) {
      if (!out.empty()) out += " ";
      out += ip_kg_vertex_name(kg, v);
    }
  return out;
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) out.push_back(line);
  return out;
}

// Lines present in `after` but not in `before`: the marks an event changed.
std::string delta_lines(const std::string& before, const std::string& after) {
  auto old_lines = split_lines(before);
  std::string out;
  for (const std::string& line : split_lines(after)) {
    bool seen = false;
    for (const std::string& o : old_lines)
      if (o == line) seen = true;
    if (!seen) out += "  " + line + "\n";
  }
  return out;
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot open '" << path << "' for writing\n";
    std::exit(1);
  }
  out << content;
}

struct PlanFlags {
  int max_inter = 0;
  uint64_t seed = 0;
  std::string tie = "seeded";
  bool no_post_process = false;

  ip_plan_options to_options() const {
    ip_plan_options opt{};
    opt.max_inter = max_inter;
    opt.seed = seed;
    opt.post_process = no_post_process ? 0 : 1;
    opt.lowest_index_ties = tie == "lowest" ? 1 : 0;
    return opt;
  }
};

void add_plan_flags(CLI::App* cmd, PlanFlags& flags, CLI::Option** seed_opt = nullptr) {
  cmd->add_option("--max-inter", flags.max_inter,
                  "maximum intervention-set size (0 = unlimited)");
  if (seed_opt)
    *seed_opt = cmd->add_option("--seed", flags.seed, "seed for randomized tie-breaks");
  cmd->add_option("--tie", flags.tie, "tie-break mode: seeded | lowest")
      ->check(CLI::IsMember({"seeded", "lowest"}));
  cmd->add_flag("--no-post-process", flags.no_post_process,
                "do not fill the set to resolve additional cliques");
}

void require_seed_for_seeded_ties(const PlanFlags& flags, const CLI::Option* seed_opt) {
  if (flags.tie == "seeded" && seed_opt->count() == 0) {
    std::cerr << "error: --seed is required with seeded tie-breaking (or pass --tie lowest)\n";
    std::exit(1);
  }
}

int cmd_ome(const std::string& dag_file, const std::string& out_file) {
  ip_dag* dag = nullptr;
  check(ip_dag_read_file(dag_file.c_str(), &dag));
  ip_kg* kg = nullptr;
  check(ip_ome_from_dag(dag, &kg));
  char* text = nullptr;
  check(ip_kg_format(kg, &text));
  write_output(out_file, take_string(text));

  uint64_t count = 0;
  ip_status st = ip_kg_member_count(kg, &count);
  if (st == IP_OK)
    std::cerr << "members: " << count;
  else if (st == IP_ERR_GUARD)
    std::cerr << "members: skipped (enumeration guard)";
  else
    fail(st);
  std::cerr << ", max clique: " << ip_kg_max_unknown_clique(kg)
            << ", bound: " << ip_kg_conjectured_bound(kg) << "\n";
  ip_kg_free(kg);
  ip_dag_free(dag);
  return 0;
}

int cmd_plan(const std::string& kg_file, const PlanFlags& flags) {
  ip_kg* kg = nullptr;
  check(ip_kg_read_file(kg_file.c_str(), &kg));
  ip_plan_options opt = flags.to_options();
  uint64_t mask = 0;
  char* trace = nullptr;
  check(ip_plan(kg, &opt, &mask, &trace));
  std::cerr << take_string(trace);
  if (mask == 0) {
    std::cerr << "nothing to plan\n";
  } else {
    std::cout << set_names(kg, mask) << "\n";
  }
  ip_kg_free(kg);
  return 0;
}

struct SimulateFlags {
  int n = 0;
  std::string sampler = "uniform";
  double edge_prob = 0.5;
  int deletions = 2;
  uint64_t samples = 0;
  std::string planner = "optinter";
  PlanFlags plan;
  uint64_t seed = 0;
  int guard = 0;
  std::string out_file;
  std::string records_file;
  bool exhaustive = false;
  bool seed_from_config = false;
};

// key=value lines, '#' comments; keys are the simulate flag names without the
// leading dashes. Values from the file fill in whatever the command line left
// at its default (the command line wins).
void apply_config_file(const std::string& path, const CLI::App* cmd, SimulateFlags& f) {
  std::ifstream in(path);
  if (!in) {
    std::cerr << "error: cannot open '" << path << "'\n";
    std::exit(1);
  }
  auto given = [&](const std::string& flag) { return cmd->get_option(flag)->count() > 0; };
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) {
      std::cerr << "error: " << path << " line " << lineno << ": expected key=value\n";
      std::exit(1);
    }
    auto trim = [](std::string s) {
      auto b = s.find_first_not_of(" \t");
      auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    try {
      if (key == "n") {
        if (!given("--n")) f.n = std::stoi(value);
      } else if (key == "sampler") {
        if (!given("--sampler")) f.sampler = value;
      } else if (key == "edge-prob") {
        if (!given("--edge-prob")) f.edge_prob = std::stod(value);
      } else if (key == "deletions") {
        if (!given("--deletions")) f.deletions = std::stoi(value);
      } else if (key == "samples") {
        if (!given("--samples")) f.samples = std::stoull(value);
      } else if (key == "planner") {
        if (!given("--planner")) f.planner = value;
      } else if (key == "max-inter") {
        if (!given("--max-inter")) f.plan.max_inter = std::stoi(value);
      } else if (key == "tie") {
        if (!given("--tie")) f.plan.tie = value;
      } else if (key == "no-post-process") {
        if (!given("--no-post-process")) f.plan.no_post_process = value == "true" || value == "1";
      } else if (key == "seed") {
        if (!given("--seed")) {
          f.seed = std::stoull(value);
          f.seed_from_config = true;
        }
      } else if (key == "guard") {
        if (!given("--guard")) f.guard = std::stoi(value);
      } else if (key == "out") {
        if (!given("--out")) f.out_file = value;
      } else if (key == "records") {
        if (!given("--records")) f.records_file = value;
      } else if (key == "exhaustive") {
        if (!given("--exhaustive")) f.exhaustive = value == "true" || value == "1";
      } else {
        std::cerr << "error: " << path << " line " << lineno << ": unknown key '" << key << "'\n";
        std::exit(1);
      }
    } catch (const std::exception&) {
      std::cerr << "error: " << path << " line " << lineno << ": bad value for '" << key << "'\n";
      std::exit(1);
    }
  }
}

int cmd_simulate(const SimulateFlags& f) {
  if (f.exhaustive) {
    char* csv = nullptr;
    uint64_t violations = 0;
    check(ip_verify_exhaustive(f.n, f.seed, &csv, &violations));
    write_output(f.out_file, take_string(csv));
    std::cerr << "violations: " << violations << "\n";
    return violations > 0 ? 3 : 0;
  }
  ip_study_options opt{};
  opt.n = f.n;
  opt.sampler = f.sampler == "dense" ? 1 : 0;
  opt.edge_prob = f.edge_prob;
  opt.deletions = f.deletions;
  opt.samples = f.samples;
  opt.planner = f.planner == "random" ? 1 : f.planner == "maxcut" ? 2 : 0;
  opt.plan = f.plan.to_options();
  opt.master_seed = f.seed;
  opt.guard = f.guard;
  char* table = nullptr;
  char* records = nullptr;
  uint64_t violations = 0;
  check(ip_run_study(&opt, &table, f.records_file.empty() ? nullptr : &records, &violations));
  write_output(f.out_file, take_string(table));
  if (!f.records_file.empty()) write_output(f.records_file, take_string(records));
  std::cerr << "violations: " << violations << "\n";
  return violations > 0 ? 3 : 0;
}

// ---- session ----

struct Session {
  ip_kg* kg = nullptr;
  std::ofstream log;
  bool logging = false;
  uint64_t iv = 0;
  bool experiment_open = false;
  std::string pending_intervene_line;  // logged lazily with the first answer

  std::string format() const {
    char* text = nullptr;
    check(ip_kg_format(kg, &text));
    return take_string(text);
  }

  void log_text(const std::string& s) {
    if (logging) log << s << std::flush;
  }

  void replace(ip_kg* next) {
    ip_kg_free(kg);
    kg = next;
  }
};

void session_open_experiment(Session& s, uint64_t mask, const std::string& names) {
  s.iv = mask;
  s.experiment_open = true;
  s.pending_intervene_line = "> intervene: " + names + "\n";
}

// Applies one 'A dep B' / 'A indep B' verdict. A conflicting answer is
// reported and discarded; the knowledge graph stays as it was.
bool session_answer(Session& s, int x, int y, bool dep, bool echo) {
  ip_kg* next = nullptr;
  ip_status st = ip_kg_apply_verdict(s.kg, s.iv, x, y, dep ? 1 : 0, &next);
  if (st == IP_ERR_CONFLICT) {
    if (echo) std::cerr << "conflict: " << ip_last_error() << " (answer discarded)\n";
    return false;
  }
  check(st);
  std::string before = s.format();
  std::string x_name = ip_kg_vertex_name(s.kg, x);
  std::string y_name = ip_kg_vertex_name(s.kg, y);
  s.replace(next);
  if (!s.pending_intervene_line.empty()) {
    s.log_text(s.pending_intervene_line);
    s.pending_intervene_line.clear();
  }
  s.log_text("> answer: " + x_name + (dep ? " dep " : " indep ") + y_name + "\n");
  s.log_text(delta_lines(before, s.format()));
  return true;
}

// Ends the current experiment: closes the marks under the orientation rules.
void session_close(Session& s, bool echo) {
  if (!s.experiment_open) return;
  s.experiment_open = false;
  s.pending_intervene_line.clear();
  ip_kg* next = nullptr;
  ip_status st = ip_kg_close_orientations(s.kg, &next);
  if (st == IP_ERR_CONFLICT) {
    if (echo) std::cerr << "conflict during closure: " << ip_last_error() << "\n";
    return;
  }
  check(st);
  std::string before = s.format();
  s.replace(next);
  s.log_text(delta_lines(before, s.format()));
}

bool parse_answer(const std::vector<std::string>& toks, const ip_kg* kg, int& x, int& y,
                  bool& dep) {
  if (toks.size() != 3 || (toks[1] != "dep" && toks[1] != "indep")) return false;
  x = find_vertex(kg, toks[0]);
  y = find_vertex(kg, toks[2]);
  dep = toks[1] == "dep";
  return x >= 0 && y >= 0 && x != y;
}

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> toks;
  std::istringstream in(line);
  std::string t;
  while (in >> t) toks.push_back(t);
  return toks;
}

int session_replay(const std::string& log_file) {
  std::ifstream in(log_file, std::ios::binary);
  if (!in) {
    std::cerr << "error: cannot open '" << log_file << "'\n";
    return 1;
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  auto lines = split_lines(buf.str());

  std::string opening;
  size_t i = 0;
  for (; i < lines.size() && lines[i].rfind("> ", 0) != 0; ++i) opening += lines[i] + "\n";

  Session s;
  check(ip_kg_parse(opening.c_str(), &s.kg));
  for (; i < lines.size(); ++i) {
    const std::string& line = lines[i];
    if (line.rfind("> intervene:", 0) == 0) {
      session_close(s, false);
      auto toks = tokenize(line.substr(12));
      uint64_t mask = 0;
      for (const std::string& t : toks) {
        int v = find_vertex(s.kg, t);
        if (v < 0) {
          std::cerr << "error: unknown vertex '" << t << "' in log\n";
          return 1;
        }
        mask |= 1ull << v;
      }
      session_open_experiment(s, mask, "");
    } else if (line.rfind("> answer:", 0) == 0) {
      auto toks = tokenize(line.substr(9));
      int x, y;
      bool dep;
      if (!parse_answer(toks, s.kg, x, y, dep)) {
        std::cerr << "error: malformed answer line in log: " << line << "\n";
        return 1;
      }
      session_answer(s, x, y, dep, false);
    }
    // anything else is a delta or comment; replay re-derives those
  }
  session_close(s, false);
  std::cout << s.format();
  ip_kg_free(s.kg);
  return 0;
}

int cmd_session(const std::string& kg_file, const PlanFlags& flags, const std::string& log_file,
                const std::string& replay_file) {
  if (!replay_file.empty()) return session_replay(replay_file);

  Session s;
  check(ip_kg_read_file(kg_file.c_str(), &s.kg));
  if (!log_file.empty()) {
    s.log.open(log_file, std::ios::binary | std::ios::trunc);
    if (!s.log) {
      std::cerr << "error: cannot open '" << log_file << "' for writing\n";
      return 1;
    }
    s.logging = true;
  }
  s.log_text(s.format());

  auto print_state = [&]() {
    std::cout << s.format() << "\n" << std::flush;
    uint64_t count = 0;
    if (ip_kg_member_count(s.kg, &count) == IP_OK)
      std::cerr << "members: " << count << "\n";
  };

  uint64_t round = 0;
  for (;;) {
    print_state();
    if (ip_kg_is_unique(s.kg)) {
      std::cerr << "unique\n";
      break;
    }
    ip_plan_options opt = flags.to_options();
    opt.seed = flags.seed + round;
    ++round;
    uint64_t mask = 0;
    check(ip_plan(s.kg, &opt, &mask, nullptr));
    if (mask == 0) {
      std::cerr << "nothing to plan\n";
      break;
    }
    session_open_experiment(s, mask, set_names(s.kg, mask));
    std::cerr << "propose intervene: " << set_names(s.kg, mask) << "\n"
              << "enter 'A dep B' / 'A indep B' for pairs, then 'done' (or 'quit')\n";

    std::string line;
    bool quit = false;
    for (;;) {
      if (!std::getline(std::cin, line)) {
        quit = true;
        break;
      }
      auto toks = tokenize(line);
      if (toks.empty()) continue;
      if (toks[0] == "quit") {
        quit = true;
        break;
      }
      if (toks[0] == "done") break;
      int x, y;
      bool dep;
      if (!parse_answer(toks, s.kg, x, y, dep)) {
        std::cerr << "unrecognized input; expected 'A dep B', 'A indep B', 'done' or 'quit'\n";
        continue;
      }
      session_answer(s, x, y, dep, true);
    }
    session_close(s, true);
    if (quit) {
      print_state();
      break;
    }
  }
  ip_kg_free(s.kg);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"interplan: plan experiments that identify a causal graph"};
  app.require_subcommand(1);

  // ome
  std::string ome_dag, ome_out;
  auto* ome = app.add_subcommand("ome", "observational pattern of a DAG's equivalence class");
  ome->add_option("dag", ome_dag, ".dag file")->required();
  ome->add_option("-o,--out", ome_out, "write the .kg here instead of stdout");

  // plan
  std::string plan_kg;
  PlanFlags plan_flags;
  CLI::Option* plan_seed_opt = nullptr;
  auto* plan = app.add_subcommand("plan", "choose the next intervention set");
  plan->add_option("kg", plan_kg, ".kg file")->required();
  add_plan_flags(plan, plan_flags, &plan_seed_opt);

  // simulate (per-experiment planner seeds derive from the master seed)
  SimulateFlags sim;
  auto* simulate = app.add_subcommand("simulate", "run a sampled or exhaustive study");
  simulate->add_option("--n", sim.n, "vertex count");
  simulate->add_option("--sampler", sim.sampler, "uniform | dense")
      ->check(CLI::IsMember({"uniform", "dense"}));
  simulate->add_option("--edge-prob", sim.edge_prob, "uniform sampler edge probability");
  simulate->add_option("--deletions", sim.deletions, "dense sampler edge deletions");
  simulate->add_option("--samples", sim.samples, "number of sampled DAGs");
  simulate->add_option("--planner", sim.planner, "optinter | random | maxcut")
      ->check(CLI::IsMember({"optinter", "random", "maxcut"}));
  add_plan_flags(simulate, sim.plan);
  auto* sim_seed = simulate->add_option("--seed", sim.seed, "master seed");
  auto* sim_ex = simulate->add_flag("--exhaustive", sim.exhaustive,
                                    "run every DAG on n vertices instead of sampling");
  simulate->add_option("--guard", sim.guard, "max experiments per sequence (0 = default)");
  simulate->add_option("--out", sim.out_file, "write the CSV table here instead of stdout");
  simulate->add_option("--records", sim.records_file, "write the per-record CSV here");
  std::string sim_config;
  simulate->add_option("--config", sim_config,
                       "key=value file with the same names as the flags; flags win");

  // verify
  int verify_n = 0;
  uint64_t verify_seed = 0;
  auto* verify = app.add_subcommand("verify", "exhaustive bound check over all DAGs on n vertices");
  verify->add_option("--n", verify_n, "vertex count (at most 5)")->required();
  verify->add_option("--seed", verify_seed, "seed for the seeded tie-break pass");

  // session
  std::string sess_kg, sess_log, sess_replay;
  PlanFlags sess_flags;
  CLI::Option* sess_seed_opt = nullptr;
  auto* session = app.add_subcommand("session", "interactive planning loop");
  session->add_option("kg", sess_kg, ".kg file with the current knowledge");
  add_plan_flags(session, sess_flags, &sess_seed_opt);
  session->add_option("--log", sess_log, "append every state transition to this file");
  session->add_option("--replay", sess_replay, "re-run a session log and print the final graph");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  if (ome->parsed()) return cmd_ome(ome_dag, ome_out);
  if (plan->parsed()) {
    require_seed_for_seeded_ties(plan_flags, plan_seed_opt);
    return cmd_plan(plan_kg, plan_flags);
  }
  if (simulate->parsed()) {
    if (!sim_config.empty()) apply_config_file(sim_config, simulate, sim);
    if (sim.n < 1) {
      std::cerr << "error: --n is required\n";
      return 1;
    }
    if (!sim.exhaustive) {
      if (sim_seed->count() == 0 && !sim.seed_from_config) {
        std::cerr << "error: --seed is required for sampled runs\n";
        return 1;
      }
      if (sim.samples == 0) {
        std::cerr << "error: --samples must be at least 1\n";
        return 1;
      }
    }
    (void)sim_ex;
    return cmd_simulate(sim);
  }
  if (verify->parsed()) {
    SimulateFlags f;
    f.n = verify_n;
    f.seed = verify_seed;
    f.exhaustive = true;
    return cmd_simulate(f);
  }
  if (session->parsed()) {
    if (sess_replay.empty()) {
      if (sess_kg.empty()) {
        std::cerr << "error: a .kg file is required unless --replay is given\n";
        return 1;
      }
      require_seed_for_seeded_ties(sess_flags, sess_seed_opt);
    }
    return cmd_session(sess_kg, sess_flags, sess_log, sess_replay);
  }
  return 1;
}
