// Acceptance suite: one pass/fail line per criterion. The CLI binary path
// comes in as argv[1] (criterion 8 drives it end to end).
#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "oracles.hpp"
#include "reductions.hpp"
#include "search.hpp"

using namespace weakbd;

namespace {

int g_failures = 0;

struct Criterion {
  int num;
  std::string name;
  std::chrono::steady_clock::time_point t0;
  bool ok = true;
  std::string detail;

  Criterion(int num, std::string name)
      : num(num), name(std::move(name)), t0(std::chrono::steady_clock::now()) {}

  void expect(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    } else if (!cond) {
      detail += "; " + what;
    }
  }

  ~Criterion() {
    double secs = std::chrono::duration<double>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
    char line[256];
    std::snprintf(line, sizeof(line), "criterion %d: %-34s %s  (%.1fs)%s%s",
                  num, name.c_str(), ok ? "PASS" : "FAIL", secs,
                  detail.empty() ? "" : "  -- ", detail.c_str());
    std::cout << line << std::endl;
    if (!ok) ++g_failures;
  }
};

Formula fo(std::vector<std::vector<int>> clauses) {
  std::vector<Clause> cs;
  for (auto& c : clauses) cs.push_back(Clause::from_dimacs(c));
  return Formula(std::move(cs));
}

// p pairwise variable-disjoint two-positive-one-negative clauses
Formula disjoint_mixed(int p) {
  std::vector<std::vector<int>> cs;
  for (int i = 0; i < p; ++i)
    cs.push_back({3 * i + 1, 3 * i + 2, -(3 * i + 3)});
  return fo(cs);
}

// mixed hard-ish instances: all-positive clauses, overlapping mixed pairs,
// horn filler
Formula mixed_instance(uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::vector<int>> cs;
  int base = 1;
  int blocks = 2 + (int)(rng() % 3);
  for (int b = 0; b < blocks; ++b) {
    int x = base, y = base + 1, z = base + 2, w = base + 3;
    switch (rng() % 3) {
      case 0: cs.push_back({x, y, z}); break;                         // R1
      case 1: cs.push_back({x, y, -z}); cs.push_back({x, w, -z}); break;  // R2
      default: cs.push_back({x, y, -z}); break;                      // R3
    }
    cs.push_back({-x, -y});  // horn filler
    base += 4;
  }
  return fo(cs);
}

// ---- criterion 8 helpers ----

struct CmdResult {
  int exit_code = -1;
  std::string out;
};

CmdResult run_cmd(const std::string& cmd) {
  CmdResult res;
  FILE* pipe = popen((cmd + " 2>/dev/null").c_str(), "r");
  if (!pipe) return res;
  char buf[4096];
  while (size_t n = fread(buf, 1, sizeof(buf), pipe)) res.out.append(buf, n);
  int status = pclose(pipe);
  res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return res;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void spit(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

}  // namespace

static void criterion1_oracle_equivalence() {
  Criterion c(1, "detector oracle equivalence");
  const std::vector<BaseClass> classes = {BaseClass::Horn, BaseClass::AntiHorn,
                                          BaseClass::Krom, BaseClass::ZeroVal,
                                          BaseClass::OneVal};
  int instances = 0;
  for (uint64_t seed = 1; seed <= 500; ++seed) {
    int n = 3 + (int)(seed % 8);        // 3..10 variables
    int m = 1 + (int)((seed * 7) % 20);  // 1..20 clauses
    Formula f = oracle::random_mixed_formula(n, m, seed);
    ++instances;
    for (BaseClass cls : classes) {
      for (int k = 0; k <= 4; ++k) {
        bool expected = detect_bruteforce(f, k, cls).found;
        BackdoorResult g = detect_generic(f, k, cls);
        c.expect(g.found == expected, "generic mismatch seed " +
                                          std::to_string(seed) + " k " +
                                          std::to_string(k));
        if (g.found)
          c.expect(verify_witness(f, g.backdoor, g.witness, cls, k),
                   "generic witness rejected");
        if (cls == BaseClass::Horn) {
          BackdoorResult h = detect_horn(f, k);
          c.expect(h.found == expected, "horn mismatch seed " +
                                            std::to_string(seed) + " k " +
                                            std::to_string(k));
          if (h.found)
            c.expect(verify_witness(f, h.backdoor, h.witness, cls, k),
                     "horn witness rejected");
        }
        if (cls == BaseClass::Krom) {
          BackdoorResult kr = detect_krom(f, k);
          c.expect(kr.found == expected, "krom mismatch seed " +
                                             std::to_string(seed) + " k " +
                                             std::to_string(k));
          if (kr.found)
            c.expect(verify_witness(f, kr.backdoor, kr.witness, cls, k),
                     "krom witness rejected");
        }
        if (!c.ok) return;
      }
    }
  }
  c.expect(instances >= 500, "instance count");
}

static void criterion2_branching_factors() {
  Criterion c(2, "branching-factor table");
  auto close = [](double got, double want) {
    return std::fabs(got - want) <= 1e-9 * std::max(1.0, std::fabs(want));
  };
  c.expect(close(branching_factor(3, 3), (3 + std::sqrt(21.0)) / 2), "(3,3)");
  c.expect(close(branching_factor(2, 9), 1 + std::sqrt(10.0)), "(2,9)");
  c.expect(close(branching_factor(1, 16), (1 + std::sqrt(65.0)) / 2), "(1,16)");
  c.expect(close(branching_factor(4, 1), 2 + std::sqrt(5.0)), "(4,1)");
  c.expect(close(branching_factor(3, 4), 4.0), "(3,4)");
  c.expect(close(branching_factor(4, 0), 4.0), "(4,0)");
  c.expect(close(branching_factor(2, 0), 2.0), "(2,0)");
  double max_root = 0;
  for (RecurrencePair r : implemented_recurrences())
    max_root = std::max(max_root, branching_factor(r));
  c.expect(close(max_root, (1 + std::sqrt(65.0)) / 2), "max recurrence root");
  c.expect(max_root < 4.54, "bound below 4.54");
}

static void criterion3_r2_exhaustiveness() {
  Criterion c(3, "R2 branch exhaustiveness");
  // the seven overlapping-pair shapes, instantiated on fresh variables
  std::vector<std::pair<std::vector<int>, std::vector<int>>> shapes = {
      {{1, 2, -3}, {1, 4, -5}},  // shared 1, positive in both
      {{-1, 2, 3}, {-1, 4, 5}},  // shared 1, negative in both
      {{-1, 2, 3}, {1, 4, -5}},  // shared 1, negative/positive
      {{1, 2, -3}, {1, 2, -4}},  // shared 2, positive pair
      {{1, -2, 3}, {1, -2, 4}},  // shared 2, positive + negative
      {{1, -2, 3}, {-1, 2, 4}},  // shared 2, mixed swap
      {{1, 2, -3}, {1, -2, 3}},  // shared 3
  };
  for (auto& [a, b] : shapes) {
    Clause ca = Clause::from_dimacs(a), cb = Clause::from_dimacs(b);
    std::vector<int> vars = ca.vars();
    for (int v : cb.vars())
      if (std::find(vars.begin(), vars.end(), v) == vars.end())
        vars.push_back(v);
    std::sort(vars.begin(), vars.end());
    auto expected =
        oracle::brute_minimal_assignments({ca, cb}, vars, BaseClass::Horn);
    auto got = r2_branches(ca, cb);
    c.expect(got == expected,
             "branch set mismatch on {" + std::to_string(a[0]) + ",...}");
  }
}

static void criterion4_horn_node_bound() {
  Criterion c(4, "Horn search node bound");
  const double root = branching_factor(1, 16);
  auto check_instance = [&](const Formula& f, int k) {
    BackdoorResult r = detect_horn(f, k);
    double bound = 2.0 * std::pow(root, k) * (1.0 + (double)f.num_clauses());
    c.expect((double)r.stats.nodes <= bound,
             "nodes " + std::to_string(r.stats.nodes) + " over bound at k " +
                 std::to_string(k));
  };
  for (int p = 1; p <= 12; ++p) {
    Formula f = disjoint_mixed(p);
    check_instance(f, p);
    check_instance(f, p - 1);
  }
  for (uint64_t seed = 1; seed <= 30; ++seed) {
    Formula f = mixed_instance(seed);
    for (int k : {2, 5, 8}) check_instance(f, k);
  }
}

static void criterion5_krom_shape() {
  Criterion c(5, "Krom algorithm shape");
  auto check_instance = [&](const Formula& f, int k) {
    BackdoorResult r = detect_krom(f, k);
    c.expect(r.stats.hs_calls == 1, "hitting-set searches != 1");
    c.expect(r.stats.leaves <= (1ll << std::min(k, 62)), "leaf checks over 2^k");
    long long sets = 0;
    for (const Clause& cl : f)
      if (cl.size() == 3) ++sets;
    c.expect((double)r.stats.hs_nodes <=
                 std::pow(3.0, k) * (double)(sets + 1),
             "hs nodes over 3^k (m+1)");
  };
  for (int p = 1; p <= 12; ++p) {
    Formula f = disjoint_mixed(p);
    check_instance(f, p);
    check_instance(f, p - 1);
  }
  for (uint64_t seed = 1; seed <= 30; ++seed) {
    Formula f = mixed_instance(seed);
    for (int k : {2, 5, 8}) check_instance(f, k);
  }
}

static void criterion6_reduction_equivalences() {
  Criterion c(6, "reduction equivalences");
  // sat_to_chains over <= 4 variables, sampled clause sets
  std::mt19937_64 rng(29);
  for (int round = 0; round < 220; ++round) {
    int n = 3 + (int)(rng() % 2);
    int m = 1 + (int)(rng() % 5);
    std::vector<Clause> cs;
    for (int i = 0; i < m; ++i) {
      int w = 1 + (int)(rng() % 5);
      w = std::min(w, n);
      std::vector<int> vars;
      while ((int)vars.size() < w) {
        int v = 1 + (int)(rng() % n);
        if (std::find(vars.begin(), vars.end(), v) == vars.end())
          vars.push_back(v);
      }
      std::vector<Lit> lits;
      for (int v : vars) lits.push_back(Lit::make(v, rng() % 2 == 0));
      cs.push_back(Clause(std::move(lits)));
    }
    Formula f(std::move(cs));
    ReductionOutput out = sat_to_chains(f);
    c.expect(out.formula.width() <= 3, "output width over 3");
    bool sat = oracle::brute_sat(f).has_value();
    bool bd = detect_bruteforce(out.formula, out.k, BaseClass::Chains).found;
    c.expect(sat == bd, "sat_to_chains mismatch round " + std::to_string(round));
    if (!c.ok) return;
  }
  // hs_to_match over every instance with <= 5 elements, <= 3 sets of size 2..3
  for (int n = 2; n <= 5; ++n) {
    std::vector<std::vector<int>> pool;
    for (int a = 1; a <= n; ++a)
      for (int b = a + 1; b <= n; ++b) {
        pool.push_back({a, b});
        for (int d = b + 1; d <= n; ++d) pool.push_back({a, b, d});
      }
    std::vector<int> elements(n);
    for (int i = 0; i < n; ++i) elements[i] = i + 1;
    std::vector<std::vector<std::size_t>> families;
    for (std::size_t i = 0; i < pool.size(); ++i) {
      families.push_back({i});
      for (std::size_t j = i + 1; j < pool.size(); ++j) {
        families.push_back({i, j});
        for (std::size_t l = j + 1; l < pool.size(); ++l)
          families.push_back({i, j, l});
      }
    }
    for (const auto& fam : families) {
      std::vector<std::vector<int>> sets;
      for (std::size_t i : fam) sets.push_back(pool[i]);
      HsInstance inst = HsInstance::make(elements, sets);
      ReductionOutput out = hs_to_match(inst, 3);
      auto hs_min = oracle::brute_min_hitting_set(inst.elements, inst.sets, 3);
      BackdoorResult bd = detect_bruteforce(out.formula, 3, BaseClass::Match);
      std::optional<int> bd_min;
      if (bd.found) bd_min = (int)bd.backdoor.size();
      // minimum sizes agree, so the answers agree for every k <= 3
      c.expect(hs_min == bd_min, "hs_to_match mismatch n " + std::to_string(n));
      if (!c.ok) return;
    }
  }
  // vc_to_zeroval over every graph with 5 vertices
  std::vector<std::pair<int, int>> all_edges;
  for (int u = 1; u <= 5; ++u)
    for (int v = u + 1; v <= 5; ++v) all_edges.push_back({u, v});
  std::vector<int> vertices = {1, 2, 3, 4, 5};
  for (unsigned mask = 0; mask < (1u << all_edges.size()); ++mask) {
    std::vector<std::pair<int, int>> edges;
    for (std::size_t i = 0; i < all_edges.size(); ++i)
      if ((mask >> i) & 1u) edges.push_back(all_edges[i]);
    Graph g = Graph::make(vertices, edges);
    auto vc_min = oracle::brute_min_vertex_cover(g.vertices, g.edges, 3);
    ReductionOutput out = vc_to_zeroval(g, 3);
    BackdoorResult bd = detect_bruteforce(out.formula, 3, BaseClass::ZeroVal);
    std::optional<int> bd_min;
    if (bd.found) bd_min = (int)bd.backdoor.size();
    c.expect(vc_min == bd_min, "vc brute mismatch mask " + std::to_string(mask));
    for (int k = 0; k <= 3; ++k) {
      bool expected = vc_min && *vc_min <= k;
      c.expect(detect_generic(out.formula, k, BaseClass::ZeroVal).found ==
                   expected,
               "vc generic mismatch mask " + std::to_string(mask));
    }
    if (!c.ok) return;
  }
}

static void criterion7_class_machinery() {
  Criterion c(7, "class machinery");
  std::vector<Formula> corpus = {
      Formula(), fo({{}}), fo({{1}}), fo({{-1}}), fo({{1}, {-1}}),
      fo({{1, 2}}), fo({{-1, 2}, {-2, 1}}), fo({{-1, 2}, {-2, 3}, {-3, 1}}),
      fo({{1}, {-1, 2}, {-2}}), fo({{1, 2, 3}}), fo({{-1, -2, -3}}),
      fo({{1, 2, -3}, {-1, -2}}), fo({{1, 2}, {3, 4}, {-1, -3}}),
  };
  for (uint64_t seed = 1; seed <= 60; ++seed)
    corpus.push_back(oracle::random_mixed_formula(4, 5, seed));
  for (const Formula& f : corpus) {
    auto truth = oracle::brute_sat(f);
    for (BaseClass cls : kAllClasses) {
      if (!is_member(f, cls)) continue;
      auto got = solve_in_class(f, cls);
      c.expect(got.has_value() == truth.has_value(),
               "solver disagrees with enumeration");
      if (got)
        c.expect(evaluate(f, *got) == Eval::Satisfied, "model does not satisfy");
    }
    if (f.num_clauses() <= 5)
      c.expect(is_member(f, BaseClass::Match) == oracle::brute_matchable(f),
               "match membership mismatch");
    if (is_member(f, BaseClass::Chains))
      c.expect(is_member(f, BaseClass::Horn) && is_member(f, BaseClass::Krom),
               "chains not within horn and krom");
  }
}

static void criterion8_cli_contract(const std::string& cli) {
  Criterion c(8, "CLI contract");
  if (cli.empty()) {
    c.expect(false, "no CLI path given");
    return;
  }
  namespace fs = std::filesystem;
  fs::path tmp = fs::path("acceptance_tmp");
  fs::remove_all(tmp);
  fs::create_directories(tmp);
  auto p = [&](const std::string& name) { return (tmp / name).string(); };

  // exit codes
  spit(p("c1.cnf"), "p cnf 3 1\n1 2 3 0\n");
  c.expect(run_cmd(cli + " detect " + p("c1.cnf") + " --class horn -k 1")
               .exit_code == 0,
           "found exit code");
  c.expect(run_cmd(cli + " detect " + p("c1.cnf") + " --class krom -k 0")
               .exit_code == 1,
           "not-found exit code");
  spit(p("bad.cnf"), "p cnf 1 1\n1 -1 0\n");
  c.expect(run_cmd(cli + " detect " + p("bad.cnf") + " --class horn -k 1")
               .exit_code == 2,
           "parse error exit code");
  c.expect(run_cmd(cli + " classify " + p("bad.cnf")).exit_code == 2,
           "classify parse error exit code");
  c.expect(run_cmd(cli + " detect " + p("c1.cnf") + " --class 0val -k 1 "
                   "--algo hs")
               .exit_code == 2,
           "usage error exit code");

  // JSON schema + witness re-verification
  CmdResult detect_json = run_cmd(cli + " detect " + p("c1.cnf") +
                                  " --class horn -k 1 --json");
  c.expect(detect_json.exit_code == 0, "json detect exit code");
  try {
    auto j = nlohmann::json::parse(detect_json.out);
    c.expect(j["found"].is_boolean() && j["found"].get<bool>(), "found flag");
    c.expect(j["backdoor"].is_array(), "backdoor array");
    c.expect(j["witness"].is_object(), "witness object");
    c.expect(j["model"].is_object(), "model object");
    c.expect(j["stats"]["nodes"].is_number_integer(), "stats.nodes");
    c.expect(j["stats"]["leaves"].is_number_integer(), "stats.leaves");
    c.expect(j["stats"]["max_depth"].is_number_integer(), "stats.max_depth");
    c.expect(j["stats"]["elapsed_s"].is_number(), "stats.elapsed_s");
    Formula f = parse_dimacs(slurp(p("c1.cnf")));
    std::vector<int> backdoor;
    for (auto& v : j["backdoor"]) backdoor.push_back(v.get<int>());
    Assignment wit;
    for (auto& [var, val] : j["witness"].items())
      wit.bind(std::stoi(var), val.get<int>() == 1);
    c.expect(verify_witness(f, backdoor, wit, BaseClass::Horn, 1),
             "printed witness fails verify_witness");
    // not-found output has no model key
    auto j2 = nlohmann::json::parse(
        run_cmd(cli + " detect " + p("c1.cnf") + " --class krom -k 0 --json")
            .out);
    c.expect(!j2.contains("model"), "model absent when not found");
  } catch (const std::exception& e) {
    c.expect(false, std::string("json: ") + e.what());
  }

  // gen determinism + DIMACS round trip
  std::string gen_cmd = cli + " gen --vars 5 --clauses 10 --width 3 --seed 7";
  c.expect(run_cmd(gen_cmd + " --out " + p("g1.cnf")).exit_code == 0, "gen 1");
  c.expect(run_cmd(gen_cmd + " --out " + p("g2.cnf")).exit_code == 0, "gen 2");
  std::string g1 = slurp(p("g1.cnf"));
  c.expect(!g1.empty() && g1 == slurp(p("g2.cnf")), "gen determinism");
  c.expect(write_dimacs(parse_dimacs(g1)) == g1, "dimacs round trip");
  c.expect(run_cmd(cli + " gen --vars 2 --clauses 100 --width 3").exit_code ==
               2,
           "infeasible gen exit code");

  // reduce writes the formula and its sidecar
  spit(p("tri.col"), "p edge 3 3\ne 1 2\ne 2 3\ne 1 3\n");
  c.expect(run_cmd(cli + " reduce vc20val " + p("tri.col") + " -k 2 --out " +
                   p("tri.cnf"))
               .exit_code == 0,
           "reduce exit code");
  try {
    Formula tri = parse_dimacs(slurp(p("tri.cnf")));
    c.expect(tri.num_clauses() == 3 && is_member(tri, BaseClass::Krom),
             "reduced formula shape");
    auto side = nlohmann::json::parse(slurp(p("tri.cnf") + ".json"));
    c.expect(side["k"].get<int>() == 2, "sidecar k");
    c.expect(side["kind"] == "vc20val", "sidecar kind");
  } catch (const std::exception& e) {
    c.expect(false, std::string("reduce: ") + e.what());
  }

  // bench: unsatisfiable krom corpus gives found=0 rows plus the header
  fs::create_directories(p("corpus"));
  spit(p("corpus") + "/unsat_k2.cnf", "p cnf 1 2\n1 0\n-1 0\n");
  spit(p("corpus") + "/unsat2_k3.cnf", "p cnf 2 4\n1 0\n-1 0\n2 0\n-2 0\n");
  CmdResult bench = run_cmd(cli + " bench " + p("corpus") +
                            " --class krom --algo hs --out " + p("bench.csv"));
  c.expect(bench.exit_code == 0, "bench exit code");
  std::istringstream csv(slurp(p("bench.csv")));
  std::string line;
  std::getline(csv, line);
  c.expect(line ==
               "file,algo,class,k,found,nodes,leaves,max_depth,elapsed_s,error",
           "csv header");
  int data_rows = 0;
  while (std::getline(csv, line)) {
    if (line.rfind("__summary__", 0) == 0) continue;
    ++data_rows;
    c.expect(line.find(",0,") != std::string::npos, "unsat row found flag");
  }
  c.expect(data_rows == 2, "csv row count");
}

int main(int argc, char** argv) {
  std::string cli = argc > 1 ? argv[1] : "";
  criterion1_oracle_equivalence();
  criterion2_branching_factors();
  criterion3_r2_exhaustiveness();
  criterion4_horn_node_bound();
  criterion5_krom_shape();
  criterion6_reduction_equivalences();
  criterion7_class_machinery();
  criterion8_cli_contract(cli);
  if (g_failures) {
    std::cout << g_failures << " criterion(s) failed" << std::endl;
    return 1;
  }
  std::cout << "all criteria passed" << std::endl;
  return 0;
}
