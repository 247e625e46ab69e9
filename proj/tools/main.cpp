// weakbd command line front end. Everything goes through the C API in
// weakbd.h; this translation unit never touches the core headers.
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <regex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "weakbd.h"

namespace {

constexpr int kExitFound = 0;
constexpr int kExitNotFound = 1;
constexpr int kExitError = 2;

const std::vector<std::string> kClassOrder = {
    "horn", "antihorn", "krom", "0val", "1val", "forest", "match", "chains"};

int fail(const std::string& msg) {
  std::cerr << "error: " << msg << '\n';
  return kExitError;
}

std::optional<std::string> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

bool write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) return false;
  out << text;
  return (bool)out;
}

struct FormulaHandle {
  wb_formula* f = nullptr;
  ~FormulaHandle() { wb_formula_free(f); }
};

struct ResultHandle {
  wb_result* r = nullptr;
  ~ResultHandle() { wb_result_free(r); }
};

struct OwnedString {
  char* s = nullptr;
  ~OwnedString() { wb_string_free(s); }
};

int parse_formula_file(const std::string& path, FormulaHandle& out) {
  auto text = read_file(path);
  if (!text) return fail("cannot read '" + path + "'");
  if (wb_formula_parse(text->c_str(), &out.f) != WB_OK)
    return fail(path + ": " + wb_last_error());
  return kExitFound;
}

int algo_from_token(const std::string& s) {
  if (s == "auto") return WB_ALGO_AUTO;
  if (s == "branch") return WB_ALGO_BRANCH;
  if (s == "hs") return WB_ALGO_HS;
  if (s == "generic") return WB_ALGO_GENERIC;
  if (s == "brute") return WB_ALGO_BRUTE;
  return -1;
}

std::string lits_to_text(const int* lits, int len) {
  std::string out;
  for (int i = 0; i < len; ++i) {
    if (i) out += ' ';
    out += std::to_string(lits[i]);
  }
  return out;
}

int cmd_classify(const std::string& file, bool json) {
  FormulaHandle f;
  if (int rc = parse_formula_file(file, f); rc != kExitFound) return rc;
  OwnedString report;
  if (wb_formula_classify_json(f.f, &report.s) != WB_OK)
    return fail(wb_last_error());
  if (json) {
    std::cout << report.s << '\n';
    return kExitFound;
  }
  auto j = nlohmann::json::parse(report.s);
  for (const std::string& cls : kClassOrder)
    std::cout << cls << ": " << (j["classes"][cls].get<bool>() ? "yes" : "no")
              << '\n';
  if (j["certificates"].contains("match")) {
    std::cout << "match certificate:";
    for (auto& [clause, var] : j["certificates"]["match"].items())
      std::cout << " c" << clause << "->" << var.get<int>();
    std::cout << '\n';
  }
  if (j["certificates"].contains("chains"))
    std::cout << "chain components: " << j["certificates"]["chains"].size()
              << '\n';
  return kExitFound;
}

int cmd_solve(const std::string& file, const std::string& cls_token,
              bool json) {
  int cls = wb_class_from_token(cls_token.c_str());
  if (cls < 0) return fail("unknown class '" + cls_token + "'");
  FormulaHandle f;
  if (int rc = parse_formula_file(file, f); rc != kExitFound) return rc;
  int sat = 0, len = 0;
  int* model = nullptr;
  if (wb_formula_solve(f.f, cls, &sat, &model, &len) != WB_OK)
    return fail(wb_last_error());
  if (json) {
    nlohmann::json j;
    j["class"] = cls_token;
    j["sat"] = sat == 1;
    nlohmann::json m = nlohmann::json::object();
    for (int i = 0; i < len; ++i)
      m[std::to_string(std::abs(model[i]))] = model[i] > 0 ? 1 : 0;
    j["model"] = std::move(m);
    std::cout << j.dump() << '\n';
  } else if (sat) {
    std::cout << "SAT\n" << lits_to_text(model, len) << '\n';
  } else {
    std::cout << "UNSAT\n";
  }
  wb_ints_free(model);
  return sat ? kExitFound : kExitNotFound;
}

void print_result_human(const wb_result* r) {
  std::cout << "found: " << (wb_result_found(r) ? "yes" : "no") << '\n';
  if (wb_result_found(r)) {
    const int* p = nullptr;
    int n = 0;
    wb_result_backdoor(r, &p, &n);
    std::cout << "backdoor:";
    for (int i = 0; i < n; ++i) std::cout << ' ' << p[i];
    std::cout << '\n';
    wb_result_witness(r, &p, &n);
    std::cout << "witness: " << lits_to_text(p, n) << '\n';
    wb_result_model(r, &p, &n);
    std::cout << "model: " << lits_to_text(p, n) << '\n';
  }
  std::cout << "nodes: " << wb_result_nodes(r)
            << " leaves: " << wb_result_leaves(r)
            << " max_depth: " << wb_result_max_depth(r)
            << " elapsed_s: " << wb_result_elapsed(r) << '\n';
}

int cmd_detect(const std::string& file, const std::string& cls_token, int k,
               const std::string& algo_token, double timeout, bool json) {
  int cls = wb_class_from_token(cls_token.c_str());
  if (cls < 0) return fail("unknown class '" + cls_token + "'");
  int algo = algo_from_token(algo_token);
  if (algo < 0) return fail("unknown algorithm '" + algo_token + "'");
  FormulaHandle f;
  if (int rc = parse_formula_file(file, f); rc != kExitFound) return rc;
  ResultHandle res;
  int rc = wb_detect(f.f, cls, k, algo, timeout, &res.r);
  if (rc == WB_ERR_TIMEOUT) {
    // partial statistics still go out, in the normal shape
    if (json) {
      OwnedString out;
      if (wb_result_json(res.r, &out.s) == WB_OK) std::cout << out.s << '\n';
    } else {
      print_result_human(res.r);
    }
    return fail("timeout after " + std::to_string(timeout) + "s");
  }
  if (rc != WB_OK) return fail(wb_last_error());
  if (wb_result_found(res.r)) {
    const int* wit = nullptr;
    int wit_len = 0;
    wb_result_witness(res.r, &wit, &wit_len);
    int ok = 0;
    if (wb_verify_witness(f.f, wit, wit_len, cls, k, &ok) != WB_OK || !ok)
      return fail("internal: reported witness failed verification");
  }
  if (json) {
    OwnedString out;
    if (wb_result_json(res.r, &out.s) != WB_OK) return fail(wb_last_error());
    std::cout << out.s << '\n';
  } else {
    print_result_human(res.r);
  }
  return wb_result_found(res.r) ? kExitFound : kExitNotFound;
}

int write_reduction(wb_reduction* red, const std::string& out_path,
                    const nlohmann::json& extra) {
  wb_formula* rf = nullptr;
  if (wb_reduction_formula(red, &rf) != WB_OK) return fail(wb_last_error());
  FormulaHandle guard{rf};
  OwnedString dimacs;
  if (wb_formula_write(rf, &dimacs.s) != WB_OK) return fail(wb_last_error());
  OwnedString sidecar;
  if (wb_reduction_sidecar_json(red, &sidecar.s) != WB_OK)
    return fail(wb_last_error());
  auto j = nlohmann::json::parse(sidecar.s);
  for (auto& [key, value] : extra.items()) j[key] = value;
  if (!write_file(out_path, dimacs.s))
    return fail("cannot write '" + out_path + "'");
  if (!write_file(out_path + ".json", j.dump() + "\n"))
    return fail("cannot write '" + out_path + ".json'");
  std::cout << out_path << " k=" << j["k"].get<int>() << '\n';
  return kExitFound;
}

int cmd_reduce(const std::string& kind, const std::string& input, int k,
               bool k_given, const std::string& out_path) {
  auto text = read_file(input);
  if (!text) return fail("cannot read '" + input + "'");
  if (kind == "sat2chains") {
    wb_formula* f = nullptr;
    if (wb_formula_parse(text->c_str(), &f) != WB_OK)
      return fail(input + ": " + wb_last_error());
    FormulaHandle guard{f};
    wb_reduction* red = nullptr;
    if (wb_reduce_sat_to_chains(f, &red) != WB_OK) return fail(wb_last_error());
    int rc = write_reduction(red, out_path, nlohmann::json::object());
    wb_reduction_free(red);
    return rc;
  }
  if (!k_given) return fail(kind + " needs -k");
  if (kind == "hs2match") {
    wb_hs* h = nullptr;
    if (wb_hs_parse(text->c_str(), &h) != WB_OK)
      return fail(input + ": " + wb_last_error());
    wb_hs* folded = nullptr;
    int* forced = nullptr;
    int forced_len = 0;
    int rc0 = wb_hs_fold_singletons(h, &folded, &forced, &forced_len);
    wb_hs_free(h);
    if (rc0 != WB_OK) return fail(wb_last_error());
    int k_left = k - forced_len;
    nlohmann::json extra;
    extra["k_input"] = k;
    extra["forced_elements"] =
        std::vector<int>(forced, forced + forced_len);
    wb_ints_free(forced);
    if (k_left < 0) {
      wb_hs_free(folded);
      return fail("singleton sets force more than " + std::to_string(k) +
                  " elements");
    }
    wb_reduction* red = nullptr;
    int rc1 = wb_reduce_hs_to_match(folded, k_left, &red);
    wb_hs_free(folded);
    if (rc1 != WB_OK) return fail(wb_last_error());
    int rc = write_reduction(red, out_path, extra);
    wb_reduction_free(red);
    return rc;
  }
  if (kind == "vc20val") {
    wb_graph* g = nullptr;
    if (wb_graph_parse(text->c_str(), &g) != WB_OK)
      return fail(input + ": " + wb_last_error());
    wb_reduction* red = nullptr;
    int rc1 = wb_reduce_vc_to_zeroval(g, k, &red);
    wb_graph_free(g);
    if (rc1 != WB_OK) return fail(wb_last_error());
    int rc = write_reduction(red, out_path, nlohmann::json::object());
    wb_reduction_free(red);
    return rc;
  }
  return fail("unknown reduction '" + kind + "'");
}

int cmd_gen(int n_vars, int n_clauses, int width, unsigned long long seed,
            const std::string& out_path) {
  if (width < 1 || width > 3) return fail("--width must be 1..3");
  wb_formula* f = nullptr;
  if (wb_generate(n_vars, n_clauses, width, seed, &f) != WB_OK)
    return fail(wb_last_error());
  FormulaHandle guard{f};
  OwnedString text;
  if (wb_formula_write(f, &text.s) != WB_OK) return fail(wb_last_error());
  if (out_path.empty()) {
    std::cout << text.s;
  } else if (!write_file(out_path, text.s)) {
    return fail("cannot write '" + out_path + "'");
  }
  return kExitFound;
}

struct BenchRow {
  std::string file;
  int k = 0;
  bool have_result = false;
  int found = 0;
  long long nodes = 0, leaves = 0;
  int max_depth = 0;
  double elapsed = 0;
  std::string error;
};

int bench_threads() {
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("BACKDOOR_THREADS")) {
    long cap = std::strtol(env, nullptr, 10);
    if (cap >= 1 && (unsigned)cap < hw) hw = (unsigned)cap;
  }
  return (int)hw;
}

int cmd_bench(const std::string& dir, const std::string& cls_token,
              const std::string& algo_token, int default_k, bool k_given,
              double timeout, const std::string& out_path) {
  int cls = wb_class_from_token(cls_token.c_str());
  if (cls < 0) return fail("unknown class '" + cls_token + "'");
  int algo = algo_from_token(algo_token);
  if (algo < 0) return fail("unknown algorithm '" + algo_token + "'");
  std::error_code ec;
  std::vector<std::string> files;
  for (auto& entry : std::filesystem::directory_iterator(dir, ec))
    if (entry.is_regular_file() && entry.path().extension() == ".cnf")
      files.push_back(entry.path().string());
  if (ec) return fail("cannot read directory '" + dir + "'");
  std::sort(files.begin(), files.end());

  std::vector<BenchRow> rows(files.size());
  std::atomic<std::size_t> next{0};
  const std::regex k_pattern("_k(\\d+)");
  auto worker = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= files.size()) return;
      BenchRow& row = rows[i];
      row.file = std::filesystem::path(files[i]).filename().string();
      std::smatch m;
      if (std::regex_search(row.file, m, k_pattern))
        row.k = std::stoi(m[1]);
      else if (k_given)
        row.k = default_k;
      else {
        row.error = "no _k<N> in filename and no -k given";
        continue;
      }
      auto text = read_file(files[i]);
      if (!text) {
        row.error = "unreadable";
        continue;
      }
      wb_formula* f = nullptr;
      if (wb_formula_parse(text->c_str(), &f) != WB_OK) {
        row.error = "parse error";
        continue;
      }
      wb_result* r = nullptr;
      int rc = wb_detect(f, cls, row.k, algo, timeout, &r);
      if (rc == WB_OK || rc == WB_ERR_TIMEOUT) {
        row.have_result = true;
        row.found = wb_result_found(r);
        row.nodes = wb_result_nodes(r);
        row.leaves = wb_result_leaves(r);
        row.max_depth = wb_result_max_depth(r);
        row.elapsed = wb_result_elapsed(r);
        if (rc == WB_ERR_TIMEOUT) row.error = "timeout";
        wb_result_free(r);
      } else {
        row.error = "detect error";
      }
      wb_formula_free(f);
    }
  };
  int n_threads = std::min<int>(bench_threads(), (int)files.size());
  std::vector<std::thread> pool;
  for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();

  std::ostringstream csv;
  csv << "file,algo,class,k,found,nodes,leaves,max_depth,elapsed_s,error\n";
  for (const BenchRow& row : rows) {
    csv << row.file << ',' << algo_token << ',' << cls_token << ',' << row.k
        << ',';
    if (row.have_result)
      csv << row.found << ',' << row.nodes << ',' << row.leaves << ','
          << row.max_depth << ',' << row.elapsed;
    else
      csv << ",,,,";
    csv << ',' << row.error << '\n';
  }
  // least-squares fit of log(nodes) against k, for comparison with the
  // analytic branching factors
  std::vector<std::pair<double, double>> pts;
  for (const BenchRow& row : rows)
    if (row.have_result && row.error.empty() && row.nodes > 0)
      pts.push_back({(double)row.k, std::log((double)row.nodes)});
  bool distinct_k = false;
  for (auto& p : pts)
    if (p.first != pts.front().first) distinct_k = true;
  if (pts.size() >= 2 && distinct_k) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0, n = (double)pts.size();
    for (auto [x, y] : pts) sx += x, sy += y, sxx += x * x, sxy += x * y;
    double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    csv << "__summary__," << algo_token << ',' << cls_token << ",,,,,,,"
        << "fit_base=" << std::exp(slope) << '\n';
  }
  if (out_path.empty()) {
    std::cout << csv.str();
  } else if (!write_file(out_path, csv.str())) {
    return fail("cannot write '" + out_path + "'");
  }
  return kExitFound;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"weak backdoor set toolkit"};
  app.require_subcommand(1);

  std::string file, cls = "horn", algo = "auto", out_path, kind;
  int k = 0;
  double timeout = 0;
  bool json = false;
  int gen_vars = 0, gen_clauses = 0, gen_width = 3;
  unsigned long long seed = 0;

  auto* classify = app.add_subcommand("classify", "base class membership");
  classify->add_option("file", file)->required();
  classify->add_flag("--json", json);

  auto* solve = app.add_subcommand("solve", "solve inside a base class");
  solve->add_option("file", file)->required();
  solve->add_option("--class", cls)->required();
  solve->add_flag("--json", json);

  auto* detect = app.add_subcommand("detect", "find a weak backdoor set");
  detect->add_option("file", file)->required();
  detect->add_option("--class", cls)->required();
  auto* detect_k = detect->add_option("-k", k)->required();
  detect->add_option("--algo", algo);
  detect->add_option("--timeout", timeout);
  detect->add_flag("--json", json);

  auto* reduce = app.add_subcommand("reduce", "build a hardness instance");
  reduce->add_option("kind", kind)->required();
  reduce->add_option("input", file)->required();
  auto* reduce_k = reduce->add_option("-k", k);
  reduce->add_option("--out", out_path)->required();

  auto* gen = app.add_subcommand("gen", "sample a random formula");
  gen->add_option("--vars", gen_vars)->required();
  gen->add_option("--clauses", gen_clauses)->required();
  gen->add_option("--width", gen_width);
  gen->add_option("--seed", seed);
  gen->add_option("--out", out_path);

  auto* bench = app.add_subcommand("bench", "run a corpus, emit CSV stats");
  bench->add_option("dir", file)->required();
  bench->add_option("--class", cls)->required();
  bench->add_option("--algo", algo);
  auto* bench_k = bench->add_option("-k", k);
  bench->add_option("--timeout", timeout);
  bench->add_option("--out", out_path);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kExitError;
  }

  try {
    if (classify->parsed()) return cmd_classify(file, json);
    if (solve->parsed()) return cmd_solve(file, cls, json);
    if (detect->parsed()) {
      if (k < 0) return fail("-k must be non-negative");
      (void)detect_k;
      return cmd_detect(file, cls, k, algo, timeout, json);
    }
    if (reduce->parsed())
      return cmd_reduce(kind, file, k, reduce_k->count() > 0, out_path);
    if (gen->parsed()) return cmd_gen(gen_vars, gen_clauses, gen_width, seed,
                                      out_path);
    if (bench->parsed())
      return cmd_bench(file, cls, algo, k, bench_k->count() > 0, timeout,
                       out_path);
  } catch (const std::exception& e) {
    return fail(e.what());
  }
  return kExitError;
}
