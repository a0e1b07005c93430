#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "treeline/report.hpp"
#include "treeline/testkit.hpp"

using nlohmann::json;

namespace {

using namespace treeline;

struct Stopwatch {
  std::chrono::steady_clock::time_point mark = std::chrono::steady_clock::now();

  double lap() {
    const auto now = std::chrono::steady_clock::now();
    const double ms = std::chrono::duration<double, std::milli>(now - mark).count();
    mark = now;
    return ms;
  }
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void emit(const json& report, bool json_mode,
          const std::vector<std::string>& lines) {
  if (json_mode) {
    std::cout << report.dump(2) << "\n";
  } else {
    for (const auto& line : lines) std::cout << line << "\n";
  }
}

std::string joined(const std::vector<std::string>& parts) {
  std::string out;
  for (const auto& p : parts) {
    if (!out.empty()) out += ' ';
    out += p;
  }
  return out;
}

json path_edges_json(const Ordering& ord) {
  json edges = json::array();
  const auto labels = ord.labels();
  for (size_t i = 0; i + 1 < labels.size(); ++i) {
    edges.push_back(json::array({labels[i], labels[i + 1]}));
  }
  return edges;
}

int run_check(const std::string& path, bool json_mode) {
  Stopwatch watch;
  const std::string text = read_file(path);
  const SetFamily fam = parse_family(text);
  const double parse_ms = watch.lap();

  const auto helly = check_helly_triples(fam);
  const Graph ig = intersection_graph(fam);
  const auto chordal = check_chordal(ig);
  const auto chain = meeting_chain_depth(fam);
  const double run_ms = watch.lap();

  json report{{"command", "check"}, {"input_digest", digest_string(text)}};
  std::vector<std::string> lines;

  bool ok = true;
  if (helly.has_value()) {
    if (!verify_helly_violation(fam, *helly)) {
      throw Error("internal error: Helly certificate failed re-verification");
    }
    ok = false;
    report["helly"] = json{{"status", "violation"},
                           {"witness_sets", helly->witness_sets}};
    lines.push_back("helly: violation " + joined(helly->witness_sets));
  } else {
    report["helly"] = json{{"status", "ok"}};
    lines.push_back("helly: ok");
  }
  if (auto* c = std::get_if<ChordlessCycle>(&chordal)) {
    if (!verify_chordless_cycle(ig, *c)) {
      throw Error("internal error: cycle certificate failed re-verification");
    }
    ok = false;
    report["chordal"] = json{{"status", "chordless-cycle"}, {"cycle", c->cycle}};
    lines.push_back("chordal: chordless cycle " + joined(c->cycle));
  } else {
    const auto& peo = std::get<Ordering>(chordal);
    if (!verify_elimination_ordering(ig, peo)) {
      throw Error("internal error: elimination ordering failed re-verification");
    }
    report["chordal"] = json{{"status", "ok"}, {"peo", peo.labels()}};
    lines.push_back("chordal: ok");
  }
  if (!verify_meeting_chain(fam, chain.chain) ||
      static_cast<int>(chain.chain.size()) != chain.depth) {
    throw Error("internal error: meeting chain failed re-verification");
  }
  report["chain"] = chain_json(chain);
  lines.push_back("chain depth: " + std::to_string(chain.depth) + " (" +
                  joined(chain.chain) + ")");

  report["verdict"] = ok ? "ok" : "fail";
  lines.push_back(std::string("result: ") + (ok ? "ok" : "fail"));
  report["timings_ms"] = json{{"parse", parse_ms}, {"run", run_ms}};
  emit(report, json_mode, lines);
  return ok ? 0 : 1;
}

int run_realize_tree(const SetFamily& fam, const std::string& text,
                     double parse_ms, bool json_mode) {
  Stopwatch watch;
  const auto result = realize_tree(fam);
  const double run_ms = watch.lap();

  json report{{"command", "realize"},
              {"mode", "tree"},
              {"input_digest", digest_string(text)}};
  std::vector<std::string> lines;
  int code = 0;

  if (auto* t = std::get_if<Tree>(&result)) {
    if (!validate_subtree_representation(*t, fam).ok()) {
      throw Error("internal error: tree failed re-validation");
    }
    report["verdict"] = "realizable";
    report["tree"] = tree_json(*t);
    lines.push_back("realizable: yes");
    for (const auto& [u, v] : t->graph().edge_labels()) {
      lines.push_back("edge: " + u + " -- " + v);
    }
  } else if (auto* v = std::get_if<HellyViolation>(&result)) {
    if (!verify_helly_violation(fam, *v)) {
      throw Error("internal error: Helly certificate failed re-verification");
    }
    report["verdict"] = "not-realizable";
    report["certificate"] = helly_json(*v);
    lines.push_back("realizable: no");
    lines.push_back("helly violation: " + joined(v->witness_sets));
    code = 1;
  } else {
    const auto& c = std::get<ChordlessCycle>(result);
    if (!verify_chordless_cycle(intersection_graph(fam), c)) {
      throw Error("internal error: cycle certificate failed re-verification");
    }
    report["verdict"] = "not-realizable";
    report["certificate"] = cycle_json(c);
    lines.push_back("realizable: no");
    lines.push_back("chordless cycle: " + joined(c.cycle));
    code = 1;
  }
  report["timings_ms"] = json{{"parse", parse_ms}, {"run", run_ms}};
  emit(report, json_mode, lines);
  return code;
}

int run_realize_interval(const SetFamily& fam, const std::string& text,
                         double parse_ms, bool json_mode) {
  Stopwatch watch;
  const auto result = realize_interval_order(fam);
  const double run_ms = watch.lap();

  json report{{"command", "realize"},
              {"mode", "interval"},
              {"input_digest", digest_string(text)}};
  std::vector<std::string> lines;
  int code = 0;

  if (auto* ord = std::get_if<Ordering>(&result)) {
    if (!verify_interval_ordering(fam, *ord)) {
      throw Error("internal error: ordering failed re-verification");
    }
    report["verdict"] = "realizable";
    report["ordering"] = ordering_json(*ord);
    report["path_edges"] = path_edges_json(*ord);
    lines.push_back("realizable: yes");
    lines.push_back("ordering: " + joined(ord->labels()));
    const auto labels = ord->labels();
    for (size_t i = 0; i + 1 < labels.size(); ++i) {
      lines.push_back("path edge: " + labels[i] + " -- " + labels[i + 1]);
    }
  } else {
    const auto& t = std::get<ObstructionTriple>(result);
    if (!verify_obstruction_triple(fam, t)) {
      throw Error("internal error: obstruction failed re-verification");
    }
    report["verdict"] = "not-realizable";
    report["certificate"] = obstruction_json(t);
    lines.push_back("realizable: no");
    lines.push_back("obstruction triple: " + t.vertices[0] + " " + t.vertices[1] +
                    " " + t.vertices[2]);
    for (int j = 0; j < 3; ++j) {
      lines.push_back("  X" + std::to_string(j + 1) + ": " + joined(t.witnesses[j]));
    }
    code = 1;
  }
  report["timings_ms"] = json{{"parse", parse_ms}, {"run", run_ms}};
  emit(report, json_mode, lines);
  return code;
}

int run_realize(const std::string& path, const std::string& mode, bool json_mode) {
  Stopwatch watch;
  const std::string text = read_file(path);
  const SetFamily fam = parse_family(text);
  const double parse_ms = watch.lap();
  if (mode == "tree") return run_realize_tree(fam, text, parse_ms, json_mode);
  return run_realize_interval(fam, text, parse_ms, json_mode);
}

int run_graph(const std::string& path, const std::string& action, bool json_mode) {
  Stopwatch watch;
  const std::string text = read_file(path);
  const Graph g = parse_graph(text);
  const double parse_ms = watch.lap();

  json report{{"command", "graph"},
              {"action", action},
              {"input_digest", digest_string(text)}};
  std::vector<std::string> lines;
  int code = 0;

  auto not_chordal = [&](const ChordlessCycle& c) {
    if (!verify_chordless_cycle(g, c)) {
      throw Error("internal error: cycle certificate failed re-verification");
    }
    report["verdict"] = "not-chordal";
    report["certificate"] = cycle_json(c);
    lines.push_back("chordal: no");
    lines.push_back("chordless cycle: " + joined(c.cycle));
    code = 1;
  };

  if (action == "represent") {
    const auto result = subtree_representation(g);
    report["timings_ms"] = json{{"parse", parse_ms}, {"run", watch.lap()}};
    if (auto* c = std::get_if<ChordlessCycle>(&result)) {
      not_chordal(*c);
    } else {
      const auto& rep = std::get<SubtreeRepresentation>(result);
      report["verdict"] = "ok";
      report["representation"] = representation_json(rep);
      lines.push_back("chordal: yes");
      for (const auto& [u, v] : rep.host.graph().edge_labels()) {
        lines.push_back("host edge: " + u + " -- " + v);
      }
      for (const auto& [vertex, cliques] : rep.subtrees) {
        lines.push_back("subtree " + vertex + ": " + joined(cliques));
      }
    }
  } else if (action == "decompose") {
    const auto result = line_decomposition_from_cliques(g);
    report["timings_ms"] = json{{"parse", parse_ms}, {"run", watch.lap()}};
    if (auto* c = std::get_if<ChordlessCycle>(&result)) {
      not_chordal(*c);
    } else if (auto* t = std::get_if<ObstructionTriple>(&result)) {
      report["verdict"] = "no-interval-order";
      report["certificate"] = obstruction_json(*t);
      lines.push_back("decomposable: no");
      lines.push_back("clique obstruction triple: " + t->vertices[0] + " " +
                      t->vertices[1] + " " + t->vertices[2]);
      code = 1;
    } else {
      const auto& d = std::get<PathDecomposition>(result);
      const auto check = verify_path_decomposition(d);
      const int* width = std::get_if<int>(&check);
      if (width == nullptr) {
        throw Error("internal error: decomposition failed re-verification");
      }
      report["verdict"] = "ok";
      report["decomposition"] = decomposition_json(d);
      report["width"] = *width;
      for (const auto& bag : d.bags) lines.push_back("bag: " + joined(bag));
      lines.push_back("width: " + std::to_string(*width));
    }
  } else {  // pathwidth
    const int width = pathwidth_bruteforce(g);
    report["timings_ms"] = json{{"parse", parse_ms}, {"run", watch.lap()}};
    report["verdict"] = "ok";
    report["width"] = width;
    lines.push_back("width: " + std::to_string(width));
  }
  emit(report, json_mode, lines);
  return code;
}

int run_oracle_file(const std::string& kind, const std::string& path,
                    bool json_mode) {
  if (path.empty()) {
    throw Error("oracle --kind=" + kind + " requires an input file");
  }
  Stopwatch watch;
  const std::string text = read_file(path);
  json report{{"command", "oracle"},
              {"kind", kind},
              {"input_digest", digest_string(text)}};
  std::vector<std::string> lines;
  int code = 0;

  if (kind == "tree") {
    const SetFamily fam = parse_family(text);
    const double parse_ms = watch.lap();
    const auto tree = realize_tree_bruteforce(fam);
    report["timings_ms"] = json{{"parse", parse_ms}, {"run", watch.lap()}};
    if (tree) {
      if (!validate_subtree_representation(*tree, fam).ok()) {
        throw Error("internal error: oracle tree failed re-validation");
      }
      report["verdict"] = "realizable";
      report["tree"] = tree_json(*tree);
      lines.push_back("found: yes");
      for (const auto& [u, v] : tree->graph().edge_labels()) {
        lines.push_back("edge: " + u + " -- " + v);
      }
    } else {
      report["verdict"] = "not-realizable";
      lines.push_back("found: no");
      code = 1;
    }
  } else if (kind == "order") {
    const SetFamily fam = parse_family(text);
    const double parse_ms = watch.lap();
    const auto ord = brute_force_order(fam);
    report["timings_ms"] = json{{"parse", parse_ms}, {"run", watch.lap()}};
    if (ord) {
      if (!verify_interval_ordering(fam, *ord)) {
        throw Error("internal error: oracle ordering failed re-verification");
      }
      report["verdict"] = "realizable";
      report["ordering"] = ordering_json(*ord);
      lines.push_back("found: yes");
      lines.push_back("ordering: " + joined(ord->labels()));
    } else {
      report["verdict"] = "not-realizable";
      lines.push_back("found: no");
      code = 1;
    }
  } else {  // pathwidth
    const Graph g = parse_graph(text);
    const double parse_ms = watch.lap();
    const int width = pathwidth_bruteforce(g);
    report["timings_ms"] = json{{"parse", parse_ms}, {"run", watch.lap()}};
    report["verdict"] = "ok";
    report["width"] = width;
    lines.push_back("width: " + std::to_string(width));
  }
  emit(report, json_mode, lines);
  return code;
}

int run_oracle_gen(const std::string& kind, int n, int sets, int density,
                   uint64_t seed) {
  // Generated instances print in the standard file formats so they can be
  // piped straight back into check/realize/graph.
  if (kind == "gen-family") {
    std::cout << serialize_family(random_family(n, sets, density, seed));
  } else if (kind == "gen-chordal") {
    std::cout << serialize_graph(random_chordal(n, seed));
  } else if (kind == "gen-interval") {
    std::cout << serialize_graph(random_interval(n, seed));
  } else {  // gen-counterexample
    std::cout << serialize_family(counterexample_truncation(n));
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Set families as subtrees of a tree or intervals of a line: "
               "checkers, realizers, and graph decompositions"};
  app.require_subcommand(1);
  app.fallthrough();

  bool json_mode = false;
  app.add_flag("--json", json_mode, "emit a JSON report on stdout");

  std::string check_file;
  auto* check = app.add_subcommand("check", "test the Helly and chordal conditions");
  check->add_option("file", check_file, "family JSON file")->required();

  std::string realize_file, realize_mode;
  auto* realize = app.add_subcommand("realize", "realize a family as subtrees or intervals");
  realize->add_option("--mode", realize_mode, "tree or interval")
      ->required()
      ->check(CLI::IsMember({"tree", "interval"}));
  realize->add_option("file", realize_file, "family JSON file")->required();

  std::string graph_file, graph_action;
  auto* graph = app.add_subcommand("graph", "represent or decompose a graph");
  graph->add_option("--action", graph_action, "represent, decompose, or pathwidth")
      ->required()
      ->check(CLI::IsMember({"represent", "decompose", "pathwidth"}));
  graph->add_option("file", graph_file, "graph edge-list file")->required();

  std::string oracle_kind, oracle_file;
  int gen_n = 6, gen_sets = 4, gen_density = 45;
  uint64_t gen_seed = 0;
  auto* oracle = app.add_subcommand("oracle", "brute-force oracles and instance generators");
  oracle->add_option("--kind", oracle_kind, "oracle or generator kind")
      ->required()
      ->check(CLI::IsMember({"tree", "order", "pathwidth", "gen-family",
                             "gen-chordal", "gen-interval", "gen-counterexample"}));
  oracle->add_option("file", oracle_file, "input file (oracle kinds only)");
  oracle->add_option("--n", gen_n, "ground or vertex count (generators)");
  oracle->add_option("--sets", gen_sets, "set count (gen-family)");
  oracle->add_option("--density", gen_density, "membership percentage (gen-family)");
  oracle->add_option("--seed", gen_seed, "generator seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*check) return run_check(check_file, json_mode);
    if (*realize) return run_realize(realize_file, realize_mode, json_mode);
    if (*graph) return run_graph(graph_file, graph_action, json_mode);
    if (oracle_kind.rfind("gen-", 0) == 0) {
      return run_oracle_gen(oracle_kind, gen_n, gen_sets, gen_density, gen_seed);
    }
    return run_oracle_file(oracle_kind, oracle_file, json_mode);
  } catch (const ParseError& e) {
    if (json_mode) {
      json err{{"error", {{"message", e.what()}}}};
      if (e.line > 0) {
        err["error"]["line"] = e.line;
        err["error"]["column"] = e.col;
      }
      if (!e.path.empty()) err["error"]["path"] = e.path;
      std::cout << err.dump(2) << "\n";
    }
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    if (json_mode) {
      std::cout << json{{"error", {{"message", e.what()}}}}.dump(2) << "\n";
    }
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
