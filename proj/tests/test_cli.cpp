#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

// End-to-end runs of the command line binary: exit codes, report shapes,
// error reporting and byte-level determinism.

namespace {

using nlohmann::json;

struct RunResult {
  int code = -1;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  const std::string cmd =
      std::string(TREELINE_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult r;
  char buf[4096];
  size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string data(const std::string& name) {
  return std::string(TREELINE_DATA_DIR) + "/" + name;
}

json parse_report(const RunResult& r) {
  auto j = json::parse(r.out, nullptr, false);
  REQUIRE_FALSE(j.is_discarded());
  return j;
}

}  // namespace

TEST_CASE("check reports both conditions and the chain depth") {
  auto ok = run_cli("check " + data("star.json") + " --json");
  CHECK(ok.code == 0);
  auto j = parse_report(ok);
  CHECK(j["command"] == "check");
  CHECK(j["verdict"] == "ok");
  CHECK(j["helly"]["status"] == "ok");
  CHECK(j["chordal"]["status"] == "ok");
  CHECK(j["chain"]["depth"] == 2);
  std::string digest = j["input_digest"];
  CHECK(digest.rfind("fnv1a64:", 0) == 0);
  CHECK(digest.size() == 8 + 16);

  auto helly = run_cli("check " + data("triangle.json") + " --json");
  CHECK(helly.code == 1);
  auto jh = parse_report(helly);
  CHECK(jh["verdict"] == "fail");
  CHECK(jh["helly"]["status"] == "violation");
  CHECK(jh["helly"]["witness_sets"] == json::array({"p", "q", "r"}));
  CHECK(jh["chordal"]["status"] == "ok");

  auto cyclic = run_cli("check " + data("cycle4.json") + " --json");
  CHECK(cyclic.code == 1);
  auto jc = parse_report(cyclic);
  CHECK(jc["helly"]["status"] == "ok");
  CHECK(jc["chordal"]["status"] == "chordless-cycle");
  CHECK(jc["chordal"]["cycle"] == json::array({"s12", "s23", "s34", "s41"}));
}

TEST_CASE("check prints plain lines without the json flag") {
  auto r = run_cli("check " + data("star.json"));
  CHECK(r.code == 0);
  CHECK(r.out.find("helly: ok") != std::string::npos);
  CHECK(r.out.find("chordal: ok") != std::string::npos);
  CHECK(r.out.find("result: ok") != std::string::npos);
  CHECK(r.out.find("{") == std::string::npos);
}

TEST_CASE("realize in tree mode emits the tree or the certificate") {
  auto yes = run_cli("realize --mode=tree " + data("star.json") + " --json");
  CHECK(yes.code == 0);
  auto j = parse_report(yes);
  CHECK(j["verdict"] == "realizable");
  CHECK(j["tree"]["edges"] ==
        json::array({json::array({"a", "c"}), json::array({"b", "c"}),
                     json::array({"c", "d"})}));

  auto no = run_cli("realize --mode=tree " + data("triangle.json") + " --json");
  CHECK(no.code == 1);
  auto jn = parse_report(no);
  CHECK(jn["verdict"] == "not-realizable");
  CHECK(jn["certificate"]["type"] == "helly-violation");
  CHECK(jn["certificate"]["witness_sets"] == json::array({"p", "q", "r"}));

  auto cyc = run_cli("realize --mode=tree " + data("cycle4.json") + " --json");
  CHECK(cyc.code == 1);
  CHECK(parse_report(cyc)["certificate"]["type"] == "chordless-cycle");
}

TEST_CASE("realize in interval mode emits the order or the triple") {
  auto yes = run_cli("realize --mode=interval " + data("path3.json") + " --json");
  CHECK(yes.code == 0);
  auto j = parse_report(yes);
  CHECK(j["verdict"] == "realizable");
  CHECK(j["ordering"] == json::array({"1", "2", "3"}));
  CHECK(j["path_edges"] ==
        json::array({json::array({"1", "2"}), json::array({"2", "3"})}));

  auto no = run_cli("realize --mode=interval " + data("star.json") + " --json");
  CHECK(no.code == 1);
  auto jn = parse_report(no);
  CHECK(jn["verdict"] == "not-realizable");
  CHECK(jn["certificate"]["type"] == "obstruction-triple");
  CHECK(jn["certificate"]["vertices"] == json::array({"a", "b", "d"}));
}

TEST_CASE("graph actions cover representation, decomposition and width") {
  auto rep = run_cli("graph --action=represent " + data("kite.txt") + " --json");
  CHECK(rep.code == 0);
  auto j = parse_report(rep);
  CHECK(j["verdict"] == "ok");
  CHECK(j["representation"]["host"]["vertices"] ==
        json::array({"a,b,c", "c,d"}));

  auto dec = run_cli("graph --action=decompose " + data("p3.txt") + " --json");
  CHECK(dec.code == 0);
  auto jd = parse_report(dec);
  CHECK(jd["width"] == 1);
  CHECK(jd["decomposition"]["bags"] ==
        json::array({json::array({"1", "2"}), json::array({"2", "3"})}));

  auto tri = run_cli("graph --action=decompose " + data("trident.txt") + " --json");
  CHECK(tri.code == 1);
  CHECK(parse_report(tri)["verdict"] == "no-interval-order");

  auto bad = run_cli("graph --action=decompose " + data("c4.txt") + " --json");
  CHECK(bad.code == 1);
  CHECK(parse_report(bad)["verdict"] == "not-chordal");

  auto pw = run_cli("graph --action=pathwidth " + data("k4.txt") + " --json");
  CHECK(pw.code == 0);
  CHECK(parse_report(pw)["width"] == 3);
}

TEST_CASE("oracle answers from brute force with the same formats") {
  auto t = run_cli("oracle --kind=tree " + data("trunc4.json") + " --json");
  CHECK(t.code == 0);
  CHECK(parse_report(t)["verdict"] == "realizable");

  auto o = run_cli("oracle --kind=order " + data("star.json") + " --json");
  CHECK(o.code == 1);
  CHECK(parse_report(o)["verdict"] == "not-realizable");

  auto o2 = run_cli("oracle --kind=order " + data("path3.json") + " --json");
  CHECK(o2.code == 0);
  CHECK(parse_report(o2)["ordering"] == json::array({"1", "2", "3"}));

  auto pw = run_cli("oracle --kind=pathwidth " + data("c4.txt") + " --json");
  CHECK(pw.code == 0);
  CHECK(parse_report(pw)["width"] == 2);
}

TEST_CASE("generators print standard formats and honor the seed") {
  auto a = run_cli("oracle --kind=gen-family --n=6 --sets=4 --density=50 --seed=7");
  auto b = run_cli("oracle --kind=gen-family --n=6 --sets=4 --density=50 --seed=7");
  auto c = run_cli("oracle --kind=gen-family --n=6 --sets=4 --density=50 --seed=8");
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out != c.out);

  // generated output feeds straight back into the checker
  const std::string tmp = "/tmp/treeline_cli_gen.json";
  {
    std::ofstream out(tmp, std::ios::binary);
    out << a.out;
  }
  auto checked = run_cli("check " + tmp + " --json");
  CHECK((checked.code == 0 || checked.code == 1));

  auto g = run_cli("oracle --kind=gen-chordal --n=8 --seed=3");
  CHECK(g.code == 0);
  CHECK(g.out.rfind("vertices:", 0) == 0);
  const std::string tmpg = "/tmp/treeline_cli_gen.txt";
  {
    std::ofstream out(tmpg, std::ios::binary);
    out << g.out;
  }
  auto repd = run_cli("graph --action=represent " + tmpg + " --json");
  CHECK(repd.code == 0);

  auto lad = run_cli("oracle --kind=gen-counterexample --n=4");
  CHECK(lad.code == 0);
  const std::string tmpl = "/tmp/treeline_cli_ladder.json";
  {
    std::ofstream out(tmpl, std::ios::binary);
    out << lad.out;
  }
  auto re = run_cli("realize --mode=tree " + tmpl + " --json");
  CHECK(re.code == 0);
}

TEST_CASE("failures exit with code 2 and name the problem") {
  auto missing = run_cli("check /nonexistent/path.json --json");
  CHECK(missing.code == 2);

  auto syntax = run_cli("check " + data("bad_syntax.json") + " --json");
  CHECK(syntax.code == 2);
  auto js = parse_report(syntax);
  CHECK(js["error"]["line"].is_number());
  CHECK(js["error"]["column"].is_number());

  auto label = run_cli("check " + data("bad_label.json") + " --json");
  CHECK(label.code == 2);
  CHECK(parse_report(label)["error"]["path"] == "$.sets.s1[1]");

  auto dup = run_cli("check " + data("dup_name.json") + " --json");
  CHECK(dup.code == 2);
  CHECK(parse_report(dup)["error"]["path"] == "$.sets.s1");

  CHECK(run_cli("realize " + data("star.json")).code == 2);  // --mode missing
  CHECK(run_cli("graph --action=shrink " + data("p3.txt")).code == 2);
  CHECK(run_cli("frobnicate").code == 2);
  CHECK(run_cli("oracle --kind=tree").code == 2);  // file required
  CHECK(run_cli("").code == 2);  // a subcommand is required
}

TEST_CASE("reports are byte-stable apart from timings") {
  for (const std::string& args :
       {std::string("check ") + data("trunc4.json") + " --json",
        std::string("realize --mode=interval ") + data("star.json") + " --json",
        std::string("graph --action=decompose ") + data("kite.txt") + " --json"}) {
    auto first = run_cli(args);
    auto second = run_cli(args);
    auto ja = parse_report(first);
    auto jb = parse_report(second);
    ja.erase("timings_ms");
    jb.erase("timings_ms");
    CHECK(ja.dump() == jb.dump());
  }
}
