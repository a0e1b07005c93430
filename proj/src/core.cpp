#include "treeline/core.hpp"

#include <json.hpp>

#include <algorithm>
#include <set>
#include <sstream>

namespace treeline {

using nlohmann::json;

std::vector<int> bit_indices(const Bitset& b) {
  std::vector<int> out;
  for (auto i = b.find_first(); i != Bitset::npos; i = b.find_next(i))
    out.push_back(static_cast<int>(i));
  return out;
}

static std::string located(const std::string& msg, int line, int col) {
  std::ostringstream os;
  os << "parse error at line " << line << ", column " << col << ": " << msg;
  return os.str();
}

static std::string located(const std::string& msg, const std::string& path) {
  return "parse error at " + path + ": " + msg;
}

ParseError::ParseError(const std::string& msg, int line_, int col_)
    : Error(located(msg, line_, col_)), line(line_), col(col_) {}

ParseError::ParseError(const std::string& msg, std::string path_)
    : Error(located(msg, path_)), path(std::move(path_)) {}

// --- GroundSet ---------------------------------------------------------------

GroundSet::GroundSet(std::vector<std::string> labels) : labels_(std::move(labels)) {
  std::sort(labels_.begin(), labels_.end());
  auto dup = std::adjacent_find(labels_.begin(), labels_.end());
  if (dup != labels_.end()) throw Error("duplicate label \"" + *dup + "\"");
}

std::optional<int> GroundSet::index_of(std::string_view label) const {
  auto it = std::lower_bound(labels_.begin(), labels_.end(), label);
  if (it == labels_.end() || *it != label) return std::nullopt;
  return static_cast<int>(it - labels_.begin());
}

std::vector<std::string> GroundSet::labels_of(const Bitset& members) const {
  std::vector<std::string> out;
  for (int i : bit_indices(members)) out.push_back(labels_.at(i));
  return out;
}

Bitset GroundSet::subset_of(const std::vector<std::string>& members) const {
  Bitset b(labels_.size());
  for (const auto& m : members) {
    auto i = index_of(m);
    if (!i) throw Error("unknown label \"" + m + "\"");
    b.set(*i);
  }
  return b;
}

// --- SetFamily ---------------------------------------------------------------

SetFamily::SetFamily(GroundSet ground, std::vector<FamilySet> sets)
    : ground_(std::move(ground)), sets_(std::move(sets)) {
  for (const auto& s : sets_)
    if (static_cast<int>(s.members.size()) != ground_.size())
      throw Error("set \"" + s.name + "\" has a mask of the wrong width");
  std::sort(sets_.begin(), sets_.end(),
            [](const FamilySet& a, const FamilySet& b) { return a.name < b.name; });
  auto dup = std::adjacent_find(sets_.begin(), sets_.end(),
                                [](const FamilySet& a, const FamilySet& b) {
                                  return a.name == b.name;
                                });
  if (dup != sets_.end()) throw Error("duplicate set name \"" + dup->name + "\"");
}

SetFamily::SetFamily(
    GroundSet ground,
    const std::vector<std::pair<std::string, std::vector<std::string>>>& sets) {
  std::vector<FamilySet> built;
  built.reserve(sets.size());
  for (const auto& [name, members] : sets)
    built.push_back({name, ground.subset_of(members)});
  *this = SetFamily(std::move(ground), std::move(built));
}

std::optional<int> SetFamily::index_of(std::string_view name) const {
  auto it = std::lower_bound(sets_.begin(), sets_.end(), name,
                             [](const FamilySet& s, std::string_view n) {
                               return s.name < n;
                             });
  if (it == sets_.end() || it->name != name) return std::nullopt;
  return static_cast<int>(it - sets_.begin());
}

std::vector<std::string> SetFamily::member_labels(int i) const {
  return ground_.labels_of(sets_.at(i).members);
}

// --- Graph -------------------------------------------------------------------

Graph::Graph(GroundSet vertices, std::vector<std::pair<int, int>> edges)
    : vertices_(std::move(vertices)), edges_(std::move(edges)) {
  const int n = vertices_.size();
  adj_.assign(n, Bitset(n));
  for (auto& [u, v] : edges_) {
    if (u < 0 || v < 0 || u >= n || v >= n) throw Error("edge endpoint out of range");
    if (u == v) throw Error("loop at vertex \"" + vertices_.label(u) + "\"");
    if (u > v) std::swap(u, v);
    if (adj_[u].test(v))
      throw Error("parallel edge " + vertices_.label(u) + " " + vertices_.label(v));
    adj_[u].set(v);
    adj_[v].set(u);
  }
  std::sort(edges_.begin(), edges_.end());
}

Graph::Graph(GroundSet vertices,
             const std::vector<std::pair<std::string, std::string>>& edges) {
  std::vector<std::pair<int, int>> idx;
  idx.reserve(edges.size());
  for (const auto& [a, b] : edges) {
    auto u = vertices.index_of(a);
    auto v = vertices.index_of(b);
    if (!u) throw Error("unknown vertex \"" + a + "\"");
    if (!v) throw Error("unknown vertex \"" + b + "\"");
    idx.emplace_back(*u, *v);
  }
  *this = Graph(std::move(vertices), std::move(idx));
}

std::vector<std::pair<std::string, std::string>> Graph::edge_labels() const {
  std::vector<std::pair<std::string, std::string>> out;
  out.reserve(edges_.size());
  for (auto [u, v] : edges_)
    out.emplace_back(vertices_.label(u), vertices_.label(v));
  return out;
}

// --- Tree --------------------------------------------------------------------

Tree::Tree(Graph g) : g_(std::move(g)) {
  const int n = g_.n();
  if (n == 0) throw Error("a tree needs at least one vertex");
  if (g_.edge_count() != n - 1)
    throw Error("a tree on " + std::to_string(n) + " vertices needs exactly " +
                std::to_string(n - 1) + " edges");
  Bitset seen(n);
  std::vector<int> stack{0};
  seen.set(0);
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int u : bit_indices(g_.neighbors(v)))
      if (!seen.test(u)) {
        seen.set(u);
        stack.push_back(u);
      }
  }
  if (seen.count() != static_cast<size_t>(n)) throw Error("tree is not connected");
}

// --- Ordering ----------------------------------------------------------------

Ordering::Ordering(GroundSet ground, std::vector<int> sequence)
    : ground_(std::move(ground)), seq_(std::move(sequence)) {
  const int n = ground_.size();
  if (static_cast<int>(seq_.size()) != n)
    throw Error("ordering has the wrong length");
  Bitset seen(n);
  for (int v : seq_) {
    if (v < 0 || v >= n || seen.test(v)) throw Error("ordering is not a permutation");
    seen.set(v);
  }
}

Ordering::Ordering(GroundSet ground, const std::vector<std::string>& labels) {
  std::vector<int> seq;
  seq.reserve(labels.size());
  for (const auto& l : labels) {
    auto i = ground.index_of(l);
    if (!i) throw Error("unknown label \"" + l + "\"");
    seq.push_back(*i);
  }
  *this = Ordering(std::move(ground), std::move(seq));
}

std::vector<std::string> Ordering::labels() const {
  std::vector<std::string> out;
  out.reserve(seq_.size());
  for (int v : seq_) out.push_back(ground_.label(v));
  return out;
}

std::vector<int> Ordering::positions() const {
  std::vector<int> pos(seq_.size());
  for (int i = 0; i < static_cast<int>(seq_.size()); ++i) pos[seq_[i]] = i;
  return pos;
}

Ordering Ordering::reversed() const {
  std::vector<int> rev(seq_.rbegin(), seq_.rend());
  return Ordering(ground_, std::move(rev));
}

// --- family JSON -------------------------------------------------------------

namespace {

std::pair<int, int> offset_to_line_col(std::string_view text, std::size_t offset) {
  int line = 1, col = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

// First pass over family JSON: reject syntax errors with line/column and
// duplicate object keys with a path.  The DOM parser silently keeps the last
// duplicate, so this has to happen at the SAX level.
class FamilyScan : public nlohmann::json_sax<json> {
 public:
  explicit FamilyScan(std::string_view text) : text_(text) {}

  std::optional<ParseError> error;

  bool null() override { return true; }
  bool boolean(bool) override { return true; }
  bool number_integer(number_integer_t) override { return true; }
  bool number_unsigned(number_unsigned_t) override { return true; }
  bool number_float(number_float_t, const string_t&) override { return true; }
  bool string(string_t&) override { return true; }
  bool binary(binary_t&) override { return true; }

  bool start_object(std::size_t) override {
    frames_.push_back({true, pending_name_, {}});
    return true;
  }
  bool key(string_t& val) override {
    auto& seen = frames_.back().seen;
    if (!seen.insert(val).second) {
      error = ParseError("duplicate key \"" + val + "\"", path() + "." + val);
      return false;
    }
    pending_name_ = val;
    return true;
  }
  bool end_object() override {
    frames_.pop_back();
    return true;
  }
  bool start_array(std::size_t) override {
    frames_.push_back({false, pending_name_, {}});
    return true;
  }
  bool end_array() override {
    frames_.pop_back();
    return true;
  }

  bool parse_error(std::size_t position, const std::string&,
                   const nlohmann::detail::exception& ex) override {
    if (!error) {
      auto [line, col] = offset_to_line_col(text_, position > 0 ? position - 1 : 0);
      error = ParseError(detail_of(ex.what()), line, col);
    }
    return false;
  }

 private:
  struct Frame {
    bool is_object;
    std::string name;
    std::set<std::string> seen;
  };

  std::string path() const {
    std::string p = "$";
    for (const auto& f : frames_)
      if (!f.name.empty()) p += "." + f.name;
    return p;
  }

  static std::string detail_of(std::string what) {
    // nlohmann formats these as "[json.exception...] parse error at line L,
    // column C: <detail>"; keep only the detail.
    auto pos = what.find("] ");
    if (pos != std::string::npos) what = what.substr(pos + 2);
    if (what.rfind("parse error", 0) == 0) {
      auto c = what.find(": ");
      if (c != std::string::npos) what = what.substr(c + 2);
    }
    return what;
  }

  std::string_view text_;
  std::vector<Frame> frames_;
  std::string pending_name_;
};

std::vector<std::string> string_array(const json& j, const std::string& path) {
  if (!j.is_array()) throw ParseError("expected an array", path);
  std::vector<std::string> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_string())
      throw ParseError("expected a string", path + "[" + std::to_string(i) + "]");
    out.push_back(j[i].get<std::string>());
  }
  return out;
}

}  // namespace

SetFamily parse_family(std::string_view text) {
  FamilyScan scan(text);
  json::sax_parse(text, &scan);
  if (scan.error) throw *scan.error;

  json j = json::parse(text);

  if (!j.is_object()) throw ParseError("top-level value must be an object", "$");
  for (const auto& [k, v] : j.items()) {
    (void)v;
    if (k != "ground" && k != "sets")
      throw ParseError("unexpected key \"" + k + "\"", "$." + k);
  }
  if (!j.contains("ground")) throw ParseError("missing key \"ground\"", "$");
  if (!j.contains("sets")) throw ParseError("missing key \"sets\"", "$");

  auto ground_labels = string_array(j["ground"], "$.ground");
  {
    auto sorted = ground_labels;
    std::sort(sorted.begin(), sorted.end());
    auto dup = std::adjacent_find(sorted.begin(), sorted.end());
    if (dup != sorted.end())
      throw ParseError("duplicate label \"" + *dup + "\"", "$.ground");
  }
  GroundSet ground(ground_labels);

  if (!j["sets"].is_object()) throw ParseError("expected an object", "$.sets");
  std::vector<FamilySet> sets;
  for (const auto& [name, members_json] : j["sets"].items()) {
    const std::string path = "$.sets." + name;
    auto members = string_array(members_json, path);
    Bitset mask(ground.size());
    for (std::size_t i = 0; i < members.size(); ++i) {
      auto idx = ground.index_of(members[i]);
      if (!idx)
        throw ParseError("unknown label \"" + members[i] + "\"",
                         path + "[" + std::to_string(i) + "]");
      mask.set(*idx);
    }
    sets.push_back({name, std::move(mask)});
  }
  return SetFamily(std::move(ground), std::move(sets));
}

std::string serialize_family(const SetFamily& f) {
  json j;
  j["ground"] = f.ground().labels();
  j["sets"] = json::object();
  for (int i = 0; i < f.size(); ++i)
    j["sets"][f.set(i).name] = f.member_labels(i);
  return j.dump() + "\n";
}

// --- graph text --------------------------------------------------------------

Graph parse_graph(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;

  auto next_line = [&]() -> bool {
    while (std::getline(in, line)) {
      ++lineno;
      auto first = line.find_first_not_of(" \t\r");
      if (first == std::string::npos) continue;
      if (line[first] == '#') continue;
      return true;
    }
    return false;
  };

  if (!next_line()) throw ParseError("missing \"vertices:\" header", lineno + 1, 1);
  std::istringstream header(line);
  std::string tag;
  header >> tag;
  if (tag != "vertices:")
    throw ParseError("expected \"vertices:\" header, got \"" + tag + "\"", lineno, 1);
  std::vector<std::string> labels;
  for (std::string tok; header >> tok;) labels.push_back(tok);
  GroundSet vertices;
  try {
    vertices = GroundSet(labels);
  } catch (const Error& e) {
    throw ParseError(e.what(), lineno, 1);
  }

  std::vector<std::pair<int, int>> edges;
  std::vector<Bitset> adj(vertices.size(), Bitset(vertices.size()));
  while (next_line()) {
    std::istringstream es(line);
    std::string a, b, extra;
    es >> a >> b;
    if (b.empty()) throw ParseError("edge line needs two labels", lineno, 1);
    if (es >> extra)
      throw ParseError("trailing token \"" + extra + "\" on edge line", lineno, 1);
    auto u = vertices.index_of(a);
    auto v = vertices.index_of(b);
    if (!u) throw ParseError("unknown vertex \"" + a + "\"", lineno, 1);
    if (!v) throw ParseError("unknown vertex \"" + b + "\"", lineno, 1);
    if (*u == *v) throw ParseError("loop at \"" + a + "\"", lineno, 1);
    if (adj[*u].test(*v))
      throw ParseError("duplicate edge " + a + " " + b, lineno, 1);
    adj[*u].set(*v);
    adj[*v].set(*u);
    edges.emplace_back(*u, *v);
  }
  return Graph(std::move(vertices), std::move(edges));
}

std::string serialize_graph(const Graph& g) {
  std::ostringstream os;
  os << "vertices:";
  for (const auto& l : g.vertices().labels()) os << ' ' << l;
  os << '\n';
  for (auto [u, v] : g.edges())
    os << g.vertices().label(u) << ' ' << g.vertices().label(v) << '\n';
  return os.str();
}

// --- derived structures ------------------------------------------------------

Graph intersection_graph(const SetFamily& f) {
  std::vector<std::string> names;
  names.reserve(f.size());
  for (const auto& s : f.sets()) names.push_back(s.name);
  GroundSet vertices(names);
  // Set order and vertex order coincide: both are sorted by name.
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < f.size(); ++i)
    for (int j = i + 1; j < f.size(); ++j)
      if (f.set(i).members.intersects(f.set(j).members)) edges.emplace_back(i, j);
  return Graph(std::move(vertices), std::move(edges));
}

int induced_component_count(const Tree& t, const Bitset& subset) {
  if (static_cast<int>(subset.size()) != t.graph().n())
    throw Error("subset mask has the wrong width");
  Bitset todo = subset;
  int components = 0;
  while (todo.any()) {
    ++components;
    std::vector<int> stack{static_cast<int>(todo.find_first())};
    todo.reset(stack[0]);
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      Bitset reach = t.graph().neighbors(v) & todo;
      for (int u : bit_indices(reach)) {
        todo.reset(u);
        stack.push_back(u);
      }
    }
  }
  return components;
}

int induced_component_count(const Tree& t, const std::vector<std::string>& subset) {
  return induced_component_count(t, t.vertices().subset_of(subset));
}

ValidationReport validate_subtree_representation(const Tree& t, const SetFamily& f) {
  if (!(t.vertices() == f.ground()))
    throw Error("tree vertex set differs from the family's ground set");
  ValidationReport report;
  for (int i = 0; i < f.size(); ++i) {
    const auto& s = f.set(i);
    if (s.members.none()) {
      report.empty_sets.push_back(s.name);
    } else if (induced_component_count(t, s.members) != 1) {
      report.not_subtrees.push_back(s.name);
    }
  }
  return report;
}

}  // namespace treeline
