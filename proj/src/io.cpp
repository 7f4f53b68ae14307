#include "io.hpp"

#include <fstream>
#include <sstream>
#include <unordered_map>

namespace interplan {

namespace {

std::vector<std::string> split_ws(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

struct PairLine {
  int line;
  int a;
  std::string op;
  int b;
};

struct ParsedGraph {
  std::vector<std::string> names;
  std::vector<PairLine> pairs;
};

ParsedGraph parse_common(const std::string& text) {
  ParsedGraph out;
  std::unordered_map<std::string, int> index;
  std::vector<bool> seen;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++lineno;
    auto toks = split_ws(line);
    if (toks.empty() || toks[0][0] == '#') continue;
    if (!have_header) {
      if (toks[0] != "vertices:")
        throw ParseError("expected 'vertices: NAME ...' as the first content line", lineno);
      if (toks.size() < 2) throw ParseError("vertex list is empty", lineno);
      for (size_t i = 1; i < toks.size(); ++i) {
        if (index.count(toks[i])) throw ParseError("duplicate vertex name '" + toks[i] + "'", lineno);
        index[toks[i]] = static_cast<int>(out.names.size());
        out.names.push_back(toks[i]);
      }
      if (out.names.size() > 64) throw ParseError("at most 64 vertices are supported", lineno);
      seen.assign(pair_count(static_cast<int>(out.names.size())), false);
      have_header = true;
      continue;
    }
    if (toks.size() != 3)
      throw ParseError("expected 'NAME OP NAME'", lineno);
    auto a = index.find(toks[0]);
    auto b = index.find(toks[2]);
    if (a == index.end()) throw ParseError("unknown vertex '" + toks[0] + "'", lineno);
    if (b == index.end()) throw ParseError("unknown vertex '" + toks[2] + "'", lineno);
    if (a->second == b->second) throw ParseError("a pair needs two distinct vertices", lineno);
    int idx = pair_index(a->second, b->second);
    if (seen[idx]) throw ParseError("pair '" + toks[0] + "', '" + toks[2] + "' appears twice", lineno);
    seen[idx] = true;
    out.pairs.push_back({lineno, a->second, toks[1], b->second});
  }
  if (!have_header) throw ParseError("missing 'vertices:' header");
  return out;
}

}  // namespace

KnowledgeGraph parse_kg(const std::string& text) {
  ParsedGraph p = parse_common(text);
  KnowledgeGraph kg(static_cast<int>(p.names.size()), p.names);
  for (const auto& pl : p.pairs) {
    if (pl.op == "->")
      kg.set_mark(pl.a, pl.b, Mark::directed(pl.a, pl.b));
    else if (pl.op == "--")
      kg.set_mark(pl.a, pl.b, Mark::undirected());
    else if (pl.op == "~>")
      kg.set_mark(pl.a, pl.b, Mark::semi_directed(pl.a, pl.b));
    else if (pl.op == "!!")
      kg.set_mark(pl.a, pl.b, Mark::non_adjacent());
    else if (pl.op == "??")
      kg.set_mark(pl.a, pl.b, Mark::no_knowledge());
    else
      throw ParseError("unknown edge mark '" + pl.op + "'", pl.line);
  }
  if (!kg.directed_acyclic())
    throw ConflictError("directed marks form a cycle");
  return kg;
}

Dag parse_dag(const std::string& text) {
  ParsedGraph p = parse_common(text);
  Dag g(static_cast<int>(p.names.size()), p.names);
  for (const auto& pl : p.pairs) {
    if (pl.op != "->") throw ParseError("a .dag file accepts only '->' lines", pl.line);
    g.add_edge(pl.a, pl.b);
  }
  if (!g.acyclic()) throw ParseError("edges form a directed cycle");
  return g;
}

namespace {

std::string header(const std::vector<std::string>& names) {
  std::string out = "vertices:";
  for (const auto& n : names) out += " " + n;
  out += "\n";
  return out;
}

}  // namespace

std::string format_kg(const KnowledgeGraph& kg) {
  std::string out = header(kg.names());
  int n = kg.size();
  for (int x = 0; x < n; ++x)
    for (int y = x + 1; y < n; ++y) {
      const Mark& m = kg.mark(x, y);
      switch (m.kind) {
        case MarkKind::NoKnowledge: break;
        case MarkKind::Undirected:
          out += kg.name(x) + " -- " + kg.name(y) + "\n";
          break;
        case MarkKind::NonAdjacent:
          out += kg.name(x) + " !! " + kg.name(y) + "\n";
          break;
        case MarkKind::Directed:
          out += kg.name(m.from) + " -> " + kg.name(m.to) + "\n";
          break;
        case MarkKind::SemiDirected:
          out += kg.name(m.from) + " ~> " + kg.name(m.to) + "\n";
          break;
      }
    }
  return out;
}

std::string format_dag(const Dag& g) {
  std::string out = header(g.names());
  for (const auto& [p, c] : g.edges()) out += g.name(p) + " -> " + g.name(c) + "\n";
  return out;
}

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

KnowledgeGraph read_kg_file(const std::string& path) { return parse_kg(read_file(path)); }
Dag read_dag_file(const std::string& path) { return parse_dag(read_file(path)); }

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot open '" + path + "' for writing");
  out << content;
}

}  // namespace interplan
