#include "stk/instance_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "stk/error.hpp"

namespace stk {

namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) fields.push_back(line.substr(i, j - i));
    i = j;
  }
  return fields;
}

long long to_integer(std::string_view s, std::size_t line) {
  long long value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ParseError(line, "expected integer, got '" + std::string(s) + "'");
  }
  return value;
}

double to_number(std::string_view s, std::size_t line) {
  double value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(value)) {
    throw ParseError(line, "expected number, got '" + std::string(s) + "'");
  }
  return value;
}

Vertex to_vertex(std::string_view s, long long n, std::size_t line) {
  long long v = to_integer(s, line);
  if (v < 1 || v > n) {
    throw ParseError(line, "vertex id " + std::string(s) + " out of range [1.." +
                               std::to_string(n) + "]");
  }
  return static_cast<Vertex>(v - 1);
}

std::string_view strip_comment(std::string_view line) {
  auto hash = line.find('#');
  return hash == std::string_view::npos ? line : line.substr(0, hash);
}

Demand parse_demand_fields(const std::vector<std::string_view>& f, long long n,
                           std::size_t line) {
  if (f.size() != 3 && f.size() != 4) {
    throw ParseError(line, "demand line needs 'd <s> <t> [<demand>]'");
  }
  Demand d;
  d.s = to_vertex(f[1], n, line);
  d.t = to_vertex(f[2], n, line);
  if (f.size() == 4) d.amount = to_number(f[3], line);
  if (d.s == d.t) throw ParseError(line, "demand endpoints coincide");
  if (!(d.amount > 0.0)) throw ParseError(line, "nonpositive demand");
  return d;
}

}  // namespace

std::string format_number(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, ptr);
}

Instance parse_instance(std::istream& in) {
  long long n = -1;
  std::vector<Vertex> terminals;
  std::vector<bool> seen;
  std::vector<Edge> edges;
  DemandPairs demands;
  bool has_demands = false;
  int duplicates = 0;

  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    auto fields = split_fields(strip_comment(raw));
    if (fields.empty()) continue;
    std::string_view kind = fields[0];
    if (kind == "p") {
      if (n >= 0) throw ParseError(line, "duplicate header");
      if (fields.size() != 4 || fields[1] != "steiner") {
        throw ParseError(line, "header must be 'p steiner <n> <m>'");
      }
      n = to_integer(fields[2], line);
      long long m = to_integer(fields[3], line);
      if (n < 1 || n > (1LL << 30)) throw ParseError(line, "bad vertex count");
      if (m < 0) throw ParseError(line, "bad edge count");
      seen.assign(static_cast<std::size_t>(n), false);
      continue;
    }
    if (n < 0) throw ParseError(line, "line before 'p steiner' header");
    if (kind == "t") {
      if (fields.size() != 2) throw ParseError(line, "terminal line needs 't <v>'");
      Vertex v = to_vertex(fields[1], n, line);
      if (seen[v]) {
        ++duplicates;
      } else {
        seen[v] = true;
        terminals.push_back(v);
      }
    } else if (kind == "e") {
      if (fields.size() != 4) throw ParseError(line, "edge line needs 'e <u> <v> <w>'");
      Edge e;
      e.u = to_vertex(fields[1], n, line);
      e.v = to_vertex(fields[2], n, line);
      e.w = to_number(fields[3], line);
      if (e.u == e.v) throw ParseError(line, "self-loop");
      if (!(e.w > 0.0)) throw ParseError(line, "nonpositive weight");
      edges.push_back(e);
    } else if (kind == "d") {
      demands.push_back(parse_demand_fields(fields, n, line));
      has_demands = true;
    } else {
      throw ParseError(line, "unknown line type '" + std::string(kind) + "'");
    }
  }
  if (n < 0) throw ParseError(0, "missing 'p steiner' header");
  if (terminals.empty()) throw ParseError(0, "no terminals");
  if (!is_connected(static_cast<int>(n), edges)) {
    throw ParseError(0, "graph is disconnected");
  }

  Instance instance{WeightedGraph(static_cast<int>(n), std::move(edges)),
                    TerminalSet(std::move(terminals), static_cast<int>(n)),
                    std::nullopt, duplicates};
  if (has_demands) instance.demands = std::move(demands);
  return instance;
}

Instance parse_instance_string(const std::string& text) {
  std::istringstream in(text);
  return parse_instance(in);
}

Instance read_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open instance file '" + path + "'");
  return parse_instance(in);
}

DemandPairs parse_demands(std::istream& in, int num_vertices) {
  DemandPairs demands;
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    auto fields = split_fields(strip_comment(raw));
    if (fields.empty()) continue;
    if (fields[0] != "d") throw ParseError(line, "expected 'd <s> <t> [<demand>]'");
    demands.push_back(parse_demand_fields(fields, num_vertices, line));
  }
  return demands;
}

void write_instance(std::ostream& out, const Instance& instance) {
  const WeightedGraph& g = instance.graph;
  out << "p steiner " << g.num_vertices() << ' ' << g.num_edges() << '\n';
  for (Vertex t : instance.terminals.vertices()) out << "t " << t + 1 << '\n';
  for (const Edge& e : g.edges()) {
    out << "e " << e.u + 1 << ' ' << e.v + 1 << ' ' << format_number(e.w) << '\n';
  }
  if (instance.demands) {
    for (const Demand& d : *instance.demands) {
      out << "d " << d.s + 1 << ' ' << d.t + 1 << ' ' << format_number(d.amount)
          << '\n';
    }
  }
}

std::string instance_to_string(const Instance& instance) {
  std::ostringstream out;
  write_instance(out, instance);
  return out.str();
}

}  // namespace stk
