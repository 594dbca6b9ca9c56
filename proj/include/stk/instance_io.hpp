#ifndef STK_INSTANCE_IO_HPP_
#define STK_INSTANCE_IO_HPP_

#include <iosfwd>
#include <optional>
#include <string>

#include "stk/graph.hpp"

namespace stk {

struct Instance {
  WeightedGraph graph;
  TerminalSet terminals;
  std::optional<DemandPairs> demands;
  // Terminal lines that repeated an earlier terminal and were dropped.
  int duplicate_terminals = 0;
};

// Line-oriented format, '#' starts a comment:
//
//   p steiner <n> <m>
//   t <v>                   one per terminal
//   e <u> <v> <w>           one per edge, parallel edges are summed
//   d <s> <t> [<demand>]    optional demand pairs, demand defaults to 1
//
// The header's <m> is informational; the edge count is whatever the `e` lines
// produce. Throws ParseError carrying the offending line number.
Instance parse_instance(std::istream& in);
Instance parse_instance_string(const std::string& text);
Instance read_instance_file(const std::string& path);

// Demand-only file: `d` lines (other line kinds are rejected).
DemandPairs parse_demands(std::istream& in, int num_vertices);

void write_instance(std::ostream& out, const Instance& instance);
std::string instance_to_string(const Instance& instance);

// Shortest round-trippable decimal form of a double.
std::string format_number(double x);

}  // namespace stk

#endif  // STK_INSTANCE_IO_HPP_
