#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "vnesim/graph.hpp"

namespace vnesim {

// One topology file in the BRITE-style dialect used by this project:
//
//   Topology: ( <N> Nodes, <M> Edges )
//   # arrival <real>           (request files only)
//   # lifetime <real>          (request files only)
//   Nodes: ( <N> )
//   <id> <x> <y> <indeg> <outdeg> <as> <type> <cpu>
//   Edges: ( <M> )
//   <id> <from> <to> <length> <delay> <bw> <asfrom> <asto> <type>
//
// Fields are space-separated; reals round-trip exactly.  cpu holds the
// node capacity or demand, bw the link capacity or demand.
struct BriteNode {
  int id = -1;
  double x = 0.0;
  double y = 0.0;
  double cpu = 0.0;
  bool operator==(const BriteNode&) const = default;
};

struct BriteEdge {
  int id = -1;
  int from = -1;
  int to = -1;
  double length = 0.0;
  double bw = 0.0;
  bool operator==(const BriteEdge&) const = default;
};

struct BriteDocument {
  std::vector<BriteNode> nodes;
  std::vector<BriteEdge> edges;
  std::optional<double> arrival;
  std::optional<double> lifetime;
  bool operator==(const BriteDocument&) const = default;
};

class BriteParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void write_brite(const BriteDocument& doc, std::ostream& out);
void write_brite_file(const BriteDocument& doc, const std::filesystem::path& path);

// Throws BriteParseError naming the offending line on malformed input,
// duplicate or non-dense ids, unknown edge endpoints, or missing fields.
BriteDocument read_brite(std::istream& in, const std::string& name = "<stream>");
BriteDocument read_brite_file(const std::filesystem::path& path);

BriteDocument to_brite(const SubstrateNetwork& sn,
                       const std::vector<std::pair<double, double>>& positions);
BriteDocument to_brite(const VirtualNetwork& vn,
                       const std::vector<std::pair<double, double>>& positions,
                       double arrival, double lifetime);

SubstrateNetwork substrate_from_brite(const BriteDocument& doc);
VirtualNetwork virtual_from_brite(const BriteDocument& doc);

}  // namespace vnesim
