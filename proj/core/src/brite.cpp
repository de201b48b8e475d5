#include "vnesim/brite.hpp"

#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include "vnesim/textio.hpp"

namespace vnesim {

namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream is(line);
  std::string field;
  while (is >> field) out.push_back(field);
  return out;
}

[[noreturn]] void fail(const std::string& name, int line_no, const std::string& what) {
  throw BriteParseError(name + ":" + std::to_string(line_no) + ": " + what);
}

int degree_of(const BriteDocument& doc, int node) {
  int d = 0;
  for (const BriteEdge& e : doc.edges) {
    if (e.from == node || e.to == node) ++d;
  }
  return d;
}

}  // namespace

void write_brite(const BriteDocument& doc, std::ostream& out) {
  out << "Topology: ( " << doc.nodes.size() << " Nodes, " << doc.edges.size() << " Edges )\n";
  if (doc.arrival) out << "# arrival " << format_real(*doc.arrival) << "\n";
  if (doc.lifetime) out << "# lifetime " << format_real(*doc.lifetime) << "\n";
  out << "Nodes: ( " << doc.nodes.size() << " )\n";
  for (const BriteNode& n : doc.nodes) {
    int deg = degree_of(doc, n.id);
    out << n.id << " " << format_real(n.x) << " " << format_real(n.y) << " " << deg << " "
        << deg << " -1 RT_NODE " << format_real(n.cpu) << "\n";
  }
  out << "Edges: ( " << doc.edges.size() << " )\n";
  for (const BriteEdge& e : doc.edges) {
    out << e.id << " " << e.from << " " << e.to << " " << format_real(e.length) << " 0 "
        << format_real(e.bw) << " -1 -1 E_RT\n";
  }
}

void write_brite_file(const BriteDocument& doc, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
  write_brite(doc, out);
  if (!out.flush()) throw std::runtime_error("write failed: " + path.string());
}

BriteDocument read_brite(std::istream& in, const std::string& name) {
  BriteDocument doc;
  std::string line;
  int line_no = 0;
  // Lines of pure whitespace are skipped, which also swallows the carriage
  // returns of CRLF files ('\r' is whitespace to the field splitter too).
  auto next_line = [&]() -> bool {
    while (std::getline(in, line)) {
      ++line_no;
      if (line.find_first_not_of(" \t\r\f\v") != std::string::npos) return true;
    }
    return false;
  };

  if (!next_line()) fail(name, line_no, "empty file");
  {
    std::vector<std::string> f = split_fields(line);
    if (f.size() != 7 || f[0] != "Topology:" || f[1] != "(" || f[3] != "Nodes," ||
        f[5] != "Edges" || f[6] != ")")
      fail(name, line_no, "malformed topology header");
  }

  long long n_nodes = -1, n_edges = -1;
  // Header comments, then the node section marker.
  for (;;) {
    if (!next_line()) fail(name, line_no, "missing node section");
    std::vector<std::string> f = split_fields(line);
    if (!f.empty() && f[0] == "#") {
      if (f.size() != 3) fail(name, line_no, "malformed header comment");
      if (f[1] == "arrival")
        doc.arrival = parse_real(f[2]);
      else if (f[1] == "lifetime")
        doc.lifetime = parse_real(f[2]);
      else
        fail(name, line_no, "unknown header comment '" + f[1] + "'");
      continue;
    }
    if (f.size() == 4 && f[0] == "Nodes:" && f[1] == "(" && f[3] == ")") {
      try {
        n_nodes = parse_int(f[2]);
      } catch (const std::invalid_argument&) {
        fail(name, line_no, "malformed node count");
      }
      break;
    }
    fail(name, line_no, "expected node section");
  }

  for (long long i = 0; i < n_nodes; ++i) {
    if (!next_line()) fail(name, line_no, "unexpected end of node section");
    std::vector<std::string> f = split_fields(line);
    if (f.size() != 8) fail(name, line_no, "expected 8 fields in node line, got " +
                                                std::to_string(f.size()));
    BriteNode node;
    try {
      node.id = static_cast<int>(parse_int(f[0]));
      node.x = parse_real(f[1]);
      node.y = parse_real(f[2]);
      node.cpu = parse_real(f[7]);
    } catch (const std::invalid_argument& e) {
      fail(name, line_no, e.what());
    }
    if (node.id != static_cast<int>(i))
      fail(name, line_no, "node ids must be dense from 0; got " + std::to_string(node.id));
    doc.nodes.push_back(node);
  }

  if (!next_line()) fail(name, line_no, "missing edge section");
  {
    std::vector<std::string> f = split_fields(line);
    if (f.size() != 4 || f[0] != "Edges:" || f[1] != "(" || f[3] != ")")
      fail(name, line_no, "expected edge section");
    try {
      n_edges = parse_int(f[2]);
    } catch (const std::invalid_argument&) {
      fail(name, line_no, "malformed edge count");
    }
  }

  for (long long i = 0; i < n_edges; ++i) {
    if (!next_line()) fail(name, line_no, "unexpected end of edge section");
    std::vector<std::string> f = split_fields(line);
    if (f.size() != 9) fail(name, line_no, "expected 9 fields in edge line, got " +
                                                std::to_string(f.size()));
    BriteEdge edge;
    try {
      edge.id = static_cast<int>(parse_int(f[0]));
      edge.from = static_cast<int>(parse_int(f[1]));
      edge.to = static_cast<int>(parse_int(f[2]));
      edge.length = parse_real(f[3]);
      edge.bw = parse_real(f[5]);
    } catch (const std::invalid_argument& e) {
      fail(name, line_no, e.what());
    }
    if (edge.id != static_cast<int>(i))
      fail(name, line_no, "edge ids must be dense from 0; got " + std::to_string(edge.id));
    if (edge.from < 0 || edge.from >= n_nodes || edge.to < 0 || edge.to >= n_nodes)
      fail(name, line_no, "edge endpoint out of range");
    doc.edges.push_back(edge);
  }

  if (next_line()) fail(name, line_no, "trailing content after edge section");
  return doc;
}

BriteDocument read_brite_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path.string());
  return read_brite(in, path.string());
}

namespace {

double euclid(const std::pair<double, double>& p, const std::pair<double, double>& q) {
  double dx = p.first - q.first;
  double dy = p.second - q.second;
  return std::sqrt(dx * dx + dy * dy);
}

template <typename Network>
BriteDocument network_to_brite(const Network& net,
                               const std::vector<std::pair<double, double>>& positions) {
  BriteDocument doc;
  for (int i = 0; i < net.node_count(); ++i) {
    std::pair<double, double> pos =
        i < static_cast<int>(positions.size()) ? positions[static_cast<std::size_t>(i)]
                                               : std::pair{0.0, 0.0};
    doc.nodes.push_back({i, pos.first, pos.second, 0.0});
  }
  for (int i = 0; i < net.link_count(); ++i) {
    const auto& l = net.link(i);
    double length = 0.0;
    if (l.a < static_cast<int>(positions.size()) && l.b < static_cast<int>(positions.size()))
      length = euclid(positions[static_cast<std::size_t>(l.a)],
                      positions[static_cast<std::size_t>(l.b)]);
    doc.edges.push_back({i, l.a, l.b, length, 0.0});
  }
  return doc;
}

}  // namespace

BriteDocument to_brite(const SubstrateNetwork& sn,
                       const std::vector<std::pair<double, double>>& positions) {
  BriteDocument doc = network_to_brite(sn, positions);
  for (const SubstrateNode& n : sn.nodes())
    doc.nodes[static_cast<std::size_t>(n.id)].cpu = n.cpu_capacity();
  for (const SubstrateLink& l : sn.links())
    doc.edges[static_cast<std::size_t>(l.id)].bw = l.bw_capacity();
  return doc;
}

BriteDocument to_brite(const VirtualNetwork& vn,
                       const std::vector<std::pair<double, double>>& positions,
                       double arrival, double lifetime) {
  BriteDocument doc = network_to_brite(vn, positions);
  for (const VirtualNode& n : vn.nodes())
    doc.nodes[static_cast<std::size_t>(n.id)].cpu = n.cpu_demand;
  for (const VirtualLink& l : vn.links())
    doc.edges[static_cast<std::size_t>(l.id)].bw = l.bw_demand;
  doc.arrival = arrival;
  doc.lifetime = lifetime;
  return doc;
}

SubstrateNetwork substrate_from_brite(const BriteDocument& doc) {
  SubstrateNetwork sn;
  for (const BriteNode& n : doc.nodes) sn.add_node(n.cpu);
  for (const BriteEdge& e : doc.edges) sn.add_link(e.from, e.to, e.bw);
  return sn;
}

VirtualNetwork virtual_from_brite(const BriteDocument& doc) {
  VirtualNetwork vn;
  for (const BriteNode& n : doc.nodes) vn.add_node(n.cpu);
  for (const BriteEdge& e : doc.edges) vn.add_link(e.from, e.to, e.bw);
  if (!vn.connected()) throw std::runtime_error("request topology is not connected");
  return vn;
}

}  // namespace vnesim
