#include "covertree/instance.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

#include <nlohmann/json.hpp>

namespace covertree {

namespace {

constexpr Value kDecimalScale = 1000000;  // 10^6, applied when decimals appear
constexpr Value kMagnitudeLimit = Value{1} << 60;

struct NumberToken {
  Value micros = 0;     // value * 10^6, exact
  bool decimal = false;
};

// Parses a nonnegative decimal numeral with at most six fractional digits.
NumberToken parse_number(std::string_view tok, int line) {
  if (tok.empty()) throw ParseError(line, "empty numeric field");
  if (tok.front() == '-') throw ParseError(line, "negative value '" + std::string(tok) + "'");
  if (tok.front() == '+') tok.remove_prefix(1);

  auto dot = tok.find('.');
  std::string_view int_part = tok.substr(0, dot);
  std::string_view frac_part = dot == std::string_view::npos ? "" : tok.substr(dot + 1);
  if (int_part.empty() && frac_part.empty())
    throw ParseError(line, "malformed number '" + std::string(tok) + "'");
  if (frac_part.size() > 6)
    throw ParseError(line, "more than six decimal places in '" + std::string(tok) + "'");

  Value units = 0;
  if (!int_part.empty()) {
    auto [p, ec] = std::from_chars(int_part.begin(), int_part.end(), units);
    if (ec != std::errc() || p != int_part.end())
      throw ParseError(line, "malformed number '" + std::string(tok) + "'");
  }
  Value frac = 0;
  Value frac_scale = kDecimalScale;
  for (char c : frac_part) {
    if (c < '0' || c > '9')
      throw ParseError(line, "malformed number '" + std::string(tok) + "'");
    frac = frac * 10 + (c - '0');
    frac_scale /= 10;
  }

  NumberToken out;
  out.decimal = dot != std::string_view::npos;
  if (__builtin_mul_overflow(units, kDecimalScale, &out.micros) ||
      __builtin_add_overflow(out.micros, frac * frac_scale, &out.micros))
    throw ParseError(line, "value out of range '" + std::string(tok) + "'");
  return out;
}

NodeId parse_node_id(std::string_view tok, int line) {
  NodeId id = 0;
  auto [p, ec] = std::from_chars(tok.begin(), tok.end(), id);
  if (ec != std::errc() || p != tok.end())
    throw ParseError(line, "malformed node id '" + std::string(tok) + "'");
  return id;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

struct Line {
  std::string_view text;
  int number = 0;
};

std::vector<Line> content_lines(std::string_view text) {
  std::vector<Line> out;
  int number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? text.size() - pos
                                                                          : nl - pos);
    ++number;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    bool blank = line.find_first_not_of(" \t") == std::string_view::npos;
    if (!blank && line[line.find_first_not_of(" \t")] != '#') out.push_back({line, number});
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
  return out;
}

Instance parse_text(std::string_view text) {
  auto lines = content_lines(text);
  if (lines.empty()) throw ParseError(0, "empty input");

  std::size_t cursor = 0;
  auto fields0 = split_fields(lines[cursor].text);
  if (fields0.size() != 1)
    throw ParseError(lines[cursor].number, "expected a single node count");
  NodeId n = parse_node_id(fields0[0], lines[cursor].number);
  if (n < 1) throw ParseError(lines[cursor].number, "node count must be >= 1");
  ++cursor;

  bool any_decimal = false;
  struct RawEdge {
    NodeId a, b;
    Value cost_micros;
    int line;
  };
  std::vector<RawEdge> raw_edges;
  raw_edges.reserve(static_cast<std::size_t>(n) - 1);
  for (NodeId i = 0; i + 1 < n; ++i) {
    if (cursor >= lines.size()) throw ParseError(0, "missing edge lines");
    auto f = split_fields(lines[cursor].text);
    if (f.size() != 3)
      throw ParseError(lines[cursor].number, "expected 'a b cost'");
    NodeId a = parse_node_id(f[0], lines[cursor].number);
    NodeId b = parse_node_id(f[1], lines[cursor].number);
    NumberToken c = parse_number(f[2], lines[cursor].number);
    any_decimal = any_decimal || c.decimal;
    raw_edges.push_back({a, b, c.micros, lines[cursor].number});
    ++cursor;
  }

  struct RawNode {
    Value pi_micros, rho_micros;
  };
  std::vector<RawNode> raw_nodes;
  raw_nodes.reserve(n);
  for (NodeId i = 0; i < n; ++i) {
    if (cursor >= lines.size()) throw ParseError(0, "missing node lines");
    auto f = split_fields(lines[cursor].text);
    if (f.size() != 2)
      throw ParseError(lines[cursor].number, "expected 'penalty radius'");
    NumberToken p = parse_number(f[0], lines[cursor].number);
    NumberToken r = parse_number(f[1], lines[cursor].number);
    any_decimal = any_decimal || p.decimal || r.decimal;
    raw_nodes.push_back({p.micros, r.micros});
    ++cursor;
  }
  if (cursor < lines.size())
    throw ParseError(lines[cursor].number, "unexpected trailing content");

  Value div = any_decimal ? 1 : kDecimalScale;
  Instance inst;
  inst.n = n;
  inst.scale = any_decimal ? kDecimalScale : 1;
  inst.pi.assign(static_cast<std::size_t>(n) + 1, 0);
  inst.rho.assign(static_cast<std::size_t>(n) + 1, 0);
  std::vector<NodeId> leader(static_cast<std::size_t>(n) + 1);
  for (NodeId v = 0; v <= n; ++v) leader[v] = v;
  auto find = [&](NodeId v) {
    while (leader[v] != v) v = leader[v] = leader[leader[v]];
    return v;
  };
  for (const auto& e : raw_edges) {
    if (e.a < 1 || e.a > n || e.b < 1 || e.b > n)
      throw ParseError(e.line, "node id out of range");
    if (e.a == e.b)
      throw ParseError(e.line, "not a tree: self-loop at node " + std::to_string(e.a));
    NodeId ra = find(e.a), rb = find(e.b);
    if (ra == rb)
      throw ParseError(e.line, "not a tree: edge (" + std::to_string(e.a) + "," +
                                   std::to_string(e.b) + ") closes a cycle");
    leader[ra] = rb;
    inst.edges.push_back({e.a, e.b, e.cost_micros / div});
  }
  for (NodeId v = 1; v <= n; ++v) {
    inst.pi[v] = raw_nodes[v - 1].pi_micros / div;
    inst.rho[v] = raw_nodes[v - 1].rho_micros / div;
  }
  return inst;
}

Instance parse_structured(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(0, std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("n") || !doc.contains("edges") || !doc.contains("nodes"))
    throw ParseError(0, "structured instance needs fields n, edges, nodes");

  Instance inst;
  try {
    inst.n = doc.at("n").get<NodeId>();
    if (inst.n < 1) throw ParseError(0, "node count must be >= 1");
    inst.scale = doc.value("scale", Value{1});
    inst.pi.assign(static_cast<std::size_t>(inst.n) + 1, 0);
    inst.rho.assign(static_cast<std::size_t>(inst.n) + 1, 0);
    const auto& edges = doc.at("edges");
    const auto& nodes = doc.at("nodes");
    if (!edges.is_array() || !nodes.is_array())
      throw ParseError(0, "edges and nodes must be arrays");
    if (nodes.size() != static_cast<std::size_t>(inst.n))
      throw ParseError(0, "nodes array must have n entries");
    for (const auto& e : edges) {
      if (!e.is_array() || e.size() != 3) throw ParseError(0, "edge must be [a, b, cost]");
      inst.edges.push_back({e[0].get<NodeId>(), e[1].get<NodeId>(), e[2].get<Value>()});
    }
    NodeId v = 1;
    for (const auto& nd : nodes) {
      if (!nd.is_array() || nd.size() != 2)
        throw ParseError(0, "node entry must be [penalty, radius]");
      inst.pi[v] = nd[0].get<Value>();
      inst.rho[v] = nd[1].get<Value>();
      ++v;
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(0, std::string("invalid structured instance: ") + e.what());
  }
  return inst;
}

}  // namespace

Value Instance::pi_sum() const {
  Value total = 0;
  for (NodeId v = 1; v <= n; ++v) total += pi[v];
  return total;
}

bool operator==(const Instance& x, const Instance& y) {
  auto key = [](const Instance& i) { return std::tie(i.n, i.pi, i.rho); };
  if (key(x) != key(y) || x.edges.size() != y.edges.size()) return false;
  for (std::size_t k = 0; k < x.edges.size(); ++k) {
    if (x.edges[k].a != y.edges[k].a || x.edges[k].b != y.edges[k].b ||
        x.edges[k].cost != y.edges[k].cost)
      return false;
  }
  return true;
}

void validate_instance(Instance& inst) {
  if (inst.n < 1) throw ParseError(0, "node count must be >= 1");
  if (inst.edges.size() != static_cast<std::size_t>(inst.n) - 1)
    throw ParseError(0, "a tree on n nodes needs exactly n-1 edges");
  if (inst.pi.size() != static_cast<std::size_t>(inst.n) + 1 ||
      inst.rho.size() != static_cast<std::size_t>(inst.n) + 1)
    throw ParseError(0, "penalty/radius tables must cover nodes 1..n");

  Value max_value = 1;
  for (NodeId v = 1; v <= inst.n; ++v) {
    if (inst.pi[v] < 0 || inst.rho[v] < 0) throw ParseError(0, "negative value");
    max_value = std::max({max_value, inst.pi[v], inst.rho[v]});
  }

  inst.adj.assign(static_cast<std::size_t>(inst.n) + 1, {});
  std::vector<NodeId> parent(static_cast<std::size_t>(inst.n) + 1, 0);
  std::vector<NodeId> leader(static_cast<std::size_t>(inst.n) + 1);
  for (NodeId v = 0; v <= inst.n; ++v) leader[v] = v;
  auto find = [&](NodeId v) {
    while (leader[v] != v) v = leader[v] = leader[leader[v]];
    return v;
  };
  for (const auto& e : inst.edges) {
    if (!inst.has_node(e.a) || !inst.has_node(e.b)) throw ParseError(0, "node id out of range");
    if (e.a == e.b) throw ParseError(0, "not a tree: self-loop at node " + std::to_string(e.a));
    if (e.cost < 0) throw ParseError(0, "negative value");
    max_value = std::max(max_value, e.cost);
    NodeId ra = find(e.a), rb = find(e.b);
    if (ra == rb)
      throw ParseError(0, "not a tree: edge (" + std::to_string(e.a) + "," +
                              std::to_string(e.b) + ") closes a cycle");
    leader[ra] = rb;
    inst.adj[e.a].push_back({e.b, e.cost});
    inst.adj[e.b].push_back({e.a, e.cost});
  }

  // n-1 edges without a cycle imply connectivity; the magnitude bound keeps
  // every path sum and penalty total, and small multiples of them, in 63 bits.
  if (static_cast<__int128>(inst.n) * max_value > kMagnitudeLimit)
    throw ParseError(0, "magnitude bound exceeded: n * max_value must stay within 2^60");
}

Instance parse_instance(std::string_view text, Format format) {
  Instance inst = format == Format::Text ? parse_text(text) : parse_structured(text);
  validate_instance(inst);
  return inst;
}

std::string serialize_instance(const Instance& inst, Format format) {
  if (format == Format::Text) {
    std::ostringstream out;
    out << inst.n << '\n';
    for (const auto& e : inst.edges) out << e.a << ' ' << e.b << ' ' << e.cost << '\n';
    for (NodeId v = 1; v <= inst.n; ++v) out << inst.pi[v] << ' ' << inst.rho[v] << '\n';
    return out.str();
  }
  nlohmann::json doc;
  doc["n"] = inst.n;
  doc["scale"] = inst.scale;
  auto& edges = doc["edges"] = nlohmann::json::array();
  for (const auto& e : inst.edges) edges.push_back({e.a, e.b, e.cost});
  auto& nodes = doc["nodes"] = nlohmann::json::array();
  for (NodeId v = 1; v <= inst.n; ++v) nodes.push_back({inst.pi[v], inst.rho[v]});
  return doc.dump();
}

RootedTree root_tree(const Instance& inst, NodeId root) {
  if (!inst.has_node(root)) throw std::invalid_argument("root_tree: unknown node id");
  RootedTree t;
  t.root = root;
  auto size = static_cast<std::size_t>(inst.n) + 1;
  t.father.assign(size, 0);
  t.father_cost.assign(size, 0);
  t.children.assign(size, {});
  t.preorder.assign(size, 0);
  t.order.reserve(inst.n);

  t.father[root] = root;
  std::vector<NodeId> stack{root};
  while (!stack.empty()) {
    NodeId v = stack.back();
    stack.pop_back();
    t.preorder[v] = static_cast<NodeId>(t.order.size());
    t.order.push_back(v);
    // Reverse push keeps children in adjacency order on the preorder walk.
    const auto& nbrs = inst.adj[v];
    for (auto it = nbrs.rbegin(); it != nbrs.rend(); ++it) {
      NodeId u = it->first;
      if (t.father[u] != 0) continue;  // visited; covers the root via its self-father
      t.father[u] = v;
      t.father_cost[u] = it->second;
      stack.push_back(u);
    }
  }
  for (NodeId v : t.order) {
    if (v != root) t.children[t.father[v]].push_back(v);
  }
  return t;
}

NormalizedTree normalize_degree(const Instance& inst, NodeId root) {
  RootedTree rt = root_tree(inst, root);

  NormalizedTree out;
  out.root = root;
  out.copies_of.assign(static_cast<std::size_t>(inst.n) + 1, {});
  for (NodeId v = 1; v <= inst.n; ++v) out.copies_of[v] = {v};
  out.orig_of.assign(static_cast<std::size_t>(inst.n) + 1, 0);
  for (NodeId v = 1; v <= inst.n; ++v) out.orig_of[v] = v;

  Instance& norm = out.tree;
  norm.n = inst.n;
  norm.pi = inst.pi;
  norm.rho = inst.rho;
  norm.scale = inst.scale;

  auto new_aux = [&](NodeId original) {
    ++norm.n;
    norm.pi.push_back(0);
    norm.rho.push_back(0);
    out.orig_of.push_back(0);
    out.copies_of[original].push_back(norm.n);
    return norm.n;
  };

  for (NodeId v : rt.order) {
    const auto& kids = rt.children[v];
    std::size_t keep = v == root ? 3 : 2;  // children v itself can hold at degree <= 3
    if (kids.size() <= keep) {
      for (NodeId u : kids) norm.edges.push_back({v, u, rt.father_cost[u]});
      continue;
    }
    // Chain of copies: the first copy (v itself, canonical carrier of pi and
    // rho) keeps keep-1 children, interior copies one child each, the last
    // copy two.
    std::size_t idx = 0;
    NodeId cur = v;
    for (std::size_t take = keep - 1; idx < take; ++idx)
      norm.edges.push_back({cur, kids[idx], rt.father_cost[kids[idx]]});
    while (kids.size() - idx > 2) {
      NodeId aux = new_aux(v);
      norm.edges.push_back({cur, aux, 0});
      norm.edges.push_back({aux, kids[idx], rt.father_cost[kids[idx]]});
      ++idx;
      cur = aux;
    }
    NodeId aux = new_aux(v);
    norm.edges.push_back({cur, aux, 0});
    norm.edges.push_back({aux, kids[idx], rt.father_cost[kids[idx]]});
    norm.edges.push_back({aux, kids[idx + 1], rt.father_cost[kids[idx + 1]]});
  }

  validate_instance(norm);
  return out;
}

std::vector<Value> distances_from(const Instance& inst, NodeId v) {
  if (!inst.has_node(v)) throw std::invalid_argument("distances_from: unknown node id");
  std::vector<Value> dist(static_cast<std::size_t>(inst.n) + 1, -1);
  dist[v] = 0;
  std::vector<NodeId> stack{v};
  while (!stack.empty()) {
    NodeId x = stack.back();
    stack.pop_back();
    for (const auto& [y, c] : inst.adj[x]) {
      if (dist[y] < 0) {
        dist[y] = dist[x] + c;
        stack.push_back(y);
      }
    }
  }
  return dist;
}

}  // namespace covertree
