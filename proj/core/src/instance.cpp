#include "stackspt/instance.hpp"

#include <algorithm>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "stackspt/errors.hpp"
#include "stackspt/random.hpp"

namespace stackspt {

Instance::Instance(std::size_t vertex_count, VertexId root, std::vector<Edge> edges, std::vector<ExtRational> demand)
    : vertex_count_(vertex_count), root_(root), edges_(std::move(edges)), demand_(std::move(demand)) {
  if (vertex_count_ == 0) throw ValidationError("n", "graph needs at least one vertex");
  if (root_ >= vertex_count_) throw ValidationError("root", "vertex " + std::to_string(root_) + " out of range");

  if (demand_.empty()) demand_.assign(vertex_count_, ExtRational(1));
  if (demand_.size() != vertex_count_) throw ValidationError("demand", "expected one entry per vertex");
  for (std::size_t v = 0; v < vertex_count_; ++v) {
    if (!demand_[v].is_finite() || demand_[v] < 0) {
      throw ValidationError("demand", "vertex " + std::to_string(v) + " needs a finite nonnegative demand");
    }
  }

  std::vector<std::optional<EdgeId>> slots;
  for (EdgeId id = 0; id < edges_.size(); ++id) {
    const Edge& e = edges_[id];
    const std::string where = "edge " + std::to_string(id);
    if (e.tail >= vertex_count_ || e.head >= vertex_count_) throw ValidationError("vertex", where + " has an endpoint out of range");
    if (e.tail == e.head) throw ValidationError("vertex", where + " is a self-loop");
    if (e.is_priceable()) {
      if (e.price_index > kPriceableHardLimit) throw ValidationError("index", where + " has priceable index above the supported limit");
      if (slots.size() < e.price_index) slots.resize(e.price_index);
      if (slots[e.price_index - 1]) throw ValidationError("index", "priceable index " + std::to_string(e.price_index) + " used twice");
      slots[e.price_index - 1] = id;
    } else if (!e.cost.is_finite() || e.cost <= 0) {
      throw ValidationError("cost", where + " needs a finite cost > 0");
    }
  }
  if (slots.empty()) throw ValidationError("k", "at least one priceable edge is required");
  for (std::size_t i = 0; i < slots.size(); ++i) {
    if (!slots[i]) throw ValidationError("index", "priceable index " + std::to_string(i + 1) + " is missing");
    priceable_.push_back(*slots[i]);
  }
  adjacency_ = Digraph::from_edges(vertex_count_, edges_);
}

Instance Instance::with_edge_order(std::span<const EdgeId> order) const {
  if (order.size() != edges_.size()) throw std::invalid_argument("edge order must be a permutation of the edge list");
  std::vector<Edge> reordered;
  reordered.reserve(order.size());
  for (const EdgeId id : order) reordered.push_back(edges_.at(id));
  return Instance(vertex_count_, root_, std::move(reordered), demand_);
}

PriceFunction::PriceFunction(std::vector<ExtRational> prices) : prices_(std::move(prices)) {
  for (std::size_t i = 0; i < prices_.size(); ++i) {
    if (!prices_[i].is_finite() || prices_[i] <= 0) {
      throw ValidationError("price", "price of edge " + std::to_string(i + 1) + " must be finite and > 0");
    }
  }
}

PriceFunction PriceFunction::parse(std::string_view text) {
  std::vector<ExtRational> prices;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = std::min(text.find(',', start), text.size());
    auto token = text.substr(start, comma - start);
    while (!token.empty() && token.front() == ' ') token.remove_prefix(1);
    while (!token.empty() && token.back() == ' ') token.remove_suffix(1);
    prices.push_back(ExtRational::parse(token));
    start = comma + 1;
  }
  return PriceFunction(std::move(prices));
}

std::string PriceFunction::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < prices_.size(); ++i) {
    if (i > 0) out += ',';
    out += prices_[i].to_string();
  }
  return out;
}

void check_prices(const Instance& instance, const PriceFunction& prices) {
  if (prices.size() != instance.priceable_count()) {
    throw ValidationError("price", "expected " + std::to_string(instance.priceable_count()) + " prices, got " +
                                       std::to_string(prices.size()));
  }
}

namespace {

std::vector<std::string_view> tokenize(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) tokens.push_back(line.substr(start, i - start));
  }
  return tokens;
}

std::uint64_t parse_count(std::string_view token, std::size_t line, const char* what) {
  if (token.empty() || token.find_first_not_of("0123456789") != std::string_view::npos || token.size() > 18) {
    throw ParseError(line, std::string("expected a nonnegative integer for ") + what + ", got '" + std::string(token) + "'");
  }
  return std::stoull(std::string(token));
}

ExtRational parse_number(std::string_view token, std::size_t line, const char* what) {
  try {
    return ExtRational::parse(token);
  } catch (const std::exception& e) {
    throw ParseError(line, std::string("bad ") + what + ": " + e.what());
  }
}

}  // namespace

Instance parse_instance(std::string_view text, const ParseOptions& options) {
  enum class Stage { kMagic, kGraph, kRoot, kBody };
  Stage stage = Stage::kMagic;
  std::size_t n = 0;
  std::size_t m = 0;
  std::uint64_t k = 0;
  VertexId root = 0;
  std::vector<Edge> edges;
  std::vector<ExtRational> demand;
  std::vector<bool> demand_set;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    ++line_no;
    const auto eol = std::min(text.find('\n', pos), text.size());
    auto line = text.substr(pos, eol - pos);
    pos = eol + 1;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    const auto tok = tokenize(line);
    if (tok.empty()) continue;

    switch (stage) {
      case Stage::kMagic:
        if (tok.size() != 2 || tok[0] != "stackspt") throw ParseError(line_no, "expected 'stackspt 1' header");
        if (tok[1] != "1") throw ParseError(line_no, "unsupported format version '" + std::string(tok[1]) + "'");
        stage = Stage::kGraph;
        break;
      case Stage::kGraph:
        if (tok.size() != 4 || tok[0] != "graph") throw ParseError(line_no, "expected 'graph <n> <m> <k>'");
        n = parse_count(tok[1], line_no, "n");
        m = parse_count(tok[2], line_no, "m");
        k = parse_count(tok[3], line_no, "k");
        if (k > options.max_priceable) {
          throw ValidationError("k", std::to_string(k) + " priceable edges exceed the cap of " +
                                         std::to_string(options.max_priceable));
        }
        demand.assign(n, ExtRational(1));
        demand_set.assign(n, false);
        stage = Stage::kRoot;
        break;
      case Stage::kRoot:
        if (tok.size() != 2 || tok[0] != "root") throw ParseError(line_no, "expected 'root <r>'");
        root = static_cast<VertexId>(parse_count(tok[1], line_no, "root"));
        stage = Stage::kBody;
        break;
      case Stage::kBody:
        if (tok[0] == "demand") {
          if (tok.size() != 3) throw ParseError(line_no, "expected 'demand <v> <phi>'");
          const auto v = parse_count(tok[1], line_no, "vertex");
          if (v >= n) throw ValidationError("vertex", "demand line " + std::to_string(line_no) + " names vertex out of range");
          if (demand_set[v]) throw ValidationError("demand", "vertex " + std::to_string(v) + " listed twice");
          demand[v] = parse_number(tok[2], line_no, "demand");
          demand_set[v] = true;
        } else if (tok[0] == "edge") {
          if (tok.size() != 5 || (tok[3] != "F" && tok[3] != "P")) {
            throw ParseError(line_no, "expected 'edge <u> <v> F <cost>' or 'edge <u> <v> P <i>'");
          }
          const auto u = static_cast<VertexId>(parse_count(tok[1], line_no, "tail"));
          const auto v = static_cast<VertexId>(parse_count(tok[2], line_no, "head"));
          if (tok[3] == "F") {
            edges.push_back(Edge::fixed(u, v, parse_number(tok[4], line_no, "cost")));
          } else {
            const auto i = parse_count(tok[4], line_no, "priceable index");
            if (i == 0 || i > k) throw ValidationError("index", "priceable index on line " + std::to_string(line_no) + " not in 1.." + std::to_string(k));
            edges.push_back(Edge::priceable(u, v, static_cast<PriceIndex>(i)));
          }
        } else {
          throw ParseError(line_no, "unknown directive '" + std::string(tok[0]) + "'");
        }
        break;
    }
  }
  if (stage != Stage::kBody) throw ParseError(line_no, "incomplete header");
  if (edges.size() != m) throw ValidationError("m", "header declares " + std::to_string(m) + " edges, found " + std::to_string(edges.size()));
  Instance inst(n, root, std::move(edges), std::move(demand));
  if (inst.priceable_count() != k) throw ValidationError("k", "header declares " + std::to_string(k) + " priceable edges, found " + std::to_string(inst.priceable_count()));
  return inst;
}

Instance read_instance_file(const std::string& path, const ParseOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_instance(buffer.str(), options);
}

std::string serialize_instance(const Instance& instance) {
  std::ostringstream out;
  out << "stackspt 1\n";
  out << "# vertices without a demand line have demand 1\n";
  out << "graph " << instance.vertex_count() << ' ' << instance.edge_count() << ' ' << instance.priceable_count() << '\n';
  out << "root " << instance.root() << '\n';
  for (VertexId v = 0; v < instance.vertex_count(); ++v) {
    if (instance.demand(v) != 1) out << "demand " << v << ' ' << instance.demand(v) << '\n';
  }
  for (const Edge& e : instance.edges()) {
    out << "edge " << e.tail << ' ' << e.head;
    if (e.is_priceable()) {
      out << " P " << e.price_index << '\n';
    } else {
      out << " F " << e.cost << '\n';
    }
  }
  return out.str();
}

Instance random_instance(const RandomInstanceParams& params) {
  const auto& [n, m, k, cost_min, cost_max, demand_min, demand_max, seed, fixed_spanning] = params;
  if (n == 0) throw std::invalid_argument("n must be at least 1");
  if (k == 0) throw std::invalid_argument("k must be at least 1");
  if (k > kPriceableHardLimit) throw std::invalid_argument("k exceeds the supported limit");
  if (m < n - 1) throw std::invalid_argument("m must be at least n-1 to connect every vertex");
  if (k > m) throw std::invalid_argument("k cannot exceed m");
  if (n == 1) throw std::invalid_argument("a single vertex admits no edge without a self-loop");
  if (fixed_spanning && m - (n - 1) < k) throw std::invalid_argument("fixed spanning tree leaves fewer than k spare edges");
  if (cost_min < 1 || cost_max < cost_min) throw std::invalid_argument("cost range must satisfy 1 <= min <= max");
  if (demand_min < 0 || demand_max < demand_min) throw std::invalid_argument("demand range must satisfy 0 <= min <= max");

  Rng rng(seed);
  const VertexId root = 0;

  // Random arborescence: attach every vertex, in random order, to an earlier one.
  std::vector<VertexId> order(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) order[i] = static_cast<VertexId>(i + 1);
  shuffle(rng, order);
  std::vector<VertexId> attached{root};
  std::vector<std::pair<VertexId, VertexId>> arcs;
  arcs.reserve(m);
  for (const VertexId v : order) {
    arcs.emplace_back(attached[uniform_below(rng, attached.size())], v);
    attached.push_back(v);
  }
  while (arcs.size() < m) {
    const auto u = static_cast<VertexId>(uniform_below(rng, n));
    const auto v = static_cast<VertexId>(uniform_below(rng, n));
    if (u != v) arcs.emplace_back(u, v);
  }

  // Pick the priceable edges among the eligible positions.
  std::vector<std::size_t> eligible;
  for (std::size_t i = fixed_spanning ? n - 1 : 0; i < m; ++i) eligible.push_back(i);
  shuffle(rng, eligible);
  std::vector<PriceIndex> label(m, 0);
  for (std::uint32_t i = 0; i < k; ++i) label[eligible[i]] = i + 1;

  std::vector<std::size_t> positions(m);
  for (std::size_t i = 0; i < m; ++i) positions[i] = i;
  shuffle(rng, positions);

  std::vector<Edge> edges;
  edges.reserve(m);
  for (const std::size_t i : positions) {
    const auto [u, v] = arcs[i];
    if (label[i] != 0) {
      edges.push_back(Edge::priceable(u, v, label[i]));
    } else {
      edges.push_back(Edge::fixed(u, v, ExtRational(uniform_int(rng, cost_min, cost_max))));
    }
  }
  std::vector<ExtRational> demand(n);
  for (auto& d : demand) d = ExtRational(uniform_int(rng, demand_min, demand_max));
  return Instance(n, root, std::move(edges), std::move(demand));
}

}  // namespace stackspt
