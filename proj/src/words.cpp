#include "twistcheck/words.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace twistcheck {

SpineGraph::SpineGraph(std::vector<std::string> vertices, std::vector<Edge> edges)
    : vertices_(std::move(vertices)), edges_(std::move(edges)) {
  for (VertexId v = 0; v < vertices_.size(); ++v) {
    if (!vertex_index_.emplace(vertices_[v], v).second) {
      throw ModelError("duplicate vertex '" + vertices_[v] + "'");
    }
  }
  for (EdgeId e = 0; e < edges_.size(); ++e) {
    const Edge& edge = edges_[e];
    if (edge.source >= vertices_.size() || edge.target >= vertices_.size()) {
      throw ModelError("edge '" + edge.name + "' has an unknown endpoint");
    }
    if (!edge_index_.emplace(edge.name, e).second) {
      throw ModelError("duplicate edge '" + edge.name + "'");
    }
  }
}

std::optional<VertexId> SpineGraph::find_vertex(std::string_view name) const {
  auto it = vertex_index_.find(std::string(name));
  if (it == vertex_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<EdgeId> SpineGraph::find_edge(std::string_view name) const {
  auto it = edge_index_.find(std::string(name));
  if (it == edge_index_.end()) return std::nullopt;
  return it->second;
}

bool SpineGraph::connected() const {
  if (vertices_.empty()) return true;
  std::vector<VertexId> parent(vertices_.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](VertexId v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  std::size_t components = vertices_.size();
  for (const Edge& e : edges_) {
    VertexId a = find(e.source), b = find(e.target);
    if (a != b) {
      parent[a] = b;
      --components;
    }
  }
  return components == 1;
}

bool SpineGraph::operator==(const SpineGraph& other) const {
  if (vertices_ != other.vertices_ || edges_.size() != other.edges_.size()) return false;
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const Edge& a = edges_[i];
    const Edge& b = other.edges_[i];
    if (a.name != b.name || a.source != b.source || a.target != b.target) return false;
  }
  return true;
}

VertexId letter_source(const SpineGraph& graph, Letter l) {
  const Edge& e = graph.edge(l.edge);
  return l.inverse ? e.target : e.source;
}

VertexId letter_target(const SpineGraph& graph, Letter l) {
  const Edge& e = graph.edge(l.edge);
  return l.inverse ? e.source : e.target;
}

namespace {

void check_chain(const SpineGraph& graph, std::span<const Letter> letters) {
  for (std::size_t i = 0; i + 1 < letters.size(); ++i) {
    if (letters[i].edge >= graph.edge_count() || letters[i + 1].edge >= graph.edge_count()) {
      throw CompositionError("letter refers to an unknown edge");
    }
    if (letter_target(graph, letters[i]) != letter_source(graph, letters[i + 1])) {
      throw CompositionError("letters " + std::to_string(i) + " and " +
                             std::to_string(i + 1) + " do not compose (" +
                             graph.edge(letters[i].edge).name + ", " +
                             graph.edge(letters[i + 1].edge).name + ")");
    }
  }
  if (letters.size() == 1 && letters[0].edge >= graph.edge_count()) {
    throw CompositionError("letter refers to an unknown edge");
  }
}

}  // namespace

Word::Word(const SpineGraph& graph, std::vector<Letter> letters)
    : Word(graph, std::move(letters), 0) {
  if (letters_.empty()) {
    throw CompositionError("an empty word needs an explicit vertex");
  }
}

Word::Word(const SpineGraph& graph, std::vector<Letter> letters, VertexId at_if_empty)
    : source_(at_if_empty), target_(at_if_empty), letters_(std::move(letters)) {
  check_chain(graph, letters_);
  if (!letters_.empty()) {
    source_ = letter_source(graph, letters_.front());
    target_ = letter_target(graph, letters_.back());
  }
}

WordBuilder::WordBuilder(const SpineGraph& graph, VertexId start)
    : graph_(&graph), source_(start), target_(start) {}

void WordBuilder::push(Letter l) {
  if (letter_source(*graph_, l) != target_) {
    throw CompositionError("letter '" + graph_->edge(l.edge).name +
                           "' does not start at " + graph_->vertex_name(target_));
  }
  if (!letters_.empty() && letters_.back() == l.inverted()) {
    letters_.pop_back();
  } else {
    letters_.push_back(l);
  }
  target_ = letter_target(*graph_, l);
}

void WordBuilder::append(const Word& w) {
  if (w.source() != target_) {
    throw CompositionError("word starting at " + graph_->vertex_name(w.source()) +
                           " appended at " + graph_->vertex_name(target_));
  }
  for (Letter l : w.letters()) push(l);
}

void WordBuilder::append_inverse(const Word& w) {
  if (w.target() != target_) {
    throw CompositionError("inverse word starting at " + graph_->vertex_name(w.target()) +
                           " appended at " + graph_->vertex_name(target_));
  }
  for (auto it = w.letters().rbegin(); it != w.letters().rend(); ++it) push(it->inverted());
}

Word WordBuilder::finish() && { return Word(source_, target_, std::move(letters_)); }

Word reduce(const SpineGraph& graph, std::span<const Letter> letters) {
  if (letters.empty()) {
    throw CompositionError("cannot place an empty letter sequence; use Word(vertex)");
  }
  check_chain(graph, letters);
  WordBuilder b(graph, letter_source(graph, letters.front()));
  for (Letter l : letters) b.push(l);
  return std::move(b).finish();
}

Word reduce(const SpineGraph& graph, const Word& w) {
  WordBuilder b(graph, w.source());
  b.append(w);
  return std::move(b).finish();
}

bool is_reduced(const Word& w) {
  const auto& ls = w.letters();
  for (std::size_t i = 0; i + 1 < ls.size(); ++i) {
    if (ls[i] == ls[i + 1].inverted()) return false;
  }
  return true;
}

Word compose_words(const SpineGraph& graph, const Word& u, const Word& v) {
  if (u.target() != v.source()) {
    throw CompositionError("cannot compose: word ends at " + graph.vertex_name(u.target()) +
                           ", next starts at " + graph.vertex_name(v.source()));
  }
  WordBuilder b(graph, u.source());
  b.append(u);
  b.append(v);
  return std::move(b).finish();
}

Word inverse(const Word& w) {
  std::vector<Letter> out;
  out.reserve(w.size());
  for (auto it = w.letters().rbegin(); it != w.letters().rend(); ++it) {
    out.push_back(it->inverted());
  }
  return Word(w.target(), w.source(), std::move(out));
}

Word cyclic_reduce(const SpineGraph& graph, const Word& loop) {
  if (!loop.is_loop()) throw Error("cyclic reduction needs a loop");
  Word r = reduce(graph, loop);
  const auto& ls = r.letters();
  std::size_t lo = 0, hi = ls.size();
  while (hi - lo >= 2 && ls[lo] == ls[hi - 1].inverted()) {
    ++lo;
    --hi;
  }
  if (lo == 0) return r;
  std::vector<Letter> core(ls.begin() + lo, ls.begin() + hi);
  // The core is a loop at the source of its first letter, possibly another vertex.
  return core.empty() ? Word(loop.source()) : Word(graph, std::move(core));
}

bool is_conjugate(const SpineGraph& graph, const Word& u, const Word& v) {
  if (!u.is_loop() || !v.is_loop()) throw Error("conjugacy test needs loops");
  if (u.source() != v.source()) throw Error("conjugacy test needs loops at one basepoint");
  Word cu = cyclic_reduce(graph, u);
  Word cv = cyclic_reduce(graph, v);
  const auto& a = cu.letters();
  const auto& b = cv.letters();
  if (a.size() != b.size()) return false;
  if (a.empty()) return true;
  std::vector<Letter> doubled(a.begin(), a.end());
  doubled.insert(doubled.end(), a.begin(), a.end());
  auto it = std::search(doubled.begin(), doubled.end(), b.begin(), b.end(),
                        [](const Letter& x, const Letter& y) { return x == y; });
  return it != doubled.end();
}

std::string format_word(const SpineGraph& graph, const Word& w) {
  std::string out;
  for (const Letter& l : w.letters()) {
    if (!out.empty()) out += ' ';
    out += graph.edge(l.edge).name;
    if (l.inverse) out += '\'';
  }
  return out;
}

Word parse_word(const SpineGraph& graph, std::string_view text, VertexId at) {
  std::vector<Letter> letters;
  std::istringstream in{std::string(text)};
  std::string tok;
  while (in >> tok) {
    bool inv = false;
    while (!tok.empty() && tok.back() == '\'') {
      inv = !inv;
      tok.pop_back();
    }
    auto e = graph.find_edge(tok);
    if (!e) throw ModelError("unknown edge '" + tok + "' in word \"" + std::string(text) + "\"");
    letters.push_back({*e, inv});
  }
  return Word(graph, std::move(letters), at);
}

GroupoidMorphism::GroupoidMorphism(std::shared_ptr<const SpineGraph> graph_ptr,
                                   std::vector<Word> images,
                                   std::optional<std::vector<Word>> inverse_images)
    : graph_(std::move(graph_ptr)) {
  if (!graph_) throw ModelError("morphism without a spine graph");
  const SpineGraph& graph = *graph_;
  auto check = [&](std::vector<Word>& table, const char* what) {
    if (table.size() != graph.edge_count()) {
      throw ModelError(std::string(what) + " table has " + std::to_string(table.size()) +
                       " entries for " + std::to_string(graph.edge_count()) + " edges");
    }
    for (EdgeId e = 0; e < table.size(); ++e) {
      const Edge& edge = graph.edge(e);
      if (table[e].source() != edge.source || table[e].target() != edge.target) {
        throw ModelError(std::string(what) + " image of '" + edge.name +
                         "' has the wrong endpoints");
      }
      table[e] = reduce(graph, table[e]);
    }
  };
  check(images, "twist");
  images_ = std::move(images);
  if (inverse_images) {
    check(*inverse_images, "inverse");
    inverse_ = std::move(inverse_images);
  }
}

GroupoidMorphism GroupoidMorphism::identity(std::shared_ptr<const SpineGraph> graph) {
  std::vector<Word> table;
  table.reserve(graph->edge_count());
  for (EdgeId e = 0; e < graph->edge_count(); ++e) table.push_back(Word(*graph, {{e, false}}));
  return GroupoidMorphism(std::move(graph), table, table);
}

const std::vector<Word>& GroupoidMorphism::inverse_images() const {
  if (!inverse_) throw Error("morphism has no declared inverse");
  return *inverse_;
}

namespace {

Word apply_table(const SpineGraph& graph, const std::vector<Word>& table, const Word& w) {
  if (w.empty()) return w;
  WordBuilder b(graph, w.source());
  for (const Letter& l : w.letters()) {
    if (l.edge >= table.size()) throw Error("edge outside the morphism's domain");
    if (l.inverse) {
      b.append_inverse(table[l.edge]);
    } else {
      b.append(table[l.edge]);
    }
  }
  return std::move(b).finish();
}

std::vector<Word> compose_tables(const SpineGraph& graph, const std::vector<Word>& outer,
                                 const std::vector<Word>& inner) {
  std::vector<Word> out;
  out.reserve(inner.size());
  for (const Word& w : inner) out.push_back(apply_table(graph, outer, w));
  return out;
}

void same_graph(const GroupoidMorphism& phi, const GroupoidMorphism& psi) {
  if (phi.graph_ptr() != psi.graph_ptr() && !(phi.graph() == psi.graph())) {
    throw Error("morphisms live on different spine graphs");
  }
}

}  // namespace

Word apply(const GroupoidMorphism& phi, const Word& w) {
  return apply_table(phi.graph(), phi.images(), w);
}

GroupoidMorphism compose(const GroupoidMorphism& phi, const GroupoidMorphism& psi) {
  same_graph(phi, psi);
  const SpineGraph& g = phi.graph();
  std::vector<Word> images = compose_tables(g, phi.images(), psi.images());
  std::optional<std::vector<Word>> inv;
  if (phi.has_inverse() && psi.has_inverse()) {
    inv = compose_tables(g, psi.inverse_images(), phi.inverse_images());
  }
  return GroupoidMorphism(phi.graph_ptr(), std::move(images), std::move(inv));
}

GroupoidMorphism invert(const GroupoidMorphism& phi) {
  return GroupoidMorphism(phi.graph_ptr(), phi.inverse_images(), phi.images());
}

GroupoidMorphism power(const GroupoidMorphism& phi, long n) {
  GroupoidMorphism base = n < 0 ? invert(phi) : phi;
  unsigned long e = n < 0 ? -static_cast<unsigned long>(n) : static_cast<unsigned long>(n);
  GroupoidMorphism result = GroupoidMorphism::identity(phi.graph_ptr());
  if (!phi.has_inverse()) {
    result = GroupoidMorphism(phi.graph_ptr(), result.images());
  }
  while (e > 0) {
    if (e & 1) result = compose(result, base);
    e >>= 1;
    if (e > 0) base = compose(base, base);
  }
  return result;
}

std::optional<EdgeId> first_difference(const GroupoidMorphism& phi, const GroupoidMorphism& psi) {
  same_graph(phi, psi);
  for (EdgeId e = 0; e < phi.images().size(); ++e) {
    if (!(phi.image(e) == psi.image(e))) return e;
  }
  return std::nullopt;
}

bool equal_morphisms(const GroupoidMorphism& phi, const GroupoidMorphism& psi) {
  return !first_difference(phi, psi).has_value();
}

bool inverse_is_valid(const GroupoidMorphism& phi) {
  if (!phi.has_inverse()) return false;
  const SpineGraph& g = phi.graph();
  auto fixes = [&](const std::vector<Word>& table) {
    for (EdgeId e = 0; e < table.size(); ++e) {
      if (table[e].size() != 1 || table[e].letters()[0] != Letter{e, false}) return false;
    }
    return true;
  };
  return fixes(compose_tables(g, phi.images(), phi.inverse_images())) &&
         fixes(compose_tables(g, phi.inverse_images(), phi.images()));
}

LoopBasis loop_basis(const SpineGraph& graph, VertexId basepoint, std::span<const EdgeId> tree) {
  const std::size_t n = graph.vertex_count();
  if (basepoint >= n) throw Error("basepoint out of range");
  if (tree.size() + 1 != n) throw Error("not a spanning tree: wrong edge count");
  std::vector<bool> in_tree(graph.edge_count(), false);
  for (EdgeId e : tree) {
    if (e >= graph.edge_count() || in_tree[e]) throw Error("not a spanning tree: bad edge");
    in_tree[e] = true;
  }
  // Tree path from the basepoint to every vertex, by breadth-first search.
  std::vector<std::optional<Word>> path(n);
  path[basepoint] = Word(basepoint);
  std::vector<VertexId> queue{basepoint};
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    VertexId v = queue[qi];
    for (EdgeId e : tree) {
      for (bool inv : {false, true}) {
        Letter l{e, inv};
        if (letter_source(graph, l) != v) continue;
        VertexId w = letter_target(graph, l);
        if (path[w]) continue;
        path[w] = compose_words(graph, *path[v], Word(graph, {l}));
        queue.push_back(w);
      }
    }
  }
  if (queue.size() != n) throw Error("not a spanning tree: disconnected");

  LoopBasis out;
  out.basepoint = basepoint;
  out.tree.assign(tree.begin(), tree.end());
  for (EdgeId e = 0; e < graph.edge_count(); ++e) {
    if (in_tree[e]) continue;
    const Edge& edge = graph.edge(e);
    Word loop = compose_words(graph, *path[edge.source], Word(graph, {{e, false}}));
    loop = compose_words(graph, loop, inverse(*path[edge.target]));
    out.cotree.push_back(e);
    out.loops.push_back(std::move(loop));
  }
  return out;
}

}  // namespace twistcheck
