#pragma once

// Free groupoid words over a surface spine graph.
//
// A spine has one vertex per boundary component (a basepoint on that
// component) and edges that are arcs or loops between basepoints. A word is a
// path in the graph, read left to right: "b a" traverses b, then a. A
// boundary-fixing mapping class is stored as a GroupoidMorphism, the images of
// every edge as reduced words with the same endpoints.
//
// Composition convention: compose(phi, psi) is phi after psi, so
// apply(compose(phi, psi), w) == apply(phi, apply(psi, w)).

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "twistcheck/error.hpp"

namespace twistcheck {

using VertexId = std::uint32_t;
using EdgeId = std::uint32_t;

struct Edge {
  std::string name;
  VertexId source = 0;
  VertexId target = 0;
};

class SpineGraph {
 public:
  SpineGraph() = default;
  SpineGraph(std::vector<std::string> vertices, std::vector<Edge> edges);

  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t edge_count() const { return edges_.size(); }

  const std::string& vertex_name(VertexId v) const { return vertices_.at(v); }
  const Edge& edge(EdgeId e) const { return edges_.at(e); }
  const std::vector<std::string>& vertices() const { return vertices_; }
  const std::vector<Edge>& edges() const { return edges_; }

  std::optional<VertexId> find_vertex(std::string_view name) const;
  std::optional<EdgeId> find_edge(std::string_view name) const;

  bool connected() const;

  bool operator==(const SpineGraph& other) const;

 private:
  std::vector<std::string> vertices_;
  std::vector<Edge> edges_;
  std::unordered_map<std::string, VertexId> vertex_index_;
  std::unordered_map<std::string, EdgeId> edge_index_;
};

struct Letter {
  EdgeId edge = 0;
  bool inverse = false;

  Letter inverted() const { return {edge, !inverse}; }
  bool operator==(const Letter&) const = default;
};

// A composable letter sequence with explicit endpoints (the empty word still
// sits at a vertex). Not necessarily reduced.
class Word {
 public:
  // Empty word at a vertex.
  explicit Word(VertexId at = 0) : source_(at), target_(at) {}

  // Throws CompositionError if consecutive letters do not chain.
  Word(const SpineGraph& graph, std::vector<Letter> letters);
  Word(const SpineGraph& graph, std::vector<Letter> letters, VertexId at_if_empty);

  VertexId source() const { return source_; }
  VertexId target() const { return target_; }
  const std::vector<Letter>& letters() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  bool is_loop() const { return source_ == target_; }

  bool operator==(const Word&) const = default;

 private:
  friend class WordBuilder;
  friend Word inverse(const Word& w);
  Word(VertexId source, VertexId target, std::vector<Letter> letters)
      : source_(source), target_(target), letters_(std::move(letters)) {}

  VertexId source_;
  VertexId target_;
  std::vector<Letter> letters_;
};

// Appends letters with free cancellation against the tail; the result is
// always reduced.
class WordBuilder {
 public:
  WordBuilder(const SpineGraph& graph, VertexId start);

  void push(Letter l);
  void append(const Word& w);
  void append_inverse(const Word& w);
  Word finish() &&;

 private:
  const SpineGraph* graph_;
  VertexId source_;
  VertexId target_;
  std::vector<Letter> letters_;
};

VertexId letter_source(const SpineGraph& graph, Letter l);
VertexId letter_target(const SpineGraph& graph, Letter l);

// Unique reduced representative. Throws CompositionError for non-composable
// input.
Word reduce(const SpineGraph& graph, std::span<const Letter> letters);
Word reduce(const SpineGraph& graph, const Word& w);
bool is_reduced(const Word& w);

// Reduced concatenation; throws CompositionError when target(u) != source(v).
Word compose_words(const SpineGraph& graph, const Word& u, const Word& v);
Word inverse(const Word& w);

// Cyclic reduction of a loop: strips letters that cancel around the cycle.
Word cyclic_reduce(const SpineGraph& graph, const Word& loop);
// True iff the loops are conjugate (freely homotopic), decided by comparing
// cyclic reductions up to rotation. Throws Error for non-loops or loops at
// different basepoints.
bool is_conjugate(const SpineGraph& graph, const Word& u, const Word& v);

// Text form: whitespace-separated edge names, inverse letters primed ("a b' a").
std::string format_word(const SpineGraph& graph, const Word& w);
// Parses the text form. The empty string yields the empty word at `at`.
Word parse_word(const SpineGraph& graph, std::string_view text, VertexId at);

class GroupoidMorphism {
 public:
  GroupoidMorphism() = default;
  // Validates endpoint compatibility; throws ModelError. Images are reduced.
  GroupoidMorphism(std::shared_ptr<const SpineGraph> graph, std::vector<Word> images,
                   std::optional<std::vector<Word>> inverse_images = std::nullopt);

  static GroupoidMorphism identity(std::shared_ptr<const SpineGraph> graph);

  const SpineGraph& graph() const { return *graph_; }
  const std::shared_ptr<const SpineGraph>& graph_ptr() const { return graph_; }
  const Word& image(EdgeId e) const { return images_.at(e); }
  const std::vector<Word>& images() const { return images_; }
  bool has_inverse() const { return inverse_.has_value(); }
  const std::vector<Word>& inverse_images() const;

 private:
  std::shared_ptr<const SpineGraph> graph_;
  std::vector<Word> images_;
  std::optional<std::vector<Word>> inverse_;
};

Word apply(const GroupoidMorphism& phi, const Word& w);
// phi after psi. The declared inverse survives when both factors carry one.
GroupoidMorphism compose(const GroupoidMorphism& phi, const GroupoidMorphism& psi);
// Swaps the image and declared-inverse tables; throws Error if none declared.
GroupoidMorphism invert(const GroupoidMorphism& phi);
GroupoidMorphism power(const GroupoidMorphism& phi, long n);
bool equal_morphisms(const GroupoidMorphism& phi, const GroupoidMorphism& psi);
// First edge whose images differ, if any.
std::optional<EdgeId> first_difference(const GroupoidMorphism& phi,
                                       const GroupoidMorphism& psi);
// compose(phi, invert(phi)) and compose(invert(phi), phi) fix every edge.
bool inverse_is_valid(const GroupoidMorphism& phi);

struct LoopBasis {
  VertexId basepoint = 0;
  std::vector<EdgeId> tree;
  std::vector<EdgeId> cotree;  // in edge order; one basis loop each
  std::vector<Word> loops;
};

// One loop per non-tree edge: tree path to its source, the edge, tree path
// back. Throws Error if `tree` is not a spanning tree.
LoopBasis loop_basis(const SpineGraph& graph, VertexId basepoint,
                     std::span<const EdgeId> tree);

}  // namespace twistcheck
