#pragma once

#include "mmc/model_index.hpp"
#include "mmc/similarity.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mmc {

enum class Pipeline { TopDown, FullScope, TwoPhase };
enum class NameSimKind { Exact, Lcs, Bigram, Semantic };
enum class EdgePolicy { Strict, TargetFlexible };
/// Selects between the OpenMP candidate-scoring kernel and its serial
/// reference. Both produce identical results.
enum class Execution { Serial, Parallel };

std::string_view to_string(Pipeline p);
std::string_view to_string(NameSimKind k);
std::string_view to_string(EdgePolicy p);
std::optional<Pipeline> parse_pipeline(std::string_view s);
std::optional<NameSimKind> parse_name_sim(std::string_view s);
std::optional<EdgePolicy> parse_edge_policy(std::string_view s);

struct MatcherConfig {
  Pipeline pipeline = Pipeline::TwoPhase;
  NameSimKind name_sim = NameSimKind::Bigram;
  double threshold = 0.6;
  double name_weight = 0.7;
  double struct_weight = 0.3;
  /// Pair elements whose (metatype, name) is unique in both models before
  /// any scoring.
  bool exact_name_first = false;
  EdgePolicy edge_policy = EdgePolicy::Strict;
  /// Synonym dictionary document for NameSimKind::Semantic; the shipped
  /// dictionary when absent.
  std::optional<std::string> synonym_source;

  /// Throws std::invalid_argument unless weights sum to 1 and the threshold
  /// lies in [0, 1].
  void validate() const;
};

/// The configured name similarity, with its dictionary loaded once.
class NameSimilarity {
public:
  explicit NameSimilarity(const MatcherConfig &cfg);
  double operator()(std::string_view a, std::string_view b) const;

private:
  NameSimKind kind_;
  SynonymDictionary dict_;
};

struct ElementPair {
  int old_node = kNoNode;
  int new_node = kNoNode;
  friend bool operator==(const ElementPair &, const ElementPair &) = default;
};

struct EdgeRef {
  int owner = kNoNode;
  EdgeRole role = EdgeRole::Target;
  friend bool operator==(const EdgeRef &, const EdgeRef &) = default;
};

struct EdgePair {
  EdgeRef old_edge;
  EdgeRef new_edge;
  friend bool operator==(const EdgePair &, const EdgePair &) = default;
};

/// Correspondences between the nodes of two ModelIndex views.
class Matching {
public:
  Matching(std::size_t old_size, std::size_t new_size);

  /// Throws Error(InconsistentMatching) if either side is already paired.
  void pair(int old_node, int new_node);
  void dissolve(int old_node);
  int partner_of_old(int old_node) const;
  int partner_of_new(int new_node) const;
  bool old_free(int old_node) const { return partner_of_old(old_node) == kNoNode; }
  bool new_free(int new_node) const { return partner_of_new(new_node) == kNoNode; }

  /// Ordered by old node.
  std::vector<ElementPair> element_pairs() const;
  std::size_t pair_count() const;
  std::size_t old_size() const { return to_new_.size(); }
  std::size_t new_size() const { return to_old_.size(); }

  std::vector<EdgePair> &edge_pairs() { return edge_pairs_; }
  const std::vector<EdgePair> &edge_pairs() const { return edge_pairs_; }

  friend bool operator==(const Matching &, const Matching &) = default;

private:
  std::vector<int> to_new_;
  std::vector<int> to_old_;
  std::vector<EdgePair> edge_pairs_;
};

/// Empty when every Matching invariant holds for (old, new).
std::vector<std::string> matching_violations(const ModelIndex &old_model,
                                             const ModelIndex &new_model, const Matching &m);

/// Similarity of two same-metatype elements. Named elements combine name
/// and context similarity by the configured weights; unnamed elements use
/// context alone. Throws Error(MetatypeMismatch).
double score_pair(const ModelIndex &a, int a_node, const ModelIndex &b, int b_node,
                  const MatcherConfig &cfg, const NameSimilarity &sim);
double score_pair(const ModelIndex &a, int a_node, const ModelIndex &b, int b_node,
                  const MatcherConfig &cfg);

struct Candidate {
  double score = 0;
  int old_node = kNoNode;
  int new_node = kNoNode;
  friend bool operator==(const Candidate &, const Candidate &) = default;
};

/// Scores every same-metatype pair of `old_nodes` x `new_nodes` and keeps
/// those at or above the threshold, in row-major order.
std::vector<Candidate> score_candidates(const ModelIndex &old_model, const ModelIndex &new_model,
                                        const std::vector<int> &old_nodes,
                                        const std::vector<int> &new_nodes,
                                        const MatcherConfig &cfg, const NameSimilarity &sim,
                                        Execution exec);

Matching match_top_down(const ModelIndex &old_model, const ModelIndex &new_model,
                        const MatcherConfig &cfg);
Matching match_full_scope(const ModelIndex &old_model, const ModelIndex &new_model,
                          const MatcherConfig &cfg, Execution exec = Execution::Parallel);
Matching match_two_phase(const ModelIndex &old_model, const ModelIndex &new_model,
                         const MatcherConfig &cfg, Execution exec = Execution::Parallel);

/// Applies the edge policy to the element pairs of `m` and fills its edge
/// pairs. A changed source endpoint (for an EReference: its owning class)
/// dissolves the owner's pairing under every policy; a changed target does
/// so only under EdgePolicy::Strict.
Matching match_edges(const ModelIndex &old_model, const ModelIndex &new_model, Matching m,
                     const MatcherConfig &cfg);

/// The configured pipeline followed by match_edges.
Matching match_models(const ModelIndex &old_model, const ModelIndex &new_model,
                      const MatcherConfig &cfg, Execution exec = Execution::Parallel);

} // namespace mmc
