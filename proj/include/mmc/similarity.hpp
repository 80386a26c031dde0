#pragma once

#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace mmc {

/// Lowercase token groups; every token belongs to at most one group.
class SynonymDictionary {
public:
  SynonymDictionary() = default;

  /// Adds a group, merging it with every group it shares a token with.
  void add_group(const std::vector<std::string> &tokens);

  /// Equal tokens, or tokens of one group.
  bool synonyms(std::string_view a, std::string_view b) const;
  std::vector<std::vector<std::string>> groups() const;
  bool empty() const { return group_of_.empty(); }

private:
  std::unordered_map<std::string, int> group_of_;
  int next_group_ = 0;
};

/// One group per line, comma separated; '#' starts a comment line. Throws
/// Error(EmptyGroup) for a line with fewer than two tokens.
SynonymDictionary load_synonyms(std::string_view text);

/// Dictionary shipped with the benchmark (data/synonyms.txt).
const SynonymDictionary &builtin_synonyms();
std::string_view builtin_synonyms_text();

double exact_sim(std::string_view a, std::string_view b);
double lcs_sim(std::string_view a, std::string_view b);
double bigram_sim(std::string_view a, std::string_view b);
double semantic_sim(std::string_view a, std::string_view b, const SynonymDictionary &dict);

/// Splits on whitespace, punctuation, underscores and camelCase humps;
/// lowercases all tokens.
std::vector<std::string> tokenize(std::string_view name);

std::string to_lower(std::string_view s);

} // namespace mmc
