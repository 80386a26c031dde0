#include "mmc/similarity.hpp"

#include "mmc/model.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

namespace mmc {

namespace {

bool is_ascii_space(unsigned char c) { return std::isspace(c) != 0; }

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_ascii_space(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && is_ascii_space(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  return s;
}

constexpr std::string_view kBuiltinSynonyms = "# Offline stand-in for a lexical database.\n"
                                              "deliver,send\n"
                                              "goods,items\n"
                                              "animal,pet\n"
                                              "nickname,moniker\n";

} // namespace

std::string to_lower(std::string_view s) {
  std::string out(s);
  for (char &c : out)
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

void SynonymDictionary::add_group(const std::vector<std::string> &tokens) {
  std::set<int> merged;
  for (const std::string &t : tokens)
    if (auto it = group_of_.find(t); it != group_of_.end())
      merged.insert(it->second);
  const int id = next_group_++;
  for (auto &[token, group] : group_of_)
    if (merged.count(group))
      group = id;
  for (const std::string &t : tokens)
    group_of_[t] = id;
}

bool SynonymDictionary::synonyms(std::string_view a, std::string_view b) const {
  if (a == b)
    return true;
  auto ia = group_of_.find(std::string(a));
  if (ia == group_of_.end())
    return false;
  auto ib = group_of_.find(std::string(b));
  return ib != group_of_.end() && ia->second == ib->second;
}

std::vector<std::vector<std::string>> SynonymDictionary::groups() const {
  std::map<int, std::vector<std::string>> by_id;
  for (const auto &[token, group] : group_of_)
    by_id[group].push_back(token);
  std::vector<std::vector<std::string>> out;
  for (auto &[id, tokens] : by_id) {
    std::sort(tokens.begin(), tokens.end());
    out.push_back(std::move(tokens));
  }
  std::sort(out.begin(), out.end());
  return out;
}

SynonymDictionary load_synonyms(std::string_view text) {
  SynonymDictionary dict;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view l = trim(line);
    if (l.empty() || l.front() == '#')
      continue;
    std::vector<std::string> tokens;
    std::size_t start = 0;
    while (start <= l.size()) {
      std::size_t comma = l.find(',', start);
      if (comma == std::string_view::npos)
        comma = l.size();
      std::string token = to_lower(trim(l.substr(start, comma - start)));
      if (!token.empty())
        tokens.push_back(std::move(token));
      start = comma + 1;
    }
    std::sort(tokens.begin(), tokens.end());
    tokens.erase(std::unique(tokens.begin(), tokens.end()), tokens.end());
    if (tokens.size() < 2)
      throw Error(Errc::EmptyGroup, "line " + std::to_string(line_no) +
                                        " needs at least two distinct tokens");
    dict.add_group(tokens);
  }
  return dict;
}

std::string_view builtin_synonyms_text() { return kBuiltinSynonyms; }

const SynonymDictionary &builtin_synonyms() {
  static const SynonymDictionary dict = load_synonyms(kBuiltinSynonyms);
  return dict;
}

double exact_sim(std::string_view a, std::string_view b) {
  return trim(a) == trim(b) ? 1.0 : 0.0;
}

double lcs_sim(std::string_view a, std::string_view b) {
  const std::string x = to_lower(a);
  const std::string y = to_lower(b);
  if (x.empty() && y.empty())
    return 1.0;
  if (x.empty() || y.empty())
    return 0.0;
  std::vector<int> prev(y.size() + 1, 0);
  std::vector<int> row(y.size() + 1, 0);
  for (char cx : x) {
    for (std::size_t j = 1; j <= y.size(); ++j)
      row[j] = cx == y[j - 1] ? prev[j - 1] + 1 : std::max(prev[j], row[j - 1]);
    std::swap(prev, row);
  }
  return 2.0 * prev[y.size()] / static_cast<double>(x.size() + y.size());
}

double bigram_sim(std::string_view a, std::string_view b) {
  if (a.size() < 2 || b.size() < 2)
    return exact_sim(a, b);
  auto bigrams = [](const std::string &s) {
    std::vector<std::pair<char, char>> out;
    for (std::size_t i = 0; i + 1 < s.size(); ++i)
      out.emplace_back(s[i], s[i + 1]);
    std::sort(out.begin(), out.end());
    return out;
  };
  const auto x = bigrams(to_lower(a));
  const auto y = bigrams(to_lower(b));
  std::size_t common = 0;
  for (std::size_t i = 0, j = 0; i < x.size() && j < y.size();) {
    if (x[i] == y[j]) {
      ++common, ++i, ++j;
    } else if (x[i] < y[j]) {
      ++i;
    } else {
      ++j;
    }
  }
  return 2.0 * static_cast<double>(common) / static_cast<double>(x.size() + y.size());
}

std::vector<std::string> tokenize(std::string_view name) {
  std::vector<std::string> tokens;
  std::string current;
  auto flush = [&] {
    if (!current.empty())
      tokens.push_back(to_lower(current));
    current.clear();
  };
  unsigned char prev = 0;
  for (char ch : name) {
    const auto c = static_cast<unsigned char>(ch);
    if (c < 0x80 && !std::isalnum(c)) {
      flush();
    } else {
      if (std::isupper(c) && std::islower(prev))
        flush();
      current += ch;
    }
    prev = c;
  }
  flush();
  return tokens;
}

double semantic_sim(std::string_view a, std::string_view b, const SynonymDictionary &dict) {
  const auto x = tokenize(a);
  const auto y = tokenize(b);
  if (x.empty() && y.empty())
    return 1.0;
  std::vector<bool> used(y.size(), false);
  std::size_t pairs = 0;
  for (const std::string &t : x) {
    for (std::size_t j = 0; j < y.size(); ++j) {
      if (!used[j] && dict.synonyms(t, y[j])) {
        used[j] = true;
        ++pairs;
        break;
      }
    }
  }
  return 2.0 * static_cast<double>(pairs) / static_cast<double>(x.size() + y.size());
}

} // namespace mmc
