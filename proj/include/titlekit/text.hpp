#pragma once

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace titlekit {

/// Half-open character range [start, end) into a source string.
struct Span {
  std::size_t start = 0;
  std::size_t end = 0;

  std::size_t size() const noexcept { return end - start; }
  friend bool operator==(const Span&, const Span&) = default;
};

struct Token {
  std::string text;
  Span span;
};

inline bool is_space(char c) noexcept {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

inline char ascii_lower(char c) noexcept {
  return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}

inline std::string to_lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), ascii_lower);
  return out;
}

inline std::string_view trim(std::string_view s) noexcept {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

/// Lowercases ASCII and collapses whitespace runs to one space.
inline std::string normalize(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  bool pending_space = false;
  for (char c : trim(s)) {
    if (is_space(c)) {
      pending_space = true;
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.push_back(ascii_lower(c));
  }
  return out;
}

inline bool is_trailing_punct(char c) noexcept {
  return c == ',' || c == ';' || c == ':';
}

/// Whitespace tokenizer. Trailing ",;:" are left out of the token span and
/// act as separators. Multi-byte UTF-8 sequences pass through untouched.
inline std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && is_space(text[i])) ++i;
    std::size_t start = i;
    while (i < text.size() && !is_space(text[i])) ++i;
    std::size_t end = i;
    while (end > start && is_trailing_punct(text[end - 1])) --end;
    if (end > start) tokens.push_back({std::string(text.substr(start, end - start)), {start, end}});
  }
  return tokens;
}

inline bool has_digit(std::string_view s) noexcept {
  return std::any_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

/// A list of (possibly multi-word) phrases matched case-insensitively against
/// a token stream, longest first.
class PhraseMatcher {
 public:
  PhraseMatcher() = default;

  explicit PhraseMatcher(const std::vector<std::string>& phrases) {
    for (const auto& phrase : phrases) {
      std::vector<std::string> words;
      for (auto& token : tokenize(phrase)) words.push_back(to_lower(token.text));
      if (!words.empty()) phrases_.push_back(std::move(words));
    }
    std::stable_sort(phrases_.begin(), phrases_.end(),
                     [](const auto& a, const auto& b) { return a.size() > b.size(); });
  }

  /// Number of tokens matched at `pos`, or 0.
  std::size_t match(const std::vector<Token>& tokens, std::size_t pos) const {
    for (const auto& words : phrases_) {
      if (pos + words.size() > tokens.size()) continue;
      bool ok = true;
      for (std::size_t k = 0; k < words.size() && ok; ++k)
        ok = to_lower(tokens[pos + k].text) == words[k];
      if (ok) return words.size();
    }
    return 0;
  }

  bool contains_word(std::string_view word) const {
    std::string lw = to_lower(word);
    return std::any_of(phrases_.begin(), phrases_.end(),
                       [&](const auto& words) { return words.size() == 1 && words[0] == lw; });
  }

  bool empty() const noexcept { return phrases_.empty(); }

 private:
  std::vector<std::vector<std::string>> phrases_;
};

}  // namespace titlekit
