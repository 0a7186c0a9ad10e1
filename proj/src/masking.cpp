#include "pgg/masking.hpp"

#include <algorithm>
#include <cctype>
#include <regex>

namespace pgg {

namespace {

constexpr const char* kReplacement = "the other player";

std::string to_lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

std::string replace_ci(const std::string& text, const std::string& pattern,
                       const std::string& replacement) {
  if (pattern.empty()) return text;
  std::string haystack = to_lower(text);
  std::string needle = to_lower(pattern);
  std::string out;
  std::size_t pos = 0;
  for (;;) {
    std::size_t hit = haystack.find(needle, pos);
    if (hit == std::string::npos) {
      out += text.substr(pos);
      return out;
    }
    out += text.substr(pos, hit - pos);
    out += replacement;
    pos = hit + needle.size();
  }
}

std::string normalize_whitespace(const std::string& text) {
  std::string out;
  out.reserve(text.size());
  bool pending_space = false;
  bool line_has_content = false;
  for (char c : text) {
    if (c == ' ' || c == '\t') {
      pending_space = line_has_content;  // leading blanks die here
      continue;
    }
    if (c == '\n') {
      out += '\n';  // trailing blanks die by skipping pending_space
      pending_space = false;
      line_has_content = false;
      continue;
    }
    if (pending_space) {
      out += ' ';
      pending_space = false;
    }
    out += c;
    line_has_content = true;
  }
  return out;
}

}  // namespace

const std::vector<std::string>& default_mask_names() {
  // Longer aliases must precede their substrings so one pass suffices.
  static const std::vector<std::string> names = {
      "Llama 4 Maverick", "Claude Sonnet 4", "GPT-4o", "Sonnet 4", "Llama 4", "Qwen3",
  };
  return names;
}

std::string mask_reasoning(const std::string& text,
                           const std::vector<std::string>& display_names) {
  std::vector<std::string> names = display_names;
  std::stable_sort(names.begin(), names.end(),
                   [](const std::string& a, const std::string& b) { return a.size() > b.size(); });
  std::string out = text;
  for (const auto& name : names) {
    out = replace_ci(out, name, kReplacement);
  }
  static const std::regex standalone(R"(\b(?:AI|models?)\b)",
                                     std::regex::ECMAScript | std::regex::icase);
  out = std::regex_replace(out, standalone, "");
  return normalize_whitespace(out);
}

}  // namespace pgg
