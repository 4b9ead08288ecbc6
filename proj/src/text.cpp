#include "semnet/text.hpp"

namespace semnet::text {

bool is_token_byte(char c) {
  const auto u = static_cast<unsigned char>(c);
  return u >= 0x80 || (u >= '0' && u <= '9') || (u >= 'a' && u <= 'z') || (u >= 'A' && u <= 'Z');
}

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  for (char c : text) {
    if (is_token_byte(c)) {
      current.push_back((c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c);
    } else if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

std::string canonical_token(std::string_view token) {
  const std::size_t n = token.size();
  if (n >= 4 && token[n - 1] == 's' && token[n - 2] != 's') {
    return std::string(token.substr(0, n - 1));
  }
  return std::string(token);
}

std::vector<std::string> normalize_tokens(std::string_view text) {
  auto tokens = tokenize(text);
  for (auto& t : tokens) t = canonical_token(t);
  return tokens;
}

std::string join(const std::vector<std::string>& tokens, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) out.append(sep);
    out.append(tokens[i]);
  }
  return out;
}

std::string normalize_phrase(std::string_view text) { return join(normalize_tokens(text)); }

std::string surface_phrase(std::string_view text) { return join(tokenize(text)); }

}  // namespace semnet::text
