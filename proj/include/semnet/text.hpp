#pragma once

#include <string>
#include <string_view>
#include <vector>

// Token-level text normalization shared by keyword extraction and concept
// matching. Tokens are maximal runs of ASCII alphanumerics or non-ASCII bytes
// (so UTF-8 letters stay inside words); ASCII is lowercased.
namespace semnet::text {

bool is_token_byte(char c);

std::vector<std::string> tokenize(std::string_view text);

// Strips one trailing 's' from tokens of length >= 4 unless the token ends in
// "ss". Idempotent.
std::string canonical_token(std::string_view token);

std::vector<std::string> normalize_tokens(std::string_view text);

// Lowercased, plural-stripped tokens joined by single spaces.
std::string normalize_phrase(std::string_view text);

// Lowercased tokens joined by single spaces, without plural stripping.
std::string surface_phrase(std::string_view text);

std::string join(const std::vector<std::string>& tokens, std::string_view sep = " ");

}  // namespace semnet::text
