#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "sndgaze/error.hpp"

namespace sndgaze {

enum class Language { C, Java };

enum class TokenKind { Identifier, Keyword, Literal, Operator, Punctuation };

const char* to_string(TokenKind k);
const char* to_string(Language lang);

struct Token {
    std::string text;
    TokenKind kind;
    std::string file;
    int line = 1;    // 1-based
    int column = 1;  // 1-based
};

/// Lightweight lexer. Comments and whitespace produce no tokens; everything
/// else is classified as identifier/keyword/literal/operator/punctuation.
/// C preprocessor lines are lexed token-by-token (`#`, `include`, header name).
std::vector<Token> tokenize(const std::string& source_text, Language language,
                            const std::string& file = "");

/// Splits a Java identifier by underscore and camel case and lowercases the
/// parts. An uppercase run followed by a lowercase letter breaks before the
/// last capital ("XMLParser" -> xml, parser); digits attach to the preceding
/// part ("utf8" stays whole).
std::vector<std::string> split_identifier(const std::string& identifier);

struct FilterConfig {
    bool identifiers = true;
    bool keywords = true;
    bool literals = true;
    bool operators = false;
    bool punctuation = false;

    bool accepts(TokenKind k) const;
};

struct Vocabulary {
    Language language = Language::C;
    std::map<std::string, std::int64_t> counts;  // word -> f(w)
    std::int64_t total_tokens = 0;               // sum of counts
};

/// Counts word occurrences. Java identifier tokens are split and lowercased
/// first; C token texts are counted as-is.
Vocabulary build_vocabulary(const std::vector<Token>& tokens, Language language,
                            const FilterConfig& filter = {});

/// TF(w) = f(w) / total_tokens. Values sum to 1.
std::map<std::string, double> term_frequency(const Vocabulary& vocab);

/// Walks a directory tree, tokenizing .c/.h (C) or .java (Java) files in
/// sorted path order, and builds one vocabulary for the dataset.
Vocabulary build_vocabulary_from_dir(const std::string& dir, Language language,
                                     const FilterConfig& filter = {});

/// CSV with header `word,count,tf`.
void write_vocabulary_csv(const Vocabulary& vocab, const std::string& path);
Vocabulary read_vocabulary_csv(const std::string& path, Language language);

}  // namespace sndgaze
