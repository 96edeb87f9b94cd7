#include "sndgaze/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "sndgaze/csv.hpp"

namespace sndgaze {

namespace {

const std::unordered_set<std::string> kCKeywords = {
    "auto", "break", "case", "char", "const", "continue", "default", "do",
    "double", "else", "enum", "extern", "float", "for", "goto", "if",
    "inline", "int", "long", "register", "restrict", "return", "short",
    "signed", "sizeof", "static", "struct", "switch", "typedef", "union",
    "unsigned", "void", "volatile", "while", "_Bool", "_Complex",
    "_Imaginary", "_Alignas", "_Alignof", "_Atomic", "_Generic", "_Noreturn",
    "_Static_assert", "_Thread_local"};

const std::unordered_set<std::string> kJavaKeywords = {
    "abstract", "assert", "boolean", "break", "byte", "case", "catch",
    "char", "class", "const", "continue", "default", "do", "double", "else",
    "enum", "extends", "final", "finally", "float", "for", "goto", "if",
    "implements", "import", "instanceof", "int", "interface", "long",
    "native", "new", "package", "private", "protected", "public", "return",
    "short", "static", "strictfp", "super", "switch", "synchronized",
    "this", "throw", "throws", "transient", "try", "void", "volatile",
    "while"};

const std::unordered_set<std::string> kJavaLiteralWords = {"true", "false", "null"};

// longest first for maximal munch
const char* kOperators[] = {
    ">>>=", "<<=", ">>=", ">>>", "...", "::",  "<<", ">>", "<=", ">=",
    "==",   "!=",  "&&",  "||",  "++", "--",  "+=", "-=", "*=", "/=",
    "%=",   "&=",  "|=",  "^=",  "->", "+",   "-",  "*",  "/",  "%",
    "=",    "<",   ">",   "!",   "&",  "|",   "^",  "~",  "?",  ":",  "."};

bool is_ident_start(unsigned char c) {
    return std::isalpha(c) || c == '_' || c == '$' || c >= 0x80;
}
bool is_ident_cont(unsigned char c) {
    return std::isalnum(c) || c == '_' || c == '$' || c >= 0x80;
}

char ascii_lower(char c) {
    return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}

std::string lower(const std::string& s) {
    std::string out = s;
    for (char& c : out) c = ascii_lower(c);
    return out;
}

struct Lexer {
    const std::string& src;
    Language lang;
    std::string file;
    std::size_t pos = 0;
    int line = 1;
    int col = 1;
    std::vector<Token> out;

    Lexer(const std::string& s, Language l, std::string f)
        : src(s), lang(l), file(std::move(f)) {}

    bool eof() const { return pos >= src.size(); }
    char peek(std::size_t off = 0) const {
        return pos + off < src.size() ? src[pos + off] : '\0';
    }
    void advance() {
        if (src[pos] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
        ++pos;
    }
    void advance_n(std::size_t n) {
        for (std::size_t i = 0; i < n; ++i) advance();
    }

    void emit(std::string text, TokenKind kind, int tl, int tc) {
        out.push_back(Token{std::move(text), kind, file, tl, tc});
    }

    bool prev_is_include_directive() const {
        if (out.size() < 2) return false;
        const Token& a = out[out.size() - 2];
        const Token& b = out[out.size() - 1];
        return a.text == "#" && (b.text == "include" || b.text == "import");
    }

    void run() {
        while (!eof()) {
            char c = peek();
            if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f') {
                advance();
                continue;
            }
            if (c == '/' && peek(1) == '/') {
                while (!eof() && peek() != '\n') advance();
                continue;
            }
            if (c == '/' && peek(1) == '*') {
                int sl = line, sc = col;
                advance_n(2);
                bool closed = false;
                while (!eof()) {
                    if (peek() == '*' && peek(1) == '/') {
                        advance_n(2);
                        closed = true;
                        break;
                    }
                    advance();
                }
                if (!closed) throw LexError("unterminated block comment", file, sl, sc);
                continue;
            }
            if (c == '"') {
                lex_string('"');
                continue;
            }
            if (c == '\'') {
                lex_string('\'');
                continue;
            }
            if (std::isdigit(static_cast<unsigned char>(c)) ||
                (c == '.' && std::isdigit(static_cast<unsigned char>(peek(1))))) {
                lex_number();
                continue;
            }
            if (is_ident_start(static_cast<unsigned char>(c))) {
                lex_identifier();
                continue;
            }
            if (lang == Language::C && c == '<' && prev_is_include_directive()) {
                lex_header_name();
                continue;
            }
            if (c == '(' || c == ')' || c == '{' || c == '}' || c == '[' ||
                c == ']' || c == ';' || c == ',' || c == '#' || c == '@' ||
                c == '\\') {
                int tl = line, tc = col;
                advance();
                emit(std::string(1, c), TokenKind::Punctuation, tl, tc);
                continue;
            }
            bool matched = false;
            for (const char* op : kOperators) {
                std::size_t n = std::strlen(op);
                if (src.compare(pos, n, op) == 0) {
                    int tl = line, tc = col;
                    advance_n(n);
                    emit(op, TokenKind::Operator, tl, tc);
                    matched = true;
                    break;
                }
            }
            if (matched) continue;
            // unknown byte: treat as punctuation rather than failing the file
            int tl = line, tc = col;
            advance();
            emit(std::string(1, c), TokenKind::Punctuation, tl, tc);
        }
    }

    void lex_string(char quote) {
        int sl = line, sc = col;
        std::string text(1, quote);
        advance();
        while (true) {
            if (eof() || peek() == '\n')
                throw LexError(quote == '"' ? "unterminated string literal"
                                            : "unterminated character literal",
                               file, sl, sc);
            char c = peek();
            text += c;
            advance();
            if (c == '\\') {
                if (eof()) throw LexError("unterminated escape", file, sl, sc);
                text += peek();
                advance();
                continue;
            }
            if (c == quote) break;
        }
        emit(std::move(text), TokenKind::Literal, sl, sc);
    }

    void lex_number() {
        int sl = line, sc = col;
        std::string text;
        while (!eof()) {
            char c = peek();
            if (std::isalnum(static_cast<unsigned char>(c)) || c == '.' || c == '_') {
                text += c;
                advance();
                continue;
            }
            if ((c == '+' || c == '-') && !text.empty()) {
                char p = ascii_lower(text.back());
                if (p == 'e' || p == 'p') {
                    text += c;
                    advance();
                    continue;
                }
            }
            break;
        }
        emit(std::move(text), TokenKind::Literal, sl, sc);
    }

    void lex_identifier() {
        int sl = line, sc = col;
        std::string text;
        while (!eof() && is_ident_cont(static_cast<unsigned char>(peek()))) {
            text += peek();
            advance();
        }
        TokenKind kind = TokenKind::Identifier;
        if (lang == Language::C) {
            if (kCKeywords.count(text)) kind = TokenKind::Keyword;
        } else {
            if (kJavaKeywords.count(text)) kind = TokenKind::Keyword;
            else if (kJavaLiteralWords.count(text)) kind = TokenKind::Literal;
        }
        emit(std::move(text), kind, sl, sc);
    }

    // <stdio.h> after `#include` is one literal token
    void lex_header_name() {
        int sl = line, sc = col;
        std::string text;
        while (!eof() && peek() != '\n') {
            char c = peek();
            text += c;
            advance();
            if (c == '>') {
                emit(std::move(text), TokenKind::Literal, sl, sc);
                return;
            }
        }
        throw LexError("unterminated header name", file, sl, sc);
    }
};

}  // namespace

const char* to_string(TokenKind k) {
    switch (k) {
        case TokenKind::Identifier: return "identifier";
        case TokenKind::Keyword: return "keyword";
        case TokenKind::Literal: return "literal";
        case TokenKind::Operator: return "operator";
        case TokenKind::Punctuation: return "punctuation";
    }
    return "?";
}

const char* to_string(Language lang) {
    return lang == Language::C ? "c" : "java";
}

std::vector<Token> tokenize(const std::string& source_text, Language language,
                            const std::string& file) {
    Lexer lx(source_text, language, file);
    lx.run();
    return lx.out;
}

std::vector<std::string> split_identifier(const std::string& identifier) {
    std::vector<std::string> parts;
    std::string cur;
    auto flush = [&] {
        if (!cur.empty()) {
            parts.push_back(lower(cur));
            cur.clear();
        }
    };
    const std::size_t n = identifier.size();
    for (std::size_t i = 0; i < n; ++i) {
        char c = identifier[i];
        if (c == '_') {
            flush();
            continue;
        }
        bool upper = std::isupper(static_cast<unsigned char>(c));
        if (upper && !cur.empty()) {
            char prev = cur.back();
            bool prev_upper = std::isupper(static_cast<unsigned char>(prev));
            if (!prev_upper) {
                // lower/digit -> Upper boundary
                flush();
            } else if (i + 1 < n &&
                       std::islower(static_cast<unsigned char>(identifier[i + 1]))) {
                // end of an uppercase run: break before the last capital
                flush();
            }
        }
        cur += c;
    }
    flush();
    return parts;
}

bool FilterConfig::accepts(TokenKind k) const {
    switch (k) {
        case TokenKind::Identifier: return identifiers;
        case TokenKind::Keyword: return keywords;
        case TokenKind::Literal: return literals;
        case TokenKind::Operator: return operators;
        case TokenKind::Punctuation: return punctuation;
    }
    return false;
}

Vocabulary build_vocabulary(const std::vector<Token>& tokens, Language language,
                            const FilterConfig& filter) {
    if (tokens.empty()) throw EmptyCorpusError("empty token stream");
    Vocabulary vocab;
    vocab.language = language;
    for (const Token& t : tokens) {
        if (!filter.accepts(t.kind)) continue;
        if (language == Language::Java && t.kind == TokenKind::Identifier) {
            for (const std::string& part : split_identifier(t.text)) {
                ++vocab.counts[part];
                ++vocab.total_tokens;
            }
        } else if (language == Language::Java) {
            ++vocab.counts[lower(t.text)];
            ++vocab.total_tokens;
        } else {
            ++vocab.counts[t.text];
            ++vocab.total_tokens;
        }
    }
    return vocab;
}

std::map<std::string, double> term_frequency(const Vocabulary& vocab) {
    if (vocab.counts.empty() || vocab.total_tokens == 0)
        throw EmptyCorpusError("empty vocabulary");
    std::map<std::string, double> tf;
    const double total = static_cast<double>(vocab.total_tokens);
    for (const auto& [word, count] : vocab.counts)
        tf[word] = static_cast<double>(count) / total;
    return tf;
}

Vocabulary build_vocabulary_from_dir(const std::string& dir, Language language,
                                     const FilterConfig& filter) {
    namespace fs = std::filesystem;
    if (!fs::exists(dir)) throw MissingFileError("no such directory: " + dir);
    std::vector<fs::path> files;
    for (const auto& entry : fs::recursive_directory_iterator(dir)) {
        if (!entry.is_regular_file()) continue;
        const std::string ext = entry.path().extension().string();
        if (language == Language::C && (ext == ".c" || ext == ".h"))
            files.push_back(entry.path());
        else if (language == Language::Java && ext == ".java")
            files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    std::vector<Token> tokens;
    for (const fs::path& p : files) {
        std::ifstream in(p, std::ios::binary);
        std::ostringstream ss;
        ss << in.rdbuf();
        auto file_tokens = tokenize(ss.str(), language, p.string());
        tokens.insert(tokens.end(), file_tokens.begin(), file_tokens.end());
    }
    return build_vocabulary(tokens, language, filter);
}

void write_vocabulary_csv(const Vocabulary& vocab, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw MissingFileError("cannot write " + path);
    auto tf = term_frequency(vocab);
    out << "word,count,tf\n";
    for (const auto& [word, count] : vocab.counts) {
        out << csv::escape_field(word) << ',' << count << ','
            << csv::format_double(tf.at(word)) << '\n';
    }
}

Vocabulary read_vocabulary_csv(const std::string& path, Language language) {
    auto rows = csv::read_file(path);
    if (rows.empty() || rows[0].size() < 2 || rows[0][0] != "word")
        throw Error("bad vocabulary CSV header in " + path);
    Vocabulary vocab;
    vocab.language = language;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto& r = rows[i];
        if (r.size() < 2) throw Error("short row in " + path);
        std::int64_t count = std::stoll(r[1]);
        vocab.counts[r[0]] += count;
        vocab.total_tokens += count;
    }
    if (vocab.counts.empty()) throw EmptyCorpusError("empty vocabulary CSV: " + path);
    return vocab;
}

}  // namespace sndgaze
