#include <algorithm>
#include <random>

#include "doctest.h"
#include "sndgaze/corpus.hpp"
#include "sndgaze/rng.hpp"

using namespace sndgaze;

TEST_CASE("tokenize classifies a simple C statement") {
    auto tokens = tokenize("int x = 5;", Language::C);
    REQUIRE(tokens.size() == 5);
    CHECK(tokens[0].text == "int");
    CHECK(tokens[0].kind == TokenKind::Keyword);
    CHECK(tokens[1].text == "x");
    CHECK(tokens[1].kind == TokenKind::Identifier);
    CHECK(tokens[2].text == "=");
    CHECK(tokens[2].kind == TokenKind::Operator);
    CHECK(tokens[3].text == "5");
    CHECK(tokens[3].kind == TokenKind::Literal);
    CHECK(tokens[4].text == ";");
    CHECK(tokens[4].kind == TokenKind::Punctuation);
}

TEST_CASE("C identifiers with underscores stay whole") {
    auto tokens = tokenize("lzf_compress(in, len)", Language::C);
    CHECK(tokens[0].text == "lzf_compress");
    CHECK(tokens[0].kind == TokenKind::Identifier);
}

TEST_CASE("comments and whitespace produce no tokens") {
    auto tokens = tokenize("/* c */ a", Language::C);
    REQUIRE(tokens.size() == 1);
    CHECK(tokens[0].text == "a");

    tokens = tokenize("// line\nb", Language::C);
    REQUIRE(tokens.size() == 1);
    CHECK(tokens[0].text == "b");
}

TEST_CASE("line and column positions are 1-based") {
    auto tokens = tokenize("a\n  b", Language::C);
    REQUIRE(tokens.size() == 2);
    CHECK(tokens[0].line == 1);
    CHECK(tokens[0].column == 1);
    CHECK(tokens[1].line == 2);
    CHECK(tokens[1].column == 3);
}

TEST_CASE("unterminated constructs raise lexical errors with position") {
    CHECK_THROWS_AS(tokenize("\"abc", Language::C), LexError);
    CHECK_THROWS_AS(tokenize("'a", Language::C), LexError);
    CHECK_THROWS_AS(tokenize("/* open", Language::C), LexError);
    try {
        tokenize("x\n\"oops", Language::C, "f.c");
        FAIL("expected LexError");
    } catch (const LexError& e) {
        CHECK(e.file == "f.c");
        CHECK(e.line == 2);
        CHECK(e.column == 1);
    }
}

TEST_CASE("preprocessor directives lex token-by-token") {
    auto tokens = tokenize("#include <stdio.h>\nint", Language::C);
    REQUIRE(tokens.size() == 4);
    CHECK(tokens[0].text == "#");
    CHECK(tokens[1].text == "include");
    CHECK(tokens[2].text == "<stdio.h>");
    CHECK(tokens[2].kind == TokenKind::Literal);
    CHECK(tokens[3].text == "int");
}

TEST_CASE("Java string and boolean literals") {
    auto tokens = tokenize("boolean ok = true;", Language::Java);
    CHECK(tokens[0].kind == TokenKind::Keyword);
    CHECK(tokens[2].kind == TokenKind::Operator);
    CHECK(tokens[3].text == "true");
    CHECK(tokens[3].kind == TokenKind::Literal);
}

TEST_CASE("split_identifier handles underscore and camel case") {
    CHECK(split_identifier("rdbSaveLzfBlob") ==
          std::vector<std::string>{"rdb", "save", "lzf", "blob"});
    CHECK(split_identifier("lzf_compress") ==
          std::vector<std::string>{"lzf", "compress"});
    CHECK(split_identifier("x") == std::vector<std::string>{"x"});
    CHECK(split_identifier("XMLParser") == std::vector<std::string>{"xml", "parser"});
    CHECK(split_identifier("utf8") == std::vector<std::string>{"utf8"});
    CHECK(split_identifier("ALLCAPS") == std::vector<std::string>{"allcaps"});
    CHECK(split_identifier("getX") == std::vector<std::string>{"get", "x"});
}

TEST_CASE("splitting is lossless: concat equals lowercased, underscore-free input") {
    std::mt19937_64 gen(7);
    const std::string alphabet =
        "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ_0123456789";
    for (int trial = 0; trial < 500; ++trial) {
        std::string ident(1, alphabet[rand_below(gen, 52)]);
        int len = 1 + static_cast<int>(rand_below(gen, 15));
        for (int i = 0; i < len; ++i)
            ident += alphabet[rand_below(gen, alphabet.size())];

        std::string expected;
        for (char c : ident)
            if (c != '_') expected += static_cast<char>(std::tolower(c));
        std::string got;
        for (const auto& part : split_identifier(ident)) {
            CHECK(!part.empty());
            got += part;
        }
        CHECK(got == expected);
    }
}

TEST_CASE("build_vocabulary counts C tokens as-is") {
    std::vector<Token> tokens = {
        {"a", TokenKind::Identifier, "", 1, 1},
        {"a", TokenKind::Identifier, "", 1, 3},
        {"b", TokenKind::Identifier, "", 1, 5},
    };
    auto vocab = build_vocabulary(tokens, Language::C);
    CHECK(vocab.counts.at("a") == 2);
    CHECK(vocab.counts.at("b") == 1);
    CHECK(vocab.total_tokens == 3);
}

TEST_CASE("build_vocabulary splits Java identifiers before counting") {
    std::vector<Token> tokens = {
        {"getX", TokenKind::Identifier, "", 1, 1},
        {"get_x", TokenKind::Identifier, "", 1, 6},
    };
    auto vocab = build_vocabulary(tokens, Language::Java);
    CHECK(vocab.counts.at("get") == 2);
    CHECK(vocab.counts.at("x") == 2);
    CHECK(vocab.total_tokens == 4);
}

TEST_CASE("filter excludes punctuation by default") {
    std::vector<Token> tokens = {
        {"a", TokenKind::Identifier, "", 1, 1},
        {";", TokenKind::Punctuation, "", 1, 2},
        {"b", TokenKind::Identifier, "", 1, 3},
    };
    auto vocab = build_vocabulary(tokens, Language::C);
    CHECK(vocab.counts.size() == 2);
    CHECK(vocab.total_tokens == 2);
}

TEST_CASE("empty token stream is an error") {
    CHECK_THROWS_AS(build_vocabulary({}, Language::C), EmptyCorpusError);
}

TEST_CASE("vocabulary counting is order-insensitive") {
    std::vector<Token> tokens;
    std::mt19937_64 gen(3);
    for (int i = 0; i < 40; ++i)
        tokens.push_back({std::string(1, 'a' + static_cast<char>(rand_below(gen, 5))),
                          TokenKind::Identifier, "", 1, 1});
    auto before = build_vocabulary(tokens, Language::C);
    shuffle_seeded(tokens, gen);
    auto after = build_vocabulary(tokens, Language::C);
    CHECK(before.counts == after.counts);
    CHECK(before.total_tokens == after.total_tokens);
}

TEST_CASE("term_frequency normalizes counts") {
    Vocabulary vocab;
    vocab.counts = {{"a", 2}, {"b", 1}};
    vocab.total_tokens = 3;
    auto tf = term_frequency(vocab);
    CHECK(tf.at("a") == doctest::Approx(2.0 / 3.0));
    CHECK(tf.at("b") == doctest::Approx(1.0 / 3.0));

    vocab.counts = {{"a", 1}};
    vocab.total_tokens = 1;
    CHECK(term_frequency(vocab).at("a") == 1.0);

    vocab.counts = {{"a", 5}, {"b", 5}, {"c", 10}};
    vocab.total_tokens = 20;
    tf = term_frequency(vocab);
    CHECK(tf.at("a") == 0.25);
    CHECK(tf.at("b") == 0.25);
    CHECK(tf.at("c") == 0.5);
}

TEST_CASE("TF sums to 1 and every TF is positive") {
    Vocabulary vocab;
    std::mt19937_64 gen(11);
    std::int64_t total = 0;
    for (int i = 0; i < 200; ++i) {
        std::int64_t c = 1 + static_cast<std::int64_t>(rand_below(gen, 50));
        vocab.counts["word" + std::to_string(i)] = c;
        total += c;
    }
    vocab.total_tokens = total;
    auto tf = term_frequency(vocab);
    double sum = 0.0;
    for (const auto& [w, v] : tf) {
        CHECK(v > 0.0);
        sum += v;
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS(term_frequency(Vocabulary{}), EmptyCorpusError);
}

TEST_CASE("tokenization is deterministic") {
    const std::string src = "for (int i = 0; i < n; ++i) { sum += a[i]; }";
    auto t1 = tokenize(src, Language::C);
    auto t2 = tokenize(src, Language::C);
    REQUIRE(t1.size() == t2.size());
    for (std::size_t i = 0; i < t1.size(); ++i) {
        CHECK(t1[i].text == t2[i].text);
        CHECK(t1[i].kind == t2[i].kind);
    }
}
