#pragma once

#include <stdexcept>
#include <string>

namespace sndgaze {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct LexError : Error {
    std::string file;
    int line;
    int column;
    LexError(const std::string& msg, std::string f, int ln, int col)
        : Error(msg + " (" + f + ":" + std::to_string(ln) + ":" + std::to_string(col) + ")"),
          file(std::move(f)), line(ln), column(col) {}
};

struct EmptyCorpusError : Error {
    using Error::Error;
};

struct DimensionMismatchError : Error {
    using Error::Error;
};

struct NonFiniteError : Error {
    using Error::Error;
};

struct DuplicateWordError : Error {
    using Error::Error;
};

struct MissingFileError : Error {
    using Error::Error;
};

struct UndefinedSimilarityError : Error {
    using Error::Error;
};

struct IngestError : Error {
    long row;
    IngestError(const std::string& msg, long r)
        : Error(msg + " (row " + std::to_string(r) + ")"), row(r) {}
};

struct DegenerateSplitError : Error {
    using Error::Error;
};

struct StageError : Error {
    std::string stage;
    StageError(std::string stg, const std::string& msg)
        : Error("[" + stg + "] " + msg), stage(std::move(stg)) {}
};

}  // namespace sndgaze
