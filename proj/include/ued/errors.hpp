#ifndef UED_ERRORS_HPP
#define UED_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ued {

// Base class for every error raised by this library. CLI maps ConfigError
// to exit code 1 and everything else to exit code 2.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class ConfigError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

class FileNotFound : public IoError {
public:
    explicit FileNotFound(const std::string& path)
        : IoError("file not found: " + path) {}
};

// lexicon
class MalformedLine : public Error {
public:
    MalformedLine(const std::string& path, std::size_t line_no, const std::string& what)
        : Error(path + ":" + std::to_string(line_no) + ": " + what), line_no(line_no) {}
    std::size_t line_no;
};

class ScoreOutOfRange : public Error {
public:
    using Error::Error;
};

class DuplicateEntry : public Error {
public:
    DuplicateEntry(const std::string& term, const std::string& dimension)
        : Error("duplicate lexicon entry: (" + term + ", " + dimension + ")") {}
};

class UnknownDimension : public Error {
public:
    explicit UnknownDimension(const std::string& dimension)
        : Error("dimension not declared in lexicon: " + dimension) {}
};

// arcs
class InsufficientEmotionWords : public Error {
public:
    InsufficientEmotionWords(std::size_t have, std::size_t need)
        : Error("only " + std::to_string(have) + " emotion words, need " +
                std::to_string(need)),
          have(have), need(need) {}
    std::size_t have;
    std::size_t need;
};

class NonContiguousIndices : public Error {
public:
    using Error::Error;
};

class DuplicateIndex : public Error {
public:
    using Error::Error;
};

// dynamics
class EmptyArc : public Error {
public:
    EmptyArc() : Error("arc has no points") {}
};

class TruncatedDisplacement : public Error {
public:
    using Error::Error;
};

// corpus / csv
class MalformedCsv : public Error {
public:
    MalformedCsv(const std::string& path, std::size_t line_no, const std::string& what)
        : Error(path + ":" + std::to_string(line_no) + ": " + what), line_no(line_no) {}
    std::size_t line_no;
};

class MissingColumn : public Error {
public:
    explicit MissingColumn(const std::string& column)
        : Error("missing column: " + column) {}
};

class DuplicateDocId : public Error {
public:
    explicit DuplicateDocId(const std::string& doc_id)
        : Error("duplicate doc_id: " + doc_id) {}
};

class MissingSpeaker : public Error {
public:
    explicit MissingSpeaker(const std::string& doc_id)
        : Error("document has no speaker: " + doc_id) {}
};

// report
class DimensionMismatch : public Error {
public:
    using Error::Error;
};

} // namespace ued

#endif
