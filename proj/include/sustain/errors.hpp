#ifndef SUSTAIN_ERRORS_HPP
#define SUSTAIN_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sustain {

// Base for all pipeline validation errors (exit code 1 at the CLI).
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// I/O failures (missing files, unwritable paths; exit code 2 at the CLI).
struct IoError : Error {
    explicit IoError(const std::string& msg) : Error(msg) {}
};

struct MalformedRow : Error {
    std::size_t line_no;
    MalformedRow(std::size_t line, const std::string& what_part)
        : Error("malformed row at line " + std::to_string(line) + ": " + what_part),
          line_no(line) {}
};

struct EmptyInput : Error {
    explicit EmptyInput(const std::string& msg) : Error(msg) {}
};

struct DuplicateEvent : Error {
    explicit DuplicateEvent(const std::string& msg) : Error(msg) {}
};

struct DuplicateActor : Error {
    explicit DuplicateActor(const std::string& msg) : Error(msg) {}
};

struct InvariantViolation : Error {
    explicit InvariantViolation(const std::string& msg) : Error(msg) {}
};

struct EmptyCorpus : Error {
    explicit EmptyCorpus(const std::string& msg) : Error(msg) {}
};

struct NoCommits : Error {
    explicit NoCommits(const std::string& msg) : Error(msg) {}
};

struct NoParticipants : Error {
    explicit NoParticipants(const std::string& msg) : Error(msg) {}
};

struct MissingProfile : Error {
    std::string actor_id;
    explicit MissingProfile(const std::string& actor)
        : Error("no participant profile for actor " + actor), actor_id(actor) {}
};

struct SingleClass : Error {
    explicit SingleClass(const std::string& msg) : Error(msg) {}
};

struct DimensionMismatch : Error {
    explicit DimensionMismatch(const std::string& msg) : Error(msg) {}
};

struct TooFewSamples : Error {
    explicit TooFewSamples(const std::string& msg) : Error(msg) {}
};

struct NonpositiveWidth : Error {
    explicit NonpositiveWidth(const std::string& msg) : Error(msg) {}
};

struct RankDeficient : Error {
    explicit RankDeficient(const std::string& msg) : Error(msg) {}
};

struct InvalidConfig : Error {
    explicit InvalidConfig(const std::string& msg) : Error(msg) {}
};

}  // namespace sustain

#endif
