#pragma once

#include <stdexcept>
#include <string>

namespace lzrl {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct TruncatedCodeword : Error {
    explicit TruncatedCodeword(const std::string& msg = "bit stream ends mid-codeword")
        : Error(msg) {}
};

struct MalformedCodeword : Error {
    explicit MalformedCodeword(const std::string& msg = "no valid codeword at offset")
        : Error(msg) {}
};

struct InvalidParsing : Error {
    explicit InvalidParsing(const std::string& msg) : Error(msg) {}
};

struct InvalidParams : Error {
    explicit InvalidParams(const std::string& msg) : Error(msg) {}
};

struct InstanceTooLarge : Error {
    explicit InstanceTooLarge(const std::string& msg) : Error(msg) {}
};

struct InstanceTooSmall : Error {
    explicit InstanceTooSmall(const std::string& msg) : Error(msg) {}
};

struct UnsupportedOrder : Error {
    explicit UnsupportedOrder(const std::string& msg) : Error(msg) {}
};

struct DomainError : Error {
    explicit DomainError(const std::string& msg) : Error(msg) {}
};

struct InfeasibleEdge : Error {
    explicit InfeasibleEdge(const std::string& msg) : Error(msg) {}
};

struct DanglingReference : Error {
    explicit DanglingReference(const std::string& msg) : Error(msg) {}
};

}  // namespace lzrl
