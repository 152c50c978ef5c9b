#pragma once

#include <stdexcept>
#include <string>

namespace hyperlat {

// Error categories map onto CLI exit codes:
//   BadParams -> 4, ResourceCap -> 3, InvariantViolation -> 2.
enum class ErrorKind {
    BadParams,
    ResourceCap,
    InvariantViolation,
    Io,
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

struct HyperbolicityViolation : Error {
    explicit HyperbolicityViolation(const std::string& w) : Error(ErrorKind::BadParams, w) {}
};

struct NonsenseParams : Error {
    explicit NonsenseParams(const std::string& w) : Error(ErrorKind::BadParams, w) {}
};

struct ResourceLimit : Error {
    explicit ResourceLimit(const std::string& w) : Error(ErrorKind::ResourceCap, w) {}
};

struct UnknownVertex : Error {
    explicit UnknownVertex(const std::string& w) : Error(ErrorKind::BadParams, w) {}
};

struct TooSmall : Error {
    explicit TooSmall(const std::string& w) : Error(ErrorKind::BadParams, w) {}
};

struct DepthInsufficient : Error {
    explicit DepthInsufficient(const std::string& w) : Error(ErrorKind::BadParams, w) {}
};

struct VisitCapExceeded : Error {
    explicit VisitCapExceeded(const std::string& w) : Error(ErrorKind::ResourceCap, w) {}
};

struct DedupAmbiguity : Error {
    explicit DedupAmbiguity(const std::string& w) : Error(ErrorKind::InvariantViolation, w) {}
};

struct NotConnectedError : Error {
    explicit NotConnectedError(const std::string& w) : Error(ErrorKind::BadParams, w) {}
};

struct InvariantViolation : Error {
    explicit InvariantViolation(const std::string& w) : Error(ErrorKind::InvariantViolation, w) {}
};

struct IoFailure : Error {
    explicit IoFailure(const std::string& w) : Error(ErrorKind::Io, w) {}
};

} // namespace hyperlat
