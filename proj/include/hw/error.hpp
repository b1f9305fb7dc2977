#pragma once

#include <stdexcept>
#include <string>

namespace hw {

// Every failure raised by the library carries a short machine-readable code
// ("invalid_argument", "regime_not_covered", ...) next to the human message.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(message), code_(std::move(code)) {}

    [[nodiscard]] const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

class InvalidArgument : public Error {
public:
    explicit InvalidArgument(const std::string& message)
        : Error("invalid_argument", message) {}
};

class DimensionMismatch : public Error {
public:
    explicit DimensionMismatch(const std::string& message)
        : Error("dimension_mismatch", message) {}
};

class RegimeNotCovered : public Error {
public:
    explicit RegimeNotCovered(const std::string& message)
        : Error("regime_not_covered", "regime not covered: " + message) {}
};

class ResourceLimit : public Error {
public:
    explicit ResourceLimit(const std::string& message)
        : Error("resource_limit", message) {}
};

class Overflow : public Error {
public:
    explicit Overflow(const std::string& message) : Error("overflow", message) {}
};

}  // namespace hw
