#pragma once

#include <stdexcept>
#include <string>

namespace carlitz {

// Error taxonomy mirrored by the CLI exit codes:
//   Math         -> 1  (a checked identity genuinely fails)
//   Config       -> 2  (bad parameters, malformed input)
//   Resource     -> 2  (enumeration caps, window limits)
//   Inconclusive -> 3  (empty certification window; neither pass nor fail)
enum class ErrorKind { Math, Config, Resource, Inconclusive };

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[nodiscard]] inline Error fail_math(const std::string& msg) { return Error(ErrorKind::Math, msg); }
[[nodiscard]] inline Error fail_config(const std::string& msg) { return Error(ErrorKind::Config, msg); }
[[nodiscard]] inline Error fail_resource(const std::string& msg) { return Error(ErrorKind::Resource, msg); }
[[nodiscard]] inline Error fail_inconclusive(const std::string& msg) { return Error(ErrorKind::Inconclusive, msg); }

} // namespace carlitz
