#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace qmind {

enum class errc {
    invalid_argument = 1,
    parse_error = 2,
    io_error = 3,
    unsupported = 4,
};

class error : public std::runtime_error {
public:
    error(errc code, std::string message)
        : std::runtime_error(std::move(message)), code_(code) {}

    errc code() const noexcept { return code_; }

private:
    errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& message) {
    throw error(code, message);
}

}  // namespace qmind
