#pragma once
// Error taxonomy shared by library and CLI. exit_status: 1 = invalid input,
// 2 = internal inconsistency, 3 = resource limit.

#include <stdexcept>
#include <string>

namespace qtwist {

struct qt_error : std::runtime_error {
    std::string code;
    int exit_status;
    qt_error(std::string c, const std::string& msg, int status)
        : std::runtime_error(msg), code(std::move(c)), exit_status(status) {}
};

[[noreturn]] inline void fail_input(const std::string& code, const std::string& msg) {
    throw qt_error(code, msg, 1);
}
[[noreturn]] inline void fail_internal(const std::string& code, const std::string& msg) {
    throw qt_error(code, msg, 2);
}
[[noreturn]] inline void fail_resource(const std::string& code, const std::string& msg) {
    throw qt_error(code, msg, 3);
}

} // namespace qtwist
