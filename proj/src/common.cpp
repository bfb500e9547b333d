#include "nashbound/common.hpp"

#include <sstream>

namespace nashbound {

namespace {

std::string join_errors(const std::vector<std::string>& errors) {
    std::ostringstream os;
    os << errors.size() << " validation error(s):";
    for (const auto& e : errors) os << "\n  - " << e;
    return os.str();
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> errors)
    : std::runtime_error(join_errors(errors)), errors_(std::move(errors)) {}

std::uint64_t fnv1a64(const std::string& text) {
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        hash ^= static_cast<std::uint64_t>(c);
        hash *= 0x100000001b3ULL;
    }
    return hash;
}

}  // namespace nashbound
