#ifndef OPETOPIC_ERROR_HPP
#define OPETOPIC_ERROR_HPP

#include <stdexcept>
#include <string>

namespace opetopic {

// Structurally invalid input: malformed wirings, incompatible labels,
// ill-typed words. CLI maps this to exit code 2.
struct InvalidInput : std::runtime_error {
    explicit InvalidInput(const std::string& what) : std::runtime_error(what) {}
};

// A configured explosion guard was exceeded.
struct BoundExceeded : std::runtime_error {
    explicit BoundExceeded(const std::string& what) : std::runtime_error(what) {}
};

} // namespace opetopic

#endif
