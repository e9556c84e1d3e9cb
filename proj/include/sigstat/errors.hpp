#ifndef SIGSTAT_ERRORS_HPP
#define SIGSTAT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace sigstat {

// Bad inputs: dimension mismatches, malformed files, invalid flags.
// CLI maps this to exit code 2.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// Requests beyond configured capacity: enumeration caps, depth shortfalls,
// insufficient sample counts. CLI maps this to exit code 3.
class ResourceError : public std::runtime_error {
public:
    explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace sigstat

#endif
