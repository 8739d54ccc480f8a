#ifndef SPIDERCAT_ERRORS_H
#define SPIDERCAT_ERRORS_H

#include <stdexcept>
#include <string>

namespace spidercat {

/// Malformed text input (graph, circuit or DIMACS files).
struct ParseError : std::runtime_error {
    ParseError(const std::string &what, size_t line) : std::runtime_error(format(what, line)), line(line) {
    }
    size_t line;

   private:
    static std::string format(const std::string &what, size_t line) {
        return "line " + std::to_string(line) + ": " + what;
    }
};

}  // namespace spidercat

#endif
