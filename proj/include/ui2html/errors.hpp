#pragma once

#include <stdexcept>
#include <string>

namespace ui2html {

// Base for all pipeline errors. what() always begins with the error name
// (e.g. "EmptyPage: ..."), so callers can prefix a stage tag and get
// messages like "layout: EmptyPage: ...".
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// A broken internal invariant, not a bad input.
class InternalDefect : public Error {
public:
    explicit InternalDefect(const std::string& msg)
        : Error("InternalDefect: " + msg) {}
};

}  // namespace ui2html
