#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pebble {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define PEBBLE_ERROR(Name)                                  \
    class Name : public Error {                             \
    public:                                                 \
        explicit Name(const std::string& what)              \
            : Error(std::string(#Name ": ") + what) {}      \
    }

PEBBLE_ERROR(InvalidWordShape);
PEBBLE_ERROR(InvalidIndex);
PEBBLE_ERROR(InvalidSymbol);
PEBBLE_ERROR(NotApplicable);
PEBBLE_ERROR(IllegalAction);
PEBBLE_ERROR(OutOfBounds);
PEBBLE_ERROR(NotDeterministic);
PEBBLE_ERROR(NotTotal);
PEBBLE_ERROR(IncompatibleAutomata);
PEBBLE_ERROR(MalformedAutomaton);
PEBBLE_ERROR(EngineInvariant);
PEBBLE_ERROR(UnsupportedParameter);
PEBBLE_ERROR(FreeRegisterRead);
PEBBLE_ERROR(InvalidPosition);
PEBBLE_ERROR(NotASentence);

#undef PEBBLE_ERROR

// Syntax error in a formula, with the 0-based character offset.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t position)
        : Error("ParseError at " + std::to_string(position) + ": " + what),
          position_(position) {}
    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

}  // namespace pebble
