#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rnscmp {

// Failure categories raised by the library. The CLI maps any Error to
// exit code 1; flag/usage problems are reported separately as exit code 2.
enum class Errc {
    modulus_too_small,
    not_coprime,
    overflow,
    out_of_range,
    moduli_mismatch,
    no_solution,
    internal_inconsistency,
    syntax,
    cycle,
    arity,
    unknown_wire,
    missing_input,
    layout_mismatch,
    search_too_large,
    range_too_large,
    io,
};

inline const char* errc_name(Errc c) {
    switch (c) {
        case Errc::modulus_too_small: return "modulus_too_small";
        case Errc::not_coprime: return "not_coprime";
        case Errc::overflow: return "overflow";
        case Errc::out_of_range: return "out_of_range";
        case Errc::moduli_mismatch: return "moduli_mismatch";
        case Errc::no_solution: return "no_solution";
        case Errc::internal_inconsistency: return "internal_inconsistency";
        case Errc::syntax: return "syntax";
        case Errc::cycle: return "cycle";
        case Errc::arity: return "arity";
        case Errc::unknown_wire: return "unknown_wire";
        case Errc::missing_input: return "missing_input";
        case Errc::layout_mismatch: return "layout_mismatch";
        case Errc::search_too_large: return "search_too_large";
        case Errc::range_too_large: return "range_too_large";
        case Errc::io: return "io";
    }
    return "unknown";
}

class Error : public std::runtime_error {
  public:
    Error(Errc code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    // Netlist parse errors carry a 1-based source position.
    Error(Errc code, const std::string& message, std::size_t line, std::size_t column)
        : std::runtime_error(message), code_(code), line_(line), column_(column) {}

    Errc code() const noexcept { return code_; }
    std::size_t line() const noexcept { return line_; }      // 0 when not positional
    std::size_t column() const noexcept { return column_; }  // 0 when not positional

  private:
    Errc code_;
    std::size_t line_ = 0;
    std::size_t column_ = 0;
};

} // namespace rnscmp
