#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "fgw/diagram.hpp"
#include "fgw/morphism.hpp"
#include "fgw/word.hpp"

namespace fgw {

// Parse failure with a byte span into the input and a fixed violation code.
struct ParseError : std::runtime_error {
  std::size_t begin;
  std::size_t end;
  std::string code;  // illegal_character, empty_input, bad_assignment,
                     // missing_generator, duplicate_generator,
                     // generator_out_of_range, bad_json, bad_field
  ParseError(std::string code_, std::string msg, std::size_t b, std::size_t e)
      : std::runtime_error(std::move(msg)), begin(b), end(e), code(std::move(code_)) {}
};

// A structurally parseable diagram that fails validate.
struct DiagramRejected : std::runtime_error {
  std::vector<Violation> violations;
  explicit DiagramRejected(std::vector<Violation> v)
      : std::runtime_error("diagram failed validation"), violations(std::move(v)) {}
};

// word := "1" | letter+ ; letter := [a-z] | [A-Z] ; whitespace ignored.
Word parse_word(std::string_view text);
std::string format_word(const Word& w);

// endo := assignment (";" assignment)* ; assignment := letter "->" word.
// Every generator of the rank must get exactly one assignment.
Endomorphism parse_endomorphism(std::string_view text, int rank);
std::string format_endomorphism(const Endomorphism& e);

// JSON diagram file format. parse_diagram throws ParseError on malformed
// input and DiagramRejected when validate fails.
std::string format_diagram(const Diagram& d, bool pretty = false);
Diagram parse_diagram(const std::string& text);

// Reads the structure without running validate (for tests of validate).
Diagram parse_diagram_unchecked(const std::string& text);

// Two DOT graphs: component trees per sphere, and the containment forest
// with zone leaves. Node names are stable for golden-file tests.
std::string render_dot(const Diagram& d);

}  // namespace fgw
