#ifndef ADL_PARSER_HPP
#define ADL_PARSER_HPP

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "adl/errors.hpp"
#include "adl/formula.hpp"

namespace adl {

// Positioned syntax error.  offset is a byte index into the input and never
// exceeds its length.
class ParseError : public Error {
 public:
  ParseError(std::string message, std::size_t offset,
             std::vector<std::string> expected = {});

  const std::string& message() const noexcept { return message_; }
  std::size_t offset() const noexcept { return offset_; }
  const std::vector<std::string>& expected() const noexcept {
    return expected_;
  }

 private:
  std::string message_;
  std::size_t offset_;
  std::vector<std::string> expected_;
};

// Grammar, loosest binding first:
//
//   expr    := or ( "->" expr )?                  right associative
//   or      := and ( "|" and )*
//   and     := unary ( "&" unary )*
//   unary   := "!" unary | primary
//   primary := "always" | "never" | number | identifier
//            | "exists" "(" identifier ")"
//            | "[" identifier "]" "(" expr ( "given" expr )? ")"
//            | "(" expr ( "?" expr ":" expr )? ")"
//
// Numbers are decimal literals in [0, 1].  "#" starts a comment that runs to
// the end of the line.  Sugar operators are desugared while parsing.
//
// Throws ParseError on any malformed input.
Formula parse(std::string_view input);

}  // namespace adl

#endif  // ADL_PARSER_HPP
