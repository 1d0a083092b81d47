#pragma once

#include <functional>
#include <string>
#include <vector>

#include "confring/ring.hpp"

namespace confring {

// Parse failure; position is 1-based into the input string.
struct parse_error : domain_error {
    parse_error(std::size_t position, const std::string& what)
        : domain_error("parse error at position " + std::to_string(position) +
                       ": " + what),
          pos(position) {}
    std::size_t pos;
};

// One bracketed generator token, e.g. kind "A" idx {2,-1} or kind "I+"
// idx {3,2,1}.  kind is one of: A, A', B, C+, C-, C0, D+, D-, D0, I+, I-, I0.
struct GenToken {
    std::string kind;
    std::vector<int> idx;
    std::size_t pos = 0;  // 1-based position of the token start
};

// Maps a token to its ring element.  Throwing domain_error from a resolver
// is rethrown as a parse_error at the token position.
using TokenResolver = std::function<Element(const GenToken&)>;

// Resolver for the plain generators of p (A for orbit, A' for arnold).
TokenResolver plain_resolver(const Presentation& p);

// Grammar: element := term (("+"|"-") term)*;
//          term    := factor ("*" factor)*;
//          factor  := integer | integer "/" integer | genToken | "1".
// Whitespace is insignificant.  The result is in normal form.
Element parse_element(const std::string& text, const Presentation& p,
                      const TokenResolver& resolve);
Element parse_element(const std::string& text, const Presentation& p);

}  // namespace confring
