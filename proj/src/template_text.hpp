#pragma once

// Text readers for the template and rule formats.

#include <vector>

#include "ruleinfer/templates.hpp"
#include "stream_lexer.hpp"

namespace ruleinfer::detail {

/// Reads word classes until `|||` or end of input.
std::vector<WordClass> read_classes(StreamLexer& lex);

/// Consumes ` ||| `; throws ParseError otherwise.
void expect_separator(StreamLexer& lex);

/// Reads `S ||| T ||| A ||| R`, validating the result.
ExtendedAlignmentTemplate read_template_body(StreamLexer& lex);

}  // namespace ruleinfer::detail
