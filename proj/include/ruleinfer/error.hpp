#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ruleinfer {

/// Malformed input data (corpus lines, dictionary entries, rule files).
/// Maps to exit code 2 in the command-line tool.
class DataError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A syntax error located inside one line of text.
class ParseError : public DataError {
  public:
    /// `column` and `token` are 1-based; 0 means "not applicable".
    ParseError(const std::string& what, std::size_t column, std::size_t token = 0)
        : DataError(format(what, column, token)), column_(column), token_(token) {}

    std::size_t column() const { return column_; }
    std::size_t token() const { return token_; }

  private:
    static std::string format(const std::string& what, std::size_t column, std::size_t token) {
        std::string msg = what;
        if (token > 0) msg += " (token " + std::to_string(token);
        if (column > 0) msg += (token > 0 ? ", column " : " (column ") + std::to_string(column);
        if (token > 0 || column > 0) msg += ")";
        return msg;
    }

    std::size_t column_;
    std::size_t token_;
};

}  // namespace ruleinfer
