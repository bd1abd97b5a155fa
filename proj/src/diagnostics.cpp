#include "modal/diagnostics.hpp"

#include <mutex>
#include <sstream>
#include <utility>

#include "modal/error.hpp"

namespace modal {

namespace {

std::mutex& handler_mutex() {
  static std::mutex m;
  return m;
}

WarningHandler& handler() {
  static WarningHandler h;
  return h;
}

std::string describe_syntax_error(std::size_t line, std::size_t column,
                                  const std::vector<std::string>& expected,
                                  const std::string& found) {
  std::ostringstream os;
  os << "syntax error at " << line << ":" << column << ": found " << found;
  if (!expected.empty()) {
    os << ", expected one of:";
    for (const auto& e : expected) os << " " << e;
  }
  return os.str();
}

}  // namespace

SyntaxError::SyntaxError(std::size_t line, std::size_t column, std::vector<std::string> expected,
                         const std::string& found)
    : InputError(describe_syntax_error(line, column, expected, found)),
      line_(line),
      column_(column),
      expected_(std::move(expected)) {}

void set_warning_handler(WarningHandler h) {
  std::lock_guard lock(handler_mutex());
  handler() = std::move(h);
}

void warn(std::string_view message) {
  std::lock_guard lock(handler_mutex());
  if (handler()) handler()(message);
}

}  // namespace modal
