#pragma once

#include <functional>
#include <string_view>

namespace modal {

// Process-wide warning channel. The default handler drops messages; the CLI
// routes them to stderr.
using WarningHandler = std::function<void(std::string_view)>;

void set_warning_handler(WarningHandler handler);
void warn(std::string_view message);

}  // namespace modal
