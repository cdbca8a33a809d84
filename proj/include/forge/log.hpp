#pragma once

#include <functional>
#include <string>
#include <string_view>

namespace forge {

using WarningSink = std::function<void(std::string_view)>;

// Non-fatal conditions (degenerate folds, quota shortfalls) go through here.
// Default sink prints to stderr with a "warning: " prefix.
void warn(std::string_view message);

// Returns the previous sink. Passing nullptr restores the default.
WarningSink set_warning_sink(WarningSink sink);

// RAII capture used by tests and by the CLI's --quiet mode.
class ScopedWarningCapture {
public:
    ScopedWarningCapture();
    ~ScopedWarningCapture();
    ScopedWarningCapture(const ScopedWarningCapture&) = delete;
    ScopedWarningCapture& operator=(const ScopedWarningCapture&) = delete;

    const std::string& text() const { return text_; }
    int count() const { return count_; }

private:
    WarningSink previous_;
    std::string text_;
    int count_ = 0;
};

}  // namespace forge
