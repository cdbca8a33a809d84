#include "forge/log.hpp"

#include <iostream>
#include <mutex>

namespace forge {
namespace {

std::mutex sink_mutex;

WarningSink& current_sink() {
    static WarningSink sink;
    return sink;
}

}  // namespace

void warn(std::string_view message) {
    std::lock_guard lock(sink_mutex);
    auto& sink = current_sink();
    if (sink) {
        sink(message);
    } else {
        std::cerr << "warning: " << message << '\n';
    }
}

WarningSink set_warning_sink(WarningSink sink) {
    std::lock_guard lock(sink_mutex);
    auto previous = std::move(current_sink());
    current_sink() = std::move(sink);
    return previous;
}

ScopedWarningCapture::ScopedWarningCapture() {
    previous_ = set_warning_sink([this](std::string_view msg) {
        text_.append(msg);
        text_.push_back('\n');
        ++count_;
    });
}

ScopedWarningCapture::~ScopedWarningCapture() { set_warning_sink(std::move(previous_)); }

}  // namespace forge
