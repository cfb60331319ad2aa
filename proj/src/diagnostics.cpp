#include "biphoton/diagnostics.hpp"

#include <iostream>
#include <utility>

namespace biphoton {
namespace {

WarningSink& current_sink() {
  static WarningSink sink = [](std::string_view msg) { std::cerr << "warning: " << msg << '\n'; };
  return sink;
}

}  // namespace

WarningSink set_warning_sink(WarningSink sink) {
  return std::exchange(current_sink(), std::move(sink));
}

void warn(std::string_view message) {
  if (auto& sink = current_sink()) sink(message);
}

DistinctWarnings::DistinctWarnings()
    : previous_(set_warning_sink([this](std::string_view msg) {
        if (seen_.emplace(msg).second && previous_) previous_(msg);
      })) {}

DistinctWarnings::~DistinctWarnings() { set_warning_sink(std::move(previous_)); }

}  // namespace biphoton
