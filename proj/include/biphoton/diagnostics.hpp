#pragma once

#include <functional>
#include <set>
#include <string>
#include <string_view>

namespace biphoton {

// Non-fatal notices (under-resolved correlation width, rounded detector
// separation, ...). The default sink writes "warning: <msg>" to stderr.
using WarningSink = std::function<void(std::string_view)>;

/// Installs `sink` and returns the previous one. Not thread-safe; install
/// sinks before starting concurrent work.
WarningSink set_warning_sink(WarningSink sink);

void warn(std::string_view message);

/// While alive, forwards each distinct warning text to the previous sink only
/// once. Used around loops that re-run the same model many times.
class DistinctWarnings {
 public:
  DistinctWarnings();
  ~DistinctWarnings();
  DistinctWarnings(const DistinctWarnings&) = delete;
  DistinctWarnings& operator=(const DistinctWarnings&) = delete;

 private:
  WarningSink previous_;
  std::set<std::string, std::less<>> seen_;
};

}  // namespace biphoton
