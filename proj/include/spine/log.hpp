#pragma once

#include <functional>
#include <iostream>
#include <string>
#include <string_view>
#include <utility>

// Minimal warning channel. The CLI routes it to stderr; tests may capture it.
namespace spine::log {

enum class Level { debug, info, warn };

using Sink = std::function<void(Level, std::string_view)>;

inline Sink& sink() {
  static Sink s = [](Level level, std::string_view msg) {
    if (level == Level::warn) std::cerr << "warning: " << msg << '\n';
  };
  return s;
}

inline void set_sink(Sink s) { sink() = std::move(s); }

inline void warn(std::string_view msg) {
  if (sink()) sink()(Level::warn, msg);
}

inline void info(std::string_view msg) {
  if (sink()) sink()(Level::info, msg);
}

}  // namespace spine::log
