#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kproj/document.hpp"

namespace kproj::cli {

inline constexpr int kSuccess = 0;
inline constexpr int kPropertyFailure = 1;
inline constexpr int kUsageError = 2;

struct Flags {
  std::optional<Window> window;
  std::optional<int> depth;
  std::optional<int> bound;     // N for split-check
  std::optional<unsigned> seed;  // samplers
  std::optional<int> degree;     // cycle degree for flat-cert on a complex
};

/// "a..b" with a <= b; nullopt when malformed.
std::optional<Window> parse_window(const std::string& s);

struct CommandResult {
  int status = kSuccess;
  std::optional<doc::Document> output;  // verdict, certificate or counterexample
  std::string error;                    // set with kUsageError
};

const std::vector<std::string>& command_names();

/// Dispatches one command.  Usage problems (unknown command, wrong payload
/// kinds, bad flags) come back as kUsageError rather than exceptions.
CommandResult run_command(const std::string& name, const std::vector<doc::Document>& inputs, const Flags& flags);

}  // namespace kproj::cli
