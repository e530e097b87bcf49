#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "fca/context.hpp"

namespace fca {

enum class ContextFormat { Cxt, Csv, Json };

/// Picks the format from a file extension (.cxt, .csv, .json).
ContextFormat format_for_path(const std::filesystem::path& path);

/// Parses a context. Malformed input raises ParseError carrying the 1-based
/// line number of the offending line.
FormalContext read_context(std::string_view text, ContextFormat format);
std::string write_context(const FormalContext& ctx, ContextFormat format);

FormalContext load_context(const std::filesystem::path& path);
void save_context(const FormalContext& ctx, const std::filesystem::path& path);

/// {"objects":[...], "attributes":[...], "rows":["X.X", ...]}
nlohmann::json context_to_json(const FormalContext& ctx);
FormalContext context_from_json(const nlohmann::json& j);

}  // namespace fca
