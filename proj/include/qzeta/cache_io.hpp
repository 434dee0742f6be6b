#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "qzeta/expander.hpp"

namespace qzeta {

/// Stamped on every stored entry. Entries carrying any other value are
/// ignored on load and recomputed on demand.
inline constexpr const char* kEngineVersion = "qzeta-1";

struct CacheEntry {
    Index index;
    Kind kind = Kind::Modified;
    std::size_t trunc = 0;
    QSeries series;
    std::string engine_version = kEngineVersion;
};

/// One JSON object, no trailing newline. Coefficients are "num/den" strings
/// ("n" when integral).
std::string entry_to_json(const CacheEntry& e);
/// Throws Errc::Parse on malformed input, on a length that disagrees with
/// trunc, on a non-admissible index, or on a non-integral modified entry.
CacheEntry entry_from_json(const std::string& line);

struct LoadReport {
    std::size_t loaded = 0;
    std::size_t corrupt = 0;
    std::size_t stale = 0;
    /// One line per skipped entry: "file:line: reason".
    std::vector<std::string> warnings;
};

/// Reads every weight-*.jsonl file in dir into cache. A missing directory
/// loads nothing. Throws Errc::Io when dir exists but cannot be read.
LoadReport load_cache_dir(const std::filesystem::path& dir, ExpansionCache& cache);

/// Writes one weight-K.jsonl per weight present in cache, each through a
/// temporary file and a rename. Creates dir if needed. Throws Errc::Io.
void store_cache_dir(const std::filesystem::path& dir, const ExpansionCache& cache);

/// The explicit flag if given, else $QZETA_CACHE, else nothing.
std::optional<std::filesystem::path> resolve_cache_dir(const std::optional<std::string>& flag);

}  // namespace qzeta
