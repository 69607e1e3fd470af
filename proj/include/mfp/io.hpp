#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "mfp/database.hpp"

namespace mfp {

/// Shortest decimal string that round-trips the exact double value.
std::string format_double(double value);
double parse_double(std::string_view text);

/// Binary database container ("MFPD"): versioned header with the canonical
/// protocol descriptor, then the contiguous little-endian float64
/// fingerprint matrix and per-record model metadata. read(write(db)) is
/// bitwise lossless.
void write_database(const Database& db, const std::filesystem::path& path);
Database read_database(const std::filesystem::path& path);

/// Query fingerprint CSV: a `# protocol_hash=<hex>` header line, then one
/// value per line in the canonical fingerprint block order.
struct QueryFile {
  std::vector<double> values;
  std::uint64_t protocol_hash = 0;
};

void write_query_csv(const std::filesystem::path& path,
                     std::span<const double> values,
                     std::uint64_t protocol_hash);
QueryFile read_query_csv(const std::filesystem::path& path);

/// Whole-database CSV export: one record per row, fingerprint columns in
/// canonical order followed by model metadata.
void export_database_csv(const Database& db,
                         const std::filesystem::path& path);

}  // namespace mfp
