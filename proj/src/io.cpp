#include "mfp/io.hpp"

#include <bit>
#include <charconv>
#include <cstring>
#include <fstream>
#include <sstream>

namespace mfp {

static_assert(std::endian::native == std::endian::little,
              "the MFPD container assumes a little-endian host");

namespace {

constexpr char kMagic[4] = {'M', 'F', 'P', 'D'};
constexpr std::uint32_t kFormatVersion = 1;

template <typename T>
void write_pod(std::ostream& os, const T& v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T read_pod(std::istream& is) {
  T v;
  is.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!is) throw IoError("unexpected end of database file");
  return v;
}

void write_doubles(std::ostream& os, const std::vector<double>& v) {
  write_pod<std::uint64_t>(os, v.size());
  os.write(reinterpret_cast<const char*>(v.data()),
           static_cast<std::streamsize>(v.size() * sizeof(double)));
}

std::vector<double> read_doubles(std::istream& is) {
  const auto n = read_pod<std::uint64_t>(is);
  std::vector<double> v(n);
  is.read(reinterpret_cast<char*>(v.data()),
          static_cast<std::streamsize>(n * sizeof(double)));
  if (!is) throw IoError("unexpected end of database file");
  return v;
}

}  // namespace

std::string format_double(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

double parse_double(std::string_view text) {
  double value = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
    throw IoError("invalid floating-point value: '" + std::string(text) + "'");
  }
  return value;
}

void write_database(const Database& db, const std::filesystem::path& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot open " + path.string() + " for writing");

  os.write(kMagic, 4);
  write_pod(os, kFormatVersion);
  write_pod(os, static_cast<std::uint32_t>(db.kind));
  const std::string proto = db.protocol.dump();
  write_pod<std::uint64_t>(os, proto.size());
  os.write(proto.data(), static_cast<std::streamsize>(proto.size()));
  write_pod<std::uint64_t>(os, db.protocol_hash());
  write_pod<std::uint64_t>(os, db.size());
  write_pod<std::uint64_t>(os, db.n_f);
  write_pod<std::uint64_t>(os, db.n_force);

  os.write(reinterpret_cast<const char*>(db.fingerprints.data()),
           static_cast<std::streamsize>(db.fingerprints.size() * sizeof(double)));

  for (const DatabaseRecord& r : db.records) {
    write_pod(os, static_cast<std::uint32_t>(r.family));
    write_doubles(os, r.theta_bar);
    write_doubles(os, r.alpha);
    write_pod(os, r.source_norm);
  }
  if (!os) throw IoError("write failed for " + path.string());
}

Database read_database(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot open " + path.string());

  char magic[4];
  is.read(magic, 4);
  if (!is || std::memcmp(magic, kMagic, 4) != 0) {
    throw IoError(path.string() + " is not an MFPD database");
  }
  const auto version = read_pod<std::uint32_t>(is);
  if (version != kFormatVersion) {
    throw IoError("unsupported MFPD format version " + std::to_string(version));
  }

  Database db;
  db.kind = static_cast<ExperimentKind>(read_pod<std::uint32_t>(is));
  const auto proto_len = read_pod<std::uint64_t>(is);
  std::string proto(proto_len, '\0');
  is.read(proto.data(), static_cast<std::streamsize>(proto_len));
  if (!is) throw IoError("unexpected end of database file");
  db.protocol = nlohmann::json::parse(proto);
  const auto stored_hash = read_pod<std::uint64_t>(is);
  if (stored_hash != fnv1a64(proto)) {
    throw IoError("protocol descriptor hash mismatch; file corrupted");
  }

  const auto n_d = read_pod<std::uint64_t>(is);
  db.n_f = read_pod<std::uint64_t>(is);
  db.n_force = read_pod<std::uint64_t>(is);

  db.fingerprints.resize(n_d * db.n_f);
  is.read(reinterpret_cast<char*>(db.fingerprints.data()),
          static_cast<std::streamsize>(db.fingerprints.size() * sizeof(double)));
  if (!is) throw IoError("unexpected end of database file");

  db.records.resize(n_d);
  for (auto& r : db.records) {
    r.family = static_cast<Family>(read_pod<std::uint32_t>(is));
    r.theta_bar = read_doubles(is);
    r.alpha = read_doubles(is);
    r.source_norm = read_pod<double>(is);
  }
  return db;
}

void write_query_csv(const std::filesystem::path& path,
                     std::span<const double> values,
                     std::uint64_t protocol_hash) {
  std::ofstream os(path);
  if (!os) throw IoError("cannot open " + path.string() + " for writing");
  char hex[32];
  std::snprintf(hex, sizeof(hex), "%016llx",
                static_cast<unsigned long long>(protocol_hash));
  os << "# protocol_hash=" << hex << "\n";
  for (double v : values) os << format_double(v) << "\n";
  if (!os) throw IoError("write failed for " + path.string());
}

QueryFile read_query_csv(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot open " + path.string());
  QueryFile q;
  std::string line;
  bool have_hash = false;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line.rfind("# protocol_hash=", 0) == 0) {
      q.protocol_hash =
          std::stoull(line.substr(std::strlen("# protocol_hash=")), nullptr, 16);
      have_hash = true;
      continue;
    }
    if (line[0] == '#') continue;
    // Accept either one value per line or comma-separated rows.
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      q.values.push_back(parse_double(cell));
    }
  }
  if (!have_hash) {
    throw ProtocolMismatch("query file " + path.string() +
                           " carries no protocol_hash header");
  }
  return q;
}

void export_database_csv(const Database& db,
                         const std::filesystem::path& path) {
  std::ofstream os(path);
  if (!os) throw IoError("cannot open " + path.string() + " for writing");
  char hex[32];
  std::snprintf(hex, sizeof(hex), "%016llx",
                static_cast<unsigned long long>(db.protocol_hash()));
  os << "# protocol_hash=" << hex << "\n";
  os << "# columns: f[0.." << db.n_f - 1
     << "],family,theta_bar...,alpha...,source_norm\n";
  for (std::size_t i = 0; i < db.size(); ++i) {
    const auto row = db.row(i);
    for (double v : row) os << format_double(v) << ",";
    const DatabaseRecord& r = db.records[i];
    os << family_name(r.family);
    for (double t : r.theta_bar) os << "," << format_double(t);
    for (double a : r.alpha) os << "," << format_double(a);
    os << "," << format_double(r.source_norm) << "\n";
  }
  if (!os) throw IoError("write failed for " + path.string());
}

}  // namespace mfp
