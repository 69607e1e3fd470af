#include "mfp/database.hpp"

namespace mfp {

std::uint64_t fnv1a64(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::uint64_t Database::protocol_hash() const {
  return fnv1a64(protocol.dump());
}

MaterialModel record_model(const Database& db, std::size_t index) {
  const DatabaseRecord& r = db.records.at(index);
  MaterialModel m;
  m.family = r.family;
  m.regime = db.kind == ExperimentKind::Supervised
                 ? Regime::IncompressibleLagrange
                 : Regime::CompressiblePenalty;
  m.theta = r.theta_bar;
  m.alpha = r.alpha;
  return m;
}

}  // namespace mfp
