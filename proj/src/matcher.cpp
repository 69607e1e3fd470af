#include "mfp/matcher.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

namespace mfp {

namespace {

double block_norm(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

std::size_t nonzero_count(const std::vector<double>& v) {
  std::size_t n = 0;
  for (double x : v) n += (x != 0.0) ? 1 : 0;
  return n;
}

struct BlockBest {
  double score = -std::numeric_limits<double>::infinity();
  std::size_t index = 0;
  bool tie = false;
  std::vector<MatchEntry> top;  // sorted by (score desc, index asc)
};

// Scans rows [begin, end). Row dot products run in index order with a plain
// sequential accumulation so any block partition reproduces the one-thread
// scan bitwise.
BlockBest scan_block(const Database& db, const std::vector<double>& q,
                     double w, std::size_t top_k, std::size_t begin,
                     std::size_t end) {
  BlockBest best;
  for (std::size_t i = begin; i < end; ++i) {
    const double* row = db.fingerprints.data() + i * db.n_f;
    double dot = 0.0;
    for (std::size_t k = 0; k < db.n_f; ++k) dot += row[k] * q[k];
    const double score =
        w == 0.0 ? dot
                 : dot - w * static_cast<double>(
                                 nonzero_count(db.records[i].theta_bar));
    if (score > best.score) {
      best.score = score;
      best.index = i;
      best.tie = false;
    } else if (score == best.score) {
      best.tie = true;
    }
    if (top_k > 0) {
      best.top.push_back({i, dot, score});
      std::sort(best.top.begin(), best.top.end(),
                [](const MatchEntry& a, const MatchEntry& b) {
                  return a.score != b.score ? a.score > b.score
                                            : a.index < b.index;
                });
      if (best.top.size() > top_k) best.top.resize(top_k);
    }
  }
  return best;
}

}  // namespace

MaterialModel rescale(const Database& db, std::size_t index, double norm) {
  MaterialModel m = record_model(db, index);
  for (double& t : m.theta) t *= norm;
  return m;
}

MatchResult match(const Database& db, std::span<const double> raw_query,
                  const MatchOptions& options) {
  if (raw_query.size() != db.n_f) {
    throw ProtocolMismatch("query length " + std::to_string(raw_query.size()) +
                           " does not match database fingerprint length " +
                           std::to_string(db.n_f));
  }
  if (db.size() == 0) throw Error("EmptyDatabase", "database has no records");

  // Normalize: whole vector for supervised, per block for unsupervised.
  std::vector<double> q(raw_query.begin(), raw_query.end());
  const double force_norm = block_norm(raw_query.subspan(0, db.n_force));
  if (force_norm == 0.0) {
    throw ZeroFingerprint("query force/stress block has zero norm");
  }
  for (std::size_t k = 0; k < db.n_force; ++k) q[k] /= force_norm;
  if (db.n_force < db.n_f) {
    const double disp_norm = block_norm(raw_query.subspan(db.n_force));
    if (disp_norm == 0.0) {
      throw ZeroFingerprint("query displacement block has zero norm");
    }
    for (std::size_t k = db.n_force; k < db.n_f; ++k) q[k] /= disp_norm;
  }

  unsigned n_threads = options.n_threads;
  if (n_threads == 0) n_threads = std::max(1u, std::thread::hardware_concurrency());
  n_threads = std::min<unsigned>(n_threads, static_cast<unsigned>(db.size()));

  std::vector<BlockBest> partial(n_threads);
  if (n_threads == 1) {
    partial[0] = scan_block(db, q, options.sparsity_weight, options.top_k, 0,
                            db.size());
  } else {
    std::vector<std::thread> workers;
    const std::size_t chunk = (db.size() + n_threads - 1) / n_threads;
    for (unsigned t = 0; t < n_threads; ++t) {
      const std::size_t begin = std::min<std::size_t>(t * chunk, db.size());
      const std::size_t end = std::min<std::size_t>(begin + chunk, db.size());
      workers.emplace_back([&, t, begin, end] {
        partial[t] = scan_block(db, q, options.sparsity_weight, options.top_k,
                                begin, end);
      });
    }
    for (auto& w : workers) w.join();
  }

  // Deterministic reduction: lowest index wins exact score ties.
  BlockBest best;
  std::vector<MatchEntry> merged;
  for (const BlockBest& b : partial) {
    if (b.score > best.score) {
      best.score = b.score;
      best.index = b.index;
      best.tie = b.tie;
    } else if (b.score == best.score && b.score != -std::numeric_limits<double>::infinity()) {
      best.tie = true;
    }
    merged.insert(merged.end(), b.top.begin(), b.top.end());
  }
  std::sort(merged.begin(), merged.end(),
            [](const MatchEntry& a, const MatchEntry& b) {
              return a.score != b.score ? a.score > b.score : a.index < b.index;
            });
  if (merged.size() > options.top_k) merged.resize(options.top_k);

  MatchResult result;
  result.best_index = best.index;
  result.score = best.score;
  result.tie = best.tie;
  {
    const double* row = db.fingerprints.data() + best.index * db.n_f;
    double dot = 0.0;
    for (std::size_t k = 0; k < db.n_f; ++k) dot += row[k] * q[k];
    result.similarity = dot;
  }
  result.query_norm = force_norm;
  result.discovered = rescale(db, best.index, force_norm);
  result.top = std::move(merged);
  return result;
}

}  // namespace mfp
