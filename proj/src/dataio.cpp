/**
 * slosh: set retrieval via sliced-Wasserstein embeddings
 *
 * Copyright (c) 2026 The slosh authors
 *
 * This code is released under the
 * Apache License Version 2.0 http://www.apache.org/licenses/.
 */
#include "slosh/dataio.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>
#include <vector>

#include "slosh/util.hpp"

namespace slosh {

namespace {

void validate_dataset(const SetDataset& ds) {
  require(!ds.sets.empty(), "dataset must contain at least one set");
  require(ds.d >= 1, "dataset dimension must be >= 1");
  for (std::size_t i = 0; i < ds.sets.size(); ++i) {
    require(ds.sets[i].size() >= 1,
            "dataset record " + std::to_string(i) + " is empty");
    require(ds.sets[i].dim() == ds.d,
            "dataset record " + std::to_string(i) +
                " has inconsistent dimension");
  }
}

[[noreturn]] void parse_fail(const std::string& path, const std::string& what) {
  throw std::runtime_error(path + ": " + what);
}

void save_text(const SetDataset& ds, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open " + path + " for writing");
  os << "SSD1 d=" << ds.d << " n=" << ds.sets.size() << "\n";
  char buf[40];
  for (const PointSet& s : ds.sets) {
    os << s.id << " " << s.label << " " << s.size() << "\n";
    for (int n = 0; n < s.size(); ++n) {
      for (int j = 0; j < s.dim(); ++j) {
        // 17 significant digits round-trip IEEE doubles exactly.
        std::snprintf(buf, sizeof(buf), "%.17g", s.points(n, j));
        if (j > 0) os << ' ';
        os << buf;
      }
      os << '\n';
    }
  }
  if (!os) throw std::runtime_error("write failed for " + path);
}

void save_binary(const SetDataset& ds, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open " + path + " for writing");
  io::write_magic(os, "SSB1");
  io::write_pod<std::uint32_t>(os, static_cast<std::uint32_t>(ds.d));
  io::write_pod<std::uint64_t>(os, ds.sets.size());
  for (const PointSet& s : ds.sets) {
    io::write_pod<std::int64_t>(os, s.id);
    io::write_pod<std::int32_t>(os, s.label);
    io::write_pod<std::uint32_t>(os, static_cast<std::uint32_t>(s.size()));
    for (int n = 0; n < s.size(); ++n)
      for (int j = 0; j < s.dim(); ++j)
        io::write_pod<double>(os, s.points(n, j));
  }
  if (!os) throw std::runtime_error("write failed for " + path);
}

// Parses exactly `count` doubles from `line`; returns false on any extra or
// malformed token.
bool parse_doubles(const std::string& line, double* out, int count) {
  const char* p = line.c_str();
  char* end = nullptr;
  for (int j = 0; j < count; ++j) {
    out[j] = std::strtod(p, &end);
    if (end == p) return false;
    p = end;
  }
  while (*p == ' ' || *p == '\t' || *p == '\r') ++p;
  return *p == '\0';
}

SetDataset load_text(std::ifstream& is, const std::string& path) {
  std::string line;
  if (!std::getline(is, line)) parse_fail(path, "empty file");
  int d = 0;
  std::size_t n = 0;
  if (std::sscanf(line.c_str(), "SSD1 d=%d n=%zu", &d, &n) != 2 || d < 1)
    parse_fail(path, "malformed header: " + line);
  SetDataset ds;
  ds.d = d;
  ds.sets.reserve(n);
  std::vector<double> row(static_cast<std::size_t>(d));
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::getline(is, line))
      parse_fail(path, "record " + std::to_string(i) + ": unexpected end of file");
    long long id = 0;
    int label = 0, N = 0;
    if (std::sscanf(line.c_str(), "%lld %d %d", &id, &label, &N) != 3)
      parse_fail(path, "record " + std::to_string(i) + ": malformed set header: " + line);
    if (N < 1)
      parse_fail(path, "record " + std::to_string(i) + ": set cardinality must be >= 1");
    PointSet s;
    s.id = id;
    s.label = label;
    s.points.resize(N, d);
    for (int k = 0; k < N; ++k) {
      if (!std::getline(is, line))
        parse_fail(path, "record " + std::to_string(i) + ": unexpected end of file");
      if (!parse_doubles(line, row.data(), d))
        parse_fail(path, "record " + std::to_string(i) + ": expected " +
                             std::to_string(d) + " values, got: " + line);
      for (int j = 0; j < d; ++j) s.points(k, j) = row[static_cast<std::size_t>(j)];
    }
    ds.sets.push_back(std::move(s));
  }
  return ds;
}

SetDataset load_binary(std::ifstream& is, const std::string& path) {
  const auto d = io::read_pod<std::uint32_t>(is);
  const auto n = io::read_pod<std::uint64_t>(is);
  if (d < 1) parse_fail(path, "malformed header: d=0");
  SetDataset ds;
  ds.d = static_cast<int>(d);
  ds.sets.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    PointSet s;
    try {
      s.id = io::read_pod<std::int64_t>(is);
      s.label = io::read_pod<std::int32_t>(is);
      const auto N = io::read_pod<std::uint32_t>(is);
      if (N < 1)
        parse_fail(path, "record " + std::to_string(i) + ": set cardinality must be >= 1");
      s.points.resize(N, d);
      for (std::uint32_t k = 0; k < N; ++k)
        for (std::uint32_t j = 0; j < d; ++j)
          s.points(k, j) = io::read_pod<double>(is);
    } catch (const std::runtime_error&) {
      parse_fail(path, "record " + std::to_string(i) + ": unexpected end of file");
    }
    ds.sets.push_back(std::move(s));
  }
  return ds;
}

}  // namespace

void save_dataset(const SetDataset& ds, const std::string& path,
                  DatasetFormat format) {
  validate_dataset(ds);
  if (format == DatasetFormat::kText)
    save_text(ds, path);
  else
    save_binary(ds, path);
}

SetDataset load_dataset(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open " + path);
  char magic[4] = {0, 0, 0, 0};
  is.read(magic, 4);
  if (!is) parse_fail(path, "empty or truncated file");
  is.seekg(0);
  SetDataset ds;
  if (std::string(magic, 4) == "SSB1") {
    io::read_magic(is);  // consume
    ds = load_binary(is, path);
  } else if (std::string(magic, 4) == "SSD1") {
    std::ifstream text(path);
    ds = load_text(text, path);
  } else {
    parse_fail(path, "unrecognized format (expected SSD1 or SSB1 leader)");
  }
  validate_dataset(ds);
  return ds;
}

SetDataset gen_blobs(int classes, int sets_per_class, int d, int card_mean,
                     double card_std, std::uint64_t seed) {
  require(classes >= 1, "gen_blobs: classes must be >= 1");
  require(sets_per_class >= 1, "gen_blobs: sets_per_class must be >= 1");
  require(d >= 1, "gen_blobs: d must be >= 1");
  require(card_mean >= 1, "gen_blobs: card_mean must be >= 1");
  require(card_std >= 0.0, "gen_blobs: card_std must be >= 0");

  // Mixture geometry: components at -s*u (weight 3/4) and +3*s*u (weight
  // 1/4) along the pair axis u, isotropic spread kNoise. The weighting makes
  // every class zero-mean with covariance kNoise^2*I + 3*u*u^T regardless of
  // the mirror sign s.
  constexpr double kNoise = 0.35;
  constexpr double kNearWeight = 0.75;

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);

  const int pairs = (classes + 1) / 2;
  Eigen::MatrixXd axes(pairs, d);
  for (int p = 0; p < pairs; ++p) {
    double norm2 = 0.0;
    do {
      norm2 = 0.0;
      for (int j = 0; j < d; ++j) {
        const double g = gauss(rng);
        axes(p, j) = g;
        norm2 += g * g;
      }
    } while (norm2 == 0.0);
    axes.row(p) /= std::sqrt(norm2);
  }

  SetDataset ds;
  ds.d = d;
  ds.sets.reserve(static_cast<std::size_t>(classes) * sets_per_class);
  std::int64_t next_id = 0;
  for (int c = 0; c < classes; ++c) {
    ds.class_names.push_back("class-" + std::to_string(c));
    const double s = (c % 2 == 0) ? 1.0 : -1.0;
    const Eigen::RowVectorXd near_center = -s * axes.row(c / 2);
    const Eigen::RowVectorXd far_center = 3.0 * s * axes.row(c / 2);
    for (int i = 0; i < sets_per_class; ++i) {
      int N = card_mean;
      if (card_std > 0.0) {
        std::normal_distribution<double> card(static_cast<double>(card_mean),
                                              card_std);
        N = static_cast<int>(std::floor(card(rng)));
        if (N < 1) N = 1;
      }
      PointSet set;
      set.id = next_id++;
      set.label = c;
      set.points.resize(N, d);
      for (int k = 0; k < N; ++k) {
        const Eigen::RowVectorXd& center =
            (unif(rng) < kNearWeight) ? near_center : far_center;
        for (int j = 0; j < d; ++j)
          set.points(k, j) = center(j) + kNoise * gauss(rng);
      }
      ds.sets.push_back(std::move(set));
    }
  }
  return ds;
}

PointSet normalize_unit_cube(const PointSet& set) {
  require(set.size() >= 1, "normalize_unit_cube: input set must be non-empty");
  PointSet out = set;
  const Eigen::RowVectorXd mins = set.points.colwise().minCoeff();
  const Eigen::RowVectorXd maxs = set.points.colwise().maxCoeff();
  const double scale = (maxs - mins).maxCoeff();
  if (scale <= 0.0) {
    out.points.setConstant(0.5);
    return out;
  }
  out.points = (set.points.rowwise() - mins) / scale;
  return out;
}

namespace {

// Pools all elements of all sets into one matrix, optionally subsampled
// (without replacement) to at most max_rows.
Eigen::MatrixXd pool_elements(const SetDataset& ds, std::size_t max_rows,
                              std::mt19937_64& rng) {
  std::size_t total = 0;
  for (const PointSet& s : ds.sets) total += static_cast<std::size_t>(s.size());
  if (total <= max_rows) {
    Eigen::MatrixXd pooled(total, ds.d);
    std::size_t r = 0;
    for (const PointSet& s : ds.sets)
      for (int n = 0; n < s.size(); ++n) pooled.row(r++) = s.points.row(n);
    return pooled;
  }
  // Reservoir sampling keeps one pass and O(max_rows) memory.
  Eigen::MatrixXd pooled(max_rows, ds.d);
  std::size_t seen = 0;
  for (const PointSet& s : ds.sets) {
    for (int n = 0; n < s.size(); ++n) {
      if (seen < max_rows) {
        pooled.row(seen) = s.points.row(n);
      } else {
        std::uniform_int_distribution<std::size_t> pick(0, seen);
        const std::size_t j = pick(rng);
        if (j < max_rows) pooled.row(j) = s.points.row(n);
      }
      ++seen;
    }
  }
  return pooled;
}

Eigen::MatrixXd kmeans_reference(const Eigen::MatrixXd& X, int M,
                                 std::mt19937_64& rng) {
  const auto n = X.rows();
  const int d = static_cast<int>(X.cols());
  require(static_cast<Eigen::Index>(M) <= n,
          "build_reference: kmeans needs M <= pooled element count");

  // k-means++ seeding.
  Eigen::MatrixXd centers(M, d);
  std::uniform_int_distribution<Eigen::Index> first(0, n - 1);
  centers.row(0) = X.row(first(rng));
  Eigen::VectorXd d2 =
      (X.rowwise() - centers.row(0)).rowwise().squaredNorm();
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int c = 1; c < M; ++c) {
    const double total = d2.sum();
    Eigen::Index pick = 0;
    if (total > 0.0) {
      const double r = unif(rng) * total;
      double acc = 0.0;
      pick = n - 1;
      for (Eigen::Index i = 0; i < n; ++i) {
        acc += d2(i);
        if (acc >= r) {
          pick = i;
          break;
        }
      }
    } else {
      std::uniform_int_distribution<Eigen::Index> any(0, n - 1);
      pick = any(rng);
    }
    centers.row(c) = X.row(pick);
    d2 = d2.cwiseMin(
        (X.rowwise() - centers.row(c)).rowwise().squaredNorm());
  }

  // Lloyd iterations.
  std::vector<int> assign(static_cast<std::size_t>(n), 0);
  constexpr int kMaxIter = 100;
  constexpr double kTol = 1e-6;
  for (int iter = 0; iter < kMaxIter; ++iter) {
    for (Eigen::Index i = 0; i < n; ++i) {
      int best = 0;
      double best_d = (X.row(i) - centers.row(0)).squaredNorm();
      for (int c = 1; c < M; ++c) {
        const double dist = (X.row(i) - centers.row(c)).squaredNorm();
        if (dist < best_d) {
          best_d = dist;
          best = c;
        }
      }
      assign[static_cast<std::size_t>(i)] = best;
    }
    Eigen::MatrixXd sums = Eigen::MatrixXd::Zero(M, d);
    std::vector<Eigen::Index> counts(static_cast<std::size_t>(M), 0);
    for (Eigen::Index i = 0; i < n; ++i) {
      sums.row(assign[static_cast<std::size_t>(i)]) += X.row(i);
      ++counts[static_cast<std::size_t>(assign[static_cast<std::size_t>(i)])];
    }
    double shift = 0.0;
    for (int c = 0; c < M; ++c) {
      Eigen::RowVectorXd updated;
      if (counts[static_cast<std::size_t>(c)] > 0) {
        updated = sums.row(c) / static_cast<double>(counts[static_cast<std::size_t>(c)]);
      } else {
        // Re-seed an empty cluster at the point currently farthest from its
        // assigned centroid.
        Eigen::Index far = 0;
        double far_d = -1.0;
        for (Eigen::Index i = 0; i < n; ++i) {
          const double dist =
              (X.row(i) - centers.row(assign[static_cast<std::size_t>(i)]))
                  .squaredNorm();
          if (dist > far_d) {
            far_d = dist;
            far = i;
          }
        }
        updated = X.row(far);
      }
      shift = std::max(shift, (updated - centers.row(c)).norm());
      centers.row(c) = updated;
    }
    if (shift <= kTol) break;
  }
  return centers;
}

}  // namespace

Eigen::MatrixXd build_reference(const SetDataset& ds, const std::string& method,
                                int M, std::uint64_t seed) {
  validate_dataset(ds);
  require(M >= 1, "build_reference: M must be >= 1");
  std::mt19937_64 rng(seed);

  if (method == "kmeans") {
    const Eigen::MatrixXd pooled = pool_elements(ds, 100000, rng);
    return kmeans_reference(pooled, M, rng);
  }
  if (method == "random-set") {
    std::uniform_int_distribution<std::size_t> pick_set(0, ds.sets.size() - 1);
    const PointSet& s = ds.sets[pick_set(rng)];
    const int N = s.size();
    Eigen::MatrixXd ref(M, ds.d);
    if (N >= M) {
      std::vector<int> idx(static_cast<std::size_t>(N));
      for (int i = 0; i < N; ++i) idx[static_cast<std::size_t>(i)] = i;
      for (int i = 0; i < M; ++i) {
        std::uniform_int_distribution<int> pick(i, N - 1);
        std::swap(idx[static_cast<std::size_t>(i)],
                  idx[static_cast<std::size_t>(pick(rng))]);
        ref.row(i) = s.points.row(idx[static_cast<std::size_t>(i)]);
      }
    } else {
      std::uniform_int_distribution<int> pick(0, N - 1);
      for (int i = 0; i < M; ++i) ref.row(i) = s.points.row(pick(rng));
    }
    return ref;
  }
  if (method == "uniform") {
    Eigen::RowVectorXd mins =
        Eigen::RowVectorXd::Constant(ds.d, std::numeric_limits<double>::infinity());
    Eigen::RowVectorXd maxs = -mins;
    for (const PointSet& s : ds.sets) {
      mins = mins.cwiseMin(s.points.colwise().minCoeff());
      maxs = maxs.cwiseMax(s.points.colwise().maxCoeff());
    }
    Eigen::MatrixXd ref(M, ds.d);
    for (int i = 0; i < M; ++i)
      for (int j = 0; j < ds.d; ++j) {
        std::uniform_real_distribution<double> unif(mins(j), maxs(j));
        ref(i, j) = unif(rng);
      }
    return ref;
  }
  if (method == "normal") {
    std::size_t total = 0;
    Eigen::RowVectorXd mean = Eigen::RowVectorXd::Zero(ds.d);
    for (const PointSet& s : ds.sets) {
      mean += s.points.colwise().sum();
      total += static_cast<std::size_t>(s.size());
    }
    mean /= static_cast<double>(total);
    Eigen::RowVectorXd var = Eigen::RowVectorXd::Zero(ds.d);
    for (const PointSet& s : ds.sets)
      var += (s.points.rowwise() - mean).array().square().colwise().sum().matrix();
    var /= static_cast<double>(total > 1 ? total - 1 : 1);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::MatrixXd ref(M, ds.d);
    for (int i = 0; i < M; ++i)
      for (int j = 0; j < ds.d; ++j) {
        const double sigma = std::sqrt(std::max(var(j), 0.0));
        ref(i, j) = sigma > 0.0 ? mean(j) + sigma * gauss(rng) : mean(j);
      }
    return ref;
  }
  throw std::invalid_argument(
      "build_reference: unknown method '" + method +
      "' (expected kmeans | random-set | uniform | normal)");
}

}  // namespace slosh
