#include "cttstylo/cluster.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <unordered_map>

#include "cttstylo/error.hpp"
#include "cttstylo/rng.hpp"
#include "cttstylo/stats.hpp"
#include "cttstylo/text.hpp"

namespace cttstylo {

namespace {

double sq_dist(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    const double d = a[j] - b[j];
    s += d * d;
  }
  return s;
}

Matrix plus_plus_init(const Matrix& x, std::size_t k, Rng& rng) {
  const std::size_t n = x.rows();
  Matrix c(k, x.cols());
  std::vector<bool> chosen(n, false);
  std::size_t first = rng.index(n);
  chosen[first] = true;
  std::copy(x.row(first).begin(), x.row(first).end(), c.row(0).begin());
  std::vector<double> d2(n);
  for (std::size_t i = 0; i < n; ++i) d2[i] = sq_dist(x.row(i), c.row(0));
  for (std::size_t m = 1; m < k; ++m) {
    double total = 0.0;
    for (double v : d2) total += v;
    std::size_t pick = n;
    if (total > 0.0) {
      const double target = rng.uniform() * total;
      double acc = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        acc += d2[i];
        if (d2[i] > 0.0 && acc > target) {
          pick = i;
          break;
        }
      }
      if (pick == n) {
        for (std::size_t i = n; i-- > 0;) {
          if (d2[i] > 0.0) {
            pick = i;
            break;
          }
        }
      }
    } else {
      // Every remaining point coincides with a centre: any unchosen row.
      std::vector<std::size_t> free;
      for (std::size_t i = 0; i < n; ++i) {
        if (!chosen[i]) free.push_back(i);
      }
      pick = free[rng.index(free.size())];
    }
    chosen[pick] = true;
    std::copy(x.row(pick).begin(), x.row(pick).end(), c.row(m).begin());
    for (std::size_t i = 0; i < n; ++i) d2[i] = std::min(d2[i], sq_dist(x.row(i), c.row(m)));
  }
  return c;
}

double assign(const Matrix& x, const Matrix& c, std::vector<int>& labels, std::vector<double>& dist) {
  double inertia = 0.0;
  for (std::size_t i = 0; i < x.rows(); ++i) {
    int best = 0;
    double bd = sq_dist(x.row(i), c.row(0));
    for (std::size_t m = 1; m < c.rows(); ++m) {
      const double d = sq_dist(x.row(i), c.row(m));
      if (d < bd) {
        bd = d;
        best = static_cast<int>(m);
      }
    }
    labels[i] = best;
    dist[i] = bd;
    inertia += bd;
  }
  return inertia;
}

KmeansResult lloyd(const Matrix& x, Matrix centroids, const KmeansParams& p) {
  const std::size_t n = x.rows(), d = x.cols(), k = p.k;
  KmeansResult r;
  r.assignment.assign(n, 0);
  std::vector<double> dist(n);
  for (std::size_t it = 0; it < p.max_iter; ++it) {
    r.inertia_history.push_back(assign(x, centroids, r.assignment, dist));
    ++r.iterations;
    Matrix next(k, d);
    std::vector<std::size_t> size(k, 0);
    for (std::size_t i = 0; i < n; ++i) {
      const auto m = static_cast<std::size_t>(r.assignment[i]);
      ++size[m];
      for (std::size_t j = 0; j < d; ++j) next(m, j) += x(i, j);
    }
    for (std::size_t m = 0; m < k; ++m) {
      if (size[m] == 0) continue;
      for (std::size_t j = 0; j < d; ++j) next(m, j) /= static_cast<double>(size[m]);
    }
    for (std::size_t m = 0; m < k; ++m) {
      if (size[m] > 0) continue;
      // Reseed from the point farthest from its centre, taken from a
      // cluster that can spare it.
      std::size_t far = n;
      for (std::size_t i = 0; i < n; ++i) {
        if (size[static_cast<std::size_t>(r.assignment[i])] < 2) continue;
        if (far == n || dist[i] > dist[far]) far = i;
      }
      if (far == n) continue;
      const auto from = static_cast<std::size_t>(r.assignment[far]);
      --size[from];
      ++size[m];
      for (std::size_t j = 0; j < d; ++j) {
        next(from, j) += (next(from, j) - x(far, j)) / static_cast<double>(size[from]);
        next(m, j) = x(far, j);
      }
      r.assignment[far] = static_cast<int>(m);
      dist[far] = 0.0;
      ++r.repaired_clusters;
    }
    double shift = 0.0;
    for (std::size_t m = 0; m < k; ++m) shift = std::max(shift, std::sqrt(sq_dist(next.row(m), centroids.row(m))));
    centroids = std::move(next);
    if (shift < p.tol) break;
  }
  r.inertia = assign(x, centroids, r.assignment, dist);
  r.inertia_history.push_back(r.inertia);
  r.centroids = std::move(centroids);
  return r;
}

}  // namespace

KmeansResult kmeans(const Matrix& x, const KmeansParams& p) {
  if (p.k < 1) throw Error("kmeans: k must be >= 1");
  if (p.k > x.rows()) throw Error("kmeans: k = " + std::to_string(p.k) + " exceeds " + std::to_string(x.rows()) + " rows");
  if (p.n_init < 1) throw Error("kmeans: n_init must be >= 1");
  if (p.max_iter < 1) throw Error("kmeans: max_iter must be >= 1");
  KmeansResult best;
  bool have = false;
  for (std::size_t r = 0; r < p.n_init; ++r) {
    Rng rng(derive_seed(p.seed, r));
    auto res = lloyd(x, plus_plus_init(x, p.k, rng), p);
    if (!have || res.inertia < best.inertia) {
      best = std::move(res);
      have = true;
    }
  }
  return best;
}

double adjusted_rand_index(std::span<const int> truth, std::span<const int> pred) {
  if (truth.size() != pred.size()) throw Error("adjusted_rand_index: length mismatch");
  if (truth.size() < 2) throw Error("adjusted_rand_index: need at least two labels");
  std::map<std::pair<int, int>, std::int64_t> cells;
  std::map<int, std::int64_t> rows, cols;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    ++cells[{truth[i], pred[i]}];
    ++rows[truth[i]];
    ++cols[pred[i]];
  }
  const auto pairs = [](std::int64_t v) { return v * (v - 1) / 2; };
  std::int64_t index = 0, sa = 0, sb = 0;
  for (const auto& [_, v] : cells) index += pairs(v);
  for (const auto& [_, v] : rows) sa += pairs(v);
  for (const auto& [_, v] : cols) sb += pairs(v);
  const auto total = static_cast<long double>(pairs(static_cast<std::int64_t>(truth.size())));
  // Scaled by 2 * total pairs so the arithmetic stays in integers for
  // realistic sizes.
  const long double num = 2.0L * (static_cast<long double>(index) * total - static_cast<long double>(sa) * sb);
  const long double den = static_cast<long double>(sa + sb) * total - 2.0L * static_cast<long double>(sa) * sb;
  if (den == 0.0L) return 1.0;
  return static_cast<double>(num / den);
}

std::vector<std::string> mfw_units(const Document& doc, MfwUnit unit) {
  std::vector<std::string> out;
  const auto counts = [](char32_t c) { return text::is_cjk(c) || text::is_latin_letter(c) || (c >= U'0' && c <= U'9'); };
  for (const auto& s : doc.sentences) {
    for (const auto& t : s.tokens) {
      const auto cps = text::decode_utf8(t.surface);
      if (unit == MfwUnit::Word) {
        if (std::any_of(cps.begin(), cps.end(), counts)) out.push_back(t.surface);
      } else {
        for (char32_t c : cps) {
          if (counts(c)) out.push_back(text::encode_utf8(c));
        }
      }
    }
  }
  return out;
}

MfwTable mfw_table(std::span<const std::string> doc_ids, const std::vector<std::vector<std::string>>& units,
                   std::size_t n) {
  if (doc_ids.size() != units.size()) throw Error("mfw_table: ids and unit lists differ in length");
  if (doc_ids.size() < 2) throw Error("mfw_table: need at least two documents");
  if (n < 1) throw Error("mfw_table: n must be >= 1");
  std::unordered_map<std::string, std::size_t> pooled;
  for (const auto& u : units) {
    for (const auto& w : u) ++pooled[w];
  }
  std::vector<std::pair<std::string, std::size_t>> ranked(pooled.begin(), pooled.end());
  std::sort(ranked.begin(), ranked.end(),
            [](const auto& a, const auto& b) { return a.second != b.second ? a.second > b.second : a.first < b.first; });
  MfwTable t;
  t.truncated = ranked.size() < n;
  ranked.resize(std::min(n, ranked.size()));
  std::unordered_map<std::string, std::size_t> col;
  for (const auto& [w, c] : ranked) {
    col.emplace(w, t.words.size());
    t.words.push_back(w);
    t.corpus_counts.push_back(c);
  }
  t.documents.assign(doc_ids.begin(), doc_ids.end());
  t.relative = Matrix(units.size(), t.words.size());
  for (std::size_t d = 0; d < units.size(); ++d) {
    for (const auto& w : units[d]) {
      const auto it = col.find(w);
      if (it != col.end()) t.relative(d, it->second) += 1.0;
    }
    if (units[d].empty()) continue;
    for (std::size_t j = 0; j < t.words.size(); ++j) t.relative(d, j) /= static_cast<double>(units[d].size());
  }
  t.z = zscore_columns(t.relative).z;
  return t;
}

double delta_distance(std::span<const double> za, std::span<const double> zb, const DeltaParams& p) {
  if (za.size() != zb.size()) throw Error("delta_distance: vectors differ in length");
  const std::size_t n = za.size();
  if (n == 0) return 0.0;
  const double nd = static_cast<double>(n);
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double term = std::abs(za[i] - zb[i]);
    if (p.kind == DeltaKind::Eder) term *= (nd - static_cast<double>(i + 1) + p.eder_offset) / nd;
    s += term;
  }
  return s / nd;
}

double delta_distance(const MfwTable& t, std::string_view a, std::string_view b, const DeltaParams& p) {
  const auto find = [&](std::string_view id) {
    const auto it = std::find(t.documents.begin(), t.documents.end(), id);
    if (it == t.documents.end()) throw Error("delta_distance: document " + std::string(id) + " not in table");
    return static_cast<std::size_t>(it - t.documents.begin());
  };
  return delta_distance(t.z.row(find(a)), t.z.row(find(b)), p);
}

Matrix delta_matrix(const MfwTable& t, const DeltaParams& p) {
  const std::size_t n = t.documents.size();
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) m(i, j) = m(j, i) = delta_distance(t.z.row(i), t.z.row(j), p);
  }
  return m;
}

std::vector<std::string> DendrogramNode::leaves() const {
  std::vector<std::string> out;
  std::vector<const DendrogramNode*> stack{this};
  while (!stack.empty()) {
    const auto* n = stack.back();
    stack.pop_back();
    if (n->leaf()) {
      out.push_back(n->id);
    } else {
      stack.push_back(n->right.get());
      stack.push_back(n->left.get());
    }
  }
  return out;
}

std::unique_ptr<DendrogramNode> agglomerative_cluster(const Matrix& distance, std::span<const std::string> ids,
                                                      Linkage linkage) {
  const std::size_t n = ids.size();
  if (distance.rows() != n || distance.cols() != n) throw Error("agglomerative_cluster: matrix does not match ids");
  if (n == 0) throw Error("agglomerative_cluster: no documents");
  {
    std::vector<std::string> sorted(ids.begin(), ids.end());
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw Error("agglomerative_cluster: duplicate id");
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (distance(i, i) != 0.0) throw Error("agglomerative_cluster: non-zero diagonal at " + ids[i]);
    for (std::size_t j = i + 1; j < n; ++j) {
      const double a = distance(i, j), b = distance(j, i);
      if (!std::isfinite(a) || a < 0.0) throw Error("agglomerative_cluster: invalid distance");
      if (std::abs(a - b) > 1e-12 * std::max(1.0, std::abs(a))) {
        throw Error("agglomerative_cluster: non-symmetric matrix at " + ids[i] + "," + ids[j]);
      }
    }
  }

  struct Cluster {
    std::unique_ptr<DendrogramNode> node;
    std::size_t size = 1;
    std::string key;  // smallest leaf id
  };
  std::vector<Cluster> cl;
  for (std::size_t i = 0; i < n; ++i) {
    auto leaf = std::make_unique<DendrogramNode>();
    leaf->id = ids[i];
    cl.push_back({std::move(leaf), 1, ids[i]});
  }
  Matrix d = distance;
  std::vector<bool> alive(n, true);
  double last = 0.0;
  for (std::size_t step = 1; step < n; ++step) {
    std::size_t ba = n, bb = n;
    double best = std::numeric_limits<double>::infinity();
    std::pair<std::string_view, std::string_view> best_key;
    for (std::size_t i = 0; i < n; ++i) {
      if (!alive[i]) continue;
      for (std::size_t j = i + 1; j < n; ++j) {
        if (!alive[j]) continue;
        std::string_view ka = cl[i].key, kb = cl[j].key;
        if (kb < ka) std::swap(ka, kb);
        const std::pair<std::string_view, std::string_view> key{ka, kb};
        if (ba == n || d(i, j) < best || (d(i, j) == best && key < best_key)) {
          best = d(i, j);
          ba = i;
          bb = j;
          best_key = key;
        }
      }
    }
    if (cl[bb].key < cl[ba].key) std::swap(ba, bb);
    auto parent = std::make_unique<DendrogramNode>();
    last = std::max(last, best);
    parent->height = last;
    const std::size_t na = cl[ba].size, nb = cl[bb].size;
    parent->left = std::move(cl[ba].node);
    parent->right = std::move(cl[bb].node);
    for (std::size_t k = 0; k < n; ++k) {
      if (!alive[k] || k == ba || k == bb) continue;
      double v = 0.0;
      switch (linkage) {
        case Linkage::Average:
          v = (static_cast<double>(na) * d(ba, k) + static_cast<double>(nb) * d(bb, k)) / static_cast<double>(na + nb);
          break;
        case Linkage::Single: v = std::min(d(ba, k), d(bb, k)); break;
        case Linkage::Complete: v = std::max(d(ba, k), d(bb, k)); break;
      }
      d(ba, k) = d(k, ba) = v;
    }
    cl[ba].node = std::move(parent);
    cl[ba].size = na + nb;
    alive[bb] = false;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (alive[i]) return std::move(cl[i].node);
  }
  throw Error("agglomerative_cluster: internal error");
}

std::vector<SweepRow> sweep_k(const Matrix& x, std::span<const std::size_t> ks, std::span<const int> truth,
                              const KmeansParams& base) {
  if (!truth.empty() && truth.size() != x.rows()) throw Error("sweep_k: truth labels do not match rows");
  std::vector<SweepRow> out;
  for (std::size_t k : ks) {
    if (k < 1 || k > x.rows()) continue;
    KmeansParams p = base;
    p.k = k;
    const auto r = kmeans(x, p);
    SweepRow row{k, std::nullopt, r.inertia};
    if (!truth.empty()) row.ari = adjusted_rand_index(truth, r.assignment);
    out.push_back(row);
  }
  return out;
}

}  // namespace cttstylo
