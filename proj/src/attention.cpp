#include "sope/attention.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "parallel.hpp"

namespace sope {

Matrix score_matrix(const TokenSequence& queries, const TokenSequence& keys,
                    const EncodingConfig& cfg, bool scale_by_sqrt_d, bool causal, int threads) {
  if (causal && queries.size() != keys.size()) {
    throw DimensionError("score_matrix: causal masking requires a square matrix, got " +
                         std::to_string(queries.size()) + " queries and " +
                         std::to_string(keys.size()) + " keys");
  }
  if (queries.empty()) return {};

  const TokenSequence q = encode(queries, cfg, Role::kQuery, threads);
  const TokenSequence k = encode(keys, cfg, Role::kKey, threads);
  const double scale = scale_by_sqrt_d ? 1.0 / std::sqrt(static_cast<double>(cfg.d)) : 1.0;

  Matrix scores(q.size());
  detail::parallel_for(q.size(), threads, [&](std::size_t i) {
    std::vector<double>& row = scores[i];
    row.resize(k.size());
    for (std::size_t j = 0; j < k.size(); ++j) {
      if (causal && j > i) {
        row[j] = kMasked;
      } else {
        row[j] = dot(q.tokens[i].features, k.tokens[j].features) * scale;
      }
    }
  });
  return scores;
}

Matrix softmax_rows(const Matrix& raw) {
  Matrix out(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    const std::vector<double>& row = raw[i];
    double max_s = kMasked;
    for (double s : row) {
      if (s == kMasked) continue;
      if (!std::isfinite(s)) {
        throw ValidationError("softmax_rows: row " + std::to_string(i) +
                              " has a non-finite entry that is not the mask sentinel");
      }
      max_s = std::max(max_s, s);
    }
    if (!row.empty() && max_s == kMasked) {
      throw ValidationError("softmax_rows: row " + std::to_string(i) + " is fully masked");
    }
    out[i].resize(row.size());
    double sum = 0.0;
    for (std::size_t j = 0; j < row.size(); ++j) {
      out[i][j] = row[j] == kMasked ? 0.0 : std::exp(row[j] - max_s);
      sum += out[i][j];
    }
    for (double& p : out[i]) p /= sum;
  }
  return out;
}

AttentionReport bias_metrics(const Matrix& p, const std::vector<Modality>& tags,
                             double topk_frac) {
  const std::size_t n = p.size();
  if (tags.size() != n) {
    throw DimensionError("bias_metrics: " + std::to_string(n) + " rows but " +
                         std::to_string(tags.size()) + " modality tags");
  }
  if (!(topk_frac > 0.0) || topk_frac > 1.0) {
    throw ValueError("bias_metrics: topk_frac must be in (0, 1], got " +
                     std::to_string(topk_frac));
  }
  AttentionReport report;
  if (n == 0) return report;

  for (std::size_t i = 0; i < n; ++i) {
    if (p[i].size() != n) {
      throw DimensionError("bias_metrics: row " + std::to_string(i) + " has " +
                           std::to_string(p[i].size()) + " columns, expected " +
                           std::to_string(n));
    }
    double sum = 0.0;
    for (double v : p[i]) {
      if (!(v >= 0.0)) {
        throw ValidationError("bias_metrics: row " + std::to_string(i) +
                              " has a negative or non-finite entry");
      }
      sum += v;
    }
    if (std::fabs(sum - 1.0) > 1e-9) {
      throw ValidationError("bias_metrics: row " + std::to_string(i) + " sums to " +
                            std::to_string(sum) + ", not 1");
    }
  }

  report.scores = p;
  report.topk = std::clamp(static_cast<int>(std::ceil(topk_frac * static_cast<double>(n))), 1,
                           static_cast<int>(n));
  report.row_entropy.resize(n);
  report.topk_mass.resize(n);

  for (std::size_t i = 0; i < n; ++i) {
    double h = 0.0;
    for (double v : p[i]) {
      if (v > 0.0) h -= v * std::log(v);
    }
    report.row_entropy[i] = h;

    std::vector<double> sorted(p[i]);
    std::partial_sort(sorted.begin(), sorted.begin() + report.topk, sorted.end(),
                      std::greater<>());
    double mass = 0.0;
    for (int j = 0; j < report.topk; ++j) mass += sorted[static_cast<std::size_t>(j)];
    report.topk_mass[i] = mass;
  }

  std::size_t text_rows = 0;
  double cross = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (tags[i] != Modality::kText) continue;
    ++text_rows;
    for (std::size_t j = 0; j < n; ++j) {
      if (tags[j] == Modality::kPointCloud) cross += p[i][j];
    }
  }
  report.cross_modal_mass = text_rows == 0 ? 0.0 : cross / static_cast<double>(text_rows);
  return report;
}

MetricSummary summarize(const AttentionReport& report) {
  MetricSummary s;
  s.cross_modal_mass = report.cross_modal_mass;
  if (report.row_entropy.empty()) return s;
  double he = 0.0;
  double tk = 0.0;
  for (double v : report.row_entropy) he += v;
  for (double v : report.topk_mass) tk += v;
  s.mean_row_entropy = he / static_cast<double>(report.row_entropy.size());
  s.mean_topk_mass = tk / static_cast<double>(report.topk_mass.size());
  return s;
}

}  // namespace sope
