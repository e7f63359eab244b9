#pragma once

#include <limits>

#include "sope/sope.hpp"

namespace sope {

using Matrix = std::vector<std::vector<double>>;

// Sentinel for causally masked raw-score entries.
inline constexpr double kMasked = -std::numeric_limits<double>::infinity();

struct AttentionReport {
  Matrix scores;                    // post-softmax rows
  std::vector<double> row_entropy;  // nats
  std::vector<double> topk_mass;    // fraction of row mass on the k largest entries
  double cross_modal_mass = 0.0;    // text-query rows onto point-cloud-key columns
  int topk = 0;                     // resolved k
};

struct MetricSummary {
  double mean_row_entropy = 0.0;
  double mean_topk_mass = 0.0;
  double cross_modal_mass = 0.0;
};

// Raw scores S[i][j] = score(q_i, k_j, idx_i, idx_j), optionally divided by
// sqrt(d); causal masking sets j > i to kMasked. Rows may be computed in
// parallel; each row's reduction is sequential left-to-right so the result
// is identical for any thread count.
Matrix score_matrix(const TokenSequence& queries, const TokenSequence& keys,
                    const EncodingConfig& cfg, bool scale_by_sqrt_d, bool causal,
                    int threads = 1);

// Row-wise exp-normalize with max subtraction; masked entries become 0.
// A fully masked row is an error naming the row.
Matrix softmax_rows(const Matrix& raw);

// Row entropy (0 ln 0 := 0), top-k mass with k = ceil(topk_frac * N), and
// cross-modal mass normalized by the text row count (0 when there are no
// text rows). Expects square self-attention probabilities whose rows sum
// to 1.
AttentionReport bias_metrics(const Matrix& p, const std::vector<Modality>& tags,
                             double topk_frac = 0.05);

MetricSummary summarize(const AttentionReport& report);

}  // namespace sope
