// sope-kernel: encode token sequences under rope / rope3d / sope, score
// attention matrices, and report spatial-bias metrics.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "CLI11.hpp"
#include "sope/attention.hpp"
#include "sope/io.hpp"

namespace fs = std::filesystem;
using namespace sope;

namespace {

// exit codes: 2 input error, 3 config error, 4 internal invariant violation
struct CliFailure {
  int code;
  std::string message;
};

struct Options {
  std::string config_path;
  std::string tokens_path;
  std::string format = "xyz";
  std::string scheme;
  std::string center = "none";
  std::string out_dir = ".";
  std::uint64_t seed = 0;
  bool seed_set = false;
  int threads = 1;
  bool causal = false;
  double topk_frac = 0.05;
  bool write_phases = false;
  std::string ratios = "8:6:9:9,1:1:1:1,5:1:1:1,24:2:3:3";
};

bool color_allowed() {
  return isatty(fileno(stdout)) != 0 && std::getenv("NO_COLOR") == nullptr;
}

std::string echo_number(double v) {
  std::ostringstream out;
  out << v;
  return out.str();
}

CliConfig resolve_config(const Options& opt) {
  try {
    CliConfig cfg;
    if (!opt.config_path.empty()) cfg = load_config(opt.config_path);
    if (!opt.scheme.empty()) {
      cfg.scheme = parse_scheme(opt.scheme);
      if (cfg.scheme == Scheme::kRope && cfg.ratio_explicit && cfg.warnings.empty()) {
        cfg.warnings.push_back("warning: ratio is ignored for scheme rope");
      }
    }
    if (opt.seed_set) cfg.seed = opt.seed;
    (void)cfg.encoding();  // revalidate after overrides
    return cfg;
  } catch (const Error& e) {
    throw CliFailure{3, e.what()};
  }
}

struct Inputs {
  TokenSequence tokens;  // as loaded, feature-free records allowed
  QueryKey qk;           // scoring features, synthesized when absent
};

Inputs load_input(const Options& opt, const CliConfig& cfg) {
  if (opt.tokens_path.empty()) throw CliFailure{2, "no --tokens file given"};
  try {
    const TokenFormat format =
        opt.format == "ply" ? TokenFormat::kPlyAscii : TokenFormat::kXyzTokens;
    Inputs in;
    in.tokens = load_tokens(opt.tokens_path, format);
    if (opt.center == "centroid") recenter_centroid(in.tokens);
    in.qk = make_query_key(in.tokens, cfg.seed, cfg.d);
    return in;
  } catch (const Error& e) {
    throw CliFailure{2, e.what()};
  }
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw CliFailure{2, "cannot write " + path.string()};
  return out;
}

fs::path prepare_out_dir(const Options& opt) {
  std::error_code ec;
  fs::create_directories(opt.out_dir, ec);
  if (ec) throw CliFailure{2, "cannot create output directory " + opt.out_dir};
  return fs::path(opt.out_dir);
}

std::vector<Modality> modality_tags(const TokenSequence& tokens) {
  std::vector<Modality> tags;
  tags.reserve(tokens.size());
  for (const Token& token : tokens.tokens) tags.push_back(token.index.modality);
  return tags;
}

std::string ratio_string(const std::array<int, 4>& ratio) {
  std::ostringstream out;
  out << ratio[0] << ':' << ratio[1] << ':' << ratio[2] << ':' << ratio[3];
  return out.str();
}

void write_report_header(std::ostream& out, const char* command, const CliConfig& cfg,
                         const TokenSequence& tokens, const Options& opt, bool color) {
  std::size_t pc = 0;
  for (const Token& token : tokens.tokens) {
    if (token.index.modality == Modality::kPointCloud) ++pc;
  }
  if (color) out << "\x1b[1m";
  out << "sope-kernel report v1";
  if (color) out << "\x1b[0m";
  out << '\n';
  out << "note: synthetic desk-scale analysis; metrics characterize the encoding geometry, "
         "not a trained model\n";
  out << "command: " << command << '\n';
  out << "tokens: " << tokens.size() << " (point_cloud " << pc << ", text "
      << tokens.size() - pc << ")\n";
  out << "d: " << cfg.d << '\n';
  out << "base: " << echo_number(cfg.base) << '\n';
  out << "scale.enabled: " << (cfg.scale.enabled ? "true" : "false") << '\n';
  out << "wrap_azimuth: " << (cfg.wrap_azimuth ? "true" : "false") << '\n';
  out << "seed: " << cfg.seed << '\n';
  out << "causal: " << (opt.causal ? "true" : "false") << '\n';
  out << "center: " << opt.center << '\n';
}

struct SchemeMetrics {
  MetricSummary summary;
  int topk = 0;
};

SchemeMetrics run_scheme(const QueryKey& qk, const EncodingConfig& enc, const Options& opt) {
  try {
    const Matrix raw = score_matrix(qk.queries, qk.keys, enc, /*scale_by_sqrt_d=*/true,
                                    opt.causal, opt.threads);
    const Matrix p = softmax_rows(raw);
    const AttentionReport report = bias_metrics(p, modality_tags(qk.queries), opt.topk_frac);
    return SchemeMetrics{summarize(report), report.topk};
  } catch (const ValueError& e) {
    throw CliFailure{3, e.what()};  // bad topk fraction
  } catch (const Error& e) {
    throw CliFailure{4, e.what()};
  }
}

int run_encode(const Options& opt) {
  const CliConfig cfg = resolve_config(opt);
  for (const std::string& w : cfg.warnings) std::cerr << "sope-kernel: " << w << '\n';
  const Inputs in = load_input(opt, cfg);
  const fs::path out_dir = prepare_out_dir(opt);
  const EncodingConfig enc_cfg = cfg.encoding();

  TokenSequence encoded;
  try {
    encoded = encode(in.qk.queries, enc_cfg, Role::kQuery, opt.threads);
  } catch (const Error& e) {
    throw CliFailure{4, e.what()};
  }

  std::ofstream out = open_out(out_dir / "encoded.csv");
  out << "t,x,y,z,modality";
  for (int f = 0; f < cfg.d; ++f) out << ",f" << f;
  out << '\n';
  for (const Token& token : encoded.tokens) {
    out << format_number(token.index.t) << ',' << format_number(token.index.x) << ','
        << format_number(token.index.y) << ',' << format_number(token.index.z) << ','
        << (token.index.modality == Modality::kPointCloud ? 'p' : 't');
    for (double v : token.features) out << ',' << format_number(v);
    out << '\n';
  }

  if (opt.write_phases) {
    std::ofstream phases_out = open_out(out_dir / "phases.csv");
    phases_out << "token";
    for (int p = 0; p < cfg.d / 2; ++p) phases_out << ",p" << p;
    phases_out << '\n';
    for (std::size_t i = 0; i < in.tokens.size(); ++i) {
      const RotationPlan plan = plan_for(in.tokens.tokens[i].index, enc_cfg);
      phases_out << i;
      for (double phase : plan.phases) phases_out << ',' << format_number(phase);
      phases_out << '\n';
    }
  }
  std::cout << "wrote " << (out_dir / "encoded.csv").string() << '\n';
  if (opt.write_phases) std::cout << "wrote " << (out_dir / "phases.csv").string() << '\n';
  return 0;
}

int run_score(const Options& opt) {
  const CliConfig cfg = resolve_config(opt);
  for (const std::string& w : cfg.warnings) std::cerr << "sope-kernel: " << w << '\n';
  const Inputs in = load_input(opt, cfg);
  const fs::path out_dir = prepare_out_dir(opt);
  const EncodingConfig enc_cfg = cfg.encoding();

  Matrix raw, p;
  AttentionReport report;
  try {
    raw = score_matrix(in.qk.queries, in.qk.keys, enc_cfg, true, opt.causal, opt.threads);
    p = softmax_rows(raw);
    report = bias_metrics(p, modality_tags(in.qk.queries), opt.topk_frac);
  } catch (const ValueError& e) {
    throw CliFailure{3, e.what()};
  } catch (const Error& e) {
    throw CliFailure{4, e.what()};
  }
  const MetricSummary summary = summarize(report);

  {
    std::ofstream raw_out = open_out(out_dir / "scores_raw.csv");
    write_matrix_csv(raw_out, raw);
    std::ofstream softmax_out = open_out(out_dir / "scores_softmax.csv");
    write_matrix_csv(softmax_out, p);
  }

  auto emit = [&](std::ostream& out, bool color) {
    write_report_header(out, "score", cfg, in.tokens, opt, color);
    out << "scheme: " << scheme_name(cfg.scheme) << '\n';
    out << "ratio: " << ratio_string(enc_cfg.allocation.ratio) << '\n';
    out << "topk: " << report.topk << '\n';
    out << "mean_row_entropy: " << format_number(summary.mean_row_entropy) << '\n';
    out << "mean_topk_mass: " << format_number(summary.mean_topk_mass) << '\n';
    out << "cross_modal_mass: " << format_number(summary.cross_modal_mass) << '\n';
  };
  std::ofstream report_out = open_out(out_dir / "report.txt");
  emit(report_out, false);
  emit(std::cout, color_allowed());
  return 0;
}

int run_analyze(const Options& opt) {
  const CliConfig cfg = resolve_config(opt);
  for (const std::string& w : cfg.warnings) std::cerr << "sope-kernel: " << w << '\n';
  const Inputs in = load_input(opt, cfg);
  const fs::path out_dir = prepare_out_dir(opt);

  const Scheme schemes[] = {Scheme::kRope, Scheme::kRope3d, Scheme::kSope};
  std::vector<SchemeMetrics> rows;
  for (Scheme scheme : schemes) {
    EncodingConfig enc = [&] {
      try {
        return cfg.encoding_for(scheme);
      } catch (const Error& e) {
        throw CliFailure{3, e.what()};
      }
    }();
    rows.push_back(run_scheme(in.qk, enc, opt));
  }

  std::ofstream csv = open_out(out_dir / "analyze.csv");
  csv << "scheme,mean_row_entropy,mean_topk_mass,cross_modal_mass\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    csv << scheme_name(schemes[i]) << ',' << format_number(rows[i].summary.mean_row_entropy)
        << ',' << format_number(rows[i].summary.mean_topk_mass) << ','
        << format_number(rows[i].summary.cross_modal_mass) << '\n';
  }

  auto emit = [&](std::ostream& out, bool color) {
    write_report_header(out, "analyze", cfg, in.tokens, opt, color);
    out << "topk: " << rows[0].topk << '\n';
    out << std::left << std::setw(8) << "scheme" << std::setw(18) << "mean_row_entropy"
        << std::setw(16) << "mean_topk_mass" << "cross_modal_mass" << '\n';
    for (std::size_t i = 0; i < rows.size(); ++i) {
      out << std::left << std::setw(8) << scheme_name(schemes[i]) << std::setw(18)
          << format_number(rows[i].summary.mean_row_entropy) << std::setw(16)
          << format_number(rows[i].summary.mean_topk_mass)
          << format_number(rows[i].summary.cross_modal_mass) << '\n';
    }
  };
  emit(std::cout, color_allowed());
  return 0;
}

int run_ablate(const Options& opt) {
  const CliConfig cfg = resolve_config(opt);
  for (const std::string& w : cfg.warnings) std::cerr << "sope-kernel: " << w << '\n';
  const Inputs in = load_input(opt, cfg);
  const fs::path out_dir = prepare_out_dir(opt);

  // parse the ratio list, e.g. "8:6:9:9,1:1:1:1"
  std::vector<std::string> labels;
  std::vector<std::array<int, 4>> ratios;
  std::stringstream list(opt.ratios);
  std::string item;
  while (std::getline(list, item, ',')) {
    std::array<int, 4> ratio{};
    int part = 0;
    std::stringstream fields(item);
    std::string field;
    while (std::getline(fields, field, ':')) {
      if (part >= 4) break;
      try {
        ratio[static_cast<std::size_t>(part)] = std::stoi(field);
      } catch (const std::exception&) {
        throw CliFailure{3, "ablate: ratio '" + item + "' is not of the form t:r:theta:phi"};
      }
      ++part;
    }
    if (part != 4 || ratio[0] < 0 || ratio[1] < 0 || ratio[2] < 0 || ratio[3] < 0) {
      throw CliFailure{3, "ablate: ratio '" + item + "' is not of the form t:r:theta:phi"};
    }
    labels.push_back(item);
    ratios.push_back(ratio);
  }
  if (ratios.empty()) throw CliFailure{3, "ablate: empty ratio list"};

  std::vector<SchemeMetrics> rows;
  for (const std::array<int, 4>& ratio : ratios) {
    EncodingConfig enc = [&] {
      try {
        CliConfig with_ratio = cfg;
        with_ratio.ratio = ratio;
        with_ratio.ratio_explicit = true;
        return with_ratio.encoding_for(Scheme::kSope);
      } catch (const Error& e) {
        throw CliFailure{3, e.what()};
      }
    }();
    rows.push_back(run_scheme(in.qk, enc, opt));
  }

  std::ofstream csv = open_out(out_dir / "ablate.csv");
  csv << "ratio,mean_row_entropy,mean_topk_mass,cross_modal_mass\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    csv << labels[i] << ',' << format_number(rows[i].summary.mean_row_entropy) << ','
        << format_number(rows[i].summary.mean_topk_mass) << ','
        << format_number(rows[i].summary.cross_modal_mass) << '\n';
  }

  auto emit = [&](std::ostream& out, bool color) {
    write_report_header(out, "ablate", cfg, in.tokens, opt, color);
    out << "topk: " << rows[0].topk << '\n';
    out << std::left << std::setw(12) << "ratio" << std::setw(18) << "mean_row_entropy"
        << std::setw(16) << "mean_topk_mass" << "cross_modal_mass" << '\n';
    for (std::size_t i = 0; i < rows.size(); ++i) {
      out << std::left << std::setw(12) << labels[i] << std::setw(18)
          << format_number(rows[i].summary.mean_row_entropy) << std::setw(16)
          << format_number(rows[i].summary.mean_topk_mass)
          << format_number(rows[i].summary.cross_modal_mass) << '\n';
    }
  };
  emit(std::cout, color_allowed());
  return 0;
}

void add_common(CLI::App* cmd, Options& opt) {
  cmd->add_option("--config", opt.config_path, "config file");
  cmd->add_option("--tokens", opt.tokens_path, "token file");
  cmd->add_option("--format", opt.format, "token file format")
      ->check(CLI::IsMember({"xyz", "ply"}));
  cmd->add_option("--scheme", opt.scheme, "override the configured scheme");
  cmd->add_option("--seed", opt.seed, "override the configured seed")
      ->each([&opt](const std::string&) { opt.seed_set = true; });
  cmd->add_option("--center", opt.center, "recenter coordinates before encoding")
      ->check(CLI::IsMember({"none", "centroid"}));
  cmd->add_option("--out", opt.out_dir, "output directory");
  cmd->add_option("--threads", opt.threads, "worker threads for row-parallel computation")
      ->check(CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"positional-encoding analysis kernels for 3D token sequences"};
  app.require_subcommand(1);
  Options opt;

  CLI::App* cmd_encode = app.add_subcommand("encode", "rotate token features and write CSV");
  add_common(cmd_encode, opt);
  cmd_encode->add_flag("--phases", opt.write_phases, "also write per-token pair phases");

  CLI::App* cmd_score = app.add_subcommand("score", "attention matrices and bias metrics");
  add_common(cmd_score, opt);
  cmd_score->add_flag("--causal", opt.causal, "apply a causal mask");
  cmd_score->add_option("--topk-frac", opt.topk_frac, "top-k fraction for the mass metric");

  CLI::App* cmd_analyze = app.add_subcommand("analyze", "compare rope, rope3d and sope");
  add_common(cmd_analyze, opt);
  cmd_analyze->add_flag("--causal", opt.causal, "apply a causal mask");
  cmd_analyze->add_option("--topk-frac", opt.topk_frac, "top-k fraction for the mass metric");

  CLI::App* cmd_ablate = app.add_subcommand("ablate", "sweep sope allocation ratios");
  add_common(cmd_ablate, opt);
  cmd_ablate->add_flag("--causal", opt.causal, "apply a causal mask");
  cmd_ablate->add_option("--topk-frac", opt.topk_frac, "top-k fraction for the mass metric");
  cmd_ablate->add_option("--ratios", opt.ratios, "comma-separated t:r:theta:phi ratios");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (cmd_encode->parsed()) return run_encode(opt);
    if (cmd_score->parsed()) return run_score(opt);
    if (cmd_analyze->parsed()) return run_analyze(opt);
    return run_ablate(opt);
  } catch (const CliFailure& failure) {
    std::cerr << "sope-kernel: error: " << failure.message << '\n';
    return failure.code;
  } catch (const Error& e) {
    std::cerr << "sope-kernel: internal error: " << e.what() << '\n';
    return 4;
  }
}
