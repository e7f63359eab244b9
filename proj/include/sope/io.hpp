#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>

#include "sope/attention.hpp"
#include "sope/sope.hpp"

namespace sope {

enum class TokenFormat { kXyzTokens, kPlyAscii };

// xyz_tokens: one record per line, whitespace-separated:
//   t x y z modality [f0 ... f_{d-1}]
// with modality 'p' (point cloud) or 't' (text). Feature length, when
// present, must be uniform across the file.
//
// ply_ascii: ASCII PLY whose vertex element declares float x, y, z.
// Vertices become point-cloud tokens with t assigned in read (raster)
// order. Extra scalar vertex properties are skipped; list properties on
// the vertex element are rejected.
TokenSequence load_tokens(const std::filesystem::path& path, TokenFormat format);
TokenSequence load_tokens(std::istream& in, TokenFormat format, const std::string& name);

// Parsed config file plus everything the CLI layers on top of an
// EncodingConfig. Flat `key = value` lines, `#` comments; keys: scheme, d,
// base, ratio, scale.enabled, scale.periods, wrap_azimuth, seed. Lists use
// `[a, b, c, d]` in component order t, r, theta, phi. Unknown or duplicate
// keys are errors.
struct CliConfig {
  Scheme scheme = Scheme::kSope;
  int d = 128;
  double base = 10000.0;
  std::array<int, 4> ratio = {24, 2, 3, 3};
  bool ratio_explicit = false;
  ScaleConfig scale;
  bool wrap_azimuth = false;
  std::uint64_t seed = 0;
  std::vector<std::string> warnings;

  // Validated encoding for the given scheme: an explicit ratio applies to
  // any banded scheme, otherwise the scheme's default; vanilla RoPE always
  // routes everything through t.
  EncodingConfig encoding_for(Scheme s) const;
  EncodingConfig encoding() const { return encoding_for(scheme); }
};

CliConfig load_config(const std::filesystem::path& path);
CliConfig load_config(std::istream& in, const std::string& name);

std::string scheme_name(Scheme scheme);
Scheme parse_scheme(const std::string& name);

// 12 significant digits in plain decimal notation (never scientific), so
// golden files compare exactly. -0 normalizes to 0; non-finite values
// print as nan/inf/-inf.
std::string format_number(double x);

void write_matrix_csv(std::ostream& out, const Matrix& m);

struct QueryKey {
  TokenSequence queries;
  TokenSequence keys;
};

// Feature vectors for scoring. Tokens without features get independent
// query and key draws from the pinned counter generator (token i uses
// stream rows 2i and 2i+1); file-supplied features are validated against d
// and shared between the two roles.
QueryKey make_query_key(const TokenSequence& tokens, std::uint64_t seed, int d);

// Subtract the centroid of the point-cloud tokens from every point-cloud
// token and rebuild their spherical forms. Text tokens stay at the origin.
void recenter_centroid(TokenSequence& tokens);

}  // namespace sope
