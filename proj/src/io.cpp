#include "sope/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>

#include "sope/geometry.hpp"
#include "sope/rng.hpp"

namespace sope {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return {};
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_ws(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  std::string field;
  while (in >> field) out.push_back(field);
  return out;
}

[[noreturn]] void fail(const std::string& name, int line_no, const std::string& message) {
  throw ParseError(name + ":" + std::to_string(line_no) + ": " + message);
}

double parse_double(const std::string& s, const std::string& name, int line_no) {
  double value = 0.0;
  const char* begin = s.data();
  const char* end = begin + s.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end) fail(name, line_no, "expected a number, got '" + s + "'");
  return value;
}

long long parse_int(const std::string& s, const std::string& name, int line_no) {
  long long value = 0;
  const char* begin = s.data();
  const char* end = begin + s.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end) {
    fail(name, line_no, "expected an integer, got '" + s + "'");
  }
  return value;
}

// "[a, b, c, d]" -> the four comma-separated entries.
std::vector<std::string> parse_list(const std::string& s, const std::string& name, int line_no) {
  const std::string t = trim(s);
  if (t.size() < 2 || t.front() != '[' || t.back() != ']') {
    fail(name, line_no, "expected a bracketed list like [a, b, c, d], got '" + s + "'");
  }
  std::vector<std::string> out;
  std::string inner = t.substr(1, t.size() - 2);
  std::size_t pos = 0;
  while (true) {
    const std::size_t comma = inner.find(',', pos);
    out.push_back(trim(inner.substr(pos, comma - pos)));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

TokenSequence load_xyz(std::istream& in, const std::string& name) {
  TokenSequence seq;
  std::string line;
  int line_no = 0;
  int feature_len = -1;
  while (std::getline(in, line)) {
    ++line_no;
    const std::vector<std::string> fields = split_ws(line);
    if (fields.empty()) continue;
    if (fields.size() < 5) {
      fail(name, line_no,
           "expected `t x y z modality [features...]`, got " + std::to_string(fields.size()) +
               " fields");
    }
    Modality modality;
    if (fields[4] == "p") {
      modality = Modality::kPointCloud;
    } else if (fields[4] == "t") {
      modality = Modality::kText;
    } else {
      fail(name, line_no, "modality must be 'p' or 't', got '" + fields[4] + "'");
    }
    const int nfeat = static_cast<int>(fields.size()) - 5;
    if (feature_len < 0) {
      feature_len = nfeat;
    } else if (nfeat != feature_len) {
      fail(name, line_no,
           "feature length " + std::to_string(nfeat) + " differs from earlier records (" +
               std::to_string(feature_len) + ")");
    }
    Token token;
    try {
      token.index = index_from_cartesian(
          parse_double(fields[0], name, line_no), parse_double(fields[1], name, line_no),
          parse_double(fields[2], name, line_no), parse_double(fields[3], name, line_no),
          modality);
    } catch (const ValueError& e) {
      fail(name, line_no, e.what());
    }
    token.features.reserve(static_cast<std::size_t>(nfeat));
    for (int f = 0; f < nfeat; ++f) {
      const double value = parse_double(fields[static_cast<std::size_t>(5 + f)], name, line_no);
      if (!std::isfinite(value)) fail(name, line_no, "feature values must be finite");
      token.features.push_back(value);
    }
    seq.tokens.push_back(std::move(token));
  }
  return seq;
}

struct PlyProperty {
  std::string type;
  std::string name;
  bool is_list = false;
};

struct PlyElement {
  std::string name;
  long count = 0;
  std::vector<PlyProperty> properties;
};

bool is_float_type(const std::string& type) {
  return type == "float" || type == "float32" || type == "double" || type == "float64";
}

TokenSequence load_ply(std::istream& in, const std::string& name) {
  std::string line;
  int line_no = 0;

  auto next_line = [&](const char* what) {
    if (!std::getline(in, line)) fail(name, line_no, std::string("unexpected end of file in ") + what);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
  };

  next_line("header");
  if (trim(line) != "ply") fail(name, line_no, "not a PLY file (missing 'ply' magic)");

  std::vector<PlyElement> elements;
  bool ascii = false;
  bool header_done = false;
  while (!header_done) {
    next_line("header");
    const std::vector<std::string> fields = split_ws(line);
    if (fields.empty()) continue;
    const std::string& keyword = fields[0];
    if (keyword == "comment" || keyword == "obj_info") continue;
    if (keyword == "format") {
      if (fields.size() != 3 || fields[1] != "ascii") {
        fail(name, line_no, "only `format ascii 1.0` is supported, got '" + trim(line) + "'");
      }
      ascii = true;
    } else if (keyword == "element") {
      if (fields.size() != 3) fail(name, line_no, "malformed element declaration");
      elements.push_back(
          PlyElement{fields[1], parse_int(fields[2], name, line_no), {}});
      if (elements.back().count < 0) fail(name, line_no, "negative element count");
    } else if (keyword == "property") {
      if (elements.empty()) fail(name, line_no, "property before any element");
      PlyProperty prop;
      if (fields.size() >= 2 && fields[1] == "list") {
        if (fields.size() != 5) fail(name, line_no, "malformed list property");
        prop = PlyProperty{fields[3], fields[4], true};
      } else if (fields.size() == 3) {
        prop = PlyProperty{fields[1], fields[2], false};
      } else {
        fail(name, line_no, "malformed property declaration");
      }
      elements.back().properties.push_back(prop);
    } else if (keyword == "end_header") {
      header_done = true;
    } else {
      fail(name, line_no, "unknown header keyword '" + keyword + "'");
    }
  }
  if (!ascii) fail(name, line_no, "header declares no `format ascii 1.0` line");

  const auto vertex = std::find_if(elements.begin(), elements.end(),
                                   [](const PlyElement& e) { return e.name == "vertex"; });
  if (vertex == elements.end()) fail(name, line_no, "no vertex element declared");
  int xi = -1, yi = -1, zi = -1;
  for (std::size_t p = 0; p < vertex->properties.size(); ++p) {
    const PlyProperty& prop = vertex->properties[p];
    if (prop.is_list) {
      fail(name, line_no, "list property '" + prop.name + "' on vertex element is not supported");
    }
    if (prop.name == "x" || prop.name == "y" || prop.name == "z") {
      if (!is_float_type(prop.type)) {
        fail(name, line_no,
             "vertex property " + prop.name + " must be a float type, got '" + prop.type + "'");
      }
      (prop.name == "x" ? xi : prop.name == "y" ? yi : zi) = static_cast<int>(p);
    }
  }
  if (xi < 0 || yi < 0 || zi < 0) fail(name, line_no, "vertex element must declare x, y and z");

  TokenSequence seq;
  long t = 0;
  for (const PlyElement& element : elements) {
    for (long row = 0; row < element.count; ++row) {
      next_line(("element " + element.name).c_str());
      if (element.name != "vertex") continue;
      const std::vector<std::string> fields = split_ws(line);
      if (fields.size() != element.properties.size()) {
        fail(name, line_no,
             "vertex row has " + std::to_string(fields.size()) + " values, expected " +
                 std::to_string(element.properties.size()));
      }
      Token token;
      try {
        token.index = index_from_cartesian(
            static_cast<double>(t),
            parse_double(fields[static_cast<std::size_t>(xi)], name, line_no),
            parse_double(fields[static_cast<std::size_t>(yi)], name, line_no),
            parse_double(fields[static_cast<std::size_t>(zi)], name, line_no),
            Modality::kPointCloud);
      } catch (const ValueError& e) {
        fail(name, line_no, e.what());
      }
      seq.tokens.push_back(std::move(token));
      ++t;
    }
  }
  return seq;
}

}  // namespace

TokenSequence load_tokens(std::istream& in, TokenFormat format, const std::string& name) {
  return format == TokenFormat::kXyzTokens ? load_xyz(in, name) : load_ply(in, name);
}

TokenSequence load_tokens(const std::filesystem::path& path, TokenFormat format) {
  std::ifstream in(path);
  if (!in) throw ParseError(path.string() + ": cannot open file");
  return load_tokens(in, format, path.string());
}

EncodingConfig CliConfig::encoding_for(Scheme s) const {
  EncodingConfig enc;
  enc.scheme = s;
  enc.d = d;
  enc.base = base;
  enc.scale = scale;
  enc.wrap_azimuth = wrap_azimuth;
  const std::array<int, 4> effective =
      s == Scheme::kRope ? default_ratio(Scheme::kRope)
                         : (ratio_explicit ? ratio : default_ratio(s));
  enc.allocation = allocate_bands(effective, d);
  return enc;
}

std::string scheme_name(Scheme scheme) {
  switch (scheme) {
    case Scheme::kRope:
      return "rope";
    case Scheme::kRope3d:
      return "rope3d";
    case Scheme::kSope:
      return "sope";
  }
  return "?";
}

Scheme parse_scheme(const std::string& name) {
  if (name == "rope") return Scheme::kRope;
  if (name == "rope3d") return Scheme::kRope3d;
  if (name == "sope") return Scheme::kSope;
  throw ParseError("unknown scheme '" + name + "' (expected rope, rope3d or sope)");
}

namespace {

bool parse_bool(const std::string& s, const std::string& name, int line_no) {
  if (s == "true") return true;
  if (s == "false") return false;
  fail(name, line_no, "expected true or false, got '" + s + "'");
}

}  // namespace

CliConfig load_config(std::istream& in, const std::string& name) {
  CliConfig cfg;
  std::set<std::string> seen;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string stripped = trim(line);
    if (stripped.empty()) continue;
    const std::size_t eq = stripped.find('=');
    if (eq == std::string::npos) fail(name, line_no, "expected `key = value`");
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    if (!seen.insert(key).second) fail(name, line_no, "duplicate key '" + key + "'");

    if (key == "scheme") {
      try {
        cfg.scheme = parse_scheme(value);
      } catch (const ParseError& e) {
        fail(name, line_no, e.what());
      }
    } else if (key == "d") {
      const long long d = parse_int(value, name, line_no);
      if (d < 2 || d % 2 != 0 || d > 1 << 20) {
        fail(name, line_no, "d must be a positive even integer, got '" + value + "'");
      }
      cfg.d = static_cast<int>(d);
    } else if (key == "base") {
      cfg.base = parse_double(value, name, line_no);
      if (!(cfg.base > 1.0)) fail(name, line_no, "base must be > 1, got '" + value + "'");
    } else if (key == "ratio") {
      const std::vector<std::string> items = parse_list(value, name, line_no);
      if (items.size() != 4) {
        fail(name, line_no, "ratio must have four entries (t, r, theta, phi)");
      }
      for (std::size_t i = 0; i < 4; ++i) {
        const long long entry = parse_int(items[i], name, line_no);
        if (entry < 0) fail(name, line_no, "ratio entries must be nonnegative");
        cfg.ratio[i] = static_cast<int>(entry);
      }
      cfg.ratio_explicit = true;
    } else if (key == "scale.enabled") {
      cfg.scale.enabled = parse_bool(value, name, line_no);
    } else if (key == "scale.periods") {
      const std::vector<std::string> items = parse_list(value, name, line_no);
      if (items.size() != 4) {
        fail(name, line_no, "scale.periods must have four entries (t, r, theta, phi)");
      }
      double periods[4];
      for (std::size_t i = 0; i < 4; ++i) {
        periods[i] = parse_double(items[i], name, line_no);
        if (!(periods[i] > 0.0)) fail(name, line_no, "periods must be positive");
      }
      cfg.scale.period_t = periods[0];
      cfg.scale.period_r = periods[1];
      cfg.scale.period_theta = periods[2];
      cfg.scale.period_phi = periods[3];
    } else if (key == "wrap_azimuth") {
      cfg.wrap_azimuth = parse_bool(value, name, line_no);
    } else if (key == "seed") {
      std::uint64_t seed = 0;
      const char* begin = value.data();
      const char* end = begin + value.size();
      const auto [ptr, ec] = std::from_chars(begin, end, seed);
      if (ec != std::errc{} || ptr != end) {
        fail(name, line_no, "seed must be an unsigned integer, got '" + value + "'");
      }
      cfg.seed = seed;
    } else {
      fail(name, line_no, "unknown key '" + key + "'");
    }
  }

  if (cfg.scheme == Scheme::kRope && cfg.ratio_explicit) {
    cfg.warnings.push_back("warning: ratio is ignored for scheme rope");
  }
  (void)base_angles(cfg.d, cfg.base);  // validates d and base together
  (void)cfg.encoding();                // surfaces indivisible-ratio errors at load time
  return cfg;
}

CliConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path.string() + ": cannot open file");
  return load_config(in, path.string());
}

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (x == 0.0) x = 0.0;  // normalize -0

  char buf[40];
  std::snprintf(buf, sizeof buf, "%.11e", x);
  const std::string s(buf);
  const bool neg = s[0] == '-';
  const std::size_t first = neg ? 1 : 0;
  // "d.ddddddddddde[+-]XX": 12 digits of mantissa and a decimal exponent.
  std::string digits;
  digits += s[first];
  digits += s.substr(first + 2, 11);
  const int exp10 = std::stoi(s.substr(s.find('e') + 1));

  std::string out = neg ? "-" : "";
  if (exp10 >= 11) {
    out += digits;
    out.append(static_cast<std::size_t>(exp10 - 11), '0');
  } else if (exp10 >= 0) {
    out += digits.substr(0, static_cast<std::size_t>(exp10 + 1));
    out += '.';
    out += digits.substr(static_cast<std::size_t>(exp10 + 1));
  } else {
    out += "0.";
    out.append(static_cast<std::size_t>(-exp10 - 1), '0');
    out += digits;
  }
  return out;
}

void write_matrix_csv(std::ostream& out, const Matrix& m) {
  for (const std::vector<double>& row : m) {
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (j != 0) out << ',';
      out << format_number(row[j]);
    }
    out << '\n';
  }
}

QueryKey make_query_key(const TokenSequence& tokens, std::uint64_t seed, int d) {
  QueryKey qk;
  qk.queries = tokens;
  qk.keys = tokens;
  for (std::size_t i = 0; i < tokens.tokens.size(); ++i) {
    const std::vector<double>& features = tokens.tokens[i].features;
    if (features.empty()) {
      qk.queries.tokens[i].features = synth_features(seed, 2 * i, d);
      qk.keys.tokens[i].features = synth_features(seed, 2 * i + 1, d);
    } else if (static_cast<int>(features.size()) != d) {
      throw DimensionError("token " + std::to_string(i) + " carries " +
                           std::to_string(features.size()) + " features but d = " +
                           std::to_string(d));
    }
  }
  return qk;
}

void recenter_centroid(TokenSequence& tokens) {
  double cx = 0.0, cy = 0.0, cz = 0.0;
  std::size_t count = 0;
  for (const Token& token : tokens.tokens) {
    if (token.index.modality != Modality::kPointCloud) continue;
    cx += token.index.x;
    cy += token.index.y;
    cz += token.index.z;
    ++count;
  }
  if (count == 0) return;
  cx /= static_cast<double>(count);
  cy /= static_cast<double>(count);
  cz /= static_cast<double>(count);
  for (Token& token : tokens.tokens) {
    if (token.index.modality != Modality::kPointCloud) continue;
    token.index = index_from_cartesian(token.index.t, token.index.x - cx, token.index.y - cy,
                                       token.index.z - cz, Modality::kPointCloud);
  }
}

}  // namespace sope
