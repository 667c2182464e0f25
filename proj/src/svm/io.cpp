#include "dprsvm/svm/io.hpp"

#include <cmath>
#include <utility>

#include "dprsvm/errors.hpp"
#include "dprsvm/text.hpp"

namespace dprsvm::svm {

namespace {

constexpr std::size_t kShortHeaderLines = 10;
constexpr std::string_view kArtifactMagic = "svm-ac v1";

double finite_real(std::string_view token, std::size_t line, std::string_view what) {
  auto v = text::parse_real(token);
  if (!v) throw ParseError("cannot parse " + std::string(what) + " '" + std::string(token) + "'", line);
  if (!std::isfinite(*v)) throw NonFiniteError("non-finite " + std::string(what) + " '" + std::string(token) + "'", line);
  return *v;
}

std::int64_t header_int(std::string_view line, std::size_t lineno, std::string_view what) {
  auto tokens = text::split_tokens(text::strip_comment(line));
  if (tokens.size() != 1) throw ParseError("expected " + std::string(what), lineno);
  auto v = text::parse_int(tokens.front());
  if (!v) throw ParseError("expected integer " + std::string(what) + ", got '" + std::string(tokens.front()) + "'", lineno);
  return *v;
}

// "key value" with exactly one space.
std::string_view keyed_value(std::string_view line, std::string_view key, std::size_t lineno) {
  if (line.size() <= key.size() + 1 || line.substr(0, key.size()) != key || line[key.size()] != ' ') {
    throw ParseError("expected '" + std::string(key) + " <value>'", lineno);
  }
  return line.substr(key.size() + 1);
}

}  // namespace

SvmModel parse_model_file(std::string_view bytes, const std::string& name) {
  const auto lines = text::split_lines(bytes);
  if (lines.size() < kShortHeaderLines) {
    throw ParseError("model file has " + std::to_string(lines.size()) + " lines, header needs " +
                     std::to_string(kShortHeaderLines));
  }

  const auto kernel = header_int(lines[1], 2, "kernel type");
  if (kernel != 0) throw UnsupportedKernelError(static_cast<int>(kernel), 2);

  // Kernel parameters (unused by the linear kernel) occupy four lines, or five
  // when the file carries SVM-Light's own "-u" line; its comment gives it away.
  std::size_t header = kShortHeaderLines;
  if (lines[6].find("kernel parameter") != std::string_view::npos) header = kShortHeaderLines + 1;
  if (lines.size() < header) throw ParseError("model file header is incomplete");
  const std::size_t dim_line = header - 3;  // 1-based line numbers of the trailing header fields
  const std::size_t sv_line = header - 1;
  const std::size_t bias_line = header;

  const auto dimension = header_int(lines[dim_line - 1], dim_line, "highest feature index");
  if (dimension <= 0) throw ParseError("highest feature index must be positive", dim_line);
  (void)header_int(lines[dim_line], dim_line + 1, "number of training documents");
  const auto sv_plus_one = header_int(lines[sv_line - 1], sv_line, "number of support vectors plus 1");
  if (sv_plus_one < 1) throw ParseError("number of support vectors plus 1 must be >= 1", sv_line);
  const auto declared_svs = static_cast<std::size_t>(sv_plus_one - 1);
  if (declared_svs == 0) throw StructuralError("model declares zero support vectors");

  auto bias_tokens = text::split_tokens(text::strip_comment(lines[bias_line - 1]));
  if (bias_tokens.size() != 1) throw ParseError("expected threshold b", bias_line);
  const double bias = finite_real(bias_tokens.front(), bias_line, "threshold");

  std::vector<SupportVector> svs;
  svs.reserve(declared_svs);
  for (std::size_t i = header; i < lines.size(); ++i) {
    const std::size_t lineno = i + 1;
    const auto body = text::strip_comment(lines[i]);
    if (body.empty()) continue;
    const auto tokens = text::split_tokens(body);
    const double coefficient = finite_real(tokens.front(), lineno, "alpha*y");
    if (coefficient == 0.0) throw ParseError("support vector coefficient is zero", lineno);

    VectorX<double> dense = VectorX<double>::Zero(dimension);
    std::int64_t last_index = 0;
    for (std::size_t t = 1; t < tokens.size(); ++t) {
      const auto tok = tokens[t];
      const auto colon = tok.find(':');
      if (colon == std::string_view::npos) throw ParseError("expected <index>:<value>, got '" + std::string(tok) + "'", lineno);
      const auto idx = text::parse_int(tok.substr(0, colon));
      if (!idx) throw ParseError("bad feature index in '" + std::string(tok) + "'", lineno);
      if (*idx <= last_index) throw ParseError("feature indices must be ascending and >= 1", lineno);
      if (*idx > dimension) {
        throw ParseError("feature index " + std::to_string(*idx) + " exceeds highest feature index " +
                             std::to_string(dimension), lineno);
      }
      dense[*idx - 1] = finite_real(tok.substr(colon + 1), lineno, "feature value");
      last_index = *idx;
    }
    svs.emplace_back(coefficient, FeatureVector(std::move(dense)));
  }

  if (svs.size() != declared_svs) {
    throw StructuralError("model declares " + std::to_string(declared_svs) + " support vectors, found " +
                          std::to_string(svs.size()));
  }
  return SvmModel(name, dimension, bias, std::move(svs));
}

std::string serialize_model_file(const SvmModel& model) {
  const auto nsv = model.support_vectors().size();
  std::string out;
  out += "SVM-light Version V6.02\n";
  out += "0 # kernel type\n";
  out += "3 # kernel parameter -d\n";
  out += "1 # kernel parameter -g\n";
  out += "1 # kernel parameter -s\n";
  out += "1 # kernel parameter -r\n";
  out += "empty# kernel parameter -u\n";
  out += std::to_string(model.dimension()) + " # highest feature index\n";
  out += std::to_string(nsv) + " # number of training documents\n";
  out += std::to_string(nsv + 1) + " # number of support vectors plus 1\n";
  out += text::format_real(model.bias()) + " # threshold b, each following line is a SV (starting with alpha*y)\n";
  for (const auto& sv : model.support_vectors()) {
    out += text::format_real(sv.coefficient);
    for (Index j = 0; j < model.dimension(); ++j) {
      if (sv.features[j] == 0.0) continue;
      out += ' ';
      out += std::to_string(j + 1);
      out += ':';
      out += text::format_real(sv.features[j]);
    }
    out += " #\n";
  }
  return out;
}

std::string serialize_weight_artifact(const WeightArtifact& w) {
  std::string out;
  out += kArtifactMagic;
  out += "\nname " + w.name();
  out += "\nfeatures " + std::to_string(w.dimension());
  out += "\nbias " + text::format_real(w.bias()) + "\n";
  for (Index j = 0; j < w.dimension(); ++j) {
    out += text::format_real(w.ac()[j]);
    out += '\n';
  }
  return out;
}

WeightArtifact parse_weight_artifact(std::string_view bytes) {
  auto lines = text::split_lines(bytes);
  while (!lines.empty() && lines.back().empty()) lines.pop_back();
  if (lines.size() < 4) throw ParseError("weight artifact header is incomplete");
  if (lines[0] != kArtifactMagic) throw ParseError("expected '" + std::string(kArtifactMagic) + "'", 1);

  const auto name = keyed_value(lines[1], "name", 2);
  if (!text::is_identifier(name)) throw ParseError("bad artifact name '" + std::string(name) + "'", 2);
  const auto features = text::parse_int(keyed_value(lines[2], "features", 3));
  if (!features || *features <= 0) throw ParseError("features must be a positive integer", 3);
  const double bias = finite_real(keyed_value(lines[3], "bias", 4), 4, "bias");

  const auto body = lines.size() - 4;
  if (body != static_cast<std::size_t>(*features)) {
    throw StructuralError("weight artifact header declares " + std::to_string(*features) + " features, body has " +
                          std::to_string(body) + " coefficients");
  }
  VectorX<double> ac(*features);
  for (Index j = 0; j < *features; ++j) {
    const auto lineno = static_cast<std::size_t>(j) + 5;
    ac[j] = finite_real(text::trim(lines[lineno - 1]), lineno, "coefficient");
  }
  return WeightArtifact(std::string(name), std::move(ac), bias);
}

std::vector<Instance> parse_instance_file(std::string_view bytes, Index expected_dim, InstanceMode mode) {
  if (expected_dim <= 0) throw DimensionError("expected dimension must be positive");
  std::vector<Instance> out;
  const auto lines = text::split_lines(bytes);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::size_t lineno = i + 1;
    const auto body = text::strip_comment(lines[i]);
    if (body.empty()) continue;
    auto tokens = text::split_tokens(body, ", \t");

    std::optional<Label> label;
    std::size_t first = 0;
    if (mode == InstanceMode::labeled) {
      const auto raw = text::parse_int(tokens.front());
      if (!raw || (*raw != 1 && *raw != -1)) {
        throw ParseError("expected +1 or -1 label, got '" + std::string(tokens.front()) + "'", lineno);
      }
      label = *raw == 1 ? Label::positive : Label::negative;
      first = 1;
    }
    const auto count = tokens.size() - first;
    if (count != static_cast<std::size_t>(expected_dim)) {
      throw DimensionError("line " + std::to_string(lineno) + ": expected " + std::to_string(expected_dim) +
                           " values, found " + std::to_string(count));
    }
    VectorX<double> values(expected_dim);
    for (std::size_t t = first; t < tokens.size(); ++t) {
      values[static_cast<Index>(t - first)] = finite_real(tokens[t], lineno, "feature value");
    }
    out.push_back({label, FeatureVector(std::move(values))});
  }
  return out;
}

std::string serialize_instances(std::span<const Instance> instances, InstanceMode mode) {
  std::string out;
  for (const auto& inst : instances) {
    bool first = true;
    if (mode == InstanceMode::labeled) {
      if (!inst.label) throw StructuralError("labeled serialization of an unlabeled instance");
      out += *inst.label == Label::positive ? "+1" : "-1";
      first = false;
    }
    for (Index j = 0; j < inst.features.dimension(); ++j) {
      if (!first) out += ", ";
      out += text::format_real(inst.features[j]);
      first = false;
    }
    out += '\n';
  }
  return out;
}

}  // namespace dprsvm::svm
