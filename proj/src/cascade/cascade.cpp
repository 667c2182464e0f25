#include "dprsvm/cascade/cascade.hpp"

#include <algorithm>
#include <filesystem>
#include <set>
#include <thread>
#include <utility>

#include "dprsvm/errors.hpp"
#include "dprsvm/svm/decision.hpp"
#include "dprsvm/text.hpp"

namespace dprsvm::cascade {

CascadeSpec::CascadeSpec(std::vector<CascadeStage> stages) : stages_(std::move(stages)) {
  if (stages_.empty()) throw StructuralError("cascade needs at least one stage");
  std::set<std::string> names;
  for (const auto& s : stages_) {
    if (!text::is_identifier(s.name)) throw StructuralError("stage name '" + s.name + "' is not an identifier");
    if (!names.insert(s.name).second) throw StructuralError("duplicate stage name '" + s.name + "'");
    if (s.weights.dimension() != stages_.front().weights.dimension()) {
      throw DimensionError("stage '" + s.name + "' has dimension " + std::to_string(s.weights.dimension()) +
                           ", stage '" + stages_.front().name + "' has " +
                           std::to_string(stages_.front().weights.dimension()));
    }
  }
}

CascadeResult cascade_classify(const CascadeSpec& spec, const svm::FeatureVector& x, svm::Precision precision) {
  CascadeResult result{svm::Label::negative, 0, {}};
  result.per_stage_distances.reserve(spec.size());
  for (std::size_t k = 0; k < spec.size(); ++k) {
    const auto outcome = svm::classify(spec.stages()[k].weights, x, precision);
    result.per_stage_distances.push_back(outcome.distance);
    result.exit_stage = k + 1;
    if (outcome.label == svm::Label::positive) {
      result.label = svm::Label::positive;
      break;
    }
  }
  return result;
}

namespace {

template <typename Get>
std::vector<CascadeResult> run_batch(const CascadeSpec& spec, std::size_t n, Get get, const BatchOptions& options) {
  for (std::size_t i = 0; i < n; ++i) {
    if (get(i).dimension() != spec.dimension()) {
      throw DimensionError("instance " + std::to_string(i) + " has dimension " + std::to_string(get(i).dimension()) +
                           ", cascade expects " + std::to_string(spec.dimension()));
    }
  }
  std::vector<CascadeResult> out(n);
  unsigned threads = options.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : options.threads;
  constexpr std::size_t kMinPerThread = 256;
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(1, n / kMinPerThread)));

  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) out[i] = cascade_classify(spec, get(i), options.precision);
  };
  if (threads <= 1) {
    work(0, n);
    return out;
  }
  std::vector<std::jthread> pool;
  const std::size_t chunk = (n + threads - 1) / threads;
  for (std::size_t begin = 0; begin < n; begin += chunk) pool.emplace_back(work, begin, std::min(n, begin + chunk));
  pool.clear();
  return out;
}

}  // namespace

std::vector<CascadeResult> cascade_classify_batch(const CascadeSpec& spec, std::span<const svm::FeatureVector> instances,
                                                  const BatchOptions& options) {
  return run_batch(spec, instances.size(), [&](std::size_t i) -> const svm::FeatureVector& { return instances[i]; },
                   options);
}

std::vector<CascadeResult> cascade_classify_batch(const CascadeSpec& spec, std::span<const svm::Instance> instances,
                                                  const BatchOptions& options) {
  return run_batch(
      spec, instances.size(), [&](std::size_t i) -> const svm::FeatureVector& { return instances[i].features; },
      options);
}

EvaluationReport tally(std::span<const svm::Label> truth, std::span<const CascadeResult> results, std::size_t num_stages) {
  if (truth.size() != results.size()) throw StructuralError("label and result counts differ");
  EvaluationReport r;
  r.exit_histogram.assign(num_stages, 0);
  for (std::size_t i = 0; i < truth.size(); ++i) {
    const bool actual = truth[i] == svm::Label::positive;
    const bool predicted = results[i].label == svm::Label::positive;
    if (actual && predicted) ++r.tp;
    else if (!actual && !predicted) ++r.tn;
    else if (!actual && predicted) ++r.fp;
    else ++r.fn;
    if (results[i].exit_stage == 0 || results[i].exit_stage > num_stages) {
      throw StructuralError("exit stage out of range for instance " + std::to_string(i));
    }
    ++r.exit_histogram[results[i].exit_stage - 1];
  }
  auto ratio = [](std::size_t num, std::size_t den) -> std::optional<double> {
    if (den == 0) return std::nullopt;
    return static_cast<double>(num) / static_cast<double>(den);
  };
  r.accuracy = ratio(r.tp + r.tn, r.total());
  r.sensitivity = ratio(r.tp, r.tp + r.fn);
  r.specificity = ratio(r.tn, r.tn + r.fp);
  return r;
}

EvaluationReport evaluate(const CascadeSpec& spec, std::span<const svm::Instance> labeled, const BatchOptions& options) {
  std::vector<svm::Label> truth;
  truth.reserve(labeled.size());
  for (std::size_t i = 0; i < labeled.size(); ++i) {
    if (!labeled[i].label) throw StructuralError("instance " + std::to_string(i) + " has no label");
    truth.push_back(*labeled[i].label);
  }
  const auto results = cascade_classify_batch(spec, labeled, options);
  return tally(truth, results, spec.size());
}

std::vector<CascadeFileEntry> parse_cascade_file(std::string_view bytes) {
  const auto lines = text::split_lines(bytes);
  std::vector<CascadeFileEntry> entries;
  bool seen_magic = false;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto body = text::strip_comment(lines[i]);
    if (body.empty()) continue;
    if (!seen_magic) {
      if (body != "cascade v1") throw ParseError("expected 'cascade v1'", i + 1);
      seen_magic = true;
      continue;
    }
    const auto tokens = text::split_tokens(body);
    if (tokens.size() != 3 || tokens[0] != "stage") throw ParseError("expected 'stage <name> <path>'", i + 1);
    entries.push_back({std::string(tokens[1]), std::string(tokens[2])});
  }
  if (!seen_magic) throw ParseError("empty cascade file");
  if (entries.empty()) throw StructuralError("cascade file lists no stages");
  return entries;
}

std::string serialize_cascade_file(std::span<const CascadeFileEntry> entries) {
  std::string out = "cascade v1\n";
  for (const auto& e : entries) out += "stage " + e.name + " " + e.artifact_path + "\n";
  return out;
}

CascadeSpec load_cascade(const std::string& path) {
  const auto entries = parse_cascade_file(text::read_file(path));
  const auto dir = std::filesystem::path(path).parent_path();
  std::vector<CascadeStage> stages;
  for (const auto& e : entries) {
    std::filesystem::path p(e.artifact_path);
    if (p.is_relative()) p = dir / p;
    stages.push_back({e.name, svm::parse_weight_artifact(text::read_file(p.string()))});
  }
  return CascadeSpec(std::move(stages));
}

}  // namespace dprsvm::cascade
