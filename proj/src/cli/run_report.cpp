#include "dprsvm/cli/run_report.hpp"

#include <cmath>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "dprsvm/errors.hpp"
#include "dprsvm/text.hpp"

namespace dprsvm::cli {

namespace {

using text::format_real;

std::string label_text(svm::Label l) { return l == svm::Label::positive ? "+1" : "-1"; }

svm::Label parse_label(std::string_view s, std::size_t line) {
  if (s == "+1") return svm::Label::positive;
  if (s == "-1") return svm::Label::negative;
  throw ParseError("bad label '" + std::string(s) + "'", line);
}

class Reader {
 public:
  explicit Reader(std::string_view bytes) : lines_(text::split_lines(bytes)) {}

  std::vector<std::string_view> fields(std::string_view key) {
    if (pos_ >= lines_.size()) throw ParseError("run report ends before '" + std::string(key) + "'");
    auto tokens = text::split_tokens(lines_[pos_]);
    ++pos_;
    if (tokens.empty() || tokens.front() != key) throw ParseError("expected '" + std::string(key) + "'", pos_);
    tokens.erase(tokens.begin());
    return tokens;
  }
  std::string_view one(std::string_view key) {
    auto f = fields(key);
    if (f.size() != 1) throw ParseError("'" + std::string(key) + "' takes one value", pos_);
    return f.front();
  }
  double real(std::string_view key) { return real_of(one(key)); }
  std::size_t count(std::string_view key) { return count_of(one(key)); }

  double real_of(std::string_view s) const {
    auto v = text::parse_real(s);
    if (!v) throw ParseError("bad number '" + std::string(s) + "'", pos_);
    if (!std::isfinite(*v)) throw NonFiniteError("non-finite number '" + std::string(s) + "'", pos_);
    return *v;
  }
  std::size_t count_of(std::string_view s) const {
    auto v = text::parse_int(s);
    if (!v || *v < 0) throw ParseError("bad count '" + std::string(s) + "'", pos_);
    return static_cast<std::size_t>(*v);
  }

  [[nodiscard]] bool done() const { return pos_ >= lines_.size() || (pos_ + 1 == lines_.size() && lines_[pos_].empty()); }
  std::string_view next() { return lines_[pos_++]; }
  [[nodiscard]] std::size_t line() const { return pos_; }

 private:
  std::vector<std::string_view> lines_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string_view to_string(RunMode m) {
  switch (m) {
    case RunMode::monolithic: return "monolithic";
    case RunMode::cascade: return "cascade";
    case RunMode::dpr: return "dpr";
  }
  return "?";
}

RunMode parse_run_mode(std::string_view s) {
  if (s == "monolithic") return RunMode::monolithic;
  if (s == "cascade") return RunMode::cascade;
  if (s == "dpr") return RunMode::dpr;
  throw ParseError("unknown mode '" + std::string(s) + "' (monolithic|cascade|dpr)");
}

std::string serialize_run_report(const RunReport& r) {
  std::string out = "run-report v1\n";
  out += "mode " + std::string(to_string(r.mode)) + "\n";
  out += "stages";
  for (const auto& s : r.stages) out += " " + s;
  out += "\nclock_hz " + format_real(r.clock_hz) + "\n";
  out += "precision " + r.precision + "\n";
  out += "port " + r.port + "\n";
  out += "policy " + r.policy + "\n";
  out += "timer " + std::string(r.timer ? "1" : "0") + "\n";
  out += "source " + r.source + "\n";
  out += "footprint " + fabric::format_footprint(r.footprint) + "\n";
  out += "power_w " + format_real(r.power_watts) + "\n";
  out += "worst_case_time_s " + format_real(r.worst_case_time_s) + "\n";
  out += "compute_time_s " + format_real(r.compute_time_s) + "\n";
  out += "config_time_s " + format_real(r.config_time_s) + "\n";
  out += "swaps " + std::to_string(r.swaps) + "\n";
  if (r.evaluation) {
    const auto& e = *r.evaluation;
    out += fmt::format("evaluation {} {} {} {}\n", e.tp, e.tn, e.fp, e.fn);
    out += "exit_histogram";
    for (auto h : e.exit_histogram) out += " " + std::to_string(h);
    out += "\n";
  } else {
    out += "evaluation none\n";
  }
  out += "results " + std::to_string(r.results.size()) + "\n";
  for (std::size_t i = 0; i < r.results.size(); ++i) {
    const auto& x = r.results[i];
    out += std::to_string(i) + " " + label_text(x.label) + " " + std::to_string(x.exit_stage) + " " +
           format_real(x.time_s) + " " + (x.truth ? label_text(*x.truth) : "?");
    for (double d : x.distances) out += " " + format_real(d);
    out += "\n";
  }
  return out;
}

RunReport parse_run_report(std::string_view bytes) {
  Reader in(bytes);
  if (in.done() || in.next() != "run-report v1") throw ParseError("expected 'run-report v1'", 1);
  RunReport r;
  r.mode = parse_run_mode(in.one("mode"));
  for (auto s : in.fields("stages")) r.stages.emplace_back(s);
  r.clock_hz = in.real("clock_hz");
  r.precision = std::string(in.one("precision"));
  r.port = std::string(in.one("port"));
  r.policy = std::string(in.one("policy"));
  r.timer = in.one("timer") == "1";
  r.source = std::string(in.one("source"));
  auto fp = in.fields("footprint");
  if (fp.size() != 5) throw ParseError("footprint needs 5 counts", in.line());
  std::array<std::int64_t, 5> counts{};
  for (std::size_t i = 0; i < 5; ++i) counts[i] = static_cast<std::int64_t>(in.count_of(fp[i]));
  r.footprint = fabric::ResourceFootprint::from_array(counts);
  r.power_watts = in.real("power_w");
  r.worst_case_time_s = in.real("worst_case_time_s");
  r.compute_time_s = in.real("compute_time_s");
  r.config_time_s = in.real("config_time_s");
  r.swaps = in.count("swaps");

  auto ev = in.fields("evaluation");
  if (ev.size() == 4) {
    cascade::EvaluationReport e;
    e.tp = in.count_of(ev[0]);
    e.tn = in.count_of(ev[1]);
    e.fp = in.count_of(ev[2]);
    e.fn = in.count_of(ev[3]);
    for (auto h : in.fields("exit_histogram")) e.exit_histogram.push_back(in.count_of(h));
    auto ratio = [](std::size_t a, std::size_t b) -> std::optional<double> {
      if (b == 0) return std::nullopt;
      return static_cast<double>(a) / static_cast<double>(b);
    };
    e.accuracy = ratio(e.tp + e.tn, e.total());
    e.sensitivity = ratio(e.tp, e.tp + e.fn);
    e.specificity = ratio(e.tn, e.tn + e.fp);
    r.evaluation = e;
  } else if (!(ev.size() == 1 && ev[0] == "none")) {
    throw ParseError("evaluation takes four counts or 'none'", in.line());
  }

  const auto n = in.count("results");
  for (std::size_t i = 0; i < n; ++i) {
    if (in.done()) throw ParseError("run report truncated in results");
    const auto tokens = text::split_tokens(in.next());
    if (tokens.size() < 6) throw ParseError("result line needs index, label, exit, time, truth, distances", in.line());
    if (in.count_of(tokens[0]) != i) throw ParseError("result index out of order", in.line());
    InstanceResult x{parse_label(tokens[1], in.line()), in.count_of(tokens[2]), in.real_of(tokens[3]), std::nullopt, {}};
    if (tokens[4] != "?") x.truth = parse_label(tokens[4], in.line());
    for (std::size_t t = 5; t < tokens.size(); ++t) x.distances.push_back(in.real_of(tokens[t]));
    if (x.exit_stage != x.distances.size()) throw StructuralError("result " + std::to_string(i) + " exit stage disagrees with distance count");
    r.results.push_back(std::move(x));
  }
  if (!in.done()) throw ParseError("trailing content after results", in.line() + 1);
  return r;
}

std::string run_results_csv(const RunReport& r) {
  std::string out = "index,label,exit_stage,time_us,truth";
  for (std::size_t k = 1; k <= r.stages.size(); ++k) out += ",distance_" + std::to_string(k);
  out += "\n";
  for (std::size_t i = 0; i < r.results.size(); ++i) {
    const auto& x = r.results[i];
    out += std::to_string(i) + "," + label_text(x.label) + "," + std::to_string(x.exit_stage) + "," +
           format_real(x.time_s * 1e6) + "," + (x.truth ? label_text(*x.truth) : "");
    for (std::size_t k = 0; k < r.stages.size(); ++k) {
      out += ",";
      if (k < x.distances.size()) out += format_real(x.distances[k]);
    }
    out += "\n";
  }
  return out;
}

std::string run_summary(const RunReport& r) {
  std::string out;
  out += fmt::format("mode        {}\n", to_string(r.mode));
  out += fmt::format("stages      {}\n", fmt::join(r.stages, " -> "));
  out += fmt::format("instances   {}\n", r.results.size());
  out += fmt::format("clock       {:g} MHz\n", r.clock_hz / 1e6);
  out += fmt::format("compute     {:.3f} us total, {:.3f} us worst case per instance\n", r.compute_time_s * 1e6,
                     r.worst_case_time_s * 1e6);
  if (r.mode == RunMode::dpr) {
    out += fmt::format("reconfig    {} partial swaps, {:.6f} s total configuration ({} port, {} policy)\n", r.swaps,
                       r.config_time_s, r.port, r.policy);
  }
  out += fmt::format("footprint   {} slices, {} LUT, {} LUT-RAM, {} BRAM, {} DSP\n", r.footprint.slices,
                     r.footprint.luts, r.footprint.lut_ram, r.footprint.bram, r.footprint.dsp);
  out += fmt::format("power       {:.2f} W\n", r.power_watts);
  if (r.evaluation) {
    const auto& e = *r.evaluation;
    auto pct = [](const std::optional<double>& v) { return v ? fmt::format("{:.2f}%", *v * 100) : std::string("n/a"); };
    out += fmt::format("confusion   TP {} TN {} FP {} FN {}\n", e.tp, e.tn, e.fp, e.fn);
    out += fmt::format("accuracy    {}  sensitivity {}  specificity {}\n", pct(e.accuracy), pct(e.sensitivity),
                       pct(e.specificity));
    out += fmt::format("exits       {}\n", fmt::join(e.exit_histogram, " "));
  }
  return out;
}

}  // namespace dprsvm::cli
