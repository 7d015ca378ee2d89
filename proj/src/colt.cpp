#include "codenames/colt.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "codenames/errors.hpp"
#include "text.hpp"

#ifndef CODENAMES_DATA_DIR
#define CODENAMES_DATA_DIR "data"
#endif

namespace codenames {

double sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

double rate(const ColtWeights& w, std::span<const double, kNumOutcomes> x) {
  double s = 0.0;
  for (std::size_t i = 0; i < kNumOutcomes; ++i) s += w.weights[i] * x[i];
  return s;
}

double rate(const ColtWeights& w, const OutcomeDistribution& x) { return rate(w, x.span()); }

double win_probability(const ColtWeights& w, const OutcomeDistribution& x,
                       const OutcomeDistribution& y) {
  return sigmoid(rate(w, x) - rate(w, y));
}

ColtWeights read_weights(std::istream& in, const std::string& source) {
  ColtWeights w;
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  int next = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line = detail::trim(line);
    if (line.empty()) continue;
    if (!have_header) {
      const auto fields = detail::split_ws(line);
      if (fields.size() != 2 || fields[0] != "#colt-weights") {
        throw ParseError(source, line_no, "expected '#colt-weights <provenance>' header");
      }
      w.provenance = fields[1];
      have_header = true;
      continue;
    }
    if (line[0] == '#') continue;
    const auto fields = detail::split_ws(line);
    if (fields.size() != 2) throw ParseError(source, line_no, "expected 'label<TAB>weight'");
    if (next >= kNumOutcomes) throw ParseError(source, line_no, "more than 36 weights");
    int index = 0;
    try {
      index = outcome_index(fields[0]);
    } catch (const InvalidOutcome& e) {
      throw ParseError(source, line_no, e.what());
    }
    if (index != next) {
      throw ParseError(source, line_no,
                       "label " + fields[0] + " out of canonical order (expected " +
                           outcome_label(next) + ")");
    }
    const auto value = detail::parse_double(fields[1]);
    if (!value || !std::isfinite(*value)) throw ParseError(source, line_no, "bad weight '" + fields[1] + "'");
    w.weights[static_cast<std::size_t>(index)] = *value;
    ++next;
  }
  if (!have_header) throw ParseError(source, line_no, "missing header");
  if (next != kNumOutcomes) {
    throw ParseError(source, line_no, "expected 36 weights, found " + std::to_string(next));
  }
  return w;
}

ColtWeights load_weights(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open weights file " + path.string());
  return read_weights(in, path.string());
}

void write_weights(std::ostream& out, const ColtWeights& w) {
  out << "#colt-weights\t" << w.provenance << '\n';
  for (int i = 0; i < kNumOutcomes; ++i) {
    out << outcome_label(i) << '\t' << detail::format_double(w[i]) << '\n';
  }
}

void save_weights(const std::filesystem::path& path, const ColtWeights& w) {
  std::ofstream out(path);
  if (!out) throw InvalidInput("cannot write weights file " + path.string());
  write_weights(out, w);
}

std::filesystem::path default_weights_path() {
  if (const char* env = std::getenv("CODENAMES_WEIGHTS")) return env;
  return std::filesystem::path(CODENAMES_DATA_DIR) / "colt_weights.tsv";
}

ColtWeights shipped_weights() { return load_weights(default_weights_path()); }

}  // namespace codenames
