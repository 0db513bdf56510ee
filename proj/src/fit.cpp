#include "fidsim/fit.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <sstream>
#include <string>

namespace fidsim {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_double(const std::string& text, const char* field, int line) {
  std::size_t pos = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &pos);
  } catch (const std::exception&) {
    throw ValidationError(field, "line " + std::to_string(line) + ": not a number: '" + text + "'");
  }
  if (pos != text.size() || !std::isfinite(value))
    throw ValidationError(field, "line " + std::to_string(line) + ": not a finite number: '" + text + "'");
  return value;
}

int parse_int(const std::string& text, const char* field, int line) {
  std::size_t pos = 0;
  long value = 0;
  try {
    value = std::stol(text, &pos);
  } catch (const std::exception&) {
    throw ValidationError(field, "line " + std::to_string(line) + ": not an integer: '" + text + "'");
  }
  if (pos != text.size())
    throw ValidationError(field, "line " + std::to_string(line) + ": not an integer: '" + text + "'");
  return static_cast<int>(value);
}

std::vector<std::string> split_csv_row(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) fields.push_back(trim(field));
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

struct SeparableFit {
  double amplitude;
  double rss;
};

SeparableFit residual_at(const std::vector<TimedPoint>& points, double d,
                         const BesselEvalPolicy& policy) {
  double num = 0.0, den = 0.0;
  std::vector<double> model(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    model[i] = bessel_j(0, 2.0 * d * points[i].t, policy);
    num += points[i].intensity * model[i];
    den += model[i] * model[i];
  }
  const double a = den > 0.0 ? num / den : 0.0;
  double rss = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double r = points[i].intensity - a * model[i];
    rss += r * r;
  }
  return {a, rss};
}

}  // namespace

PulseCycleSpec make_cycle_spec(int pulses_per_cycle, double cycle_duration_in_tau) {
  if (pulses_per_cycle < 1)
    throw ValidationError("pulses_per_cycle", "must be >= 1");
  if (!std::isfinite(cycle_duration_in_tau) || cycle_duration_in_tau <= 0.0)
    throw ValidationError("cycle_duration_in_tau", "must be positive and finite");
  return PulseCycleSpec{pulses_per_cycle, cycle_duration_in_tau};
}

std::vector<ExperimentRecord> ingest_records(std::istream& in) {
  std::vector<ExperimentRecord> records;
  std::string line;
  int line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string stripped = trim(line);
    if (stripped.empty() || stripped.front() == '#') continue;
    if (!header_seen) {
      if (stripped != "tau_us,cycles,intensity")
        throw ValidationError("header", "line " + std::to_string(line_no) +
                                            ": expected 'tau_us,cycles,intensity', got '" +
                                            stripped + "'");
      header_seen = true;
      continue;
    }
    const std::vector<std::string> fields = split_csv_row(stripped);
    if (fields.size() != 3)
      throw ValidationError("row", "line " + std::to_string(line_no) + ": expected 3 fields, got " +
                                       std::to_string(fields.size()));
    const double tau_us = parse_double(fields[0], "tau_us", line_no);
    const int cycles = parse_int(fields[1], "cycles", line_no);
    const double intensity = parse_double(fields[2], "intensity", line_no);
    if (tau_us <= 0.0)
      throw ValidationError("tau_us", "line " + std::to_string(line_no) + ": must be > 0");
    if (cycles < 1)
      throw ValidationError("cycles", "line " + std::to_string(line_no) + ": must be >= 1");
    records.push_back(ExperimentRecord{tau_us * 1e-6, cycles, intensity});
  }
  if (in.bad()) throw IoError("stream error while reading records");
  if (!header_seen) throw ValidationError("header", "empty input: no header line found");
  return records;
}

std::vector<TimedPoint> map_time(const std::vector<ExperimentRecord>& records,
                                 const PulseCycleSpec& cycle) {
  std::vector<TimedPoint> points(records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    points[i].t = records[i].cycles * cycle.cycle_duration_in_tau * records[i].tau;
    points[i].intensity = records[i].intensity;
  }
  std::stable_sort(points.begin(), points.end(),
                   [](const TimedPoint& a, const TimedPoint& b) { return a.t < b.t; });
  return points;
}

FitResult fit_fid(const std::vector<TimedPoint>& points, double d_min, double d_max,
                  const BesselEvalPolicy& policy) {
  if (points.size() < 3)
    throw ValidationError("points", "need at least 3 points, got " + std::to_string(points.size()));
  for (const TimedPoint& p : points)
    if (!std::isfinite(p.t) || !std::isfinite(p.intensity))
      throw ValidationError("points", "times and intensities must be finite");
  if (!std::isfinite(d_min) || !std::isfinite(d_max) || d_min <= 0.0 || d_min >= d_max)
    throw ValidationError("d_search_interval", "need 0 < d_min < d_max");

  // Golden-section minimization of the separable residual.
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = d_min, b = d_max;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = residual_at(points, c, policy).rss;
  double fd = residual_at(points, d, policy).rss;
  while ((b - a) > 1e-6 * 0.5 * (a + b)) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = residual_at(points, c, policy).rss;
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = residual_at(points, d, policy).rss;
    }
  }
  const double width = b - a;
  const double d_estimate = 0.5 * (a + b);
  if (d_estimate - d_min <= 2.0 * width || d_max - d_estimate <= 2.0 * width)
    throw ValidationError("d_search_interval",
                          "unbracketed: the best D lies at a search-interval endpoint; widen "
                          "[d_min, d_max]");

  const SeparableFit best = residual_at(points, d_estimate, policy);
  FitResult result;
  result.d_estimate = d_estimate;
  result.amplitude = best.amplitude;
  result.rms_residual = std::sqrt(best.rss / static_cast<double>(points.size()));
  result.n_points = static_cast<int>(points.size());
  result.d_search_lo = d_min;
  result.d_search_hi = d_max;
  return result;
}

}  // namespace fidsim
