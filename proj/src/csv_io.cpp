#include "fringefit/csv_io.hpp"

#include <unistd.h>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <string_view>

namespace fringefit {

namespace {

constexpr std::string_view kSampleHeader = "sample_id,j,delta,n_o,n_h";
constexpr std::string_view kEstimateHeader =
    "sample_id,method,status,phase,mean_o,mean_h,amplitude,"
    "normalized_visibility,converged";

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

template <typename T>
T parse_integer(std::string_view field, std::size_t line, const char* name) {
  T value{};
  const auto [ptr, ec] =
      std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size() || field.empty())
    throw ParseError(line, std::string("invalid ") + name + " '" +
                               std::string(field) + "'");
  return value;
}

double parse_real(std::string_view field, std::size_t line, const char* name) {
  double value = 0.0;
  const auto [ptr, ec] =
      std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size() || field.empty() ||
      !std::isfinite(value))
    throw ParseError(line, std::string("invalid ") + name + " '" +
                               std::string(field) + "'");
  return value;
}

bool read_line(std::istream& in, std::string& line) {
  if (!std::getline(in, line)) return false;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return true;
}

}  // namespace

ParseError::ParseError(std::size_t line, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ": " + message),
      line_(line) {}

std::string format_real(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

void write_samples(std::ostream& out, std::span<const FringeSample> samples) {
  out << kSampleHeader << '\n';
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const FringeSample& s = samples[i];
    for (std::size_t j = 0; j < s.positions(); ++j)
      out << i << ',' << j << ',' << format_real(s.grid[j]) << ','
          << s.counts_o[j] << ',' << s.counts_h[j] << '\n';
  }
}

std::vector<FringeSample> read_samples(std::istream& in) {
  std::string line;
  std::size_t line_no = 1;
  if (!read_line(in, line)) throw ParseError(1, "empty sample file");
  if (line != kSampleHeader)
    throw ParseError(1, "expected header '" + std::string(kSampleHeader) + "'");

  struct Pending {
    std::size_t first_line = 0;
    std::vector<double> deltas;
    std::vector<Count> o, h;
  };
  std::vector<FringeSample> samples;
  Pending cur;
  std::size_t cur_id = 0;
  bool open = false;

  auto flush = [&]() {
    const std::size_t n = cur.o.size();
    if (n < 2)
      throw ParseError(cur.first_line, "sample " + std::to_string(cur_id) +
                                           " has fewer than 2 positions");
    AuxShiftGrid grid(n);
    for (std::size_t j = 0; j < n; ++j)
      if (std::abs(cur.deltas[j] - grid[j]) > 1e-12)
        throw ParseError(cur.first_line + j,
                         "delta does not match the equidistant grid 2 pi j / " +
                             std::to_string(n));
    samples.emplace_back(std::move(cur.o), std::move(cur.h), std::move(grid));
    cur = Pending{};
  };

  while (read_line(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto f = split(line);
    if (f.size() != 5)
      throw ParseError(line_no, "expected 5 fields, got " +
                                    std::to_string(f.size()));
    const auto id = parse_integer<std::size_t>(f[0], line_no, "sample_id");
    const auto j = parse_integer<std::size_t>(f[1], line_no, "j");
    const double delta = parse_real(f[2], line_no, "delta");
    const auto n_o = parse_integer<Count>(f[3], line_no, "n_o");
    const auto n_h = parse_integer<Count>(f[4], line_no, "n_h");

    if (!open || id != cur_id) {
      if (open) {
        flush();
        if (id != cur_id + 1)
          throw ParseError(line_no, "sample ids must be consecutive");
      } else if (id != 0) {
        throw ParseError(line_no, "sample ids must start at 0");
      }
      cur_id = id;
      cur.first_line = line_no;
      open = true;
    }
    if (j != cur.o.size())
      throw ParseError(line_no, "position index out of order");
    cur.deltas.push_back(delta);
    cur.o.push_back(n_o);
    cur.h.push_back(n_h);
  }
  if (open) flush();
  if (samples.empty()) throw ParseError(line_no, "no samples");
  const std::size_t n = samples.front().positions();
  for (const FringeSample& s : samples)
    if (s.positions() != n)
      throw DataError("samples use different numbers of positions");
  return samples;
}

void write_estimates(std::ostream& out, std::span<const EstimateRow> rows) {
  out << kEstimateHeader << '\n';
  for (const EstimateRow& r : rows) {
    const PhaseEstimate& e = r.record.estimate;
    out << r.sample_id << ',' << to_string(r.method) << ','
        << to_string(e.status) << ',' << (e.phase ? format_real(*e.phase) : "")
        << ',' << format_real(e.mean_o) << ',' << format_real(e.mean_h) << ','
        << format_real(e.amplitude) << ',';
    if (auto v = e.normalized_visibility()) out << format_real(*v);
    out << ',' << (r.record.converged ? "true" : "false") << '\n';
  }
}

std::vector<EstimateRow> read_estimates(std::istream& in) {
  std::string line;
  std::size_t line_no = 1;
  if (!read_line(in, line)) throw ParseError(1, "empty estimates file");
  if (line != kEstimateHeader)
    throw ParseError(1,
                     "expected header '" + std::string(kEstimateHeader) + "'");
  std::vector<EstimateRow> rows;
  while (read_line(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto f = split(line);
    if (f.size() != 9)
      throw ParseError(line_no, "expected 9 fields, got " +
                                    std::to_string(f.size()));
    EstimateRow row;
    row.sample_id = parse_integer<std::size_t>(f[0], line_no, "sample_id");
    const auto method = parse_method(f[1]);
    if (!method)
      throw ParseError(line_no, "unknown method '" + std::string(f[1]) + "'");
    row.method = *method;
    PhaseEstimate& e = row.record.estimate;
    if (f[2] == "informative") {
      e.status = EstimateStatus::informative;
      e.phase = parse_real(f[3], line_no, "phase");
    } else if (f[2] == "uninformative") {
      e.status = EstimateStatus::uninformative;
      if (!f[3].empty())
        throw ParseError(line_no, "uninformative row carries a phase");
    } else {
      throw ParseError(line_no, "unknown status '" + std::string(f[2]) + "'");
    }
    e.mean_o = parse_real(f[4], line_no, "mean_o");
    e.mean_h = parse_real(f[5], line_no, "mean_h");
    e.amplitude = parse_real(f[6], line_no, "amplitude");
    if (!f[7].empty()) parse_real(f[7], line_no, "normalized_visibility");
    if (f[8] == "true")
      row.record.converged = true;
    else if (f[8] == "false")
      row.record.converged = false;
    else
      throw ParseError(line_no, "converged must be true or false");
    rows.push_back(row);
  }
  return rows;
}

void write_delta_e(std::ostream& out, const DeltaECurve& curve) {
  out << "window_width,f_gauss,f_poisson,delta_e";
  if (curve.errbar) out << ",errbar";
  out << '\n';
  for (std::size_t k = 0; k < curve.windows.size(); ++k) {
    out << format_real(curve.windows[k]) << ',' << format_real(curve.f_gauss[k])
        << ',' << format_real(curve.f_poisson[k]) << ','
        << format_real(curve.delta_e[k]);
    if (curve.errbar) out << ',' << format_real((*curve.errbar)[k]);
    out << '\n';
  }
}

void write_histogram(std::ostream& out, const VisibilityHistogram& hist,
                     std::size_t informative, std::size_t total) {
  out << "bin_lo,bin_hi,count\n";
  for (std::size_t b = 0; b < hist.counts.size(); ++b)
    out << format_real(hist.bin_edges[b]) << ','
        << format_real(hist.bin_edges[b + 1]) << ',' << hist.counts[b] << '\n';
  out << "# summary mean=" << format_real(hist.mean)
      << " true=" << format_real(hist.true_value)
      << " informative=" << informative << " samples=" << total << '\n';
}

void write_file_atomic(const std::filesystem::path& path,
                       const std::function<void(std::ostream&)>& writer) {
  std::filesystem::path tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    writer(out);
    out.flush();
    if (!out) {
      std::error_code ec;
      std::filesystem::remove(tmp, ec);
      throw std::runtime_error("write failed for " + path.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw std::runtime_error("cannot replace " + path.string());
  }
}

}  // namespace fringefit
