// CSV formats.
//
// Sample file (LF line endings, reals with 17 significant digits):
//   sample_id,j,delta,n_o,n_h
// one row per (sample, position); sample ids run 0..M-1 and positions
// 0..N-1 in order.
//
// Estimates file:
//   sample_id,method,status,phase,mean_o,mean_h,amplitude,normalized_visibility,converged
// phase and normalized_visibility are empty when absent.

#ifndef FRINGEFIT_CSV_IO_HPP_
#define FRINGEFIT_CSV_IO_HPP_

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "fringefit/harness.hpp"
#include "fringefit/kernels.hpp"
#include "fringefit/model.hpp"

namespace fringefit {

/// Malformed input; what() carries "line N: ...".
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& message);
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Inconsistent but well-formed data (e.g. mismatched sample ids).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// "%.17g"; round-trips every finite double.
std::string format_real(double value);

void write_samples(std::ostream& out, std::span<const FringeSample> samples);
std::vector<FringeSample> read_samples(std::istream& in);

struct EstimateRow {
  std::size_t sample_id = 0;
  Method method = Method::gauss_dft;
  EstimateRecord record;
};

void write_estimates(std::ostream& out, std::span<const EstimateRow> rows);
std::vector<EstimateRow> read_estimates(std::istream& in);

/// window_width,f_gauss,f_poisson,delta_e[,errbar]
void write_delta_e(std::ostream& out, const DeltaECurve& curve);

/// bin_lo,bin_hi,count followed by a "# summary" comment line.
void write_histogram(std::ostream& out, const VisibilityHistogram& hist,
                     std::size_t informative, std::size_t total);

/// Writes through a sibling temporary file, then renames over `path`.
void write_file_atomic(const std::filesystem::path& path,
                       const std::function<void(std::ostream&)>& writer);

}  // namespace fringefit

#endif  // FRINGEFIT_CSV_IO_HPP_
