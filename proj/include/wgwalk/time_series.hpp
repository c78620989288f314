#ifndef WGWALK_TIME_SERIES_HPP
#define WGWALK_TIME_SERIES_HPP

#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace wgwalk {

// Rectangular table of sampled observables: one abscissa column followed by
// a fixed set of value columns.  Serializes to CSV with '#'-prefixed
// key=value metadata lines, a header row, and 17-significant-digit numbers,
// so that write -> parse reproduces the table exactly.
class TimeSeries {
 public:
  TimeSeries() = default;
  TimeSeries(std::string x_label, std::vector<std::string> value_labels);

  void add_metadata(std::string key, std::string value);
  void add_row(double x, std::span<const double> values);

  std::size_t n_rows() const { return x_.size(); }
  std::size_t n_value_cols() const { return value_labels_.size(); }
  double x(std::size_t row) const { return x_.at(row); }
  double value(std::size_t row, std::size_t col) const;
  std::span<const double> row(std::size_t row) const;

  const std::string& x_label() const { return x_label_; }
  const std::vector<std::string>& value_labels() const { return value_labels_; }
  const std::vector<std::pair<std::string, std::string>>& metadata() const {
    return metadata_;
  }

  std::string to_csv() const;
  static TimeSeries from_csv(std::string_view text);

  friend bool operator==(const TimeSeries&, const TimeSeries&) = default;

 private:
  std::string x_label_;
  std::vector<std::string> value_labels_;
  std::vector<std::pair<std::string, std::string>> metadata_;
  std::vector<double> x_;
  std::vector<double> values_;  // row-major, n_rows x n_value_cols
};

// Shortest-exact decimal rendering with 17 significant digits, independent
// of locale.
std::string format_double(double v);

}  // namespace wgwalk

#endif  // WGWALK_TIME_SERIES_HPP
