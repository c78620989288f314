#include "wgwalk/time_series.hpp"

#include <charconv>
#include <stdexcept>

namespace wgwalk {

TimeSeries::TimeSeries(std::string x_label, std::vector<std::string> value_labels)
    : x_label_(std::move(x_label)), value_labels_(std::move(value_labels)) {}

void TimeSeries::add_metadata(std::string key, std::string value) {
  metadata_.emplace_back(std::move(key), std::move(value));
}

void TimeSeries::add_row(double x, std::span<const double> values) {
  if (values.size() != value_labels_.size()) {
    throw std::domain_error("TimeSeries::add_row: expected " +
                            std::to_string(value_labels_.size()) +
                            " values, got " + std::to_string(values.size()));
  }
  x_.push_back(x);
  values_.insert(values_.end(), values.begin(), values.end());
}

double TimeSeries::value(std::size_t row, std::size_t col) const {
  if (row >= n_rows() || col >= n_value_cols()) {
    throw std::out_of_range("TimeSeries::value: index out of range");
  }
  return values_[row * n_value_cols() + col];
}

std::span<const double> TimeSeries::row(std::size_t row) const {
  if (row >= n_rows()) {
    throw std::out_of_range("TimeSeries::row: index out of range");
  }
  return {values_.data() + row * n_value_cols(), n_value_cols()};
}

std::string format_double(double v) {
  char buf[64];
  auto res =
      std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

std::string TimeSeries::to_csv() const {
  std::string out;
  for (const auto& [key, value] : metadata_) {
    out += '#';
    out += key;
    out += '=';
    out += value;
    out += '\n';
  }
  out += x_label_;
  for (const auto& label : value_labels_) {
    out += ',';
    out += label;
  }
  out += '\n';
  for (std::size_t r = 0; r < n_rows(); ++r) {
    out += format_double(x_[r]);
    for (std::size_t c = 0; c < n_value_cols(); ++c) {
      out += ',';
      out += format_double(values_[r * n_value_cols() + c]);
    }
    out += '\n';
  }
  return out;
}

namespace {

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t begin = 0;
  while (true) {
    std::size_t end = line.find(sep, begin);
    if (end == std::string_view::npos) {
      out.push_back(line.substr(begin));
      return out;
    }
    out.push_back(line.substr(begin, end - begin));
    begin = end + 1;
  }
}

double parse_number(std::string_view token, std::size_t line_no) {
  double v = 0.0;
  auto res = std::from_chars(token.data(), token.data() + token.size(), v);
  if (res.ec != std::errc{} || res.ptr != token.data() + token.size()) {
    throw std::runtime_error("csv line " + std::to_string(line_no) +
                             ": malformed number '" + std::string(token) + "'");
  }
  return v;
}

}  // namespace

TimeSeries TimeSeries::from_csv(std::string_view text) {
  TimeSeries ts;
  bool header_seen = false;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    std::size_t eol = text.find('\n');
    std::string_view line =
        eol == std::string_view::npos ? text : text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{}
                                         : text.substr(eol + 1);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    if (line.front() == '#') {
      line.remove_prefix(1);
      std::size_t eq = line.find('=');
      if (eq == std::string_view::npos) {
        ts.metadata_.emplace_back(std::string(line), std::string());
      } else {
        ts.metadata_.emplace_back(std::string(line.substr(0, eq)),
                                  std::string(line.substr(eq + 1)));
      }
      continue;
    }
    auto tokens = split(line, ',');
    if (!header_seen) {
      if (tokens.empty()) {
        throw std::runtime_error("csv line " + std::to_string(line_no) +
                                 ": empty header");
      }
      ts.x_label_ = std::string(tokens[0]);
      for (std::size_t i = 1; i < tokens.size(); ++i) {
        ts.value_labels_.emplace_back(tokens[i]);
      }
      header_seen = true;
      continue;
    }
    if (tokens.size() != ts.value_labels_.size() + 1) {
      throw std::runtime_error("csv line " + std::to_string(line_no) +
                               ": expected " +
                               std::to_string(ts.value_labels_.size() + 1) +
                               " fields, got " + std::to_string(tokens.size()));
    }
    ts.x_.push_back(parse_number(tokens[0], line_no));
    for (std::size_t i = 1; i < tokens.size(); ++i) {
      ts.values_.push_back(parse_number(tokens[i], line_no));
    }
  }
  if (!header_seen) {
    throw std::runtime_error("csv: missing header row");
  }
  return ts;
}

}  // namespace wgwalk
