#include "fluctana/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>

#include "fluctana/errors.hpp"

namespace fluctana::ingest {

namespace {

std::vector<std::string_view> split_line(std::string_view line, char delim) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = line.find(delim, start);
    if (pos == std::string_view::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return fields;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
    s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

bool parse_double(std::string_view s, double& out) {
  const char* first = s.data();
  auto [ptr, ec] = std::from_chars(first, first + s.size(), out);
  return ec == std::errc{} && ptr == first + s.size() && std::isfinite(out);
}

std::string format_sig12(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

int resolve_column(const std::vector<std::string_view>& header,
                   const std::string& name, int fallback) {
  if (name.empty()) return fallback;
  for (std::size_t i = 0; i < header.size(); ++i)
    if (trim(header[i]) == name) return static_cast<int>(i);
  throw ParseError("column '" + name + "' not found in header", 1);
}

}  // namespace

std::vector<double> QuoteSeries::values() const {
  std::vector<double> v(observations.size());
  std::transform(observations.begin(), observations.end(), v.begin(),
                 [](const Quote& q) { return q.value; });
  return v;
}

std::vector<Date> QuoteSeries::dates() const {
  std::vector<Date> v(observations.size());
  std::transform(observations.begin(), observations.end(), v.begin(),
                 [](const Quote& q) { return q.date; });
  return v;
}

std::vector<double> ReturnSeries::values() const {
  std::vector<double> v(returns.size());
  std::transform(returns.begin(), returns.end(), v.begin(),
                 [](const ReturnObs& o) { return o.r; });
  return v;
}

std::vector<double> ReturnSeries::abs_values() const {
  std::vector<double> v(returns.size());
  std::transform(returns.begin(), returns.end(), v.begin(),
                 [](const ReturnObs& o) { return std::fabs(o.r); });
  return v;
}

QuoteSeries parse_quotes(std::string_view text, const ColumnSpec& spec,
                         ParseReport* report) {
  ParseReport local;
  ParseReport& rep = report ? *report : local;

  QuoteSeries out;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  int date_col = -1, value_col = -1;

  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::string_view line = (eol == std::string_view::npos)
                                ? text.substr(pos)
                                : text.substr(pos, eol - pos);
    pos = (eol == std::string_view::npos) ? text.size() + 1 : eol + 1;
    ++line_no;

    if (trim(line).empty()) continue;
    auto fields = split_line(line, spec.delimiter);

    if (date_col < 0) {  // header row
      date_col = resolve_column(fields, spec.date_column, 0);
      value_col = resolve_column(fields, spec.value_column, 1);
      continue;
    }

    ++rep.rows_read;
    int needed = std::max(date_col, value_col);
    if (static_cast<int>(fields.size()) <= needed)
      throw ParseError("too few columns", line_no);

    auto date_field = trim(fields[static_cast<std::size_t>(date_col)]);
    auto date = parse_iso_date(date_field);
    if (!date)
      throw ParseError("malformed date '" + std::string(date_field) + "'", line_no);

    auto value_field = trim(fields[static_cast<std::size_t>(value_col)]);
    double value;
    if (!parse_double(value_field, value)) {
      ++rep.rows_dropped;  // missing-data marker, e.g. "."
      continue;
    }
    if (value <= 0.0) {
      ++rep.rows_dropped;
      rep.warnings.push_back("line " + std::to_string(line_no) +
                             ": non-positive quote " + std::string(value_field) +
                             " dropped");
      continue;
    }
    if (!out.observations.empty() && !(out.observations.back().date < *date))
      throw ParseError("dates not strictly increasing", line_no);
    out.observations.push_back({*date, value});
  }

  if (date_col < 0) throw ParseError("missing header row", std::max<std::size_t>(line_no, 1));
  if (out.observations.empty())
    throw DegenerateDataError("no usable quote rows");
  return out;
}

QuoteSeries filter_window(const QuoteSeries& q, std::optional<Date> from,
                          std::optional<Date> to) {
  QuoteSeries out;
  for (const Quote& obs : q.observations) {
    if (from && obs.date < *from) continue;
    if (to && *to < obs.date) continue;
    out.observations.push_back(obs);
  }
  return out;
}

std::vector<double> log_returns(const QuoteSeries& q) {
  if (q.size() < 2)
    throw DegenerateDataError("need at least 2 quotes to form log-fluctuations");
  std::vector<double> r(q.size() - 1);
  for (std::size_t t = 0; t + 1 < q.size(); ++t)
    r[t] = std::log(q.observations[t + 1].value) - std::log(q.observations[t].value);
  return r;
}

ReturnSeries normalize(std::span<const double> raw, std::span<const Date> dates) {
  if (raw.size() < 2)
    throw DegenerateDataError("need at least 2 fluctuations to normalize");
  if (!dates.empty() && dates.size() != raw.size())
    throw std::invalid_argument("dates/values length mismatch");

  const double n = static_cast<double>(raw.size());
  const double mean = std::accumulate(raw.begin(), raw.end(), 0.0) / n;
  double ss = 0.0;
  for (double v : raw) ss += (v - mean) * (v - mean);
  const double sd = std::sqrt(ss / n);  // population convention
  if (!(sd > 0.0))
    throw DegenerateDataError("zero dispersion: constant fluctuation series");

  ReturnSeries out;
  out.raw_mean = mean;
  out.raw_std = sd;
  out.returns.resize(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    out.returns[i].r = (raw[i] - mean) / sd;
    out.returns[i].date = dates.empty() ? Date{} : dates[i];
  }
  return out;
}

ReturnSeries make_return_series(const QuoteSeries& q) {
  std::vector<double> raw = log_returns(q);
  std::vector<Date> dates(raw.size());
  for (std::size_t t = 0; t < raw.size(); ++t)
    dates[t] = q.observations[t + 1].date;
  return normalize(raw, dates);
}

std::string to_csv(const QuoteSeries& q) {
  std::string out = "date,value\n";
  for (const Quote& obs : q.observations) {
    out += format_iso_date(obs.date);
    out += ',';
    out += format_sig12(obs.value);
    out += '\n';
  }
  return out;
}

std::string to_csv(const ReturnSeries& r) {
  std::string out = "date,r\n";
  for (const ReturnObs& obs : r.returns) {
    out += format_iso_date(obs.date);
    out += ',';
    out += format_sig12(obs.r);
    out += '\n';
  }
  return out;
}

QuoteSeries quote_series_from_csv(std::string_view text) {
  return parse_quotes(text, ColumnSpec{});
}

ReturnSeries return_series_from_csv(std::string_view text) {
  // Returns are signed, so this cannot go through parse_quotes.
  ReturnSeries out;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  bool header_seen = false;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::string_view line = (eol == std::string_view::npos)
                                ? text.substr(pos)
                                : text.substr(pos, eol - pos);
    pos = (eol == std::string_view::npos) ? text.size() + 1 : eol + 1;
    ++line_no;
    if (trim(line).empty()) continue;
    if (!header_seen) {
      header_seen = true;
      continue;
    }
    auto fields = split_line(line, ',');
    if (fields.size() < 2) throw ParseError("too few columns", line_no);
    auto date = parse_iso_date(trim(fields[0]));
    if (!date) throw ParseError("malformed date", line_no);
    double r;
    if (!parse_double(trim(fields[1]), r)) throw ParseError("malformed value", line_no);
    out.returns.push_back({*date, r});
  }
  if (!header_seen || out.returns.empty())
    throw DegenerateDataError("empty return series");
  return out;
}

}  // namespace fluctana::ingest
