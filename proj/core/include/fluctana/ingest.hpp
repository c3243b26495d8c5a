#ifndef FLUCTANA_INGEST_HPP
#define FLUCTANA_INGEST_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fluctana/dates.hpp"

namespace fluctana::ingest {

struct Quote {
  Date date;
  double value;  // quote level, strictly positive
};

/// Daily quote levels with strictly increasing dates. Produced by
/// parse_quotes; rows with missing or non-positive values are never retained.
struct QuoteSeries {
  std::vector<Quote> observations;

  std::size_t size() const noexcept { return observations.size(); }
  std::vector<double> values() const;
  std::vector<Date> dates() const;
};

struct ReturnObs {
  Date date;  // day the fluctuation realizes (the later quote's date)
  double r;   // normalized log-fluctuation
};

/// Normalized daily log-fluctuations: mean 0, unit standard deviation
/// (population convention). raw_mean/raw_std record the affine map, so the
/// un-normalized fluctuations are r * raw_std + raw_mean.
struct ReturnSeries {
  std::vector<ReturnObs> returns;
  double raw_mean = 0.0;
  double raw_std = 1.0;

  std::size_t size() const noexcept { return returns.size(); }
  std::vector<double> values() const;
  std::vector<double> abs_values() const;
};

/// Column layout of a delimiter-separated quote file. Empty column names mean
/// "first column is the date, second is the value".
struct ColumnSpec {
  char delimiter = ',';
  std::string date_column;
  std::string value_column;
};

struct ParseReport {
  std::size_t rows_read = 0;     // data rows seen (header excluded)
  std::size_t rows_dropped = 0;  // missing-value markers and bad quotes
  std::vector<std::string> warnings;
};

/// Parses delimiter-separated quote text. A header row is required. Rows with
/// a non-numeric value field (missing-data markers such as ".") are dropped
/// and counted; non-positive quotes are dropped with a warning. Throws
/// ParseError on malformed dates or a missing header, DegenerateDataError if
/// nothing survives.
QuoteSeries parse_quotes(std::string_view text, const ColumnSpec& spec = {},
                         ParseReport* report = nullptr);

/// Restricts to quotes with from <= date <= to (either bound optional).
QuoteSeries filter_window(const QuoteSeries& q, std::optional<Date> from,
                          std::optional<Date> to);

/// Raw log-fluctuations ln Q_{t+1} - ln Q_t between consecutive retained
/// quotes (gaps are bridged). Output length is input length - 1. Throws
/// DegenerateDataError for fewer than 2 observations.
std::vector<double> log_returns(const QuoteSeries& q);

/// Centers and rescales to zero mean, unit standard deviation (population
/// formula). dates, when provided, must match raw in length and stamps each
/// return. Throws DegenerateDataError on length < 2 or zero dispersion.
ReturnSeries normalize(std::span<const double> raw,
                       std::span<const Date> dates = {});

/// normalize(log_returns(q)) with dates carried through.
ReturnSeries make_return_series(const QuoteSeries& q);

// --- CSV serialization (UTF-8, header row, 12 significant digits) ---

std::string to_csv(const QuoteSeries& q);
std::string to_csv(const ReturnSeries& r);
QuoteSeries quote_series_from_csv(std::string_view text);
ReturnSeries return_series_from_csv(std::string_view text);

}  // namespace fluctana::ingest

#endif  // FLUCTANA_INGEST_HPP
