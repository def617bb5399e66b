#pragma once

#include <chrono>
#include <cstddef>
#include <functional>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace tagnet::ingest {

using Timestamp = std::chrono::sys_seconds;

// One tagged bookmark. Only the URL, submission time and tags are kept.
struct PostRecord {
  std::string url;
  std::optional<Timestamp> timestamp;
  std::vector<std::string> tags;

  bool operator==(const PostRecord&) const = default;
};

struct NormalizationPolicy {
  bool case_fold = true;
  bool trim_whitespace = true;
  bool drop_empty = true;
};

// Distinct URL -> set of normalized tags. Both levels are ordered, which
// gives graph construction its deterministic id assignment.
class ItemTagSets {
 public:
  using Map = std::map<std::string, std::set<std::string>, std::less<>>;

  // Unions `tags` into the set for `url`. Tags are expected to be normalized.
  void add(std::string_view url, const std::vector<std::string>& tags);
  // Commutative, associative union of two partial aggregates.
  void merge(const ItemTagSets& other);

  const Map& items() const noexcept { return items_; }
  std::size_t size() const noexcept { return items_.size(); }
  bool empty() const noexcept { return items_.empty(); }
  std::size_t distinct_tags() const;

  bool operator==(const ItemTagSets&) const = default;

 private:
  Map items_;
};

// ISO-8601 date or date-time ("2005-03-26", "2005-03-26T10:00:00Z",
// "2005-03-26T10:00:00.5+08:00"). Fractional seconds are truncated.
std::optional<Timestamp> parse_iso8601(std::string_view text);

// One JSON object per line: {"url": str, "tags": [str...], "time"?: str}.
// Unknown fields are ignored. Errors name `line_number`.
PostRecord parse_jsonl_record(std::string_view line, std::size_t line_number = 1);

struct RssDocument {
  std::vector<PostRecord> records;
  std::size_t skipped_items = 0;  // items without a <link>
};

// del.icio.us-style RSS 1.0/2.0: each <item> has <link> and a <dc:subject>
// holding space-separated tags (RSS 2.0 <category> elements are also taken).
RssDocument parse_delicious_rss(std::string_view document);

// Splits a CSV line per RFC 4180 (quoted fields, doubled quotes). Embedded
// newlines inside quotes are not supported.
std::vector<std::string> split_csv_line(std::string_view line, std::size_t line_number = 1);

std::vector<std::string> split_whitespace(std::string_view text);

std::vector<std::string> normalize_tags(const std::vector<std::string>& tags,
                                        const NormalizationPolicy& policy);

// URL with surrounding whitespace removed; the URL is otherwise opaque.
std::string_view trim(std::string_view text);

ItemTagSets aggregate_by_url(const std::vector<PostRecord>& records,
                             const NormalizationPolicy& policy);

enum class InputFormat { jsonl, csv, rss };

std::optional<InputFormat> format_from_name(std::string_view name);

struct ReadStats {
  std::size_t records = 0;
  std::size_t skipped_items = 0;
};

using RecordSink = std::function<void(PostRecord&&)>;

// Streams records from `in` into `sink`. JSONL and CSV are read one line at a
// time; RSS is read as a whole document.
ReadStats read_records(std::istream& in, InputFormat format, const RecordSink& sink);

// Streaming aggregation: memory grows with distinct URLs and tags only.
ItemTagSets aggregate_stream(std::istream& in, InputFormat format,
                             const NormalizationPolicy& policy, ReadStats* stats = nullptr);

}  // namespace tagnet::ingest
