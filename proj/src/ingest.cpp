#include "tagnet/ingest.hpp"

#include <expat.h>

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <iterator>
#include <memory>
#include <sstream>
#include <unordered_set>

#include "json.hpp"
#include "tagnet/error.hpp"

namespace tagnet::ingest {

namespace {

constexpr std::string_view kSpace = " \t\r\n\f\v";

bool is_space(char c) { return kSpace.find(c) != std::string_view::npos; }

std::string ascii_lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) {
    return static_cast<char>(std::tolower(c));
  });
  return out;
}

template <typename Int>
bool take_digits(std::string_view& s, std::size_t width, Int& value) {
  if (s.size() < width) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + width, value);
  if (ec != std::errc() || ptr != s.data() + width) return false;
  s.remove_prefix(width);
  return true;
}

bool take_char(std::string_view& s, char c) {
  if (s.empty() || s.front() != c) return false;
  s.remove_prefix(1);
  return true;
}

}  // namespace

std::string_view trim(std::string_view text) {
  const auto first = text.find_first_not_of(kSpace);
  if (first == std::string_view::npos) return {};
  const auto last = text.find_last_not_of(kSpace);
  return text.substr(first, last - first + 1);
}

std::optional<Timestamp> parse_iso8601(std::string_view text) {
  using namespace std::chrono;
  std::string_view s = trim(text);
  int y = 0;
  unsigned mo = 0, d = 0;
  if (!take_digits(s, 4, y) || !take_char(s, '-') || !take_digits(s, 2, mo) ||
      !take_char(s, '-') || !take_digits(s, 2, d)) {
    return std::nullopt;
  }
  const year_month_day ymd{year{y}, month{mo}, day{d}};
  if (!ymd.ok()) return std::nullopt;
  sys_seconds t = sys_days{ymd};
  if (s.empty()) return t;

  if (!take_char(s, 'T') && !take_char(s, 't') && !take_char(s, ' ')) return std::nullopt;
  int hh = 0, mm = 0, ss = 0;
  if (!take_digits(s, 2, hh) || !take_char(s, ':') || !take_digits(s, 2, mm)) {
    return std::nullopt;
  }
  if (take_char(s, ':')) {
    if (!take_digits(s, 2, ss)) return std::nullopt;
    if (take_char(s, '.') || take_char(s, ',')) {
      const auto n = s.find_first_not_of("0123456789");
      const std::size_t digits = n == std::string_view::npos ? s.size() : n;
      if (digits == 0) return std::nullopt;
      s.remove_prefix(digits);
    }
  }
  if (hh > 23 || mm > 59 || ss > 60) return std::nullopt;
  t += hours{hh} + minutes{mm} + seconds{ss};

  if (s.empty() || take_char(s, 'Z') || take_char(s, 'z')) {
    return s.empty() ? std::optional<Timestamp>(t) : std::nullopt;
  }
  const char sign = s.front();
  if (sign != '+' && sign != '-') return std::nullopt;
  s.remove_prefix(1);
  int oh = 0, om = 0;
  if (!take_digits(s, 2, oh)) return std::nullopt;
  take_char(s, ':');
  if (!s.empty() && !take_digits(s, 2, om)) return std::nullopt;
  if (!s.empty() || oh > 23 || om > 59) return std::nullopt;
  const auto offset = hours{oh} + minutes{om};
  return sign == '+' ? t - offset : t + offset;
}

PostRecord parse_jsonl_record(std::string_view line, std::size_t line_number) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(line.begin(), line.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what(), line_number);
  }
  if (!doc.is_object()) throw ParseError("record is not a JSON object", line_number);

  PostRecord rec;
  const auto url = doc.find("url");
  if (url == doc.end()) throw ParseError("missing url", line_number);
  if (!url->is_string()) throw ParseError("url is not a string", line_number);
  rec.url = std::string(trim(url->get_ref<const std::string&>()));
  if (rec.url.empty()) throw ParseError("empty url", line_number);

  const auto tags = doc.find("tags");
  if (tags != doc.end() && !tags->is_null()) {
    if (!tags->is_array()) throw ParseError("tags is not an array", line_number);
    rec.tags.reserve(tags->size());
    for (const auto& t : *tags) {
      if (!t.is_string()) throw ParseError("tag is not a string", line_number);
      rec.tags.push_back(t.get<std::string>());
    }
  }

  const auto time = doc.find("time");
  if (time != doc.end() && !time->is_null()) {
    if (!time->is_string()) throw ParseError("time is not a string", line_number);
    rec.timestamp = parse_iso8601(time->get_ref<const std::string&>());
    if (!rec.timestamp) throw ParseError("time is not ISO-8601", line_number);
  }
  return rec;
}

// ---------------------------------------------------------------------------
// RSS

namespace {

// Expat is run with namespace processing; element names arrive as
// "uri|local". Only the local part matters here.
constexpr char kNsSep = '|';

std::string_view local_name(const XML_Char* name) {
  std::string_view n(name);
  const auto p = n.rfind(kNsSep);
  return p == std::string_view::npos ? n : n.substr(p + 1);
}

struct RssState {
  RssDocument doc;
  int depth = 0;
  int item_depth = -1;  // depth of the open <item>, -1 outside
  std::string field;    // local name of the item child being captured
  std::string text;
  std::optional<std::string> link;
  std::optional<std::string> date;
  std::vector<std::string> tags;
};

void XMLCALL on_start(void* data, const XML_Char* name, const XML_Char**) {
  auto& st = *static_cast<RssState*>(data);
  ++st.depth;
  const auto local = local_name(name);
  if (st.item_depth < 0) {
    if (local == "item") {
      st.item_depth = st.depth;
      st.link.reset();
      st.date.reset();
      st.tags.clear();
    }
    return;
  }
  if (st.depth == st.item_depth + 1) {
    st.field = std::string(local);
    st.text.clear();
  }
}

void XMLCALL on_end(void* data, const XML_Char*) {
  auto& st = *static_cast<RssState*>(data);
  if (st.item_depth >= 0 && st.depth == st.item_depth + 1) {
    if (st.field == "link") {
      st.link = std::string(trim(st.text));
    } else if (st.field == "subject" || st.field == "category") {
      for (auto& t : split_whitespace(st.text)) st.tags.push_back(std::move(t));
    } else if (st.field == "date") {
      st.date = std::string(trim(st.text));
    }
    st.field.clear();
  } else if (st.depth == st.item_depth) {
    if (st.link && !st.link->empty()) {
      PostRecord rec;
      rec.url = std::move(*st.link);
      rec.tags = std::move(st.tags);
      if (st.date) rec.timestamp = parse_iso8601(*st.date);
      st.doc.records.push_back(std::move(rec));
    } else {
      ++st.doc.skipped_items;
    }
    st.tags.clear();
    st.item_depth = -1;
  }
  --st.depth;
}

void XMLCALL on_text(void* data, const XML_Char* s, int len) {
  auto& st = *static_cast<RssState*>(data);
  if (!st.field.empty()) st.text.append(s, static_cast<std::size_t>(len));
}

}  // namespace

RssDocument parse_delicious_rss(std::string_view document) {
  std::unique_ptr<XML_ParserStruct, decltype(&XML_ParserFree)> parser(
      XML_ParserCreateNS(nullptr, kNsSep), &XML_ParserFree);
  if (!parser) throw Error("cannot allocate XML parser");
  RssState st;
  XML_SetUserData(parser.get(), &st);
  XML_SetElementHandler(parser.get(), on_start, on_end);
  XML_SetCharacterDataHandler(parser.get(), on_text);

  if (trim(document).empty()) return {};
  if (XML_Parse(parser.get(), document.data(), static_cast<int>(document.size()), XML_TRUE) ==
      XML_STATUS_ERROR) {
    const auto line = static_cast<std::size_t>(XML_GetCurrentLineNumber(parser.get()));
    throw ParseError(std::string("malformed XML: ") + XML_ErrorString(XML_GetErrorCode(parser.get())),
                     line);
  }
  return std::move(st.doc);
}

// ---------------------------------------------------------------------------
// CSV

std::vector<std::string> split_csv_line(std::string_view line, std::size_t line_number) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  std::vector<std::string> fields(1);
  bool quoted = false;
  bool was_quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c != '"') {
        fields.back() += c;
      } else if (i + 1 < line.size() && line[i + 1] == '"') {
        fields.back() += '"';
        ++i;
      } else {
        quoted = false;
      }
    } else if (c == ',') {
      fields.emplace_back();
      was_quoted = false;
    } else if (c == '"' && fields.back().empty() && !was_quoted) {
      quoted = was_quoted = true;
    } else {
      fields.back() += c;
    }
  }
  if (quoted) throw ParseError("unterminated quoted CSV field", line_number);
  return fields;
}

std::vector<std::string> split_whitespace(std::string_view text) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && is_space(text[i])) ++i;
    const std::size_t start = i;
    while (i < text.size() && !is_space(text[i])) ++i;
    if (i > start) out.emplace_back(text.substr(start, i - start));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Normalization and aggregation

std::vector<std::string> normalize_tags(const std::vector<std::string>& tags,
                                        const NormalizationPolicy& policy) {
  std::vector<std::string> out;
  out.reserve(tags.size());
  std::unordered_set<std::string> seen;
  for (const auto& raw : tags) {
    std::string_view v = raw;
    if (policy.trim_whitespace) v = trim(v);
    std::string tag = policy.case_fold ? ascii_lower(v) : std::string(v);
    if (policy.drop_empty && trim(tag).empty()) continue;
    if (seen.insert(tag).second) out.push_back(std::move(tag));
  }
  return out;
}

void ItemTagSets::add(std::string_view url, const std::vector<std::string>& tags) {
  auto it = items_.find(url);
  if (it == items_.end()) it = items_.emplace(std::string(url), std::set<std::string>{}).first;
  it->second.insert(tags.begin(), tags.end());
}

void ItemTagSets::merge(const ItemTagSets& other) {
  for (const auto& [url, tags] : other.items_) items_[url].insert(tags.begin(), tags.end());
}

std::size_t ItemTagSets::distinct_tags() const {
  std::set<std::string_view> all;
  for (const auto& [url, tags] : items_) all.insert(tags.begin(), tags.end());
  return all.size();
}

ItemTagSets aggregate_by_url(const std::vector<PostRecord>& records,
                             const NormalizationPolicy& policy) {
  ItemTagSets out;
  for (const auto& r : records) {
    const auto url = trim(r.url);
    if (url.empty()) continue;
    out.add(url, normalize_tags(r.tags, policy));
  }
  return out;
}

std::optional<InputFormat> format_from_name(std::string_view name) {
  if (name == "jsonl" || name == "json") return InputFormat::jsonl;
  if (name == "csv") return InputFormat::csv;
  if (name == "rss" || name == "xml") return InputFormat::rss;
  return std::nullopt;
}

namespace {

ReadStats read_jsonl(std::istream& in, const RecordSink& sink) {
  ReadStats stats;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    sink(parse_jsonl_record(line, line_no));
    ++stats.records;
  }
  return stats;
}

ReadStats read_csv(std::istream& in, const RecordSink& sink) {
  ReadStats stats;
  std::string line;
  std::size_t line_no = 0;
  std::optional<std::size_t> url_col, time_col, tags_col;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    auto fields = split_csv_line(line, line_no);
    if (!url_col) {
      for (std::size_t i = 0; i < fields.size(); ++i) {
        const auto name = ascii_lower(trim(fields[i]));
        if (name == "url") url_col = i;
        if (name == "time") time_col = i;
        if (name == "tags") tags_col = i;
      }
      if (!url_col || !tags_col) throw ParseError("CSV header must name url and tags columns", line_no);
      continue;
    }
    const std::size_t need = std::max({*url_col, *tags_col, time_col.value_or(0)}) + 1;
    if (fields.size() < need) throw ParseError("CSV row has too few columns", line_no);
    PostRecord rec;
    rec.url = std::string(trim(fields[*url_col]));
    if (rec.url.empty()) throw ParseError("empty url", line_no);
    rec.tags = split_whitespace(fields[*tags_col]);
    if (time_col && !trim(fields[*time_col]).empty()) {
      rec.timestamp = parse_iso8601(fields[*time_col]);
      if (!rec.timestamp) throw ParseError("time is not ISO-8601", line_no);
    }
    sink(std::move(rec));
    ++stats.records;
  }
  return stats;
}

}  // namespace

ReadStats read_records(std::istream& in, InputFormat format, const RecordSink& sink) {
  switch (format) {
    case InputFormat::jsonl:
      return read_jsonl(in, sink);
    case InputFormat::csv:
      return read_csv(in, sink);
    case InputFormat::rss: {
      const std::string doc{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
      auto parsed = parse_delicious_rss(doc);
      ReadStats stats{parsed.records.size(), parsed.skipped_items};
      for (auto& r : parsed.records) sink(std::move(r));
      return stats;
    }
  }
  throw InvalidArgument("unknown input format");
}

ItemTagSets aggregate_stream(std::istream& in, InputFormat format,
                             const NormalizationPolicy& policy, ReadStats* stats) {
  ItemTagSets out;
  const auto s = read_records(in, format, [&](PostRecord&& r) {
    out.add(trim(r.url), normalize_tags(r.tags, policy));
  });
  if (stats) *stats = s;
  return out;
}

}  // namespace tagnet::ingest
