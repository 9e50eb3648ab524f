#include "sessioncomm/log_ingest.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <istream>
#include <numeric>
#include <string>
#include <utility>

#include "sessioncomm/csv.hpp"

namespace sessioncomm {

ParseError::ParseError(std::size_t line_number, const std::string& reason)
    : std::runtime_error("line " + std::to_string(line_number) + ": " + reason),
      line_number_(line_number) {}

LogFormat parse_log_format(std::string_view name) {
  if (name == "csv") return LogFormat::csv;
  if (name == "clf") return LogFormat::clf;
  throw std::invalid_argument("unknown log format '" + std::string(name) + "'");
}

namespace {

constexpr std::string_view kCsvHeader = "timestamp,user_id,object_id";

bool parse_int(std::string_view text, std::int64_t& out) {
  if (text.empty()) return false;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc{} && ptr == text.data() + text.size();
}

AccessRecord parse_csv_line(std::string_view line) {
  auto fields = csv::split_line(line);
  if (!fields) throw ParseError(0, "unterminated quoted field");
  if (fields->size() != 3) {
    throw ParseError(0, "expected 3 fields, found " + std::to_string(fields->size()));
  }
  AccessRecord rec;
  if (!parse_int(csv::trim((*fields)[0]), rec.timestamp)) {
    throw ParseError(0, "timestamp is not an integer");
  }
  if (rec.timestamp < 0) throw ParseError(0, "negative timestamp");
  rec.user_id = std::string(csv::trim((*fields)[1]));
  rec.object_id = std::string(csv::trim((*fields)[2]));
  if (rec.user_id.empty()) throw ParseError(0, "empty user_id");
  if (rec.object_id.empty()) throw ParseError(0, "empty object_id");
  return rec;
}

int month_index(std::string_view mon) {
  static constexpr std::string_view names[] = {"Jan", "Feb", "Mar", "Apr", "May", "Jun",
                                               "Jul", "Aug", "Sep", "Oct", "Nov", "Dec"};
  for (int i = 0; i < 12; ++i) {
    if (names[i] == mon) return i + 1;
  }
  return 0;
}

// [10/Oct/2000:13:55:36 -0700]
std::int64_t parse_clf_time(std::string_view t) {
  auto fail = [] { throw ParseError(0, "malformed timestamp"); };
  if (t.size() < 20 || t[2] != '/' || t[6] != '/' || t[11] != ':' || t[14] != ':' || t[17] != ':') {
    fail();
  }
  std::int64_t d = 0, y = 0, hh = 0, mm = 0, ss = 0;
  if (!parse_int(t.substr(0, 2), d) || !parse_int(t.substr(7, 4), y) ||
      !parse_int(t.substr(12, 2), hh) || !parse_int(t.substr(15, 2), mm) ||
      !parse_int(t.substr(18, 2), ss)) {
    fail();
  }
  int mon = month_index(t.substr(3, 3));
  if (mon == 0) fail();
  using namespace std::chrono;
  year_month_day ymd{year{static_cast<int>(y)}, month{static_cast<unsigned>(mon)},
                     day{static_cast<unsigned>(d)}};
  if (!ymd.ok() || hh > 23 || mm > 59 || ss > 60) fail();
  std::int64_t secs = sys_days{ymd}.time_since_epoch().count() * 86400 + hh * 3600 + mm * 60 + ss;

  std::string_view zone = csv::trim(t.substr(20));
  if (!zone.empty()) {
    std::int64_t off = 0;
    if (zone.size() != 5 || (zone[0] != '+' && zone[0] != '-') || !parse_int(zone.substr(1), off)) {
      fail();
    }
    std::int64_t off_secs = (off / 100) * 3600 + (off % 100) * 60;
    secs -= zone[0] == '+' ? off_secs : -off_secs;
  }
  if (secs < 0) throw ParseError(0, "negative timestamp");
  return secs;
}

}  // namespace

AccessRecord parse_clf_line(std::string_view line) {
  // host ident authuser [time] "METHOD path PROTO" status bytes
  auto sp = line.find(' ');
  if (sp == std::string_view::npos || sp == 0) throw ParseError(0, "missing client host");
  std::string host(line.substr(0, sp));

  auto lb = line.find('[', sp);
  auto rb = lb == std::string_view::npos ? lb : line.find(']', lb);
  if (rb == std::string_view::npos) throw ParseError(0, "missing [timestamp]");
  std::int64_t ts = parse_clf_time(line.substr(lb + 1, rb - lb - 1));

  auto q1 = line.find('"', rb);
  auto q2 = q1 == std::string_view::npos ? q1 : line.find('"', q1 + 1);
  if (q2 == std::string_view::npos) throw ParseError(0, "missing quoted request");
  std::string_view request = line.substr(q1 + 1, q2 - q1 - 1);
  auto a = request.find(' ');
  if (a == std::string_view::npos) throw ParseError(0, "request has no path");
  auto b = request.find(' ', a + 1);
  std::string_view path = request.substr(a + 1, b == std::string_view::npos ? b : b - a - 1);
  if (path.empty()) throw ParseError(0, "empty request path");

  return AccessRecord{ts, std::move(host), std::string(path)};
}

ParseResult parse_log(std::istream& in, LogFormat format, ParseMode mode) {
  ParseResult result;
  std::string raw;
  std::size_t line_number = 0;
  bool header_seen = format != LogFormat::csv;

  while (std::getline(in, raw)) {
    ++line_number;
    std::string_view line = csv::strip_cr(raw);
    if (csv::trim(line).empty()) continue;
    try {
      if (!csv::valid_utf8(line)) throw ParseError(0, "invalid UTF-8");
      if (!header_seen) {
        header_seen = true;
        std::string compact;
        for (char c : line) {
          if (c != ' ' && c != '\t') compact.push_back(c);
        }
        if (compact != kCsvHeader) throw ParseError(0, "missing header 'timestamp,user_id,object_id'");
        continue;
      }
      result.records.push_back(format == LogFormat::csv ? parse_csv_line(line) : parse_clf_line(line));
    } catch (const ParseError& e) {
      std::string reason = e.what();
      reason = reason.substr(reason.find(": ") + 2);
      if (mode == ParseMode::strict) throw ParseError(line_number, reason);
      result.rejects.push_back({line_number, std::move(reason)});
    }
  }
  return result;
}

std::vector<AccessRecord> filter_records(const std::vector<AccessRecord>& records,
                                         const ObjectPredicate& allowed) {
  std::vector<AccessRecord> out;
  std::copy_if(records.begin(), records.end(), std::back_inserter(out),
               [&](const AccessRecord& r) { return allowed(r.object_id); });
  return out;
}

std::unordered_set<std::string> read_allow_list(std::istream& in) {
  std::unordered_set<std::string> out;
  std::string raw;
  while (std::getline(in, raw)) {
    std::string_view line = csv::trim(csv::strip_cr(raw));
    if (line.empty() || line.front() == '#') continue;
    out.emplace(line);
  }
  return out;
}

std::vector<std::string> Session::object_set() const {
  std::vector<std::string> out;
  out.reserve(object_counts.size());
  for (const auto& [obj, count] : object_counts) out.push_back(obj);
  return out;
}

Session make_session(std::size_t id, std::string user_id, std::vector<Request> requests) {
  Session s;
  s.session_id = id;
  s.user_id = std::move(user_id);
  s.requests = std::move(requests);
  for (const auto& r : s.requests) ++s.object_counts[r.object_id];
  return s;
}

std::vector<Session> sessionize(const std::vector<AccessRecord>& records,
                                const SessionizationConfig& config) {
  if (config.inactivity_threshold <= 0) {
    throw std::invalid_argument("inactivity_threshold must be positive");
  }

  // Record indices per user, users in sorted order.
  std::map<std::string_view, std::vector<std::size_t>> by_user;
  for (std::size_t i = 0; i < records.size(); ++i) by_user[records[i].user_id].push_back(i);

  std::vector<std::vector<std::size_t>*> users;
  users.reserve(by_user.size());
  for (auto& [user, idx] : by_user) users.push_back(&idx);

  std::vector<std::vector<Session>> per_user(users.size());
  const auto user_count = static_cast<std::ptrdiff_t>(users.size());
#pragma omp parallel for schedule(dynamic, 16)
  for (std::ptrdiff_t u = 0; u < user_count; ++u) {
    auto& idx = *users[static_cast<std::size_t>(u)];
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
      return records[a].timestamp < records[b].timestamp;
    });
    auto& out = per_user[static_cast<std::size_t>(u)];
    std::vector<Request> current;
    for (std::size_t i : idx) {
      const auto& rec = records[i];
      if (!current.empty() && rec.timestamp - current.back().timestamp > config.inactivity_threshold) {
        out.push_back(make_session(0, rec.user_id, std::move(current)));
        current.clear();
      }
      current.push_back({rec.timestamp, rec.object_id});
    }
    if (!current.empty()) out.push_back(make_session(0, records[idx.front()].user_id, std::move(current)));
  }

  std::vector<Session> sessions;
  for (auto& v : per_user) {
    for (auto& s : v) sessions.push_back(std::move(s));
  }
  std::sort(sessions.begin(), sessions.end(), [](const Session& a, const Session& b) {
    if (a.first_timestamp() != b.first_timestamp()) return a.first_timestamp() < b.first_timestamp();
    return a.user_id < b.user_id;
  });
  for (std::size_t i = 0; i < sessions.size(); ++i) sessions[i].session_id = i;
  return sessions;
}

}  // namespace sessioncomm
