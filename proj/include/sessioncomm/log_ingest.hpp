#ifndef SESSIONCOMM_LOG_INGEST_HPP
#define SESSIONCOMM_LOG_INGEST_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace sessioncomm {

/// One request from an access log.
struct AccessRecord {
  std::int64_t timestamp = 0;  // seconds since epoch
  std::string user_id;
  std::string object_id;

  bool operator==(const AccessRecord&) const = default;
};

enum class LogFormat { csv, clf };
enum class ParseMode { lenient, strict };

struct Reject {
  std::size_t line_number = 0;
  std::string reason;
};

struct ParseResult {
  std::vector<AccessRecord> records;
  std::vector<Reject> rejects;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line_number, const std::string& reason);
  std::size_t line_number() const noexcept { return line_number_; }

 private:
  std::size_t line_number_;
};

LogFormat parse_log_format(std::string_view name);

/// Reads a whole log. CSV input must start with the header
/// `timestamp,user_id,object_id`. Blank lines are skipped. In lenient mode
/// malformed lines land in `rejects`; in strict mode the first one throws.
ParseResult parse_log(std::istream& in, LogFormat format, ParseMode mode = ParseMode::lenient);

/// Parses one Common Log Format line: client host becomes the user and the
/// request path becomes the object. Throws ParseError (line 0) on malformed input.
AccessRecord parse_clf_line(std::string_view line);

using ObjectPredicate = std::function<bool(std::string_view)>;

std::vector<AccessRecord> filter_records(const std::vector<AccessRecord>& records,
                                         const ObjectPredicate& allowed);

/// One object id per line; blank lines and lines starting with '#' are ignored.
std::unordered_set<std::string> read_allow_list(std::istream& in);

struct SessionizationConfig {
  std::int64_t inactivity_threshold = 1800;
};

struct Request {
  std::int64_t timestamp = 0;
  std::string object_id;

  bool operator==(const Request&) const = default;
};

struct Session {
  std::size_t session_id = 0;
  std::string user_id;
  std::vector<Request> requests;
  std::map<std::string, std::size_t> object_counts;

  /// Distinct objects of the session, sorted.
  std::vector<std::string> object_set() const;
  std::int64_t first_timestamp() const { return requests.front().timestamp; }

  bool operator==(const Session&) const = default;
};

/// Builds a session from an ordered request list, filling object_counts.
Session make_session(std::size_t id, std::string user_id, std::vector<Request> requests);

/// Splits each user's requests at gaps strictly greater than the threshold.
/// Input order does not matter; equal timestamps keep input order. Session ids
/// are dense and follow (first timestamp, user_id).
std::vector<Session> sessionize(const std::vector<AccessRecord>& records,
                                const SessionizationConfig& config = {});

}  // namespace sessioncomm

#endif  // SESSIONCOMM_LOG_INGEST_HPP
