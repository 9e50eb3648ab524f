#include "sessioncomm/io.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <system_error>

#include "sessioncomm/csv.hpp"

namespace sessioncomm {

namespace csv {

std::optional<std::vector<std::string>> split_line(std::string_view line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  bool was_quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur.push_back(c);
      }
    } else if (c == '"' && trim(cur).empty() && !was_quoted) {
      cur.clear();
      quoted = was_quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
      was_quoted = false;
    } else {
      cur.push_back(c);
    }
  }
  if (quoted) return std::nullopt;
  fields.push_back(std::move(cur));
  return fields;
}

std::string escape(std::string_view field) {
  const bool needs = field.find_first_of(",\"") != std::string_view::npos ||
                     (!field.empty() && (field.front() == ' ' || field.back() == ' ' ||
                                         field.front() == '\t' || field.back() == '\t'));
  if (!needs) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

std::string_view strip_cr(std::string_view s) {
  if (!s.empty() && s.back() == '\r') s.remove_suffix(1);
  return s;
}

bool valid_utf8(std::string_view s) {
  std::size_t i = 0;
  while (i < s.size()) {
    const auto c = static_cast<unsigned char>(s[i]);
    std::size_t len = 0;
    std::uint32_t cp = 0;
    if (c < 0x80) {
      ++i;
      continue;
    } else if ((c & 0xE0) == 0xC0) {
      len = 2;
      cp = c & 0x1F;
    } else if ((c & 0xF0) == 0xE0) {
      len = 3;
      cp = c & 0x0F;
    } else if ((c & 0xF8) == 0xF0) {
      len = 4;
      cp = c & 0x07;
    } else {
      return false;
    }
    if (i + len > s.size()) return false;
    for (std::size_t k = 1; k < len; ++k) {
      const auto cc = static_cast<unsigned char>(s[i + k]);
      if ((cc & 0xC0) != 0x80) return false;
      cp = (cp << 6) | (cc & 0x3F);
    }
    // overlong forms, surrogates, out of range
    if ((len == 2 && cp < 0x80) || (len == 3 && cp < 0x800) || (len == 4 && cp < 0x10000) || cp > 0x10FFFF ||
        (cp >= 0xD800 && cp <= 0xDFFF)) {
      return false;
    }
    i += len;
  }
  return true;
}

std::string format_double(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

}  // namespace csv

namespace io {

namespace {

std::vector<std::string> expect_fields(std::string_view line, std::size_t count, std::size_t line_number,
                                       const char* what) {
  auto fields = csv::split_line(line);
  if (!fields || fields->size() != count) {
    throw FormatError(std::string(what) + " line " + std::to_string(line_number) + ": expected " +
                      std::to_string(count) + " fields");
  }
  for (auto& f : *fields) f = std::string(csv::trim(f));
  return *fields;
}

template <typename T>
T parse_number(std::string_view text, std::size_t line_number, const char* what) {
  T value{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
    throw FormatError(std::string(what) + " line " + std::to_string(line_number) + ": bad number '" +
                      std::string(text) + "'");
  }
  return value;
}

// Calls fn(line_number, line) for every non-blank line after the header.
template <typename Fn>
void for_each_row(std::istream& in, std::string_view header, const char* what, Fn&& fn) {
  std::string raw;
  std::size_t line_number = 0;
  bool seen_header = false;
  while (std::getline(in, raw)) {
    ++line_number;
    std::string_view line = csv::strip_cr(raw);
    if (csv::trim(line).empty()) continue;
    if (!seen_header) {
      if (line != header) throw FormatError(std::string(what) + ": missing header '" + std::string(header) + "'");
      seen_header = true;
      continue;
    }
    fn(line_number, line);
  }
  if (!seen_header) throw FormatError(std::string(what) + ": empty file");
}

}  // namespace

void write_records_csv(std::ostream& out, const std::vector<AccessRecord>& records) {
  out << "timestamp,user_id,object_id\n";
  for (const auto& r : records) {
    out << r.timestamp << ',' << csv::escape(r.user_id) << ',' << csv::escape(r.object_id) << '\n';
  }
}

void write_rejects_csv(std::ostream& out, const std::vector<Reject>& rejects) {
  out << "line_number,reason\n";
  for (const auto& r : rejects) out << r.line_number << ',' << csv::escape(r.reason) << '\n';
}

void write_sessions_jsonl(std::ostream& out, const std::vector<Session>& sessions) {
  for (const auto& s : sessions) {
    nlohmann::json requests = nlohmann::json::array();
    for (const auto& r : s.requests) requests.push_back({{"timestamp", r.timestamp}, {"object_id", r.object_id}});
    nlohmann::json j = {{"session_id", s.session_id}, {"user_id", s.user_id}, {"requests", std::move(requests)}};
    out << j.dump() << '\n';
  }
}

std::vector<Session> read_sessions_jsonl(std::istream& in) {
  std::vector<Session> sessions;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (csv::trim(csv::strip_cr(line)).empty()) continue;
    try {
      auto j = nlohmann::json::parse(line);
      std::vector<Request> requests;
      for (const auto& r : j.at("requests")) {
        requests.push_back({r.at("timestamp").get<std::int64_t>(), r.at("object_id").get<std::string>()});
      }
      if (requests.empty()) throw FormatError("session without requests");
      sessions.push_back(
          make_session(j.at("session_id").get<std::size_t>(), j.at("user_id").get<std::string>(), std::move(requests)));
    } catch (const nlohmann::json::exception& e) {
      throw FormatError("sessions line " + std::to_string(line_number) + ": " + e.what());
    }
    if (sessions.back().session_id != sessions.size() - 1) {
      throw FormatError("sessions line " + std::to_string(line_number) + ": session ids must be dense and ordered");
    }
  }
  return sessions;
}

void write_edge_list(std::ostream& out, const SessionGraph& graph) {
  out << "p,q,weight\n";
  const auto& ids = graph.session_ids();
  for (const auto& e : graph.edges()) {
    out << ids[e.p] << ',' << ids[e.q] << ',' << csv::format_double(e.weight) << '\n';
  }
}

std::vector<Edge> read_edge_list(std::istream& in) {
  std::vector<Edge> edges;
  for_each_row(in, "p,q,weight", "edges", [&](std::size_t ln, std::string_view line) {
    auto f = expect_fields(line, 3, ln, "edges");
    edges.push_back({parse_number<std::size_t>(f[0], ln, "edges"), parse_number<std::size_t>(f[1], ln, "edges"),
                     parse_number<double>(f[2], ln, "edges")});
  });
  return edges;
}

nlohmann::json to_json(const GraphStats& stats) {
  return {{"nodes", stats.nodes},
          {"edges", stats.edges},
          {"components", stats.components},
          {"isolated", stats.isolated},
          {"weight_histogram", stats.weight_histogram}};
}

nlohmann::json to_json(const CommunitySpectrum& spectrum) {
  nlohmann::json comms = nlohmann::json::array();
  for (const auto& c : spectrum.communities) {
    comms.push_back({{"index", c.index},
                     {"eigenvalue", c.eigenvalue},
                     {"iterations", c.iterations},
                     {"residual", c.residual},
                     {"pole", c.pole},
                     {"authority", c.authority},
                     {"hub", c.hub}});
  }
  const auto& cfg = spectrum.config;
  return {{"n", spectrum.n},
          {"config",
           {{"k", cfg.k},
            {"tolerance", cfg.tolerance},
            {"max_iterations", cfg.max_iterations},
            {"seed", cfg.seed},
            {"split_poles", cfg.split_poles}}},
          {"communities", std::move(comms)}};
}

CommunitySpectrum spectrum_from_json(const nlohmann::json& j) {
  try {
    CommunitySpectrum s;
    s.n = j.at("n").get<std::size_t>();
    const auto& cfg = j.at("config");
    s.config.k = cfg.at("k").get<std::size_t>();
    s.config.tolerance = cfg.at("tolerance").get<double>();
    s.config.max_iterations = cfg.at("max_iterations").get<std::size_t>();
    s.config.seed = cfg.at("seed").get<std::uint64_t>();
    s.config.split_poles = cfg.at("split_poles").get<bool>();
    for (const auto& c : j.at("communities")) {
      Community comm;
      comm.index = c.at("index").get<std::size_t>();
      comm.eigenvalue = c.at("eigenvalue").get<double>();
      comm.iterations = c.at("iterations").get<std::size_t>();
      comm.residual = c.at("residual").get<double>();
      comm.pole = c.at("pole").get<std::string>();
      comm.authority = c.at("authority").get<std::vector<double>>();
      comm.hub = c.at("hub").get<std::vector<double>>();
      if (comm.authority.size() != s.n || comm.hub.size() != s.n) throw FormatError("spectrum: vector length != n");
      s.communities.push_back(std::move(comm));
    }
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("spectrum: ") + e.what());
  }
}

void write_rank_table(std::ostream& out, const Ranking& ranking) {
  out << "session_id,rank,weight\n";
  for (auto row : ranking.order) {
    out << row << ',' << csv::format_double(ranking.rank[row]) << ',' << csv::format_double(ranking.weight[row])
        << '\n';
  }
}

void write_distance_csv(std::ostream& out, const DistanceMatrix& d) {
  out << "community";
  for (const auto& l : d.labels) out << ',' << csv::escape(l);
  out << '\n';
  for (std::size_t a = 0; a < d.k; ++a) {
    out << csv::escape(d.labels[a]);
    for (std::size_t b = 0; b < d.k; ++b) out << ',' << csv::format_double(d(a, b));
    out << '\n';
  }
}

DistanceMatrix read_distance_csv(std::istream& in) {
  std::string raw;
  std::size_t line_number = 0;
  DistanceMatrix d;
  bool header = false;
  while (std::getline(in, raw)) {
    ++line_number;
    std::string_view line = csv::strip_cr(raw);
    if (csv::trim(line).empty()) continue;
    auto fields = csv::split_line(line);
    if (!fields) throw FormatError("distances line " + std::to_string(line_number) + ": bad quoting");
    if (!header) {
      if (fields->empty() || (*fields)[0] != "community") throw FormatError("distances: missing header");
      d.labels.assign(fields->begin() + 1, fields->end());
      d.k = d.labels.size();
      header = true;
      continue;
    }
    if (fields->size() != d.k + 1) throw FormatError("distances line " + std::to_string(line_number) + ": width");
    for (std::size_t b = 0; b < d.k; ++b) {
      d.values.push_back(parse_number<double>(csv::trim((*fields)[b + 1]), line_number, "distances"));
    }
  }
  if (!header || d.values.size() != d.k * d.k) throw FormatError("distances: expected a square matrix");
  return d;
}

nlohmann::json category_report(const std::vector<CategoryReportEntry>& entries, bool with_catalog,
                               std::size_t unranked_sessions) {
  auto list = [](const std::vector<ScoredLabel>& v) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& s : v) a.push_back({{"label", s.label}, {"score", s.score}});
    return a;
  };
  nlohmann::json comms = nlohmann::json::array();
  for (const auto& e : entries) {
    comms.push_back({{"community", e.community},
                     {"members", e.split.members.size()},
                     {"non_members", e.split.non_members.size()},
                     {"indifferent", e.split.indifferent.size()},
                     {"best", list(e.scores.best)},
                     {"worst", list(e.scores.worst)}});
  }
  return {{"unit", with_catalog ? "category" : "object"},
          {"unranked_sessions", unranked_sessions},
          {"communities", std::move(comms)}};
}

nlohmann::json to_json(const Dendrogram& dendrogram, const std::vector<std::string>& labels) {
  auto label_of = [&](std::size_t i) { return i < labels.size() ? labels[i] : "C" + std::to_string(i + 1); };
  std::vector<nlohmann::json> nodes(dendrogram.leaves);
  for (std::size_t i = 0; i < dendrogram.leaves; ++i) nodes[i] = {{"community", label_of(i)}, {"index", i}};

  nlohmann::json merges = nlohmann::json::array();
  std::size_t step = 0;
  for (const auto& m : dendrogram.merges) {
    ++step;
    merges.push_back({{"step", step}, {"a", m.cluster_a}, {"b", m.cluster_b}, {"height", m.height}});
    // Slot of a cluster is its smallest member.
    const std::size_t a = m.cluster_a.front();
    const std::size_t b = m.cluster_b.front();
    std::vector<std::size_t> members = m.cluster_a;
    members.insert(members.end(), m.cluster_b.begin(), m.cluster_b.end());
    std::sort(members.begin(), members.end());
    nodes[std::min(a, b)] = {{"height", m.height},
                             {"members", members},
                             {"children", nlohmann::json::array({std::move(nodes[a]), std::move(nodes[b])})}};
  }
  nlohmann::json label_list = nlohmann::json::array();
  for (std::size_t i = 0; i < dendrogram.leaves; ++i) label_list.push_back(label_of(i));
  return {{"labels", std::move(label_list)},
          {"merges", std::move(merges)},
          {"tree", dendrogram.leaves == 0 ? nlohmann::json() : nodes[0]}};
}

void write_merge_heights_csv(std::ostream& out, const Dendrogram& dendrogram) {
  out << "step,height\n";
  std::size_t step = 0;
  for (double h : merge_heights(dendrogram)) out << ++step << ',' << csv::format_double(h) << '\n';
}

void write_embedding_csv(std::ostream& out, const Embedding2D& e, const std::vector<std::string>& labels) {
  out << "community,x,y\n";
  for (std::size_t i = 0; i < e.points.size(); ++i) {
    out << csv::escape(i < labels.size() ? labels[i] : std::to_string(i)) << ',' << csv::format_double(e.points[i][0])
        << ',' << csv::format_double(e.points[i][1]) << '\n';
  }
}

nlohmann::json embedding_summary(const Embedding2D& e) {
  return {{"stress", e.stress},
          {"iterations", e.iterations},
          {"perturbed_pairs", e.perturbed_pairs},
          {"mean_pairwise_distance", embedding_spread(e.points)}};
}

void write_truth_csv(std::ostream& out, const std::map<std::string, std::size_t>& truth) {
  out << "user_id,group\n";
  for (const auto& [user, group] : truth) out << csv::escape(user) << ',' << group << '\n';
}

std::map<std::string, std::size_t> read_truth_csv(std::istream& in) {
  std::map<std::string, std::size_t> truth;
  for_each_row(in, "user_id,group", "truth", [&](std::size_t ln, std::string_view line) {
    auto f = expect_fields(line, 2, ln, "truth");
    truth[f[0]] = parse_number<std::size_t>(f[1], ln, "truth");
  });
  return truth;
}

void write_catalog_csv(std::ostream& out, const CategoryCatalog& catalog) {
  out << "object_id,category\n";
  for (const auto& [obj, cats] : catalog) {
    for (const auto& c : cats) out << csv::escape(obj) << ',' << csv::escape(c) << '\n';
  }
}

nlohmann::json to_json(const RecoveryReport& report) {
  nlohmann::json comms = nlohmann::json::array();
  for (const auto& c : report.communities) {
    comms.push_back({{"community", c.community}, {"majority_group", c.majority_group}, {"purity", c.purity}});
  }
  return {{"top", report.top},
          {"distinct_groups", report.distinct_groups},
          {"min_purity", report.min_purity},
          {"communities", std::move(comms)}};
}

}  // namespace io
}  // namespace sessioncomm
