#include "hothand/ingest.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <istream>
#include <map>
#include <ostream>
#include <string>

#include <json.hpp>

#include "hothand/errors.hpp"

namespace hothand {

namespace {

std::string upper(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

// Returns the ring multiplier letter and the number, or 0 for non-ring codes.
bool parse_ring(std::string_view s, char& ring, int& number) {
  if (s.size() < 2 || s.size() > 3) return false;
  ring = s[0];
  if (ring != 'S' && ring != 'D' && ring != 'T') return false;
  const auto digits = s.substr(1);
  if (digits.front() == '0') return false;
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), number);
  return ec == std::errc() && ptr == digits.data() + digits.size() && number >= 1 && number <= 20;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
  return s;
}

std::vector<std::string_view> split_csv(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(',', start);
    out.push_back(trim(line.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

int parse_int(std::string_view s, const char* column, std::size_t line) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw ParseError("column " + std::string(column) + ": '" + std::string(s) +
                         "' is not an integer",
                     line);
  }
  return v;
}

}  // namespace

bool is_valid_segment(std::string_view segment) {
  const std::string s = upper(segment);
  if (s == "BULL" || s == "25" || s == "MISS") return true;
  char ring = 0;
  int number = 0;
  return parse_ring(s, ring, number);
}

bool in_success_set(std::string_view segment) {
  const std::string s = upper(segment);
  if (s == "BULL") return true;
  char ring = 0;
  int number = 0;
  return parse_ring(s, ring, number) && ring == 'T' && number >= 15;
}

std::vector<ThrowRecord> read_raw_throws(std::istream& in) {
  static constexpr std::array<const char*, 5> kColumns = {"player_id", "leg_id", "throw_index",
                                                          "segment", "score_before"};
  std::string line;
  std::size_t line_no = 0;
  std::array<std::size_t, 5> index{};
  bool have_header = false;
  std::size_t width = 0;
  std::vector<ThrowRecord> records;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split_csv(line);
    if (!have_header) {
      for (std::size_t c = 0; c < kColumns.size(); ++c) {
        const auto it = std::find(fields.begin(), fields.end(), kColumns[c]);
        if (it == fields.end()) {
          throw ParseError(std::string("header is missing column '") + kColumns[c] + "'", line_no);
        }
        index[c] = static_cast<std::size_t>(it - fields.begin());
      }
      width = fields.size();
      have_header = true;
      continue;
    }
    if (fields.size() != width) {
      throw ParseError("expected " + std::to_string(width) + " fields, found " +
                           std::to_string(fields.size()),
                       line_no);
    }
    ThrowRecord r;
    r.player_id = std::string(fields[index[0]]);
    r.leg_id = std::string(fields[index[1]]);
    if (r.player_id.empty() || r.leg_id.empty()) throw ParseError("empty player_id or leg_id", line_no);
    r.throw_index = parse_int(fields[index[2]], "throw_index", line_no);
    r.segment = upper(fields[index[3]]);
    if (!is_valid_segment(r.segment)) {
      throw ParseError("unknown segment code '" + std::string(fields[index[3]]) + "'", line_no);
    }
    r.score_before = parse_int(fields[index[4]], "score_before", line_no);
    records.push_back(std::move(r));
  }
  if (!have_header) throw ParseError("raw throw file is empty (no header)", 1);
  return records;
}

std::string write_raw_csv(const std::vector<ThrowRecord>& records) {
  std::string out = "player_id,leg_id,throw_index,segment,score_before\n";
  for (const auto& r : records) {
    out += r.player_id + "," + r.leg_id + "," + std::to_string(r.throw_index) + "," + r.segment +
           "," + std::to_string(r.score_before) + "\n";
  }
  return out;
}

Dataset preprocess(const std::vector<ThrowRecord>& records, int truncate_at, std::size_t min_legs) {
  struct Group {
    std::string player_id;
    std::string leg_id;
    int last_index = 0;
    int last_score = kStartingScore;
    std::vector<std::uint8_t> bits;
  };
  std::vector<Group> groups;
  std::map<std::pair<std::string, std::string>, std::size_t> lookup;
  for (std::size_t n = 0; n < records.size(); ++n) {
    const auto& r = records[n];
    const std::size_t line = n + 2;  // after the header, for file-backed records
    if (!is_valid_segment(r.segment)) {
      throw ParseError("unknown segment code '" + r.segment + "'", line);
    }
    const auto key = std::make_pair(r.player_id, r.leg_id);
    auto it = lookup.find(key);
    if (it == lookup.end()) {
      it = lookup.emplace(key, groups.size()).first;
      groups.push_back({r.player_id, r.leg_id, 0, kStartingScore, {}});
    }
    Group& g = groups[it->second];
    const std::string where = " in leg " + r.player_id + "/" + r.leg_id + " (record " +
                              std::to_string(n + 1) + ")";
    if (r.throw_index != g.last_index + 1) {
      throw StructuralError("throw_index " + std::to_string(r.throw_index) + " follows " +
                            std::to_string(g.last_index) + where);
    }
    if (r.score_before > kStartingScore) {
      throw StructuralError("score_before exceeds " + std::to_string(kStartingScore) + where);
    }
    if (r.score_before > g.last_score) {
      throw StructuralError("score_before increases along the leg" + where);
    }
    g.last_index = r.throw_index;
    g.last_score = r.score_before;
    if (r.score_before >= truncate_at) {
      g.bits.push_back(in_success_set(r.segment) ? 1 : 0);
    }
  }

  std::map<std::string, std::size_t> legs_per_player;
  for (const auto& g : groups) {
    if (!g.bits.empty()) ++legs_per_player[g.player_id];
  }
  std::vector<Leg> legs;
  for (auto& g : groups) {
    if (g.bits.empty() || legs_per_player[g.player_id] < min_legs) continue;
    legs.push_back({g.player_id, g.leg_id, std::move(g.bits)});
  }
  return Dataset(std::move(legs));
}

std::string bits_string(const Leg& leg) {
  std::string s;
  s.reserve(leg.y.size());
  for (auto b : leg.y) s.push_back(b ? '1' : '0');
  return s;
}

Dataset load_binary(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::vector<Leg> legs;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(std::string("malformed JSON: ") + e.what(), line_no);
    }
    auto get = [&](const char* key) {
      if (!j.is_object() || !j.contains(key) || !j.at(key).is_string()) {
        throw ParseError(std::string("missing string field '") + key + "'", line_no);
      }
      return j.at(key).get<std::string>();
    };
    Leg leg{get("player_id"), get("leg_id"), {}};
    const std::string bits = get("bits");
    if (bits.empty()) throw ParseError("bits must be nonempty", line_no);
    for (char c : bits) {
      if (c != '0' && c != '1') {
        throw ParseError("bits may contain only '0' and '1', found '" + std::string(1, c) + "'",
                         line_no);
      }
      leg.y.push_back(c == '1' ? 1 : 0);
    }
    legs.push_back(std::move(leg));
  }
  return Dataset(std::move(legs));
}

void save_binary(const Dataset& dataset, std::ostream& out) {
  for (const auto& leg : dataset.legs()) {
    const nlohmann::json j = {
        {"player_id", leg.player_id}, {"leg_id", leg.leg_id}, {"bits", bits_string(leg)}};
    out << j.dump() << '\n';
  }
}

std::vector<ThrowRecord> synthesize_raw(const Dataset& dataset, int truncate_at) {
  static constexpr std::array<const char*, 3> kHits = {"T20", "T19", "T18"};
  static constexpr std::array<const char*, 3> kMisses = {"S20", "S1", "S5"};
  std::vector<ThrowRecord> out;
  for (const auto& leg : dataset.legs()) {
    const int T = static_cast<int>(leg.length());
    const int span = kStartingScore - truncate_at;
    for (int t = 1; t <= T; ++t) {
      const int score = kStartingScore - (t - 1) * span / T;
      const auto& names = leg.y[t - 1] ? kHits : kMisses;
      out.push_back({leg.player_id, leg.leg_id, t, names[(t - 1) % 3], score});
    }
    if (truncate_at > 0) {
      out.push_back({leg.player_id, leg.leg_id, T + 1, "S1", truncate_at - 1});
    }
  }
  return out;
}

}  // namespace hothand
