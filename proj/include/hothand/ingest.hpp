#pragma once

// Raw throw logs -> binary analysis dataset, and the binary leg file format.
//
// Raw CSV (UTF-8, header required, columns in any order):
//   player_id,leg_id,throw_index,segment,score_before
//   anderson,1,1,T20,501
// Segment vocabulary: S1-S20, D1-D20, T1-T20, BULL (inner bull), 25 (outer
// bull), MISS. A throw is a success iff it lands in T15-T20 or BULL.
//
// Binary legs (JSONL, one leg per line):
//   {"bits":"001011011","leg_id":"1","player_id":"anderson"}

#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "hothand/model.hpp"

namespace hothand {

inline constexpr int kStartingScore = 501;
inline constexpr int kDefaultTruncation = 180;
inline constexpr std::size_t kDefaultMinLegs = 50;

bool is_valid_segment(std::string_view segment);
/// Membership in {T15, ..., T20, BULL}.
bool in_success_set(std::string_view segment);

/// Throws ParseError (with the 1-based line number) on a missing header
/// column, a malformed number or an unknown segment code.
std::vector<ThrowRecord> read_raw_throws(std::istream& in);
std::string write_raw_csv(const std::vector<ThrowRecord>& records);

/// Keeps throws with score_before >= truncate_at, codes successes, drops
/// empty legs and then players with fewer than min_legs retained legs.
/// Legs keep their order of first appearance. Throws ParseError on an
/// unknown segment and StructuralError on a throw_index gap, score_before
/// above 501 or score_before increasing along a leg.
Dataset preprocess(const std::vector<ThrowRecord>& records, int truncate_at = kDefaultTruncation,
                   std::size_t min_legs = kDefaultMinLegs);

/// Throws ParseError (line number = record number) on malformed JSON, a
/// missing field or bits that are empty or not over {0, 1}.
Dataset load_binary(std::istream& in);
void save_binary(const Dataset& dataset, std::ostream& out);

std::string bits_string(const Leg& leg);

/// Raw log whose truncation at `truncate_at` reproduces every leg of the
/// dataset: hits become T20/T19/T18, misses S20/S1/S5, score_before is
/// spread evenly between 501 and truncate_at, and one throw below the
/// threshold closes each leg. Scores are synthetic, not dart arithmetic.
std::vector<ThrowRecord> synthesize_raw(const Dataset& dataset,
                                        int truncate_at = kDefaultTruncation);

}  // namespace hothand
