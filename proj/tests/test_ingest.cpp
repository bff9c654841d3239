#include <doctest.h>

#include <fstream>
#include <sstream>

#include "hothand/errors.hpp"
#include "hothand/ingest.hpp"

using namespace hothand;

namespace {

const char* const kAndersonBits[] = {
    "001011011",  "1111100",     "000111101",    "01000010101", "000110101",
    "1110000100", "110100101",   "10001001000",  "1010100001",  "110100101",
    "1011011",    "0010110100",  "00001001011",  "000001000110", "000111100"};

std::vector<ThrowRecord> read_csv(const std::string& text) {
  std::istringstream in(text);
  return read_raw_throws(in);
}

std::vector<ThrowRecord> anderson_records() {
  std::ifstream in(std::string(HOTHAND_TEST_DATA) + "/anderson_raw.csv");
  REQUIRE(in.good());
  return read_raw_throws(in);
}

}  // namespace

TEST_CASE("success set membership") {
  for (const char* s : {"T15", "T16", "T17", "T18", "T19", "T20", "BULL", "t20", "bull"}) {
    CHECK(in_success_set(s));
  }
  for (const char* s : {"T14", "S20", "D20", "25", "MISS", "T1", "D25"}) CHECK_FALSE(in_success_set(s));
  CHECK(is_valid_segment("D7"));
  CHECK(is_valid_segment("miss"));
  CHECK_FALSE(is_valid_segment("T21"));
  CHECK_FALSE(is_valid_segment("X3"));
  CHECK_FALSE(is_valid_segment("S05"));
}

TEST_CASE("truncation keeps throws at or above the threshold") {
  const auto recs = read_csv(
      "player_id,leg_id,throw_index,segment,score_before\n"
      "p,1,1,T20,501\n"
      "p,1,2,S1,441\n"
      "p,1,3,S5,440\n"
      "p,1,4,T19,435\n"
      "p,1,5,S20,378\n"
      "p,1,6,T18,358\n"
      "p,1,7,T20,304\n"
      "p,1,8,T20,244\n"
      "p,1,9,S5,184\n"
      "p,1,10,T19,179\n");
  const Dataset d = preprocess(recs, 180, 1);
  REQUIRE(d.leg_count() == 1);
  CHECK(d.legs()[0].y == std::vector<std::uint8_t>{1, 0, 0, 1, 0, 1, 1, 1, 0});
}

TEST_CASE("Anderson fixture reproduces the displayed legs") {
  const Dataset d = preprocess(anderson_records(), kDefaultTruncation, 1);
  REQUIRE(d.leg_count() == 15);
  const std::size_t lengths[] = {9, 7, 9, 11, 9, 10, 9, 11, 10, 9, 7, 10, 11, 12, 9};
  for (std::size_t l = 0; l < 15; ++l) {
    CHECK(bits_string(d.legs()[l]) == kAndersonBits[l]);
    CHECK(d.legs()[l].length() == lengths[l]);
    CHECK(d.legs()[l].leg_id == std::to_string(l + 1));
  }

  std::ifstream expected(std::string(HOTHAND_TEST_DATA) + "/anderson_legs.jsonl");
  std::stringstream want, got;
  want << expected.rdbuf();
  save_binary(d, got);
  CHECK(got.str() == want.str());
}

TEST_CASE("min-legs filter counts retained legs") {
  CHECK(preprocess(anderson_records(), kDefaultTruncation, 15).leg_count() == 15);
  CHECK(preprocess(anderson_records(), kDefaultTruncation, 16).empty());
  CHECK(preprocess(anderson_records()).empty());  // default of 50 legs
}

TEST_CASE("raw parse errors carry line numbers") {
  try {
    read_csv("player_id,leg_id,throw_index,segment,score_before\np,1,1,T20,501\np,1,2,Q7,441\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.locator() == 3);
    CHECK(std::string(e.what()).find("Q7") != std::string::npos);
  }
  CHECK_THROWS_AS(read_csv("player_id,leg_id,segment,score_before\np,1,T20,501\n"), ParseError);
  CHECK_THROWS_AS(read_csv("player_id,leg_id,throw_index,segment,score_before\np,1,x,T20,501\n"),
                  ParseError);
  CHECK_THROWS_AS(read_csv("player_id,leg_id,throw_index,segment,score_before\np,1,1,T20\n"),
                  ParseError);
  CHECK_THROWS_AS(read_csv(""), ParseError);
}

TEST_CASE("header columns may come in any order") {
  const auto recs = read_csv("segment,score_before,leg_id,player_id,throw_index\nT20,501,9,z,1\n");
  REQUIRE(recs.size() == 1);
  CHECK(recs[0].player_id == "z");
  CHECK(recs[0].leg_id == "9");
  CHECK(recs[0].throw_index == 1);
  CHECK(recs[0].score_before == 501);
}

TEST_CASE("structural errors") {
  const std::string head = "player_id,leg_id,throw_index,segment,score_before\n";
  CHECK_THROWS_AS(preprocess(read_csv(head + "p,1,1,T20,501\np,1,3,T20,441\n"), 180, 1),
                  StructuralError);
  CHECK_THROWS_AS(preprocess(read_csv(head + "p,1,1,T20,502\n"), 180, 1), StructuralError);
  CHECK_THROWS_AS(preprocess(read_csv(head + "p,1,1,T20,441\np,1,2,T20,460\n"), 180, 1),
                  StructuralError);
  std::vector<ThrowRecord> bad = {{"p", "1", 1, "Z9", 501}};
  CHECK_THROWS_AS(preprocess(bad, 180, 1), ParseError);
}

TEST_CASE("binary leg file") {
  const Dataset d({{"a", "1", {0, 1}}, {"b", "x", {1}}, {"a", "2", {1, 1, 0}}});
  std::stringstream io;
  save_binary(d, io);
  CHECK(io.str().rfind("{\"bits\":\"01\",\"leg_id\":\"1\",\"player_id\":\"a\"}\n", 0) == 0);
  CHECK(load_binary(io) == d);

  auto load = [](const std::string& s) {
    std::istringstream in(s);
    return load_binary(in);
  };
  try {
    load("{\"bits\":\"01\",\"leg_id\":\"1\",\"player_id\":\"a\"}\n{\"bits\":\"2\",\"leg_id\":\"1\",\"player_id\":\"a\"}\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.locator() == 2);
  }
  CHECK_THROWS_AS(load("{\"bits\":\"\",\"leg_id\":\"1\",\"player_id\":\"a\"}\n"), ParseError);
  CHECK_THROWS_AS(load("{\"bits\":\"1\",\"player_id\":\"a\"}\n"), ParseError);
  CHECK_THROWS_AS(load("{\"bits\":1,\"leg_id\":\"1\",\"player_id\":\"a\"}\n"), ParseError);
  CHECK_THROWS_AS(load("not json\n"), ParseError);
}

TEST_CASE("synthesized raw logs round trip and preprocessing is idempotent") {
  const Dataset d({{"a", "1", {0, 1, 1, 0, 1, 1, 1, 0, 0, 1, 1, 0}}, {"b", "1", {1}}, {"a", "2", {0, 0, 0}}});
  const auto raw = synthesize_raw(d);
  const Dataset once = preprocess(raw, kDefaultTruncation, 1);
  CHECK(once == d);
  CHECK(preprocess(synthesize_raw(once), kDefaultTruncation, 1) == once);
  std::istringstream csv(write_raw_csv(raw));
  CHECK(preprocess(read_raw_throws(csv), kDefaultTruncation, 1) == d);
}
