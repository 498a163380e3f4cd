#include <doctest.h>

#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "eval.hpp"

using namespace tre;

namespace {

RelationAssertion rel(const std::string& doc, const std::string& a,
                      const std::string& b, Label l) {
  RelationAssertion r;
  r.doc_id = doc;
  r.first = a;
  r.second = b;
  r.relation = l;
  return r;
}

}  // namespace

TEST_CASE("precision, recall, F1 on a mixed fixture") {
  // gold: 4 relations; predictions: 2 correct, 2 wrong -> P=0.5, R=0.5
  std::vector<RelationAssertion> gold = {
      rel("d1", "attack", "arrest", Label::Before),
      rel("d1", "eat", "wash", Label::After),
      rel("d2", "invade", "withdraw", Label::Before),
      rel("d2", "win", "celebrate", Label::Before),
  };
  std::vector<RelationAssertion> pred = {
      rel("d1", "attack", "arrest", Label::Before),  // TP
      rel("d1", "eat", "wash", Label::Before),       // wrong direction
      rel("d2", "invade", "withdraw", Label::Before),  // TP
      rel("d2", "lose", "celebrate", Label::Before),   // no such gold pair
  };
  auto report = score_before_after(pred, gold);
  CHECK(report.tp == 2);
  CHECK(report.fp == 2);
  CHECK(report.fn == 2);
  CHECK(report.precision == doctest::Approx(0.5));
  CHECK(report.recall == doctest::Approx(0.5));
  CHECK(report.f1 == doctest::Approx(0.5));
}

TEST_CASE("P=1.0 R=0.5 yields F1 two-thirds") {
  std::vector<RelationAssertion> gold = {
      rel("d", "a", "b", Label::Before),
      rel("d", "c", "e", Label::Before),
  };
  std::vector<RelationAssertion> pred = {rel("d", "a", "b", Label::Before)};
  auto report = score_before_after(pred, gold);
  CHECK(report.precision == doctest::Approx(1.0));
  CHECK(report.recall == doctest::Approx(0.5));
  CHECK(report.f1 == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("BEFORE(a,b) matches AFTER(b,a)") {
  std::vector<RelationAssertion> gold = {rel("d", "arrest", "attack", Label::After)};
  std::vector<RelationAssertion> pred = {rel("d", "attack", "arrest", Label::Before)};
  auto report = score_before_after(pred, gold);
  CHECK(report.tp == 1);
  CHECK(report.fp == 0);
  CHECK(report.fn == 0);

  // but the same textual order with a flipped relation is wrong
  std::vector<RelationAssertion> wrong = {rel("d", "arrest", "attack", Label::Before)};
  auto bad = score_before_after(wrong, gold);
  CHECK(bad.tp == 0);
  CHECK(bad.fp == 1);
  CHECK(bad.fn == 1);
}

TEST_CASE("doc id participates in matching") {
  std::vector<RelationAssertion> gold = {rel("d1", "a", "b", Label::Before)};
  std::vector<RelationAssertion> pred = {rel("d2", "a", "b", Label::Before)};
  auto report = score_before_after(pred, gold);
  CHECK(report.tp == 0);
  CHECK(report.fp == 1);
  CHECK(report.fn == 1);
}

TEST_CASE("zero predictions and zero gold use the documented conventions") {
  std::vector<RelationAssertion> gold = {rel("d", "a", "b", Label::Before)};
  auto no_pred = score_before_after({}, gold);
  CHECK(no_pred.precision == 0.0);
  CHECK(no_pred.recall == 0.0);
  CHECK(no_pred.f1 == 0.0);

  auto no_gold = score_before_after({rel("d", "a", "b", Label::Before)}, {});
  CHECK(no_gold.precision == 0.0);
  CHECK(no_gold.recall == 0.0);
  CHECK(no_gold.fp == 1);
}

TEST_CASE("duplicate predictions for one pair slot are rejected") {
  std::vector<RelationAssertion> gold = {rel("d", "a", "b", Label::Before)};
  std::vector<RelationAssertion> pred = {
      rel("d", "a", "b", Label::Before),
      rel("d", "b", "a", Label::After),  // same assertion, same slot
  };
  CHECK_THROWS_AS(score_before_after(pred, gold), DataError);
}

TEST_CASE("gold TSV loads") {
  std::filesystem::create_directories("fixtures_tmp");
  {
    std::ofstream out("fixtures_tmp/gold.tsv");
    out << "d1\tattack\tarrest|pat:PERSON\tBEFORE\n";
    out << "d2\teat\twash|pat:hand\tAFTER\n";
  }
  auto gold = read_gold_tsv("fixtures_tmp/gold.tsv");
  REQUIRE(gold.size() == 2);
  CHECK(gold[0].doc_id == "d1");
  CHECK(gold[0].relation == Label::Before);
  CHECK(gold[1].second == "wash|pat:hand");
  CHECK(gold[1].relation == Label::After);

  {
    std::ofstream out("fixtures_tmp/bad_gold.tsv");
    out << "d1\tattack\tarrest\tMAYBE\n";
  }
  CHECK_THROWS_AS(read_gold_tsv("fixtures_tmp/bad_gold.tsv"), DataError);
}

namespace {

LabeledInstance labeled(const std::string& sent, Label l, double conf) {
  LabeledInstance li;
  li.instance.doc_id = "d";
  li.instance.sent_id = sent;
  li.instance.pair = PairKey("a", "b");
  li.instance.tokens = {"x", "y"};
  li.predicted = l;
  li.confidence = conf;
  return li;
}

}  // namespace

TEST_CASE("high-confidence sampling is strict and deterministic") {
  std::vector<LabeledInstance> pool;
  for (int k = 0; k < 50; ++k)
    pool.push_back(labeled("s" + std::to_string(k), Label::Before,
                           0.8 + 0.004 * k));
  pool.push_back(labeled("exact", Label::Before, 0.8));   // not > 0.8
  pool.push_back(labeled("other", Label::Other, 0.99));   // OTHER excluded

  auto sample = sample_high_confidence(pool, 0.8, 10, 7);
  REQUIRE(sample.size() == 10);
  for (const auto& li : sample) {
    CHECK(li.confidence > 0.8);
    CHECK(li.instance.sent_id != "exact");
    CHECK(li.instance.sent_id != "other");
    CHECK(li.predicted == Label::Before);
  }
  auto again = sample_high_confidence(pool, 0.8, 10, 7);
  REQUIRE(again.size() == sample.size());
  for (std::size_t k = 0; k < sample.size(); ++k)
    CHECK(again[k].instance.sent_id == sample[k].instance.sent_id);

  // asking for more than exists returns everything eligible (49 of 52)
  auto all = sample_high_confidence(pool, 0.8, 1000, 7);
  CHECK(all.size() == 49);
}

TEST_CASE("annotation sheet quotes embedded commas") {
  std::filesystem::create_directories("fixtures_tmp");
  auto li = labeled("s1", Label::After, 0.91);
  li.instance.tokens = {"one,two", "three"};
  write_annotation_sheet("fixtures_tmp/sheet.csv", {li});
  std::ifstream in("fixtures_tmp/sheet.csv");
  std::string header, row;
  REQUIRE(std::getline(in, header));
  REQUIRE(std::getline(in, row));
  CHECK(header.find("verdict") != std::string::npos);
  CHECK(row.find("\"one,two three\"") != std::string::npos);
  CHECK(row.find("AFTER") != std::string::npos);
  // the verdict column is left blank
  CHECK(row.back() == ',');
}

namespace {

std::vector<RegularPair> chain_pairs() {
  // attack -> arrest -> convict
  RegularPair p1;
  p1.key = PairKey("arrest", "attack");
  p1.orientation = Orientation::Backward;  // attack precedes arrest
  p1.provenance = 0;
  p1.support_backward = 12;
  RegularPair p2;
  p2.key = PairKey("arrest", "convict");
  p2.orientation = Orientation::Forward;
  p2.provenance = 1;
  p2.support_forward = 20;
  return {p1, p2};
}

}  // namespace

TEST_CASE("graph export: JSON chain has 3 nodes and 2 edges") {
  auto json_text = export_graph(chain_pairs(), GraphFormat::Json);
  auto j = nlohmann::json::parse(json_text);
  CHECK(j.at("nodes").size() == 3);
  REQUIRE(j.at("edges").size() == 2);
  // edges sort by (from, to)
  CHECK(j["edges"][0].at("from") == "arrest");
  CHECK(j["edges"][0].at("to") == "convict");
  CHECK(j["edges"][0].at("provenance") == "1");
  CHECK(j["edges"][0].at("support") == 20);
  CHECK(j["edges"][1].at("from") == "attack");
  CHECK(j["edges"][1].at("to") == "arrest");
  CHECK(j["edges"][1].at("provenance") == "SEED");
}

TEST_CASE("graph export: DOT has before-labeled edges and escapes quotes") {
  auto pairs = chain_pairs();
  pairs[0].key = PairKey("say \"no\"", "attack");
  auto dot = export_graph(pairs, GraphFormat::Dot);
  CHECK(dot.find("digraph") != std::string::npos);
  CHECK(dot.find("label=\"before\"") != std::string::npos);
  CHECK(dot.find("\\\"no\\\"") != std::string::npos);
  CHECK(dot.find("->") != std::string::npos);
}

TEST_CASE("graph export deduplicates repeated pairs and handles empty input") {
  auto pairs = chain_pairs();
  pairs.push_back(pairs[0]);
  auto j = nlohmann::json::parse(export_graph(pairs, GraphFormat::Json));
  CHECK(j.at("edges").size() == 2);

  auto empty = nlohmann::json::parse(export_graph({}, GraphFormat::Json));
  CHECK(empty.at("nodes").empty());
  CHECK(empty.at("edges").empty());
}
