#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cstddef>
#include <fstream>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "morphchain/error.hpp"
#include "morphchain/eval.hpp"
#include "morphchain/segmenter.hpp"
#include "morphchain/utf8.hpp"
#include "support/tempdir.hpp"

using namespace morphchain;

namespace {

std::string write_gold(const testsupport::TempDir& dir, const std::string& text) {
  auto path = (dir.path() / "gold.txt").string();
  std::ofstream out(path, std::ios::binary);
  out << text;
  return path;
}

Segmentation make_seg(const std::string& word, const std::vector<std::string>& morphs) {
  Segmentation seg;
  seg.word = word;
  seg.morphs = morphs;
  std::size_t pos = 0;
  for (std::size_t i = 0; i + 1 < morphs.size(); ++i) {
    pos += utf8::length(morphs[i]);
    seg.boundaries.push_back(pos);
  }
  return seg;
}

std::vector<std::string> random_morphs(std::mt19937& rng, const std::string& word) {
  auto cps = utf8::decode(word);
  std::vector<std::string> morphs;
  std::size_t start = 0;
  while (start < cps.size()) {
    std::uniform_int_distribution<std::size_t> pick(1, cps.size() - start);
    std::size_t len = pick(rng);
    morphs.push_back(utf8::encode(std::u32string(cps.begin() + static_cast<std::ptrdiff_t>(start),
                                                 cps.begin() + static_cast<std::ptrdiff_t>(start + len))));
    start += len;
  }
  return morphs;
}

}  // namespace

TEST_CASE("gold files parse words, alternatives, and morphs") {
  testsupport::TempDir dir;
  auto path = write_gold(dir,
                         "walking\twalk ing\n"
                         "söndürmeye\tsön dür me ye, söndür me ye\n");
  auto gold = GoldStandard::load(path);
  REQUIRE(gold.size() == 2);

  const auto& walking = gold.entries().at("walking");
  REQUIRE(walking.size() == 1);
  CHECK(walking[0] == std::vector<std::string>{"walk", "ing"});

  const auto& alts = gold.entries().at("söndürmeye");
  REQUIRE(alts.size() == 2);
  CHECK(alts[0] == std::vector<std::string>{"sön", "dür", "me", "ye"});
  CHECK(alts[1] == std::vector<std::string>{"söndür", "me", "ye"});
}

TEST_CASE("gold files merge duplicate words and skip blank lines") {
  testsupport::TempDir dir;
  auto path = write_gold(dir,
                         "evler\tev ler\n"
                         "\n"
                         "evler\tevler\n");
  auto gold = GoldStandard::load(path);
  REQUIRE(gold.size() == 1);
  const auto& alts = gold.entries().at("evler");
  REQUIRE(alts.size() == 2);
  CHECK(alts[0] == std::vector<std::string>{"ev", "ler"});
  CHECK(alts[1] == std::vector<std::string>{"evler"});
}

TEST_CASE("gold files reject morphs that do not spell the word") {
  testsupport::TempDir dir;
  auto path = write_gold(dir,
                         "evler\tev ler\n"
                         "walking\twal king g\n");
  try {
    GoldStandard::load(path);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
}

TEST_CASE("gold files reject malformed lines") {
  testsupport::TempDir dir;
  SUBCASE("missing tab") {
    auto path = write_gold(dir, "evler ev ler\n");
    CHECK_THROWS_AS(GoldStandard::load(path), ParseError);
  }
  SUBCASE("empty analysis") {
    auto path = write_gold(dir, "evler\t\n");
    CHECK_THROWS_AS(GoldStandard::load(path), ParseError);
  }
  SUBCASE("empty alternative between commas") {
    auto path = write_gold(dir, "evler\tev ler,\n");
    CHECK_THROWS_AS(GoldStandard::load(path), ParseError);
  }
  SUBCASE("missing file") {
    CHECK_THROWS_AS(GoldStandard::load((dir.path() / "absent.txt").string()), IoError);
  }
}

TEST_CASE("exact matches score perfectly") {
  auto gold = GoldStandard::from_entries({{"walking", {{"walk", "ing"}}}});
  auto report = evaluate({make_seg("walking", {"walk", "ing"})}, gold);
  CHECK(report.precision == 1.0);
  CHECK(report.recall == 1.0);
  CHECK(report.f1 == 1.0);
  CHECK(report.hits == 1);
  CHECK(report.predicted == 1);
  CHECK(report.gold == 1);
  CHECK(report.skipped_predictions == 0);
  CHECK(report.missing_words == 0);
}

TEST_CASE("an extra predicted boundary costs precision but not recall") {
  auto gold = GoldStandard::from_entries({{"walking", {{"walk", "ing"}}}});
  auto report = evaluate({make_seg("walking", {"w", "alk", "ing"})}, gold);
  CHECK(report.precision == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(report.recall == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(report.f1 == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(report.hits == 1);
  CHECK(report.predicted == 2);
  CHECK(report.gold == 1);
}

TEST_CASE("boundary positions count code points, not bytes") {
  auto gold = GoldStandard::from_entries({{"söndürmeye", {{"sön", "dür", "me", "ye"}}}});
  auto report = evaluate({make_seg("söndürmeye", {"sön", "dür", "me", "ye"})}, gold);
  CHECK(report.f1 == 1.0);
  CHECK(report.hits == 3);
}

TEST_CASE("the best alternative per word is chosen") {
  auto gold = GoldStandard::from_entries({{"aaaa", {{"a", "aaa"}, {"aa", "aa"}}}});

  SUBCASE("prediction matching the second alternative") {
    auto report = evaluate({make_seg("aaaa", {"aa", "aa"})}, gold);
    CHECK(report.f1 == 1.0);
    CHECK(report.gold == 1);
  }
  SUBCASE("prediction matching the first alternative") {
    auto report = evaluate({make_seg("aaaa", {"a", "aaa"})}, gold);
    CHECK(report.f1 == 1.0);
  }
}

TEST_CASE("equally bad alternatives resolve to the one with fewer boundaries") {
  auto gold = GoldStandard::from_entries({{"aaaa", {{"a", "a", "aa"}, {"a", "aaa"}}}});
  auto report = evaluate({make_seg("aaaa", {"aaaa"})}, gold);
  CHECK(report.predicted == 0);
  CHECK(report.gold == 1);
  CHECK(report.hits == 0);
  CHECK(report.precision == 0.0);
  CHECK(report.recall == 0.0);
  CHECK(report.f1 == 0.0);
}

TEST_CASE("equal alternatives resolve to the earlier one in the file") {
  auto gold = GoldStandard::from_entries({{"aaaa", {{"a", "a", "aa"}, {"aa", "a", "a"}}}});
  auto report = evaluate({make_seg("aaaa", {"aa", "aa"})}, gold, true);
  REQUIRE(report.diagnostics.size() == 1);
  CHECK(report.diagnostics[0].word == "aaaa");
  CHECK(report.diagnostics[0].predicted == std::vector<std::size_t>{2});
  CHECK(report.diagnostics[0].chosen_gold == std::vector<std::size_t>{1, 2});
}

TEST_CASE("gold words without a prediction lower recall only") {
  auto gold = GoldStandard::from_entries({{"evler", {{"ev", "ler"}}},
                                          {"evlerde", {{"ev", "ler", "de"}}}});
  auto report = evaluate({make_seg("evler", {"ev", "ler"})}, gold);
  CHECK(report.missing_words == 1);
  CHECK(report.predicted == 1);
  CHECK(report.gold == 3);
  CHECK(report.hits == 1);
  CHECK(report.precision == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(report.recall == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("a missing word with an unsegmented alternative costs nothing") {
  auto gold = GoldStandard::from_entries({{"evler", {{"ev", "ler"}}},
                                          {"ev", {{"e", "v"}, {"ev"}}}});
  auto report = evaluate({make_seg("evler", {"ev", "ler"})}, gold);
  CHECK(report.missing_words == 1);
  CHECK(report.gold == 1);
  CHECK(report.f1 == 1.0);
}

TEST_CASE("predictions outside the gold standard are skipped and counted") {
  auto gold = GoldStandard::from_entries({{"evler", {{"ev", "ler"}}}});
  auto report = evaluate({make_seg("evler", {"ev", "ler"}), make_seg("zzz", {"z", "zz"})}, gold);
  CHECK(report.skipped_predictions == 1);
  CHECK(report.predicted == 1);
  CHECK(report.f1 == 1.0);
}

TEST_CASE("evaluation requires some overlap with the gold standard") {
  auto gold = GoldStandard::from_entries({{"evler", {{"ev", "ler"}}}});
  CHECK_THROWS_AS(evaluate({make_seg("zzz", {"z", "zz"})}, gold), std::invalid_argument);
  CHECK_THROWS_AS(evaluate({}, gold), std::invalid_argument);
}

TEST_CASE("unsegmentable words score perfectly when both sides agree") {
  auto gold = GoldStandard::from_entries({{"ev", {{"ev"}}}});
  auto report = evaluate({make_seg("ev", {"ev"})}, gold);
  CHECK(report.predicted == 0);
  CHECK(report.gold == 0);
  CHECK(report.precision == 1.0);
  CHECK(report.recall == 1.0);
  CHECK(report.f1 == 1.0);
}

TEST_CASE("one-sided empty boundary sets score zero") {
  SUBCASE("prediction empty, gold segmented") {
    auto gold = GoldStandard::from_entries({{"evler", {{"ev", "ler"}}}});
    auto report = evaluate({make_seg("evler", {"evler"})}, gold);
    CHECK(report.precision == 0.0);
    CHECK(report.recall == 0.0);
    CHECK(report.f1 == 0.0);
  }
  SUBCASE("prediction segmented, gold unsegmented") {
    auto gold = GoldStandard::from_entries({{"evler", {{"evler"}}}});
    auto report = evaluate({make_seg("evler", {"ev", "ler"})}, gold);
    CHECK(report.precision == 0.0);
    CHECK(report.recall == 0.0);
    CHECK(report.f1 == 0.0);
  }
}

TEST_CASE("diagnostics are produced only on request, in gold order") {
  auto gold = GoldStandard::from_entries({{"evler", {{"ev", "ler"}}},
                                          {"atlar", {{"at", "lar"}}}});
  auto preds = std::vector<Segmentation>{make_seg("evler", {"ev", "ler"}),
                                         make_seg("atlar", {"atl", "ar"})};

  auto plain = evaluate(preds, gold);
  CHECK(plain.diagnostics.empty());

  auto detailed = evaluate(preds, gold, true);
  REQUIRE(detailed.diagnostics.size() == 2);
  CHECK(detailed.diagnostics[0].word == "atlar");
  CHECK(detailed.diagnostics[0].predicted == std::vector<std::size_t>{3});
  CHECK(detailed.diagnostics[0].chosen_gold == std::vector<std::size_t>{2});
  CHECK(detailed.diagnostics[1].word == "evler");
  CHECK(detailed.diagnostics[1].chosen_gold == std::vector<std::size_t>{2});
}

TEST_CASE("missing words appear in diagnostics with empty predictions") {
  auto gold = GoldStandard::from_entries({{"evler", {{"ev", "ler"}}},
                                          {"atlar", {{"at", "lar"}}}});
  auto detailed = evaluate({make_seg("evler", {"ev", "ler"})}, gold, true);
  REQUIRE(detailed.diagnostics.size() == 2);
  CHECK(detailed.diagnostics[0].word == "atlar");
  CHECK(detailed.diagnostics[0].predicted.empty());
  CHECK(detailed.diagnostics[0].chosen_gold == std::vector<std::size_t>{2});
}

TEST_CASE("prediction order does not change the report") {
  auto gold = GoldStandard::from_entries({{"evler", {{"ev", "ler"}}},
                                          {"atlar", {{"at", "lar"}, {"atlar"}}},
                                          {"kuşlar", {{"kuş", "lar"}}}});
  auto preds = std::vector<Segmentation>{make_seg("evler", {"e", "vler"}),
                                         make_seg("atlar", {"at", "lar"}),
                                         make_seg("kuşlar", {"kuşlar"})};
  auto base = evaluate(preds, gold, true);
  std::mt19937 rng(7);
  for (int i = 0; i < 10; ++i) {
    std::shuffle(preds.begin(), preds.end(), rng);
    auto shuffled = evaluate(preds, gold, true);
    CHECK(shuffled.precision == base.precision);
    CHECK(shuffled.recall == base.recall);
    CHECK(shuffled.f1 == base.f1);
    CHECK(shuffled.hits == base.hits);
    CHECK(shuffled.predicted == base.predicted);
    CHECK(shuffled.gold == base.gold);
    CHECK(shuffled.diagnostics == base.diagnostics);
  }
}

TEST_CASE("swapping predictions with single-alternative gold swaps precision and recall") {
  std::mt19937 rng(4242);
  int checked = 0;
  for (int iter = 0; iter < 60; ++iter) {
    std::uniform_int_distribution<std::size_t> len_dist(2, 9);
    std::uniform_int_distribution<int> char_dist(0, 2);
    std::vector<std::string> words;
    std::uniform_int_distribution<std::size_t> n_dist(1, 4);
    std::size_t n = n_dist(rng);
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t len = len_dist(rng);
      std::string w;
      for (std::size_t j = 0; j < len; ++j) w.push_back(static_cast<char>('a' + char_dist(rng)));
      words.push_back(w);
    }
    std::sort(words.begin(), words.end());
    words.erase(std::unique(words.begin(), words.end()), words.end());

    std::vector<Segmentation> a_preds;
    std::vector<std::pair<std::string, std::vector<GoldStandard::Analysis>>> a_gold;
    std::vector<Segmentation> b_preds;
    std::vector<std::pair<std::string, std::vector<GoldStandard::Analysis>>> b_gold;
    for (const auto& w : words) {
      auto first = random_morphs(rng, w);
      auto second = random_morphs(rng, w);
      a_preds.push_back(make_seg(w, first));
      b_gold.push_back({w, {first}});
      b_preds.push_back(make_seg(w, second));
      a_gold.push_back({w, {second}});
    }

    auto forward = evaluate(a_preds, GoldStandard::from_entries(a_gold));
    auto backward = evaluate(b_preds, GoldStandard::from_entries(b_gold));
    CHECK(forward.precision == backward.recall);
    CHECK(forward.recall == backward.precision);
    CHECK(forward.hits == backward.hits);
    CHECK(forward.predicted == backward.gold);
    CHECK(forward.gold == backward.predicted);
    ++checked;
  }
  CHECK(checked == 60);
}

TEST_CASE("scores stay in range and f1 never exceeds precision or recall") {
  std::mt19937 rng(1337);
  for (int iter = 0; iter < 80; ++iter) {
    std::uniform_int_distribution<std::size_t> n_dist(1, 5);
    std::size_t n = n_dist(rng);
    std::vector<Segmentation> preds;
    std::vector<std::pair<std::string, std::vector<GoldStandard::Analysis>>> entries;
    for (std::size_t i = 0; i < n; ++i) {
      std::string w;
      std::uniform_int_distribution<std::size_t> len_dist(1, 8);
      std::uniform_int_distribution<int> char_dist(0, 1);
      std::size_t len = len_dist(rng);
      for (std::size_t j = 0; j < len; ++j) w.push_back(static_cast<char>('a' + char_dist(rng)));
      w += std::to_string(i);
      std::uniform_int_distribution<std::size_t> alt_dist(1, 3);
      std::size_t alts = alt_dist(rng);
      std::vector<GoldStandard::Analysis> analyses;
      for (std::size_t k = 0; k < alts; ++k) analyses.push_back(random_morphs(rng, w));
      entries.push_back({w, analyses});
      preds.push_back(make_seg(w, random_morphs(rng, w)));
    }
    auto report = evaluate(preds, GoldStandard::from_entries(entries));
    CHECK(report.precision >= 0.0);
    CHECK(report.precision <= 1.0);
    CHECK(report.recall >= 0.0);
    CHECK(report.recall <= 1.0);
    CHECK(report.f1 >= 0.0);
    CHECK(report.f1 <= std::max(report.precision, report.recall) + 1e-12);
  }
}

TEST_CASE("choosing the best alternative never scores below the first alternative") {
  std::mt19937 rng(24601);
  for (int iter = 0; iter < 60; ++iter) {
    std::uniform_int_distribution<std::size_t> n_dist(1, 5);
    std::size_t n = n_dist(rng);
    std::vector<Segmentation> preds;
    std::vector<std::pair<std::string, std::vector<GoldStandard::Analysis>>> multi;
    std::vector<std::pair<std::string, std::vector<GoldStandard::Analysis>>> first_only;
    for (std::size_t i = 0; i < n; ++i) {
      std::string w;
      std::uniform_int_distribution<std::size_t> len_dist(2, 8);
      std::uniform_int_distribution<int> char_dist(0, 1);
      std::size_t len = len_dist(rng);
      for (std::size_t j = 0; j < len; ++j) w.push_back(static_cast<char>('a' + char_dist(rng)));
      w += std::to_string(i);
      std::uniform_int_distribution<std::size_t> alt_dist(2, 4);
      std::size_t alts = alt_dist(rng);
      std::vector<GoldStandard::Analysis> analyses;
      for (std::size_t k = 0; k < alts; ++k) analyses.push_back(random_morphs(rng, w));
      multi.push_back({w, analyses});
      first_only.push_back({w, {analyses[0]}});
      preds.push_back(make_seg(w, random_morphs(rng, w)));
    }
    auto best = evaluate(preds, GoldStandard::from_entries(multi));
    auto first = evaluate(preds, GoldStandard::from_entries(first_only));
    CHECK(best.f1 >= first.f1 - 1e-12);
  }
}
