#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "ldforge/laver_table.hpp"
#include "oracles.hpp"

using namespace ldforge;

TEST_CASE("A_2 rows") {
  const LaverTable t(2);
  CHECK(t.row(0) == std::vector<Element>{0, 1, 2, 3});
  CHECK(t.row(1) == std::vector<Element>{0, 2, 0, 2});
  CHECK(t.row(2) == std::vector<Element>{0, 3, 0, 3});
  CHECK(t.row(3) == std::vector<Element>{0, 0, 0, 0});
}

TEST_CASE("A_0 and bounds") {
  const LaverTable t(0);
  CHECK(t.size() == 1);
  CHECK(t.apply(0, 0) == 0);
  CHECK_THROWS_AS(LaverTable(17), TableError);
  CHECK_THROWS_AS(LaverTable(9, TableOptions{TableMode::Lazy, false, 8}), TableError);
  CHECK_THROWS(t.apply(1, 0));
}

TEST_CASE("lazy and bulk tables agree with the naive recursion") {
  for (unsigned k = 0; k <= 7; ++k) {
    const auto expected = oracle::laver_rows(k);
    const LaverTable lazy(k);
    const LaverTable bulk(k, TableOptions{TableMode::Bulk});
    for (Element a = 0; a < lazy.size(); ++a) {
      CHECK(lazy.row(a) == expected[a]);
      CHECK(bulk.row(a) == expected[a]);
    }
  }
}

TEST_CASE("stored rows are first periods") {
  const LaverTable t(6, TableOptions{TableMode::Bulk});
  for (Element a = 1; a < t.size(); ++a) {
    const auto p = t.period_row(a);
    CHECK(p.size() == t.row_period(a));
    CHECK((p.size() & (p.size() - 1)) == 0);
    for (std::size_t i = 2; i < p.size(); ++i) CHECK(p[i - 1] < p[i]);
    const auto full = t.row(a);
    for (Element b = 0; b < t.size(); ++b) CHECK(full[b] == p[b % p.size()]);
  }
  CHECK(t.row_period(0) == t.size());
  CHECK(t.stored_cells() < std::size_t{t.size()} * t.size());
}

TEST_CASE("lazy fill is on demand") {
  const LaverTable t(10);
  CHECK(t.rows_filled() <= 1);
  (void)t.apply(t.size() - 3, 5);
  CHECK(t.rows_filled() < t.size() / 2);
  t.precompute_all();
  CHECK(t.rows_filled() == t.size());
}

TEST_CASE("compose matches the row composite") {
  const LaverTable t(5, TableOptions{TableMode::Lazy, true});
  for (Element a = 0; a < t.size(); ++a)
    for (Element b = 0; b < t.size(); ++b) {
      const Element c = t.compose(a, b);
      CHECK(c == compose_by_rows(t, a, b));
      for (Element x = 0; x < t.size(); ++x) CHECK(t.apply(c, x) == t.apply(a, t.apply(b, x)));
    }
}

TEST_CASE("crit, chain and ordinal action") {
  const LaverTable t(4);
  CHECK(t.crit_index(0).value == 4);
  CHECK(t.crit_index(12).value == 2);
  CHECK(t.crit_index(7).value == 0);
  const auto chain = t.right_power_chain();
  CHECK(chain.front() == 1);
  CHECK(chain.back() == 0);
  for (std::size_t i = 1; i < chain.size(); ++i) CHECK(chain[i] == t.apply(chain[i - 1], chain[i - 1]));
  for (unsigned i = 0; i < 4; ++i)
    CHECK(t.ordinal_action(3, CritIndex{i}).value == oracle::valuation(t.apply(3, 1u << i), 4));
  CHECK_THROWS_AS(t.ordinal_action(3, CritIndex{4}), std::out_of_range);
}

TEST_CASE("projection") {
  CHECK(project(5, 3, 29) == 5);
  CHECK(project(4, 4, 9) == 9);
  CHECK(project(4, 0, 9) == 0);
  CHECK_THROWS_AS(project(3, 4, 1), std::invalid_argument);
}

TEST_CASE("term evaluation") {
  const LaverTable t(3);
  const Element assignment[2] = {1, 2};
  CHECK(eval_term(t, parse_term("x y"), assignment) == t.apply(1, 2));
  CHECK(eval_term(t, parse_term("x o y"), assignment) == t.compose(1, 2));
  CHECK_THROWS_AS(eval_term(t, parse_term("g2 x", 3), assignment), std::out_of_range);
}

TEST_CASE("export and import") {
  const LaverTable t(2);
  const std::string csv = export_table(t, ExportFormat::Csv);
  CHECK(csv == "k=2\n0,1,2,3\n0,2,0,2\n0,3,0,3\n0,0,0,0\n");
  CHECK(export_table(LaverTable(0), ExportFormat::Csv) == "k=0\n0\n");
  for (unsigned k : {0u, 3u, 9u}) {
    const LaverTable src(k);
    for (auto fmt : {ExportFormat::Csv, ExportFormat::Binary}) {
      const LaverTable back = import_table(export_table(src, fmt));
      REQUIRE(back.k() == k);
      for (Element a = 0; a < src.size(); ++a) CHECK(back.row(a) == src.row(a));
    }
  }
  std::string bin = export_table(LaverTable(3), ExportFormat::Binary);
  CHECK(bin.substr(0, 4) == "LAVR");
  bin[4] = 9;
  CHECK_THROWS_AS(import_table(bin), TableError);
}

TEST_CASE("from_rows rejects non-tables") {
  std::vector<Element> cells{0, 1, 2, 3, 0, 2, 0, 2, 0, 3, 0, 3, 0, 0, 0, 0};
  CHECK_NOTHROW(LaverTable::from_rows(2, cells));
  cells[5] = 7;
  CHECK_THROWS_AS(LaverTable::from_rows(2, cells), TableError);
}

TEST_CASE("cache round trip and corruption fallback") {
  const auto dir = std::filesystem::temp_directory_path() / "ldforge-test-cache";
  std::filesystem::remove_all(dir);
  bool loaded = true;
  load_or_build_table(5, dir, {}, &loaded);
  CHECK_FALSE(loaded);
  const LaverTable again = load_or_build_table(5, dir, {}, &loaded);
  CHECK(loaded);
  CHECK(again.row(3) == LaverTable(5).row(3));
  {
    std::ofstream f(table_cache_path(dir, 5), std::ios::binary | std::ios::trunc);
    f << "garbage";
  }
  const LaverTable rebuilt = load_or_build_table(5, dir, {}, &loaded);
  CHECK_FALSE(loaded);
  CHECK(rebuilt.row(7) == LaverTable(5).row(7));
  std::filesystem::remove_all(dir);
}

TEST_CASE("random LD law checks at higher levels") {
  std::mt19937_64 rng(2024);
  const LaverTable& t = shared_table(12);
  for (int i = 0; i < 20000; ++i) {
    const Element a = rng() % t.size(), b = rng() % t.size(), c = rng() % t.size();
    CHECK(t.apply(a, t.apply(b, c)) == t.apply(t.apply(a, b), t.apply(a, c)));
  }
}
