#include <doctest.h>

#include "ldforge/embedding_model.hpp"

using namespace ldforge;

TEST_CASE("spectrum of A_1") {
  const LaverTable t(1);
  const CritSpectrum s = critical_spectrum(t);
  REQUIRE(s.marks.size() == 2);
  CHECK(s.marks[0].value == 0);
  CHECK(s.marks[1].value == 1);
  CHECK(f_counts(t).counts.empty());
}

TEST_CASE("spectrum of A_8 gives 0, 0, 1") {
  const FCountReport r = f_counts(shared_table(8));
  REQUIRE(r.counts.size() >= 3);
  CHECK(r.counts[0].value == 0);
  CHECK(r.counts[1].value == 0);
  CHECK(r.counts[2].value == 1);
  for (int n = 0; n < 3; ++n) CHECK(r.counts[n].stable);
}

TEST_CASE("marks are increasing and intervals partition") {
  const CritSpectrum s = critical_spectrum(shared_table(9));
  for (std::size_t i = 1; i < s.marks.size(); ++i) CHECK(s.marks[i - 1] < s.marks[i]);
  CHECK(s.marks.back().value == 9);
  for (unsigned c = 0; c < 9; ++c) {
    const auto n = interval_of(s, CritIndex{c});
    REQUIRE(n);
    CHECK(s.marks[*n].value <= c);
    CHECK(c < s.marks[*n + 1].value);
  }
  CHECK_FALSE(interval_of(s, CritIndex{9}));
}

TEST_CASE("csv layout") {
  const std::string csv = f_counts_csv({f_counts(shared_table(8))});
  CHECK(csv.rfind("level,index,value,stable\n", 0) == 0);
  CHECK(csv.find("8,2,1,true") != std::string::npos);
}

TEST_CASE("interval classification of the identity-like row") {
  const LaverTable& t = shared_table(6);
  for (const IntervalEntry& e : interval_classification(t, 0)) {
    CHECK(e.image == e.index);
    CHECK(e.klass == IntervalClass::Fixed);
  }
  CHECK(interval_class_name(IntervalClass::OddInterval) == "OddInterval");
}
