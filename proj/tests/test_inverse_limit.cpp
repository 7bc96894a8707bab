#include <doctest.h>

#include "ldforge/inverse_limit.hpp"

using namespace ldforge;

TEST_CASE("canonical thread fixtures") {
  const Thread u = canonical_u_thread();
  const Thread v = canonical_v_thread();
  CHECK(u.at(1) == 1);
  CHECK(u.at(2) == 1);
  CHECK(u.at(3) == 5);
  CHECK(v.at(1) == 0);
  CHECK(v.at(2) == 2);
  CHECK(v.at(3) == 2);
  CHECK(u.at(0) == 0);
  CHECK(u.max_realized() == 3);
}

TEST_CASE("threads are coherent") {
  CHECK(canonical_u_thread().coherent_up_to(10));
  CHECK(canonical_v_thread().coherent_up_to(10));
  CHECK(zero_thread().coherent_up_to(10));
  const Thread w = thread_apply(canonical_u_thread(), canonical_v_thread());
  CHECK(w.coherent_up_to(10));
  CHECK(thread_compose(shifted_thread(2), canonical_u_thread()).coherent_up_to(10));
  CHECK_THROWS_AS(zero_thread().at(kMaxThreadLevel + 1), std::out_of_range);
}

TEST_CASE("separating levels") {
  CHECK(separating_level(parse_term("x"), parse_term("y"), 14) == 1u);
  CHECK(separating_level(parse_term("x y"), parse_term("y x"), 14) == 1u);
  CHECK_FALSE(separating_level(parse_term("x (y y)"), parse_term("(x y) (x y)"), 14));
  CHECK_THROWS_AS(eval_word_in_threads(parse_term("g2", 3), 3), std::invalid_argument);
}

TEST_CASE("small sweep") {
  const SweepReport r = freeness_sweep(3, 12);
  CHECK(r.term_count == 22);
  CHECK(r.false_separations == 0);
  CHECK(r.separated + r.unresolved == r.cross_pairs);
  CHECK(r.cross_pairs == r.class_count * (r.class_count - 1) / 2);
  const std::string csv = sweep_csv(r);
  CHECK(csv.rfind("w1,w2,verdict,separating_level,budget\n", 0) == 0);
}
