#include <doctest.h>

#include "dodgson/error.hpp"
#include "dodgson/gadgets.hpp"
#include "dodgson/matching.hpp"
#include "support.hpp"

using namespace dodgson;

TEST_SUITE("matching") {

TEST_CASE("canonical instances") {
  CHECK_FALSE(has_matching(canonical_no_instance()));
  CHECK(has_matching(canonical_yes_instance()));
  const TdmInstance one{{"w"}, {"x"}, {"y"}, {{"w", "x", "y"}}};
  CHECK(one.valid());
  CHECK(has_matching(one));
}

TEST_CASE("enumeration counts") {
  auto count = [](std::size_t q, std::size_t lo, std::size_t hi, std::size_t* yes = nullptr) {
    InstanceEnumerator it(q, lo, hi);
    std::size_t n = 0;
    while (auto x = it.next()) {
      ++n;
      if (yes && has_matching(*x)) ++*yes;
    }
    return n;
  };
  CHECK(count(1, 1, 1) == 1);
  CHECK(count(2, 2, 2) == 28);
  std::size_t yes = 0;
  CHECK(count(2, 1, 1, &yes) == 8);
  CHECK(yes == 0);
  CHECK(count(2, 2, 4) == 28 + 56 + 70);
}

TEST_CASE("enumerator restarts") {
  InstanceEnumerator it(2, 2, 2);
  const auto first = it.next();
  while (it.next()) {
  }
  it.reset();
  CHECK(it.next() == first);
}

TEST_CASE("has_matching agrees with subset search") {
  InstanceEnumerator it(2, 1, 5);
  std::size_t n = 0;
  while (auto x = it.next()) {
    CHECK(x->valid());
    CHECK(has_matching(*x) == testing::brute_matching(*x));
    ++n;
  }
  CHECK(n == 8 + 28 + 56 + 70 + 56);
  InstanceEnumerator q3(3, 3, 4);
  for (std::size_t i = 0; i < 3000; ++i) {
    auto x = q3.next();
    if (!x) break;
    CHECK(has_matching(*x) == testing::brute_matching(*x));
  }
}

TEST_CASE("validity") {
  auto x = canonical_yes_instance();
  CHECK(x.valid());
  x.x_set.push_back("e2");
  CHECK(x.violation());
  auto y = canonical_yes_instance();
  y.triples.push_back(y.triples[0]);
  CHECK(y.violation());
  auto z = canonical_yes_instance();
  z.triples[0].w = "e";
  CHECK(z.violation());
  auto shared = canonical_yes_instance();
  shared.x_set[0] = "d";
  CHECK(shared.violation());
  CHECK(TdmInstance{}.violation());
}

TEST_CASE("3dm text round trip") {
  const auto text = "# two triples\nW: d dp\nX: e ep\nY: p pp\nd e p\ndp ep pp\n";
  const auto x = parse_3dm(text);
  CHECK(x.q() == 2);
  CHECK(x.triples.size() == 2);
  CHECK(parse_3dm(serialize_3dm(x)) == x);
  CHECK_THROWS_AS(parse_3dm("W: a\nX: b\n"), ParseError);
  CHECK_THROWS_AS(parse_3dm("W: a\nX: b\nY: c\na b\n"), ParseError);
}

}  // TEST_SUITE
