#include "takagi/gap_sequence.hpp"

#include <doctest.h>

#include <cmath>

using namespace takagi;

using V = std::vector<std::uint64_t>;

TEST_CASE("builtin prefixes") {
  CHECK(builtin_generator("linear", "3")->prefix(4) == V{3, 6, 9, 12});
  CHECK(builtin_generator("kruppel")->prefix(4) == V{4, 16, 64, 256});
  CHECK(builtin_generator("normalmix")->prefix(8) == V{3, 5, 7, 9, 14, 15, 16, 20});
  CHECK(builtin_generator("primes")->prefix(10) == V{2, 3, 5, 7, 11, 13, 17, 19, 23, 29});
  CHECK(builtin_generator("poly", "1,0,1")->prefix(3) == V{2, 5, 10});
  CHECK(builtin_generator("geo", "1.5")->prefix(5) == V{1, 2, 3, 5, 7});
  CHECK(builtin_generator("pow2plus", "1")->prefix(4) == V{3, 6, 11, 20});
  CHECK(builtin_generator("sqrtdrift")->prefix(4) == V{3, 5, 7, 10});
  CHECK(builtin_generator("logdrift")->prefix(4) == V{4, 7, 9, 12});
}

TEST_CASE("closed forms over long prefixes") {
  const auto s = builtin_generator("sqrtdrift");
  const auto l = builtin_generator("logdrift");
  for (std::uint64_t n = 1; n <= 5000; ++n) {
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    CHECK(s->at(n) == 2 * n + r);
    std::uint64_t lg = 0;
    while ((std::uint64_t{2} << lg) <= n) ++lg;
    CHECK(l->at(n) == 2 * n + lg + 2);
  }
}

TEST_CASE("queries") {
  const auto g = builtin_generator("linear", "3");
  CHECK(g->count_le(10) == 3);
  CHECK(g->contains(9));
  CHECK_FALSE(g->contains(10));
  CHECK(g->next_after(9) == 12);
  CHECK_THROWS_AS(g->at(0), std::out_of_range);
}

TEST_CASE("term cap and finite sources") {
  const auto k = builtin_generator("kruppel");
  CHECK(k->at(31) == std::uint64_t{1} << 62);
  CHECK_THROWS_AS(k->at(32), GeneratorExhausted);
  CHECK_FALSE(k->next_after(std::uint64_t{1} << 62).has_value());

  const auto f = gap_sequence_from_terms("finite", {2, 5});
  CHECK(f->at(2) == 5);
  CHECK_THROWS_AS(f->at(3), GeneratorExhausted);
}

TEST_CASE("bad generators") {
  CHECK_THROWS_AS(builtin_generator("linear", "1"), std::invalid_argument);
  CHECK_THROWS_AS(builtin_generator("geo", "1"), std::invalid_argument);
  CHECK_THROWS_AS(builtin_generator("kruppel", "2"), std::invalid_argument);
  CHECK_THROWS_AS(builtin_generator("unknown"), std::invalid_argument);
  const auto flat = builtin_generator("poly", "5");
  CHECK(flat->at(1) == 5);
  CHECK_THROWS_AS(flat->at(2), std::invalid_argument);
}
