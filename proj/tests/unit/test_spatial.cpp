#include <doctest.h>

#include <random>

#include "cinet/errors.hpp"
#include "cinet/spatial.hpp"

using namespace cinet;

TEST_CASE("wrapped distance") {
  CHECK(wrapped_distance(0, 10, 301) == 10);
  CHECK(wrapped_distance(150, -150, 301) == 1);
  CHECK(wrapped_distance(-150, 150, 301) == 1);
  CHECK(wrapped_distance(37.5, 37.5, 301) == 0);
  CHECK(wrapped_distance(0, 200, 301) == 101);
}

TEST_CASE("wrapped distance is a metric bounded by half the circumference") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> loc(-400, 400);
  const double L = 301;
  for (int k = 0; k < 2000; ++k) {
    const double a = loc(rng), b = loc(rng), c = loc(rng);
    const double ab = wrapped_distance(a, b, L);
    CHECK(ab >= 0);
    CHECK(ab <= L / 2);
    CHECK(ab == doctest::Approx(wrapped_distance(b, a, L)).epsilon(1e-12));
    CHECK(ab <= wrapped_distance(a, c, L) + wrapped_distance(c, b, L) + 1e-9);
  }
}

TEST_CASE("default grid") {
  const SpatialGrid g = default_grid();
  REQUIRE(g.size() == 301);
  CHECK(g.centers[0] == -150);
  CHECK(g.centers[300] == 150);
  CHECK(g.wrap_length == 301);
  CHECK(wrapped_distance(g.centers[0], g.centers[300], g.wrap_length) == 1);
  CHECK(g.nearest_index(0.4) == 150);
  CHECK(g.nearest_index(-1000) == 0);
  CHECK(g.nearest_index(1000) == 300);
}

TEST_CASE("small grid") {
  const SpatialGrid g = make_grid(3, -1, 1);
  CHECK(g.centers == std::vector<double>{-1, 0, 1});
  CHECK(g.wrap_length == 3);
}

TEST_CASE("make_grid rejects bad requests") {
  CHECK_THROWS_AS(make_grid(1, 0, 1), ConfigError);
  CHECK_THROWS_AS(make_grid(10, 5, 5), ConfigError);
  CHECK_THROWS_AS(make_grid(4, 0, 1), ConfigError);  // 1/3 degree spacing
}

TEST_CASE("network parameters") {
  NetworkParams p;
  CHECK_NOTHROW(p.validate());
  p.width = 0;
  CHECK_THROWS_AS(p.validate(), ConfigError);
  p = {};
  p.bias = -3;  // negative bias is allowed
  CHECK_NOTHROW(p.validate());
  NetworkParams q;
  q.gain_auditory = 100;
  q.bias = 1;
  CHECK(q.same_weights_as(NetworkParams{}));
  q.scale_visual = 4.335;
  CHECK_FALSE(q.same_weights_as(NetworkParams{}));
}
