#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "test_support.hpp"
#include "winofir/counted.hpp"
#include "winofir/winograd.hpp"

using namespace winofir;
using wtest::taps_of;
using wtest::tile_of;

using RTile = Tile4<Rational>;
using RTaps = Taps3<Rational>;
using RPair = OutPair<Rational>;

TEST_CASE("direct kernel on frozen values") {
  const RTaps h = taps_of<Rational>(1, 1, 1);
  CHECK(naive_pair(tile_of<Rational>(0, 0, 0, 0), h) ==
        RPair{Rational(0), Rational(0)});
  CHECK(naive_pair(tile_of<Rational>(1, 2, 3, 4), h) ==
        RPair{Rational(6), Rational(9)});

  const RTaps hs = taps_of<Rational>(5, -7, 11);
  CHECK(naive_pair(tile_of<Rational>(1, 0, 0, 0), hs) ==
        RPair{Rational(5), Rational(0)});
}

TEST_CASE("tap precompute on frozen values") {
  const auto zero = precompute_taps(taps_of<Rational>(0, 0, 0));
  CHECK(zero == TransformedTaps<Rational>{Rational(0), Rational(0), Rational(0),
                                          Rational(0)});

  const auto ones = precompute_taps(taps_of<Rational>(1, 1, 1));
  CHECK(ones.s0 == Rational(1));
  CHECK(ones.s1 == Rational(3, 2));
  CHECK(ones.s2 == Rational(1, 2));
  CHECK(ones.s3 == Rational(1));

  const auto sym = precompute_taps(taps_of<Rational>(2, 0, 2));
  CHECK(sym == TransformedTaps<Rational>{Rational(2), Rational(2), Rational(2),
                                         Rational(2)});
}

TEST_CASE("factored tap precompute matches the closed form") {
  const auto a = precompute_taps_factored(taps_of<Rational>(1, 1, 1));
  CHECK(a.s0 == Rational(1));
  CHECK(a.s1 == Rational(3, 2));
  CHECK(a.s2 == Rational(1, 2));
  CHECK(a.s3 == Rational(1));

  const auto b = precompute_taps_factored(taps_of<Rational>(1, 0, 0));
  CHECK(b == TransformedTaps<Rational>{Rational(1), Rational(1, 2),
                                       Rational(1, 2), Rational(0)});

  const auto c = precompute_taps_factored(taps_of<Rational>(0, 1, 0));
  CHECK(c == TransformedTaps<Rational>{Rational(0), Rational(1, 2),
                                       Rational(-1, 2), Rational(0)});

  auto rng = wtest::make_rng(21);
  for (int i = 0; i < 5000; ++i) {
    RTaps h{wtest::rand_rational(rng, 100), wtest::rand_rational(rng, 100),
            wtest::rand_rational(rng, 100)};
    CHECK(precompute_taps_factored(h) == precompute_taps(h));
  }
}

TEST_CASE("minimal kernel on frozen values") {
  const auto pre = precompute_taps(taps_of<Rational>(1, 1, 1));
  CHECK(winograd_pair(tile_of<Rational>(0, 0, 0, 0), pre) ==
        RPair{Rational(0), Rational(0)});
  CHECK(winograd_pair(tile_of<Rational>(1, 2, 3, 4), pre) ==
        RPair{Rational(6), Rational(9)});

  const auto pre2 = precompute_taps(taps_of<Rational>(5, -7, 11));
  CHECK(winograd_pair(tile_of<Rational>(1, 0, 0, 0), pre2) ==
        RPair{Rational(5), Rational(0)});
}

TEST_CASE("oracle equivalence against the direct kernel") {
  auto rng = wtest::make_rng(22);
  const int64_t mag = 1 << 15;
  for (int i = 0; i < 5000; ++i) {
    const RTile x = wtest::rand_tile(rng, mag);
    const RTaps h = wtest::rand_taps(rng, mag);
    CHECK(winograd_pair(x, precompute_taps(h)) == naive_pair(x, h));
  }
}

TEST_CASE("float64 kernels agree within 1e-12 relative on [-1,1]") {
  auto rng = wtest::make_rng(23);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (int i = 0; i < 5000; ++i) {
    const Tile4<double> x{dist(rng), dist(rng), dist(rng), dist(rng)};
    const Taps3<double> h{dist(rng), dist(rng), dist(rng)};
    const auto got = winograd_pair(x, precompute_taps(h));
    const auto want = naive_pair(x, h);
    const double scale0 = std::max(1.0, std::abs(want.y0));
    const double scale1 = std::max(1.0, std::abs(want.y1));
    CHECK(std::abs(got.y0 - want.y0) / scale0 <= 1e-12);
    CHECK(std::abs(got.y1 - want.y1) / scale1 <= 1e-12);
  }
}

TEST_CASE("matrix-form kernel agrees with the scalar kernel") {
  const TransformConstants& k = transform_constants();
  const auto pre = precompute_taps(taps_of<Rational>(1, 1, 1));
  CHECK(winograd_pair_matrix(tile_of<Rational>(1, 2, 3, 4), pre, k) ==
        RPair{Rational(6), Rational(9)});
  CHECK(winograd_pair_matrix(tile_of<Rational>(0, 0, 0, 0), pre, k) ==
        RPair{Rational(0), Rational(0)});

  auto rng = wtest::make_rng(24);
  for (int i = 0; i < 100; ++i) {
    const RTile x = wtest::rand_tile(rng, 8);
    const RTaps h = wtest::rand_taps(rng, 8);
    const auto s = precompute_taps(h);
    CHECK(winograd_pair_matrix(x, s, k) == winograd_pair(x, s));
    CHECK(winograd_pair_matrix(x, s, k) == naive_pair(x, h));
  }
}

TEST_CASE("transform constants satisfy the normative identities") {
  const TransformConstants& k = transform_constants();

  SUBCASE("entry ranges") {
    for (const auto& row : k.input_transform) {
      int nonzeros = 0;
      for (int v : row) {
        CHECK(v >= -1);
        CHECK(v <= 1);
        nonzeros += v != 0;
      }
      CHECK(nonzeros == 2);
    }
    int row_sum0 = 0, row_sum1 = 0;
    for (int v : k.output_transform[0]) row_sum0 += v;
    for (int v : k.output_transform[1]) row_sum1 += v;
    CHECK(row_sum0 == 3);
    CHECK(row_sum1 == -1);
    CHECK(k.tap_scaling_halved == std::array<bool, 4>{false, true, true, false});
  }

  SUBCASE("tap factorization identity for every taps vector") {
    auto rng = wtest::make_rng(25);
    for (int i = 0; i < 1000; ++i) {
      const RTaps h = wtest::rand_taps(rng, 1000);
      const auto via_matrices = precompute_taps_factored(h);
      const auto closed = precompute_taps(h);
      CHECK(via_matrices == closed);
    }
  }

  SUBCASE("staged products reproduce the direct equations") {
    auto rng = wtest::make_rng(26);
    for (int i = 0; i < 1000; ++i) {
      const RTile x = wtest::rand_tile(rng, 1000);
      const RTaps h = wtest::rand_taps(rng, 1000);
      CHECK(winograd_pair_matrix(x, precompute_taps(h), k) == naive_pair(x, h));
    }
  }
}

TEST_CASE("kernels are linear in tile and taps") {
  auto rng = wtest::make_rng(27);
  for (int i = 0; i < 500; ++i) {
    const RTile x = wtest::rand_tile(rng, 500);
    const RTile y = wtest::rand_tile(rng, 500);
    const RTaps h = wtest::rand_taps(rng, 500);
    const RTaps g = wtest::rand_taps(rng, 500);
    const Rational c = wtest::rand_rational(rng, 50);

    const RTile xy{x.x0 + c * y.x0, x.x1 + c * y.x1, x.x2 + c * y.x2,
                   x.x3 + c * y.x3};
    const RTaps hg{h.h0 + c * g.h0, h.h1 + c * g.h1, h.h2 + c * g.h2};

    for (const auto kernel :
         {+[](const RTile& t, const RTaps& p) { return naive_pair(t, p); },
          +[](const RTile& t, const RTaps& p) {
            return winograd_pair(t, precompute_taps(p));
          }}) {
      const auto fx = kernel(x, h);
      const auto fy = kernel(y, h);
      const auto fxy = kernel(xy, h);
      CHECK(fxy.y0 == fx.y0 + c * fy.y0);
      CHECK(fxy.y1 == fx.y1 + c * fy.y1);

      const auto gh = kernel(x, g);
      const auto ghg = kernel(x, hg);
      CHECK(ghg.y0 == fx.y0 + c * gh.y0);
      CHECK(ghg.y1 == fx.y1 + c * gh.y1);
    }
  }
}

TEST_CASE("second output equals the first output of the shifted tile") {
  auto rng = wtest::make_rng(28);
  for (int i = 0; i < 1000; ++i) {
    const RTile x = wtest::rand_tile(rng, 1000);
    const Rational x4 = wtest::rand_rational(rng, 1000);
    const RTaps h = wtest::rand_taps(rng, 1000);
    const RTile shifted{x.x1, x.x2, x.x3, x4};

    CHECK(naive_pair(x, h).y1 == naive_pair(shifted, h).y0);
    const auto pre = precompute_taps(h);
    CHECK(winograd_pair(x, pre).y1 == winograd_pair(shifted, pre).y0);
  }
}

TEST_CASE("instrumented kernels use the advertised operation counts") {
  using C = Counted<Rational>;
  auto& counters = C::counters();

  const Tile4<C> x{C{Rational(1)}, C{Rational(2)}, C{Rational(3)},
                   C{Rational(4)}};
  const Taps3<C> h{C{Rational(1)}, C{Rational(1)}, C{Rational(1)}};

  counters.reset();
  const auto direct = naive_pair(x, h);
  CHECK(counters.multiplications.load() == 6);
  CHECK(counters.additions.load() == 4);
  CHECK(direct.y0.value() == Rational(6));
  CHECK(direct.y1.value() == Rational(9));

  const auto pre = precompute_taps(h);
  counters.reset();
  const auto fast = winograd_pair(x, pre);
  CHECK(counters.multiplications.load() == 4);
  CHECK(counters.additions.load() == 8);
  CHECK(fast.y0.value() == Rational(6));
  CHECK(fast.y1.value() == Rational(9));

  counters.reset();
  precompute_taps(h);
  CHECK(counters.multiplications.load() == 0);
  CHECK(counters.additions.load() == 4);
  CHECK(counters.halvings.load() == 2);
}
