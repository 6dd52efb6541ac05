#include <doctest.h>

#include "racgap/rac_core.hpp"
#include "racgap/rng.hpp"

using namespace racgap;

namespace {

Trace make_trace(const std::vector<int>& x, const std::vector<int>& kept) {
  // Builds records whose (a0,a1,y,b) realize the requested success flags.
  Trace trace;
  for (std::size_t i = 0; i < x.size(); ++i) {
    RoundRecord r;
    r.t = static_cast<std::int32_t>(i + 1);
    r.a0 = 0;
    r.a1 = 1;
    r.y = 0;
    r.b = x[i] ? Bit{0} : Bit{1};
    r.m = r.b;
    r.x = static_cast<Bit>(x[i]);
    r.kept = static_cast<Bit>(kept[i]);
    trace.rounds.push_back(r);
  }
  return trace;
}

}  // namespace

TEST_CASE("success matches the queried bit") {
  CHECK(success(1, 0, 0, 1) == 1);
  CHECK(success(1, 0, 1, 1) == 0);
  CHECK(success(0, 0, 1, 0) == 1);
}

TEST_CASE("success agrees with exhaustive truth-table enumeration") {
  for (int a0 = 0; a0 < 2; ++a0) {
    for (int a1 = 0; a1 < 2; ++a1) {
      for (int y = 0; y < 2; ++y) {
        for (int b = 0; b < 2; ++b) {
          const int bits[2] = {a0, a1};
          const int expected = b == bits[y] ? 1 : 0;
          CHECK(success(Bit(a0), Bit(a1), Bit(y), Bit(b)) == expected);
        }
      }
    }
  }
}

TEST_CASE("unconditional score counts discarded rounds as failures") {
  CHECK(score_unconditional(make_trace({1, 0, 1, 0}, {1, 1, 1, 1})) == doctest::Approx(0.5));
  CHECK(score_unconditional(make_trace({1, 0, 1, 0}, {1, 0, 1, 0})) == doctest::Approx(0.5));
  CHECK(score_unconditional(make_trace({1, 1, 1, 1}, {1, 0, 0, 0})) == doctest::Approx(0.25));
  CHECK_THROWS_AS(score_unconditional(Trace{}), std::domain_error);
}

TEST_CASE("conditional score runs over kept rounds only") {
  CHECK(score_conditional(make_trace({1, 0, 1, 0}, {1, 0, 1, 0})) == doctest::Approx(1.0));
  CHECK(score_conditional(make_trace({1, 0, 1, 0}, {1, 1, 1, 1})) == doctest::Approx(0.5));
  CHECK_THROWS_AS(score_conditional(make_trace({0, 0}, {0, 0})), std::domain_error);
}

TEST_CASE("conditional dominates unconditional; equality without selection") {
  Rng rng(101);
  for (int iter = 0; iter < 2000; ++iter) {
    const std::size_t n = 1 + rng.below(40);
    std::vector<int> x(n), kept(n);
    std::int64_t n_kept = 0;
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = rng.bit();
      kept[i] = rng.bit();
      n_kept += kept[i];
    }
    const Trace trace = make_trace(x, kept);
    const double uncond = score_unconditional(trace);
    if (n_kept > 0) {
      CHECK(uncond <= score_conditional(trace) + 1e-15);
    }
    const Trace all_kept = make_trace(x, std::vector<int>(n, 1));
    CHECK(score_unconditional(all_kept) == score_conditional(all_kept));
  }
}

TEST_CASE("flipping a kept flag to 0 never raises the unconditional score") {
  Rng rng(77);
  for (int iter = 0; iter < 500; ++iter) {
    const std::size_t n = 2 + rng.below(30);
    std::vector<int> x(n), kept(n, 1);
    for (std::size_t i = 0; i < n; ++i) x[i] = rng.bit();
    Trace trace = make_trace(x, kept);
    const double before = score_unconditional(trace);
    const std::size_t flip = rng.below(n);
    trace.rounds[flip].kept = 0;
    CHECK(score_unconditional(trace) <= before + 1e-15);
  }
}

TEST_CASE("round record validation rejects inconsistent success flags") {
  RoundRecord r;
  r.t = 1;
  r.a0 = 1;
  r.a1 = 0;
  r.y = 0;
  r.b = 1;
  r.m = 1;
  r.x = 1;
  CHECK_NOTHROW(validate(r));
  r.x = 0;
  CHECK_THROWS_AS(validate(r), std::invalid_argument);
  r.x = 1;
  r.a0 = 2;
  CHECK_THROWS_AS(validate(r), std::invalid_argument);
}
