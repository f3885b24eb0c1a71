#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "pslab/jet.hpp"

using namespace pslab;
using doctest::Approx;

namespace {

void check_coeffs(const Jet1& j, std::initializer_list<double> expected, double eps = 1e-15) {
  REQUIRE(j.order() + 1 == static_cast<int>(expected.size()));
  int k = 0;
  for (double e : expected) {
    CHECK(j[k] == Approx(e).epsilon(eps).scale(1.0));
    ++k;
  }
}

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

TEST_CASE("jet arithmetic on small polynomials") {
  const Jet1 t = Jet1::variable(0.0, 3);
  check_coeffs((1.0 + t) * (1.0 - t), {1, 0, -1, 0});
  check_coeffs(1.0 / (1.0 - t), {1, 1, 1, 1});
  check_coeffs(2.0 * sin(t), {0, 2, 0, -1.0 / 3.0});
  check_coeffs(sin(t), {0, 1, 0, -1.0 / 6.0});
}

TEST_CASE("division by a jet with zero constant term is rejected") {
  const Jet1 t = Jet1::variable(0.0, 3);
  CHECK_THROWS_AS(1.0 / t, DomainError);
  CHECK_THROWS_AS(Jet2(2, 1.0) / Jet2::variable_s(0.0, 2), DomainError);
}

TEST_CASE("elementary functions") {
  SUBCASE("ln(tan + sec) at pi/4") {
    const Jet1 t = Jet1::variable(std::numbers::pi / 4, 1);
    const Jet1 g = log(tan(t) + sec(t));
    CHECK(g[0] == Approx(std::log(1.0 + std::sqrt(2.0))).epsilon(1e-15));
    CHECK(g[1] == Approx(std::sqrt(2.0)).epsilon(1e-15));
  }
  SUBCASE("domain violations name the function and value") {
    try {
      (void)sqrt(Jet1(2, -1.0));
      FAIL("expected a domain error");
    } catch (const DomainError& e) {
      const std::string what = e.what();
      CHECK(what.find("sqrt") != std::string::npos);
      CHECK(what.find("-1") != std::string::npos);
    }
    CHECK_THROWS_AS(log(Jet1(2, 0.0)), DomainError);
    CHECK_THROWS_AS(cot(Jet1::variable(0.0, 2)), DomainError);
    CHECK_THROWS_AS(csc(Jet1::variable(0.0, 2)), DomainError);
    CHECK_THROWS_AS(tan(Jet1::variable(std::numbers::pi / 2, 2)), DomainError);
    CHECK_THROWS_AS(sec(Jet1::variable(std::numbers::pi / 2, 2)), DomainError);
    CHECK_THROWS_AS(pow(Jet1(2, -2.0), 0.5), DomainError);
  }
  SUBCASE("plain evaluation agrees with the standard library") {
    const double x = 0.37;
    CHECK(apply(ElementaryFn::sin, x) == Approx(std::sin(x)).epsilon(1e-15));
    CHECK(apply(ElementaryFn::sec, x) == Approx(1.0 / std::cos(x)).epsilon(1e-15));
    CHECK(apply(ElementaryFn::cot, x) == Approx(std::cos(x) / std::sin(x)).epsilon(1e-15));
    CHECK(apply(ElementaryFn::ln, x) == Approx(std::log(x)).epsilon(1e-15));
    CHECK(apply(ElementaryFn::sqrt, 0.0) == 0.0);
  }
  SUBCASE("name lookup round-trips") {
    for (auto fn : {ElementaryFn::sin, ElementaryFn::cos, ElementaryFn::tan, ElementaryFn::sec, ElementaryFn::csc,
                    ElementaryFn::cot, ElementaryFn::sinh, ElementaryFn::cosh, ElementaryFn::exp, ElementaryFn::ln,
                    ElementaryFn::sqrt}) {
      ElementaryFn back{};
      REQUIRE(elementary_from_name(name_of(fn), back));
      CHECK(back == fn);
    }
    ElementaryFn unused{};
    CHECK_FALSE(elementary_from_name("log", unused));
  }
}

TEST_CASE("derivative extraction") {
  const Jet1 c = cos(Jet1::variable(0.0, 4));
  CHECK(c.derivative(4) == Approx(1.0));
  CHECK(c.derivative(1) == 0.0);
  CHECK_THROWS_AS(c.derivative(5), ShapeError);
  const Jet1 a3 = cos(2.0 * Jet1::variable(0.0, 4)) / (3.0 * std::sqrt(3.0));
  CHECK(a3.derivative(2) == Approx(-4.0 / (3.0 * std::sqrt(3.0))).epsilon(1e-15));
}

TEST_CASE("Leibniz rule on random polynomial jets") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int trial = 0; trial < 20; ++trial) {
    Jet1 a(8), b(8);
    for (int k = 0; k <= 8; ++k) {
      a[k] = u(rng);
      b[k] = u(rng);
    }
    const Jet1 p = a * b;
    for (int k = 0; k <= 8; ++k) {
      double expected = 0.0;
      double scale = 0.0;
      for (int i = 0; i <= k; ++i) {
        const double term = binomial(k, i) * a.derivative(i) * b.derivative(k - i);
        expected += term;
        scale += std::abs(term);
      }
      CHECK(std::abs(p.derivative(k) - expected) <= 1e-13 * std::max(scale, 1.0));
    }
  }
}

TEST_CASE("chain rule agrees with finite differences away from poles") {
  using F = ElementaryFn;
  struct Case {
    F fn;
    double lo;
    double hi;
  };
  // Inner map g(t) = 0.6 t + 0.2 sin t keeps compositions non-trivial.
  const Case cases[] = {{F::sin, -2, 2},    {F::cos, -2, 2},   {F::tan, -1, 1},      {F::sec, -1, 1},
                        {F::csc, 0.4, 2.5}, {F::cot, 0.4, 2.5}, {F::sinh, -2, 2},     {F::cosh, -2, 2},
                        {F::exp, -2, 2},    {F::ln, 0.5, 3},    {F::sqrt, 0.5, 3}};
  std::mt19937 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const Case& c = cases[static_cast<std::size_t>(trial) % std::size(cases)];
    const double t0 = std::uniform_real_distribution<double>(c.lo, c.hi)(rng);
    const int k = 1 + trial % 4;
    ScalarFunction f{[&](double t) { return apply(c.fn, 0.6 * t + 0.2 * std::sin(t)); },
                     [&](const Jet1& t) { return apply(c.fn, 0.6 * t + 0.2 * sin(t)); }};
    INFO("fn=", name_of(c.fn), " t0=", t0, " k=", k);
    CHECK(fd_crosscheck(f, t0, k) < 1e-5);
  }
}

TEST_CASE("finite-difference oracle examples") {
  ScalarFunction sine{[](double t) { return std::sin(t); }, [](const Jet1& t) { return sin(t); }};
  CHECK(fd_crosscheck(sine, 0.3, 2, 1e-4) < 1e-6);
  ScalarFunction one{[](double) { return 1.0; }, [](const Jet1& t) { return Jet1(t.order(), 1.0); }};
  for (int k = 1; k <= 4; ++k) CHECK(fd_crosscheck(one, 0.7, k) == 0.0);
  ScalarFunction alpha1{[](double t) { return 2.0 * std::cos(t) / (3.0 * std::sqrt(3.0)); },
                        [](const Jet1& t) { return 2.0 * cos(t) / (3.0 * std::sqrt(3.0)); }};
  CHECK(fd_crosscheck(alpha1, 0.5, 3, 1e-3) < 1e-4);
  CHECK_THROWS(central_difference([](double t) { return t; }, 0.0, 5));
}

TEST_CASE("truncation consistency") {
  const auto f = [](const Jet1& t) { return exp(sin(t)) * sqrt(1.0 + t * t) / cosh(t); };
  const Jet1 high = f(Jet1::variable(0.4, 10));
  const Jet1 low = f(Jet1::variable(0.4, 5));
  const Jet1 cut = high.truncated(5);
  for (int k = 0; k <= 5; ++k) CHECK(cut[k] == Approx(low[k]).epsilon(1e-14).scale(1.0));
  CHECK_THROWS_AS(low.truncated(6), ShapeError);
}

TEST_CASE("mixed-order operands truncate to the smaller order") {
  const Jet1 a = Jet1::variable(1.0, 6);
  const Jet1 b = Jet1::variable(2.0, 3);
  CHECK((a * b).order() == 3);
  CHECK((a + b).order() == 3);
  CHECK((Jet2::variable_s(0.0, 4) * Jet2::variable_t(0.0, 2)).order() == 2);
}

TEST_CASE("Jet2 partial derivatives") {
  const double s0 = 0.7;
  const double t0 = -1.3;
  const Jet2 s = Jet2::variable_s(s0, 4);
  const Jet2 t = Jet2::variable_t(t0, 4);
  const Jet2 p = 0.5 * s * s * t * t * t;
  CHECK(p.partial(1, 2) == Approx(6.0 * s0 * t0).epsilon(1e-15));
  CHECK(p.partial(0, 0) == Approx(0.5 * s0 * s0 * t0 * t0 * t0).epsilon(1e-15));
  CHECK(p.partial(2, 1) == Approx(3.0 * t0 * t0).epsilon(1e-15));
  CHECK(p.d(0).d(1).d(1).value() == Approx(6.0 * s0 * t0).epsilon(1e-15));
  CHECK_THROWS_AS(p.partial(3, 2), ShapeError);
}

TEST_CASE("Jet2 elementary functions match nested jets") {
  // f(s,t) = sin(s t) + ln(2 + s) * sqrt(1 + t^2); compare d^2/dsdt against
  // a closed-form mixed partial.
  const double s0 = 0.3;
  const double t0 = 0.8;
  const Jet2 s = Jet2::variable_s(s0, 4);
  const Jet2 t = Jet2::variable_t(t0, 4);
  const Jet2 f = sin(s * t) + log(2.0 + s) * sqrt(1.0 + t * t);
  const double fst = std::cos(s0 * t0) - s0 * t0 * std::sin(s0 * t0) + (1.0 / (2.0 + s0)) * t0 / std::sqrt(1 + t0 * t0);
  CHECK(f.partial(1, 1) == Approx(fst).epsilon(1e-14));
  const Jet2 g = tan(t) / cosh(s) + exp(s - t) - pow(1.5 + s * t, 1.5) + ipow(s - t, -2);
  const auto value = [](double a, double b) {
    return std::tan(b) / std::cosh(a) + std::exp(a - b) - std::pow(1.5 + a * b, 1.5) + 1.0 / ((a - b) * (a - b));
  };
  const double h = 1e-3;
  const double gss = (value(s0 + h, t0) - 2 * value(s0, t0) + value(s0 - h, t0)) / (h * h);
  CHECK(g.partial(2, 0) == Approx(gss).epsilon(1e-5));
  CHECK(g.value() == Approx(value(s0, t0)).epsilon(1e-15));
}

TEST_CASE("Jet2 embedding of a t-jet") {
  const Jet1 a = sin(Jet1::variable(0.2, 6));
  const Jet2 b = Jet2::from_t(a, 4);
  CHECK(b.order() == 4);
  CHECK(b.partial(0, 3) == Approx(a.derivative(3)).epsilon(1e-15));
  CHECK(b.partial(1, 0) == 0.0);
  CHECK(b.partial(1, 2) == 0.0);
}

TEST_CASE("order limits") {
  CHECK_THROWS_AS(Jet1(kMaxJet1Order + 1), ShapeError);
  CHECK_THROWS_AS(Jet2(kMaxJet2Order + 1), ShapeError);
  CHECK_THROWS_AS(Jet1(-1), ShapeError);
  CHECK_THROWS_AS(Jet1(0).differentiated(), ShapeError);
}
