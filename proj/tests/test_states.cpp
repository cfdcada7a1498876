#include <catch2/catch_amalgamated.hpp>

#include "effdirac/states.hpp"

using namespace effdirac;

TEST_CASE("state construction fixes the dependent quantum numbers") {
  QuantumState s = make_state(1, -1);
  REQUIRE(s.two_j == 1);
  REQUIRE(s.l_a == 0);
  REQUIRE(s.l_b == 1);
  REQUIRE(s.n_prime() == 0);
  REQUIRE_FALSE(s.S.has_value());

  QuantumState p = make_state(2, 1);
  REQUIRE(p.two_j == 1);
  REQUIRE(p.l_a == 1);
  REQUIRE(p.l_b == 0);
  REQUIRE(p.n_prime() == 1);

  QuantumState d = make_state(3, -2, 1);
  REQUIRE(d.two_j == 3);
  REQUIRE(d.l_a == 1);
  REQUIRE(d.l_b == 2);
  REQUIRE(d.S == 1);
}

TEST_CASE("state invariants hold across the physical grid") {
  for (int n = 1; n <= 10; ++n) {
    for (int kappa = -n; kappa < n; ++kappa) {
      if (kappa == 0) continue;
      QuantumState st = make_state(n, kappa);
      CAPTURE(n, kappa);
      REQUIRE(st.two_j == 2 * std::abs(kappa) - 1);
      REQUIRE(st.l_a + st.l_b == st.two_j);
      REQUIRE(st.n_prime() >= 0);
      REQUIRE(st.n_prime() + std::abs(kappa) == n);
    }
  }
}

TEST_CASE("state construction rejects unphysical inputs") {
  REQUIRE_THROWS_AS(make_state(0, -1), DomainError);
  REQUIRE_THROWS_AS(make_state(2, 0), DomainError);
  REQUIRE_THROWS_AS(make_state(2, -3), DomainError);
  REQUIRE_THROWS_AS(make_state(2, 3), DomainError);
  REQUIRE_THROWS_AS(make_state(1, -1, 2), DomainError);
  REQUIRE_THROWS_AS(make_state(1, -1, -1), DomainError);

  // kappa = +n would need an upper-component l equal to n
  REQUIRE_THROWS_AS(make_state(1, 1), DomainError);
  REQUIRE_THROWS_AS(make_state(3, 3), DomainError);
}

TEST_CASE("spectroscopic labels render from the upper-component l") {
  REQUIRE(render_label(make_state(1, -1)) == "1s_{1/2}");
  REQUIRE(render_label(make_state(2, -1)) == "2s_{1/2}");
  REQUIRE(render_label(make_state(2, 1)) == "2p_{1/2}");
  REQUIRE(render_label(make_state(2, -2)) == "2p_{3/2}");
  REQUIRE(render_label(make_state(3, 2)) == "3d_{3/2}");
  REQUIRE(render_label(make_state(3, -3)) == "3d_{5/2}");
  REQUIRE(render_label(make_state(4, -4)) == "4f_{7/2}");
}

TEST_CASE("label parsing recovers (n, kappa)") {
  QuantumState s = parse_label("2s_{1/2}");
  REQUIRE(s.n == 2);
  REQUIRE(s.kappa == -1);

  QuantumState p = parse_label("2p_{1/2}");
  REQUIRE(p.kappa == 1);

  QuantumState p3 = parse_label("2p_{3/2}");
  REQUIRE(p3.kappa == -2);

  QuantumState d5 = parse_label("3d_{5/2}");
  REQUIRE(d5.kappa == -3);

  QuantumState f5 = parse_label("4f_{5/2}");
  REQUIRE(f5.kappa == 3);
}

TEST_CASE("label parsing rejects malformed and inconsistent input") {
  REQUIRE_THROWS_AS(parse_label(""), ParseError);
  REQUIRE_THROWS_AS(parse_label("hello"), ParseError);
  REQUIRE_THROWS_AS(parse_label("2s_1/2"), ParseError);
  REQUIRE_THROWS_AS(parse_label("2s_{1/3}"), ParseError);
  REQUIRE_THROWS_AS(parse_label("2g_{9/2}"), ParseError);

  // j = 3/2 cannot pair with an s level
  REQUIRE_THROWS_AS(parse_label("2s_{3/2}"), ParseError);

  // 1p_{1/2} would be kappa = +1 = n
  REQUIRE_THROWS_AS(parse_label("1p_{1/2}"), DomainError);
}

TEST_CASE("parse is a left inverse of render") {
  for (int n = 1; n <= 10; ++n) {
    for (int kappa = -n; kappa < n; ++kappa) {
      if (kappa == 0) continue;
      QuantumState st = make_state(n, kappa);
      if (st.l_a > 3) continue;  // beyond f there is no letter to render
      QuantumState back = parse_label(render_label(st));
      CAPTURE(n, kappa);
      REQUIRE(back.n == st.n);
      REQUIRE(back.kappa == st.kappa);
    }
  }
}
