#include "aswtower/lfun.hpp"
#include "doctest.h"

using namespace aswtower;

namespace {

Tower make(const std::string& text) { return Tower(parse_tower_spec(text)); }

Poly P(const Field* F, std::vector<Elem> c) { return Poly(F, std::move(c)); }

}  // namespace

TEST_CASE("Frobenius element of y^2 + y = x") {
  Tower T = make("p=2\nlevels=1\nc 1 1\n");
  FrobeniusElement fe = frobenius_alpha(T, 1);
  CHECK(fe.alpha.t_coeff(0) == Poly::constant(T.field(), 1));
  CHECK(fe.alpha.t_coeff(1) == Poly::x(T.field()));
  CHECK(fe.growth_ok);
  CHECK(fe.inverse_ok);
}

TEST_CASE("Frobenius element is a unit with bounded growth") {
  for (const char* text : {"p=3\nlevels=2\nc 2 1\n", "p=5\nlevels=2\nc 3 1\nc 1 2\n", "p=2\nlevels=3\nc 3 1\n",
                           "p=2\nnu=2\nmodulus=1,1,1\nlevels=2\nc 3 (0,1)\nc 1 1\n"}) {
    Tower T = make(text);
    for (unsigned n = 1; n <= T.levels(); ++n) {
      CAPTURE(text);
      FrobeniusElement fe = frobenius_alpha(T, n);
      CHECK(fe.unit_mod_T);
      CHECK(fe.inverse_ok);
      CHECK_MESSAGE(fe.growth_ok, fe.growth_detail);
      CHECK_FALSE(growth_violation(fe.alpha, T.d()));
    }
  }
}

TEST_CASE("character values at places") {
  Tower T = make("p=2\nlevels=1\nc 1 1\n");
  const Field* F = T.field();
  FrobeniusElement fe = frobenius_alpha(T, 1);
  CHECK(char_value(T, fe, P(F, {1, 1})).exponent == 1);
  CHECK(char_value(T, fe, Poly::x(F)).exponent == 0);
  CHECK(char_value(T, fe, P(F, {1, 1, 1})).exponent == 1);
  CHECK_THROWS_AS(char_value(T, fe, P(F, {1, 0, 1})), InputError);
}

TEST_CASE("necklace counts") {
  CHECK(necklace_count(2, 1) == 2);
  CHECK(necklace_count(2, 2) == 1);
  CHECK(necklace_count(3, 2) == 3);
  CHECK(necklace_count(4, 3) == 20);
  Field F(FieldParams{3, 1, {}});
  for (unsigned m = 1; m <= 4; ++m) CHECK(monic_irreducibles(&F, m).size() == necklace_count(3, m));
}

TEST_CASE("Euler product at the first truncation") {
  Tower T = make("p=2\nlevels=1\nc 1 1\n");
  const Field& F = *T.field();
  FrobeniusElement fe = frobenius_alpha(T, 1);
  EulerProduct E = euler_product(T, fe, 2, EulerConvention::plain, false);
  CHECK(E.coeffs[0] == TVec{1, 0});
  CHECK(E.coeffs[1] == TVec{0, 1});
  CHECK(E.coeffs[2] == TVec{0, 0});
  CHECK(E.place_counts == std::vector<std::size_t>{2, 1});

  // trivial character gives the zeta function of the affine line, 1/(1 - q s)
  TruncSeries one = TruncSeries::one(&F, 1);
  FrobeniusElement triv{1, one, one, true, true, true, {}};
  EulerProduct Z = euler_product(T, triv, 3);
  for (unsigned k = 0; k <= 3; ++k) CHECK(Z.coeffs[k][0] == (k == 0 ? 1u : 0u));  // q = 2 = 0 in F_2

  Tower U = make("p=3\nlevels=1\nc 1 1\n");
  TruncSeries one3 = TruncSeries::one(U.field(), 1);
  FrobeniusElement triv3{1, one3, one3, true, true, true, {}};
  EulerProduct Z3 = euler_product(U, triv3, 3);
  for (unsigned k = 0; k <= 3; ++k) CHECK(Z3.coeffs[k][0] == (k == 0 ? 1u : 0u));
}

TEST_CASE("nuclear matrix and Fredholm determinant") {
  Tower T = make("p=2\nlevels=1\nc 1 1\n");
  const Field& F = *T.field();
  FrobeniusElement fe = frobenius_alpha(T, 1);
  TMatrix M = nuclear_matrix(F, nuclear_series(fe, 1), 2);
  CHECK(M.at(0, 0) == TVec{0, 1});
  CHECK(M.at(0, 1) == TVec{1, 0});
  CHECK(M.at(1, 0) == TVec{0, 0});
  CHECK(M.at(1, 1) == TVec{0, 0});
  auto c = fredholm_coeffs(F, M);
  CHECK(c[1] == TVec{0, 1});
  NewtonPolygon np = newton_polygon(c, fredholm_trust_bound(2, 1, 1, 1, 2));
  CHECK(np.points.size() >= 2);
  CHECK(np.points[1] == std::pair<std::int64_t, std::int64_t>{1, 1});
  CHECK(fredholm_coeffs(F, TMatrix{}).size() == 1);
  // Euler product and Fredholm determinant agree at this truncation
  EulerProduct E = euler_product(T, fe, 2);
  CHECK(compare_euler_fredholm(F, E, c, Rational(2)).ok());
}

TEST_CASE("Berkowitz agrees with cofactor expansion") {
  Field F(FieldParams{5, 1, {}});
  TMatrix M{3, 3, std::vector<TVec>(9, TVec(3, 0))};
  const Elem vals[9][3] = {{1, 2, 0}, {0, 1, 4}, {3, 0, 0}, {2, 2, 2}, {0, 0, 1}, {4, 1, 0}, {1, 0, 3}, {0, 3, 0}, {2, 4, 1}};
  for (int i = 0; i < 9; ++i) M.e[i] = TVec(vals[i], vals[i] + 3);
  auto c = fredholm_coeffs(F, M);
  auto mul = [&](const TVec& a, const TVec& b) { return tvec_mul(F, a, b); };
  auto sub = [&](const TVec& a, const TVec& b) { return tvec_sub(F, a, b); };
  auto add = [&](const TVec& a, const TVec& b) { return tvec_add(F, a, b); };
  TVec tr = add(add(M.at(0, 0), M.at(1, 1)), M.at(2, 2));
  TVec c1(3);
  for (int i = 0; i < 3; ++i) c1[i] = F.neg(tr[i]);
  CHECK(c[1] == c1);
  auto minor = [&](int a, int b) { return sub(mul(M.at(a, a), M.at(b, b)), mul(M.at(a, b), M.at(b, a))); };
  CHECK(c[2] == add(add(minor(0, 1), minor(0, 2)), minor(1, 2)));
  TVec det = sub(mul(M.at(0, 0), minor(1, 2)),
                 mul(M.at(0, 1), sub(mul(M.at(1, 0), M.at(2, 2)), mul(M.at(1, 2), M.at(2, 0)))));
  det = add(det, mul(M.at(0, 2), sub(mul(M.at(1, 0), M.at(2, 1)), mul(M.at(1, 1), M.at(2, 0)))));
  TVec negdet(3);
  for (int i = 0; i < 3; ++i) negdet[i] = F.neg(det[i]);
  CHECK(c[3] == negdet);
}

TEST_CASE("Hodge polygon and hull") {
  CHECK(hodge_eta(3, 2, 1) == 1);
  CHECK(hodge_eta(3, 2, 2) == 3);
  CHECK(hodge_eta(3, 2, 3) == 6);
  auto h = lower_hull({{0, 0}, {1, 5}, {2, 1}, {3, 6}});
  CHECK(h.size() == 3);
  CHECK(h[1].first == 2);
}

TEST_CASE("Newton polygon equals Hodge below the trust bound") {
  Tower T = make("p=3\nlevels=2\nc 2 1\n");
  NewtonRun run = run_newton(T, 2, 8);
  CHECK(run.np.trust_bound == 9);
  std::vector<std::pair<std::int64_t, std::int64_t>> want{{0, 0}, {1, 1}, {2, 3}, {3, 6}};
  CHECK(run.np.points == want);
  CHECK(compare_np_hp(run.np, 3, 2, 1).ok());
  CHECK(run.entry_growth_ok);

  Tower G = make("p=5\nlevels=2\nc 3 1\n");
  NewtonRun g = run_newton(G, 2, 18);
  auto R = compare_np_hp(g.np, 5, 3, 1);
  CHECK(R.ok());
  CHECK(R.suite == "np_hp_vertices");
}

TEST_CASE("Euler conventions against the Fredholm determinant") {
  for (const char* text : {"p=2\nlevels=2\nc 1 1\n", "p=3\nlevels=2\nc 2 1\n", "p=5\nlevels=2\nc 3 1\n",
                           "p=2\nlevels=3\nc 3 1\nc 1 1\n"}) {
    CAPTURE(text);
    Tower T = make(text);
    const unsigned n = T.levels();
    NewtonRun run = run_newton(T, n, 12);
    for (unsigned D = 1; D <= 3; ++D) {
      EulerProduct E = euler_product(T, run.frob, D);
      CHECK(compare_euler_fredholm(*T.field(), E, run.fredholm, run.np.trust_bound).ok());
    }
  }
}
