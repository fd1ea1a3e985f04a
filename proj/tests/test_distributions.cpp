#include "gconn/distribution.hpp"

#include <cmath>

#include "doctest.h"
#include "test_support.hpp"

using namespace gconn;
using test::Rng;

namespace {

std::vector<Point> sphere_points(int n = 6, std::uint64_t seed = 33) {
  Rng rng(seed);
  std::vector<Point> pts;
  for (int i = 0; i < n; ++i) pts.push_back(test::sphere_point(rng));
  return pts;
}

std::vector<Point> flat_points(int n = 6, std::uint64_t seed = 34) {
  Rng rng(seed);
  std::vector<Point> pts;
  for (int i = 0; i < n; ++i) pts.push_back(Point{rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)});
  return pts;
}

double max_at(const Derivation& w, const std::vector<Point>& pts) {
  double m = 0.0;
  for (const auto& p : pts) m = std::max(m, w.max_abs(p));
  return m;
}

double max_at(const Form& f, const std::vector<Point>& pts) {
  double m = 0.0;
  for (const auto& p : pts) m = std::max(m, f.max_abs(p));
  return m;
}

struct SplitFixture {
  std::shared_ptr<MetricG> g;
  std::shared_ptr<LeviCivitaLift> lc;
  GradedMetric gm;
  SplitGeometry geo;
  std::vector<Point> pts;

  SplitFixture(std::shared_ptr<MetricG> metric, DistributionSplit split, Derivation p,
               std::vector<Point> points)
      : g(metric),
        lc(std::make_shared<LeviCivitaLift>(metric)),
        gm(metric),
        geo(std::move(split), lc, gm, std::move(p)),
        pts(std::move(points)) {}
};

SplitFixture sphere_split_fixture(bool mixed_u = false) {
  auto g = test::sphere_metric();
  OrthoFrame frame = test::sphere_frame();
  DistributionSplit split(frame.rows(), {1});
  VectorField u = VectorField::coordinate(2, 1);
  if (mixed_u) u = u + frame.row(2);
  return SplitFixture(g, std::move(split), Derivation::lift_i(u), sphere_points());
}

SplitFixture flat_split_fixture(bool with_u) {
  auto g = test::flat_metric(2);
  DistributionSplit split = DistributionSplit::coordinate(2, {1});
  Derivation p = with_u ? Derivation::lift_i(VectorField::coordinate(2, 2)) : Derivation(2);
  return SplitFixture(g, std::move(split), std::move(p), flat_points());
}

// Homogeneous elements spanning one side, with form-scaled variety.
std::vector<Derivation> side_pool(const DistributionSplit& split, bool d_side) {
  std::vector<Derivation> pool = split.side_generators(d_side);
  std::vector<Derivation> out = pool;
  int m = split.dim();
  Form f = Form::scalar(m, sin(ScalarExpr::coord(1)) + ScalarExpr::constant(2.0));
  Form w1 = wedge(f, Form::dx(m, 2));
  for (const auto& gen : pool) {
    out.push_back(mul_left(f, gen));
    out.push_back(mul_left(w1, gen));
  }
  return out;
}

}  // namespace

TEST_CASE("projections keep the requested side and resolve the identity") {
  DistributionSplit split = DistributionSplit::coordinate(2, {1});
  Derivation l1 = Derivation::generator(2, Gen::L, 1);
  Derivation w = l1 + mul_left(Form::coordinate(2, 1), Derivation::generator(2, Gen::I, 2));
  CHECK((split.project(w, true) - l1).is_structurally_zero());

  Derivation v = mul_left(Form::dx(2, 1), Derivation::generator(2, Gen::L, 2));
  CHECK(split.project(v, true).is_structurally_zero());

  Rng rng(808ull);
  auto pts = flat_points();
  for (int t = 0; t < 8; ++t) {
    Derivation r(2);
    for (int j = 1; j <= 2; ++j) {
      r.add_term(test::random_form(rng, 2), Gen::L, j);
      r.add_term(test::random_form(rng, 2), Gen::I, j);
    }
    CHECK(max_at(split.project(r, true) + split.project(r, false) - r, pts) <= 1e-10);
    // idempotence
    CHECK(max_at(split.project(split.project(r, true), true) - split.project(r, true), pts) <=
          1e-10);
  }
}

TEST_CASE("frame-split projections are Omega-linear and idempotent on the sphere") {
  SplitFixture fx = sphere_split_fixture();
  const DistributionSplit& split = fx.geo.split();
  Rng rng(909ull);
  for (int t = 0; t < 6; ++t) {
    Derivation r(2);
    for (int j = 1; j <= 2; ++j) {
      r.add_term(test::random_form(rng, 2), Gen::L, j);
      r.add_term(test::random_form(rng, 2), Gen::I, j);
    }
    CHECK(max_at(split.project(r, true) + split.project(r, false) - r, fx.pts) <= 1e-9);
    CHECK(max_at(split.project(split.project(r, false), false) - split.project(r, false),
                 fx.pts) <= 1e-9);
    Form a = test::random_form(rng, 2);
    CHECK(max_at(split.project(mul_left(a, r), true) - mul_left(a, split.project(r, true)),
                 fx.pts) <= 1e-8);
  }

  CHECK_THROWS_AS(
      split.require_in(Derivation::generator(2, Gen::L, 2), true, fx.pts),
      NotInDistribution);
  split.require_in(split.gen(Gen::I, 1), true, fx.pts);
}

TEST_CASE("partial Levi-Civita connection satisfies its torsion and metricity displays") {
  // flat coordinate split: nabla^{D,L}_{L1}L1 = 0
  SplitFixture flat = flat_split_fixture(false);
  Derivation l1 = Derivation::generator(2, Gen::L, 1);
  CHECK(flat.geo.dlc(l1, l1).is_structurally_zero());

  // sphere frame split: nabla^g_{E1}E1 = 0 so the partial connection kills L_{E1}
  SplitFixture sph = sphere_split_fixture();
  Derivation le1 = sph.geo.split().gen(Gen::L, 1);
  CHECK(max_at(sph.geo.dlc(le1, le1), sph.pts) <= 1e-12);

  for (const SplitFixture& fx : {flat_split_fixture(true), sphere_split_fixture()}) {
    auto pool = side_pool(fx.geo.split(), true);
    for (const auto& x : pool) {
      for (const auto& y : pool) {
        CHECK(max_at(fx.geo.partial_torsion_residual(x, y), fx.pts) <= 1e-8);
        CHECK(max_at(fx.geo.b_symmetry_residual(x, y), fx.pts) <= 1e-8);
        for (const auto& z : fx.geo.split().side_generators(true)) {
          CHECK(max_at(fx.geo.partial_metricity_residual(x, y, z), fx.pts) <= 1e-8);
          CHECK(max_at(fx.geo.partial_koszul_residual(x, y, z), fx.pts) <= 1e-8);
        }
      }
    }
  }
}

TEST_CASE("second fundamental form module rules") {
  SplitFixture fx = sphere_split_fixture();
  Rng rng(112ull);
  auto gens = fx.geo.split().side_generators(true);
  for (int t = 0; t < 4; ++t) {
    Form a_even = test::random_form(rng, 2).even_part();
    Form a_odd = test::random_form(rng, 2).odd_part();
    for (const auto& x : gens) {
      for (const auto& y : gens) {
        // B(aX, Y) = a B(X,Y)
        CHECK(max_at(fx.geo.b(mul_left(a_even, x), y) - mul_left(a_even, fx.geo.b(x, y)),
                     fx.pts) <= 1e-8);
        CHECK(max_at(fx.geo.b(mul_left(a_odd, x), y) - mul_left(a_odd, fx.geo.b(x, y)),
                     fx.pts) <= 1e-8);
        // B(X, aY) = (-1)^{|X||a|} a B(X,Y)
        double s = x.parity() == 1 ? -1.0 : 1.0;
        CHECK(max_at(fx.geo.b(x, mul_left(a_odd, y)) -
                         mul_left(a_odd, fx.geo.b(x, y)).scaled(s),
                     fx.pts) <= 1e-8);
      }
    }
  }
}

TEST_CASE("semi-symmetric split displays: recombination, metricity, torsion") {
  for (const SplitFixture& fx :
       {flat_split_fixture(true), sphere_split_fixture(), sphere_split_fixture(true)}) {
    auto pool = side_pool(fx.geo.split(), true);
    for (const auto& x : pool) {
      for (const auto& y : pool) {
        // nabla = dss + bt
        Derivation rec = fx.geo.semisym().eval(x, y) - fx.geo.dss(x, y) - fx.geo.bt(x, y);
        CHECK(max_at(rec, fx.pts) <= 1e-8);
        CHECK(max_at(fx.geo.dss_display_residual(x, y), fx.pts) <= 1e-8);
        CHECK(max_at(fx.geo.bt_display_residual(x, y), fx.pts) <= 1e-8);
        CHECK(max_at(fx.geo.dss_torsion_residual(x, y), fx.pts) <= 1e-8);
        CHECK(max_at(fx.geo.exchange_residual(x, y), fx.pts) <= 1e-8);
        for (const auto& z : fx.geo.split().side_generators(true))
          CHECK(max_at(fx.geo.dss_metricity_residual(x, y, z), fx.pts) <= 1e-8);
      }
    }
    // U in D makes bt collapse onto b
    if (fx.geo.u_perp().is_structurally_zero()) {
      for (const auto& x : fx.geo.split().side_generators(true))
        for (const auto& y : fx.geo.split().side_generators(true))
          CHECK(max_at(fx.geo.bt(x, y) - fx.geo.b(x, y), fx.pts) <= 1e-9);
    }
  }
}

TEST_CASE("shape operator: adjointness, module rules and the Weingarten formula") {
  for (const SplitFixture& fx : {sphere_split_fixture(), sphere_split_fixture(true)}) {
    auto dpool = side_pool(fx.geo.split(), true);
    auto ppool = side_pool(fx.geo.split(), false);
    for (const auto& x : dpool) {
      for (const auto& xi : ppool) {
        CHECK(max_at(fx.geo.weingarten_residual(x, xi), fx.pts) <= 1e-8);
        CHECK(max_at(fx.geo.normal_rule_residual(x, xi), fx.pts) <= 1e-8);
        for (const auto& y : fx.geo.split().side_generators(true))
          CHECK(max_at(fx.geo.adjoint_residual(x, y, xi), fx.pts) <= 1e-8);
      }
    }
    // A_{aX} xi = a A_X xi
    Rng rng(113ull);
    Form a = test::random_form(rng, 2);
    for (const auto& x : fx.geo.split().side_generators(true))
      for (const auto& xi : fx.geo.split().side_generators(false))
        CHECK(max_at(fx.geo.shape(mul_left(a, x), xi) - mul_left(a, fx.geo.shape(x, xi)),
                     fx.pts) <= 1e-8);
  }

  // flat: shape operator vanishes on generators
  SplitFixture flat = flat_split_fixture(true);
  for (const auto& x : flat.geo.split().side_generators(true))
    for (const auto& xi : flat.geo.split().side_generators(false))
      CHECK(flat.geo.shape(x, xi).is_structurally_zero());
}

TEST_CASE("gauss, codazzi and ricci equations on the sphere") {
  for (const SplitFixture& fx : {sphere_split_fixture(), sphere_split_fixture(true)}) {
    auto dpool = side_pool(fx.geo.split(), true);
    auto dgens = fx.geo.split().side_generators(true);
    auto pgens = fx.geo.split().side_generators(false);
    for (const auto& x : dpool) {
      for (const auto& y : dgens) {
        for (const auto& z : dgens) {
          for (const auto& w : dgens)
            CHECK(max_at(fx.geo.gauss_residual(x, y, z, w), fx.pts) <= 1e-8);
          CHECK(max_at(fx.geo.codazzi_residual(x, y, z), fx.pts) <= 1e-8);
        }
        for (const auto& xi : pgens)
          CHECK(max_at(fx.geo.ricci_eq_residual(x, y, xi), fx.pts) <= 1e-8);
      }
    }
  }
}

TEST_CASE("flat with U = 0 reduces to the corollaries with zero structure") {
  SplitFixture fx = flat_split_fixture(false);
  auto dgens = fx.geo.split().side_generators(true);
  auto pgens = fx.geo.split().side_generators(false);
  for (const auto& x : dgens) {
    for (const auto& y : dgens) {
      for (const auto& z : dgens) {
        for (const auto& w : dgens)
          CHECK(max_at(fx.geo.gauss_residual(x, y, z, w), fx.pts) <= 1e-12);
        CHECK(max_at(fx.geo.codazzi_residual(x, y, z), fx.pts) <= 1e-12);
      }
      for (const auto& xi : pgens)
        CHECK(max_at(fx.geo.ricci_eq_residual(x, y, xi), fx.pts) <= 1e-12);
    }
  }
}

TEST_CASE("sphere with U = 0: the corollary forms of the three equations") {
  auto g = test::sphere_metric();
  OrthoFrame frame = test::sphere_frame();
  SplitFixture fx(g, DistributionSplit(frame.rows(), {1}), Derivation(2), sphere_points());
  auto dgens = fx.geo.split().side_generators(true);
  auto pgens = fx.geo.split().side_generators(false);
  for (const auto& x : dgens) {
    for (const auto& y : dgens) {
      for (const auto& z : dgens) {
        for (const auto& w : dgens)
          CHECK(max_at(fx.geo.gauss_residual(x, y, z, w), fx.pts) <= 1e-8);
        CHECK(max_at(fx.geo.codazzi_residual(x, y, z), fx.pts) <= 1e-8);
      }
      for (const auto& xi : pgens)
        CHECK(max_at(fx.geo.ricci_eq_residual(x, y, xi), fx.pts) <= 1e-8);
    }
  }
}

TEST_CASE("gauss, codazzi and ricci equations on a curved hypersphere split") {
  // S^3 with the chi-spheres as D: ambient curvature, second fundamental form
  // and the equations' left sides are all genuinely nonzero here.
  auto g = test::s3_metric();
  auto lc = std::make_shared<LeviCivitaLift>(g);
  GradedMetric gm(g);
  OrthoFrame frame = test::s3_frame();
  Rng rng(606ull);
  std::vector<Point> pts;
  for (int i = 0; i < 4; ++i) pts.push_back(test::s3_point(rng));

  VectorField u = VectorField::coordinate(3, 1) + frame.row(2);  // components on both sides
  SplitGeometry geo(DistributionSplit(frame.rows(), {2, 3}), lc, gm, Derivation::lift_i(u));

  auto dgens = geo.split().side_generators(true);
  auto pgens = geo.split().side_generators(false);
  double lhs_gauss = 0.0, lhs_codazzi = 0.0, lhs_ricci = 0.0, lhs_b = 0.0;
  for (const auto& x : dgens) {
    lhs_b = std::max(lhs_b, max_at(geo.b(x, dgens.front()), pts));
    for (const auto& y : dgens) {
      for (const auto& z : dgens) {
        for (const auto& w : dgens) {
          lhs_gauss = std::max(
              lhs_gauss, max_at(gm.pair(curvature(geo.semisym(), x, y, z), w), pts));
          CHECK(max_at(geo.gauss_residual(x, y, z, w), pts) <= 1e-8);
        }
        lhs_codazzi = std::max(
            lhs_codazzi,
            max_at(geo.split().project(curvature(geo.semisym(), x, y, z), false), pts));
        CHECK(max_at(geo.codazzi_residual(x, y, z), pts) <= 1e-8);
      }
      for (const auto& xi : pgens) {
        // the equation's terms are individually nonzero and cancel
        lhs_ricci = std::max(lhs_ricci, max_at(geo.bt(x, geo.shape_t(y, xi)), pts));
        CHECK(max_at(geo.ricci_eq_residual(x, y, xi), pts) <= 1e-8);
      }
    }
  }
  // non-vacuousness witnesses
  CHECK(lhs_b > 0.1);
  CHECK(lhs_gauss > 0.1);
  CHECK(lhs_codazzi > 0.1);
  CHECK(lhs_ricci > 0.1);
}

TEST_CASE("sphere split S={2}: nonzero second fundamental form, equations hold") {
  auto g = test::sphere_metric();
  auto lc = std::make_shared<LeviCivitaLift>(g);
  GradedMetric gm(g);
  OrthoFrame frame = test::sphere_frame();
  VectorField u = VectorField::coordinate(2, 1) + frame.row(2);
  SplitGeometry geo(DistributionSplit(frame.rows(), {2}), lc, gm, Derivation::lift_i(u));
  auto pts = sphere_points();

  auto dgens = geo.split().side_generators(true);
  auto pgens = geo.split().side_generators(false);
  CHECK(max_at(geo.b(dgens[0], dgens[0]), pts) > 0.1);
  for (const auto& x : dgens)
    for (const auto& y : dgens) {
      for (const auto& z : dgens) {
        for (const auto& w : dgens) CHECK(max_at(geo.gauss_residual(x, y, z, w), pts) <= 1e-8);
        CHECK(max_at(geo.codazzi_residual(x, y, z), pts) <= 1e-8);
      }
      for (const auto& xi : pgens) CHECK(max_at(geo.ricci_eq_residual(x, y, xi), pts) <= 1e-8);
    }
}

TEST_CASE("integrability residuals distinguish coordinate and twisted frame splits") {
  DistributionSplit coord = DistributionSplit::coordinate(3, {1, 2});
  std::vector<Point> pts;
  Rng rng(515ull);
  for (int i = 0; i < 5; ++i)
    pts.push_back(Point{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)});
  CHECK(coord.integrability_residual(pts) <= 1e-10);

  // Heisenberg-type frame: [E1, E2] = E3 sticks out of D = span{1,2}
  VectorField e1 = VectorField::coordinate(3, 1);
  VectorField e2 = VectorField::coordinate(3, 2);
  e2.comp(3) = ScalarExpr::coord(1);
  VectorField e3 = VectorField::coordinate(3, 3);
  DistributionSplit heis({e1, e2, e3}, {1, 2});
  CHECK(heis.integrability_residual(pts) > 0.5);
}
