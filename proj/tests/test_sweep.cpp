#include <doctest.h>

#include <cstdlib>

#include "floquet/error.hpp"
#include "floquet/lattice.hpp"
#include "floquet/sweep.hpp"

using namespace floquet;
using namespace floquet::sweep;

namespace {

SweepSpec small_spec() {
  SweepSpec s;
  s.kind = ModelKind::BrickWall;
  s.mass = {-2.0, 4.0, 3};
  s.phi = {-kPi / 2.0, kPi / 2.0, 2};
  s.mode = Mode::Conservative;
  s.periods = 1.0;
  s.decimate = 100;
  s.chern_grid = 32;
  return s;
}

bool same(const SweepResult& a, const SweepResult& b) {
  if (a.cells.size() != b.cells.size()) return false;
  for (std::size_t i = 0; i < a.cells.size(); ++i) {
    const SweepCell& x = a.cells[i];
    const SweepCell& y = b.cells[i];
    if (x.mass != y.mass || x.phi != y.phi || x.fit.slope1 != y.fit.slope1 ||
        x.fit.slope2 != y.fit.slope2 || x.fit.r2_1 != y.fit.r2_1 || x.chern != y.chern ||
        x.status != y.status) {
      return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("axis ranges include both ends") {
  const AxisRange r{-6.0, 6.0, 10};
  CHECK(r.value(0) == -6.0);
  CHECK(r.value(9) == 6.0);
  CHECK(r.step() == doctest::Approx(12.0 / 9.0));
}

TEST_CASE("cell matches a standalone evolution") {
  const SweepSpec s = small_spec();
  const SweepCell cell = run_cell(s, 2, 1);
  const drive::DriveConfig cfg = cell_drive(s, cell.mass);
  evolution::EvolutionParams p;
  p.duration = evolution::default_duration(cfg, s.periods);
  p.dt = s.dt;
  p.decimate = s.decimate;
  const auto tr = evolution::evolve_conservative(s.kind, cfg, cell.phi, p);
  const auto fit = observables::pumping_slope(observables::work_done(tr, s.kind, cfg, cell.phi),
                                              cfg, s.window_start);
  CHECK(cell.status == CellStatus::Ok);
  CHECK(cell.fit.slope1 == fit.slope1);
  CHECK(cell.fit.slope2 == fit.slope2);
  CHECK(cell.fit.r2_2 == fit.r2_2);
  REQUIRE(cell.chern.has_value());
  CHECK(*cell.chern == drive_chern(s.kind, cfg, cell.phi, s.chern_grid));
}

TEST_CASE("worker count does not change the result") {
  SweepSpec s = small_spec();
  s.workers = 1;
  const SweepResult one = sweep::sweep(s);
  s.workers = 4;
  const SweepResult four = sweep::sweep(s);
  CHECK(same(one, four));
  for (int i = 0; i < s.mass.n; ++i) {
    for (int j = 0; j < s.phi.n; ++j) {
      CHECK(one.at(i, j).i_mass == i);
      CHECK(one.at(i, j).i_phi == j);
    }
  }
}

TEST_CASE("environment overrides the worker hint") {
  ::setenv("FLOQUET_WORKERS", "3", 1);
  CHECK(resolve_workers(8) == 3);
  ::setenv("FLOQUET_WORKERS", "zero", 1);
  CHECK(resolve_workers(2) == 2);
  ::unsetenv("FLOQUET_WORKERS");
  CHECK(resolve_workers(5) == 5);
  CHECK(resolve_workers(0) >= 1);
}

TEST_CASE("cell failures are recorded, not thrown") {
  SweepSpec s = small_spec();
  s.dt = 1e-3;  // violates the step bound in every cell
  const SweepResult r = sweep::sweep(s);
  for (const auto& c : r.cells) {
    CHECK(c.status == CellStatus::NumericalFailure);
    CHECK_FALSE(c.message.empty());
  }
}

TEST_CASE("boundary marker and oracle") {
  CHECK(is_boundary(ModelKind::Haldane, 5.0, kPi / 2.0, 0.5));
  CHECK(is_boundary(ModelKind::Haldane, -5.5, kPi / 2.0, 0.5));
  CHECK_FALSE(is_boundary(ModelKind::Haldane, 1.0, kPi / 2.0, 0.5));
  SweepSpec s = small_spec();
  s.mass = {2.0 * kSqrt3 - 1.0, 2.0 * kSqrt3, 2};
  s.phi = {kPi / 2.0, kPi / 2.0 + 0.1, 2};
  s.periods = 0.5;
  s.decimate = 50;
  const SweepCell c = run_cell(s, 1, 0);
  CHECK(c.boundary);
}

TEST_CASE("commensurate control only changes the ratio") {
  SweepSpec s = small_spec();
  s.mass = {1.0, 2.0, 2};
  const SweepResult a = commensurate_control(s);
  CHECK(a.spec.ratio == kCommensurateRatio);
  s.ratio = 1.5;
  CHECK(same(a, sweep::sweep(s)));
  CHECK(cell_drive(s, 1.0).omega2 == doctest::Approx(4.5));
}

TEST_CASE("sweep settings are validated") {
  SweepSpec s = small_spec();
  s.mass.n = 1;
  CHECK_THROWS_AS(sweep::sweep(s), Error);
  s = small_spec();
  s.dissipation.gamma = -1.0;
  try {
    s.validate();
    FAIL("expected ValidationError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ValidationError);
    CHECK(std::string(e.what()).find("gamma") != std::string::npos);
  }
  CHECK(parse_mode("dd") == Mode::DrivenDissipative);
  CHECK(to_string(CellStatus::GapClosed) == "gap-closed");
}
