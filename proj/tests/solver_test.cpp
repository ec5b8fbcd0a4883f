#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "support.hpp"
#include "vecoff/baselines.hpp"
#include "vecoff/solver.hpp"

using namespace vecoff;

namespace {

ChannelTrace trace_from_gains(const Matrix& gains, const ScenarioConfig& cfg) {
  const std::size_t K = gains.rows(), N = gains.cols();
  ChannelTrace t{gains, Matrix(K, N), Matrix(K, N), Mask(K, N, 1)};
  for (std::size_t k = 0; k < K; ++k) {
    for (std::size_t c = 0; c < N; ++c) {
      t.uplink_cap(k, c) =
          link_capacity_bits(gains(k, c), cfg.vehicle_max_power_w, cfg.frame_duration_s, cfg);
      t.downlink_cap(k, c) =
          link_capacity_bits(gains(k, c), cfg.rsu_power_w, cfg.frame_duration_s, cfg);
    }
  }
  return t;
}

SolverConfig quick() {
  SolverConfig s;
  s.max_iterations = 200;
  return s;
}

double local_total(const std::vector<VehicleTask>& tasks, double T) {
  double e = 0.0;
  for (const auto& t : tasks) e += local_energy(t.input_bits, t, T);
  return e;
}

}  // namespace

TEST_CASE("closed-form offloading ratio") {
  VehicleTask t;
  t.input_bits = 1e6;
  const double T = 2.0;
  CHECK(optimal_offload_ratio(0.0, 0.0, 0.0, t, T) == 1.0);
  const double c = t.cycles_per_bit;
  const double scale = 3.0 * t.switched_capacitance * c * c * c * t.input_bits * t.input_bits /
                       (T * T);
  CHECK(optimal_offload_ratio(2.0 * scale, 0.0, 0.0, t, T) == 0.0);
  CHECK(optimal_offload_ratio(0.1 * scale, 0.1 * scale, 0.1 * scale / t.output_ratio, t, T) ==
        doctest::Approx(1.0 - std::sqrt(0.3)));
  CHECK(optimal_offload_ratio(0.25 * scale, 0.0, 0.0, t, T) == doctest::Approx(0.5));
}

TEST_CASE("closed-form ratio is a stationary point of the ratio terms") {
  VehicleTask t;
  t.input_bits = 2e6;
  const double T = 3.0;
  const double L = t.input_bits;
  const double a = local_energy(L, t, T);
  for (double target : {0.2, 0.5, 0.8}) {
    const double price = 3.0 * a / L * (1 - target) * (1 - target);
    const double rho = optimal_offload_ratio(price, 0.0, 0.0, t, T);
    CHECK(rho == doctest::Approx(target));
    REQUIRE(rho > 0.0);
    REQUIRE(rho < 1.0);
    auto phi = [&](double r) {
      return (local_energy((1 - r) * L, t, T) + price * r * L) / (price * L);
    };
    const double h = 1e-5;
    CHECK(std::abs((phi(rho + h) - phi(rho - h)) / (2 * h)) < 1e-8);
  }
}

TEST_CASE("schedule selection is a per-frame argmin over arrived vehicles") {
  const ScenarioConfig cfg;
  Matrix gains(3, 5, 1e-8);
  auto trace = trace_from_gains(gains, cfg);
  Matrix up(3, 5, 0.0), down(3, 5, 0.0);
  up(0, 0) = -1.0;
  up(1, 0) = -2.0;
  up(2, 0) = -1.5;
  down(0, 3) = -3.0;
  down(1, 3) = -3.0;
  // vehicle 1 has not arrived at frame 1
  up(1, 1) = -9.0;
  up(2, 1) = -0.5;
  trace.active(1, 1) = 0;
  trace.uplink_cap(1, 1) = trace.downlink_cap(1, 1) = 0.0;
  // nobody has arrived at frame 2
  for (std::size_t k = 0; k < 3; ++k) {
    trace.active(k, 2) = 0;
    trace.uplink_cap(k, 2) = trace.downlink_cap(k, 2) = 0.0;
  }
  const auto s = select_schedule(up, down, trace);
  CHECK(s.uplink(1, 0) == 1);
  CHECK(s.uplink(2, 1) == 1);
  CHECK(s.uplink(0, 2) == 1);
  CHECK(s.downlink(0, 2) == 1);
  CHECK(s.downlink(0, 3) == 1);
  for (std::size_t c = 0; c < 5; ++c) {
    int ups = 0, downs = 0;
    for (std::size_t k = 0; k < 3; ++k) {
      ups += s.uplink(k, c);
      downs += s.downlink(k, c);
    }
    CHECK(ups == (c + 2 < 5 ? 1 : 0));
    CHECK(downs == (c >= 2 ? 1 : 0));
  }
  const auto high = select_schedule(up, down, trace, TieBreak::kHighestIndex);
  CHECK(high.downlink(1, 3) == 1);
}

TEST_CASE("schedule selection is invariant to positive score scaling") {
  const ScenarioConfig cfg;
  std::mt19937_64 rng(9);
  std::normal_distribution<double> score;
  const auto trace = trace_from_gains(Matrix(4, 12, 1e-8), cfg);
  for (int trial = 0; trial < 20; ++trial) {
    Matrix up(4, 12), down(4, 12);
    for (auto& v : up.values()) v = score(rng);
    for (auto& v : down.values()) v = score(rng);
    const auto a = select_schedule(up, down, trace);
    const double c = std::exp(score(rng));
    for (auto& v : up.values()) v *= c;
    for (auto& v : down.values()) v *= c;
    const auto b = select_schedule(up, down, trace);
    CHECK(a.uplink == b.uplink);
    CHECK(a.downlink == b.downlink);
  }
}

TEST_CASE("a single vehicle takes every frame") {
  const auto inst = testing::small_instance(1, 1);
  const auto& cfg = inst.point.scenario;
  const std::size_t N = inst.trace.num_frames();
  const auto duals = DualState::zeros(1, N - 2, {});
  Matrix bits(1, N, 100.0);
  const auto s = optimal_schedule(duals, bits, bits, inst.trace, inst.point.tasks, cfg);
  for (std::size_t c = 0; c + 2 < N; ++c) CHECK(s.uplink(0, c) == 1);
  for (std::size_t c = 2; c < N; ++c) CHECK(s.downlink(0, c) == 1);
}

TEST_CASE("zero multipliers schedule by frame energy") {
  ScenarioConfig cfg;
  Matrix gains(2, 5, 1e-8);
  gains(1, 0) = 4e-8;
  const auto trace = trace_from_gains(gains, cfg);
  std::vector<VehicleTask> tasks(2);
  for (auto& t : tasks) t.input_bits = 1e5;
  const auto duals = DualState::zeros(2, 3, {});
  Matrix bits(2, 5, 2e4);
  const auto s = optimal_schedule(duals, bits, bits, trace, tasks, cfg);
  CHECK(s.uplink(1, 0) == 1);
  CHECK(s.uplink(0, 1) == 1);
}

TEST_CASE("dual update steps along the residuals") {
  ScenarioConfig cfg;
  cfg.mission_time_s = 0.15;
  std::vector<VehicleTask> tasks(1);
  tasks[0].input_bits = 1e4;
  const double BD = cfg.frame_bits();

  SUBCASE("zero residuals leave the multipliers alone") {
    const auto trace = trace_from_gains(Matrix(1, 5, 0.0), cfg);
    auto duals = DualState::zeros(1, 3, {1, 1, 1, 1, 1, 1, 1});
    duals.lambda_u(0, 1) = 0.3;
    duals.mu_d(0, 2) = 0.2;
    duals.u_c[0] = -0.4;
    auto plan = PrimalPlan::zeros(1, 5);
    const auto next = update_duals(duals, plan, trace, tasks, cfg);
    CHECK(next.lambda_u == duals.lambda_u);
    CHECK(next.mu_d == duals.mu_d);
    CHECK(next.u_c == duals.u_c);
    CHECK(next.iteration == duals.iteration + 1);
  }

  SUBCASE("violated cap raises lambda by step times residual") {
    const auto trace = trace_from_gains(Matrix(1, 5, 1e-8), cfg);
    const double step = 0.7;
    auto duals = DualState::zeros(1, 3, {step, 0, 0, 0, 0, 0, 0});
    auto plan = PrimalPlan::zeros(1, 5);
    plan.uplink_slot(0, 0) = 1;
    const double r = 0.25;
    plan.uplink_bits(0, 0) = trace.uplink_cap(0, 0) + r * BD;
    const auto next = update_duals(duals, plan, trace, tasks, cfg);
    CHECK(next.lambda_u(0, 0) == doctest::Approx(step * r));
  }

  SUBCASE("slack projects lambda back to zero") {
    const auto trace = trace_from_gains(Matrix(1, 5, 1e-8), cfg);
    auto duals = DualState::zeros(1, 3, {1, 0, 0, 0, 0, 0, 0});
    duals.lambda_u(0, 0) = 0.1;
    auto plan = PrimalPlan::zeros(1, 5);
    plan.uplink_slot(0, 0) = 1;
    plan.uplink_bits(0, 0) = trace.uplink_cap(0, 0) - BD;
    const auto next = update_duals(duals, plan, trace, tasks, cfg);
    CHECK(next.lambda_u(0, 0) == 0.0);
  }

  SUBCASE("steps decay with the square root of the iteration") {
    const auto trace = trace_from_gains(Matrix(1, 5, 1e-8), cfg);
    auto duals = DualState::zeros(1, 3, {2, 2, 2, 2, 2, 2, 2});
    auto next = update_duals(duals, PrimalPlan::zeros(1, 5), trace, tasks, cfg);
    next = update_duals(next, PrimalPlan::zeros(1, 5), trace, tasks, cfg);
    CHECK(next.iteration == 3);
    CHECK(next.steps[kStepUplinkTotal] == doctest::Approx(2.0 / std::sqrt(3.0)));
  }
}

TEST_CASE("bit allocation of nothing is empty") {
  const auto inst = testing::small_instance(1);
  const auto& cfg = inst.point.scenario;
  const auto s = optimal_schedule(DualState::zeros(2, 3, {}), Matrix(2, 5), Matrix(2, 5),
                                  inst.trace, inst.point.tasks, cfg);
  const std::vector<double> zero(2, 0.0);
  const auto a = solve_bit_allocation(s, zero, inst.trace, inst.point.tasks, cfg, {});
  CHECK(a.status == AllocationStatus::kOptimal);
  CHECK(a.objective == 0.0);
  for (double v : a.uplink_bits.values()) CHECK(v == 0.0);
  for (double v : a.downlink_bits.values()) CHECK(v == 0.0);
}

TEST_CASE("bit allocation reports what the schedule cannot carry") {
  auto inst = testing::small_instance(2);
  auto& tasks = inst.point.tasks;
  for (auto& t : tasks) t.input_bits = 1e9;
  const auto s = optimal_schedule(DualState::zeros(2, 3, {}), Matrix(2, 5), Matrix(2, 5),
                                  inst.trace, tasks, inst.point.scenario);
  const std::vector<double> full(2, 1.0);
  const auto a = solve_bit_allocation(s, full, inst.trace, tasks, inst.point.scenario, {});
  CHECK(a.status == AllocationStatus::kInfeasible);
  CHECK(a.infeasible_vehicles.size() == 2);
}

TEST_CASE("single-vehicle allocation matches the simplex grid oracle") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto inst = testing::small_instance(seed, 1);
    const auto& cfg = inst.point.scenario;
    const auto& tasks = inst.point.tasks;
    const auto s = optimal_schedule(DualState::zeros(1, 3, {}), Matrix(1, 5), Matrix(1, 5),
                                    inst.trace, tasks, cfg);
    const auto frames = oracle::frames_for(s, 0, tasks[0], inst.trace, cfg);
    const double top = oracle::max_deliverable(frames);
    const double rho = std::min(0.7, 0.8 * top / tasks[0].input_bits);
    const std::vector<double> ratios{rho};
    const auto a = solve_bit_allocation(s, ratios, inst.trace, tasks, cfg, {});
    REQUIRE(a.status == AllocationStatus::kOptimal);
    CHECK(a.kkt_residual <= 1e-6);
    const double reference = oracle::min_uplink_energy(frames, rho * tasks[0].input_bits, 200);
    CHECK(a.objective <= reference * 1.005);
  }
}

TEST_CASE("total energy of a local-only plan is the cubic sum") {
  const auto inst = testing::small_instance(4);
  const auto& cfg = inst.point.scenario;
  const auto s = optimal_schedule(DualState::zeros(2, 3, {}), Matrix(2, 5), Matrix(2, 5),
                                  inst.trace, inst.point.tasks, cfg);
  auto plan = PrimalPlan::zeros(2, 5);
  plan.uplink_slot = s.uplink;
  plan.downlink_slot = s.downlink;
  const auto e = evaluate_total_energy(plan, inst.trace, inst.point.tasks, cfg);
  CHECK(e.total == doctest::Approx(local_total(inst.point.tasks, cfg.mission_time_s)));
  for (double c : e.comm_energy) CHECK(c == 0.0);

  plan.offload_ratio[0] = 0.5;
  try {
    evaluate_total_energy(plan, inst.trace, inst.point.tasks, cfg);
    FAIL("an unbacked offload must be rejected");
  } catch (const Error& err) {
    CHECK(std::string(err.what()).find("uplink_total") != std::string::npos);
  }
}

TEST_CASE("hopeless channels keep everything local") {
  auto spec = testing::small_spec(1);
  spec.scenario.ref_gain = 1e-12;
  const auto p = make_point(spec, 0.15, 1);
  const auto trace = generate_channel_trace(p.scenario, p.tasks);
  const auto r = run_algorithm1(p.scenario, p.tasks, trace, quick());
  CHECK(r.plan.offload_ratio[0] < 1e-3);
  CHECK(r.energy.total == doctest::Approx(local_total(p.tasks, 0.15)).epsilon(1e-3));
}

TEST_CASE("cheap channels offload almost everything") {
  auto spec = testing::small_spec(1);
  spec.scenario.ref_gain = 1.0;
  const auto p = make_point(spec, 0.15, 1);
  const auto trace = generate_channel_trace(p.scenario, p.tasks);
  const auto r = run_algorithm1(p.scenario, p.tasks, trace, quick());
  CHECK(r.plan.offload_ratio[0] > 0.95);
  CHECK(r.energy.total < 0.01 * local_total(p.tasks, 0.15));
}

TEST_CASE("recovered plans are feasible and never worse than local execution") {
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    const auto inst = testing::small_instance(seed);
    const auto& p = inst.point;
    const auto r = run_algorithm1(p.scenario, p.tasks, inst.trace, quick());
    CHECK(r.feasibility.feasible());
    CHECK(check_feasibility(r.plan, inst.trace, p.tasks, p.scenario).feasible());
    CHECK(r.kkt_residual <= 1e-6);
    CHECK(r.energy.total <= local_total(p.tasks, p.scenario.mission_time_s) * (1 + 1e-12));
    double parts = 0.0;
    for (std::size_t k = 0; k < p.tasks.size(); ++k) parts += r.energy.vehicle_total(k);
    CHECK(parts == doctest::Approx(r.energy.total).epsilon(1e-12));
    CHECK(r.energy.total >= r.best_dual - 1e-6 * r.energy.total);
  }
}

TEST_CASE("stronger channels never cost more") {
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    const auto inst = testing::small_instance(seed);
    const auto& p = inst.point;
    Matrix doubled = inst.trace.gains;
    for (auto& g : doubled.values()) g *= 2.0;
    auto strong = trace_from_gains(doubled, p.scenario);
    strong.active = inst.trace.active;
    for (std::size_t k = 0; k < p.tasks.size(); ++k) {
      for (std::size_t c = 0; c < strong.num_frames(); ++c) {
        if (!strong.active(k, c)) strong.uplink_cap(k, c) = strong.downlink_cap(k, c) = 0.0;
      }
    }
    const auto weak_r = run_algorithm1(p.scenario, p.tasks, inst.trace, quick());
    const auto strong_r = run_algorithm1(p.scenario, p.tasks, strong, quick());
    CHECK(strong_r.energy.total <= weak_r.energy.total * (1 + 1e-9));
  }
}

TEST_CASE("best dual value never decreases and the gap is reported") {
  const auto inst = testing::small_instance(1);
  const auto& p = inst.point;
  auto scfg = quick();
  scfg.stop_at_convergence = false;
  const auto r = run_algorithm1(p.scenario, p.tasks, inst.trace, scfg);
  REQUIRE(r.dual_history.size() == 200);
  double best = -std::numeric_limits<double>::infinity();
  for (double d : r.dual_history) {
    const double next = std::max(best, d);
    CHECK(next >= best);
    best = next;
  }
  CHECK(r.best_dual == doctest::Approx(best));
  CHECK(r.gap == doctest::Approx((r.energy.total - r.best_dual) / r.energy.total));
  CHECK(r.gap >= -1e-6);
  CHECK(r.gap <= 0.10);
}

TEST_CASE("invalid solver settings are rejected") {
  SolverConfig s;
  s.dual_tolerance = 0.0;
  CHECK_THROWS_AS(s.validate(), Error);
  s = {};
  s.local_search_passes = -1;
  CHECK_THROWS_AS(s.validate(), Error);
}
