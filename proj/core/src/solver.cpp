#include "vecoff/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <unordered_map>

#include "vecoff/energy.hpp"

namespace vecoff {

void SolverConfig::validate() const {
  auto fail = [](const std::string& what) { throw Error("invalid solver config: " + what); };
  if (max_iterations < 1) fail("max_iterations must be >= 1");
  if (!(dual_tolerance > 0.0)) fail("dual_tolerance must be > 0");
  if (convergence_window < 1) fail("convergence_window must be >= 1");
  if (!(kkt_tolerance > 0.0)) fail("kkt_tolerance must be > 0");
  if (!(step_scale > 0.0)) fail("step_scale must be > 0");
  if (!(ratio_tolerance > 0.0)) fail("ratio_tolerance must be > 0");
  if (local_search_passes < 0) fail("local_search_passes must be >= 0");
}

DualState DualState::zeros(std::size_t vehicles, std::size_t uplink_frames,
                           const std::array<double, kNumSteps>& initial_steps) {
  DualState d;
  d.lambda_u = Matrix(vehicles, uplink_frames);
  d.lambda_d = Matrix(vehicles, uplink_frames);
  d.mu_u = Matrix(vehicles, uplink_frames);
  d.mu_d = Matrix(vehicles, uplink_frames);
  d.u_u.assign(vehicles, 0.0);
  d.u_c.assign(vehicles, 0.0);
  d.u_d.assign(vehicles, 0.0);
  d.initial_steps = initial_steps;
  d.steps = initial_steps;
  d.iteration = 1;
  return d;
}

std::array<double, kNumSteps> natural_step_sizes(double price, double max_bits,
                                                 const ScenarioConfig& cfg, double scale) {
  if (!(price > 0.0) || !(max_bits > 0.0)) throw Error("step scales must be positive");
  const double frame_bits = cfg.frame_bits();
  // rate multipliers price a spectral efficiency, so they carry a factor BD
  const double rate_step = scale * price * frame_bits * frame_bits / max_bits;
  const double bit_step = scale * price / max_bits;
  return {rate_step, rate_step, bit_step, bit_step, bit_step, bit_step, bit_step};
}

double optimal_offload_ratio(double u_u, double u_c, double u_d, const VehicleTask& task,
                             double deadline_s) {
  const double c = task.cycles_per_bit;
  const double L = task.input_bits;
  const double ratio = (u_u + u_c + task.output_ratio * u_d) * deadline_s * deadline_s /
                       (3.0 * task.switched_capacitance * c * c * c * L * L);
  return 1.0 - std::sqrt(std::clamp(ratio, 0.0, 1.0));
}

double optimal_offload_ratio(const DualState& duals, std::size_t vehicle,
                             const VehicleTask& task, double deadline_s) {
  return optimal_offload_ratio(duals.u_u[vehicle], duals.u_c[vehicle], duals.u_d[vehicle],
                               task, deadline_s);
}

namespace {

// Per-bit prices the relaxed constraints put on each variable.
struct LinearPrices {
  Matrix uplink;    // lambda_u / BD - sum_{m>=n} mu_u - u_u
  Matrix compute;   // sum_{m>=n} mu_u - kappa sum_{m>=n} mu_d - u_c
  Matrix downlink;  // lambda_d / BD + sum_{m>=n} mu_d - u_d
};

LinearPrices linear_prices(const DualState& d, const std::vector<VehicleTask>& tasks,
                           const ScenarioConfig& cfg) {
  const std::size_t K = d.lambda_u.rows();
  const std::size_t U = d.lambda_u.cols();
  const double BD = cfg.frame_bits();
  LinearPrices p{Matrix(K, U), Matrix(K, U), Matrix(K, U)};
  for (std::size_t k = 0; k < K; ++k) {
    double tail_u = 0.0, tail_d = 0.0;
    for (std::size_t n = U; n-- > 0;) {
      tail_u += d.mu_u(k, n);
      tail_d += d.mu_d(k, n);
      p.uplink(k, n) = d.lambda_u(k, n) / BD - tail_u - d.u_u[k];
      p.compute(k, n) = tail_u - tasks[k].output_ratio * tail_d - d.u_c[k];
      p.downlink(k, n) = d.lambda_d(k, n) / BD + tail_d - d.u_d[k];
    }
  }
  return p;
}

bool better(double candidate, double incumbent, TieBreak tie) {
  return tie == TieBreak::kLowestIndex ? candidate < incumbent : candidate <= incumbent;
}

void check_dual_shape(const DualState& d, const ChannelTrace& trace) {
  if (d.lambda_u.rows() != trace.num_vehicles() ||
      d.lambda_u.cols() + 2 != trace.num_frames()) {
    throw Error("dual state shape does not match the channel trace");
  }
}

}  // namespace

Schedule select_schedule(const Matrix& uplink_scores, const Matrix& downlink_scores,
                         const ChannelTrace& trace, TieBreak tie) {
  const std::size_t K = trace.num_vehicles();
  const std::size_t N = trace.num_frames();
  Schedule s{Mask(K, N), Mask(K, N)};
  auto pick = [&](const Matrix& scores, std::size_t c) {
    std::size_t best = K;
    for (std::size_t k = 0; k < K; ++k) {
      if (!trace.active(k, c)) continue;
      if (best == K || better(scores(k, c), scores(best, c), tie)) best = k;
    }
    return best == K ? std::size_t{0} : best;
  };
  for (std::size_t c = 0; c + 2 < N; ++c) s.uplink(pick(uplink_scores, c), c) = 1;
  for (std::size_t c = 2; c < N; ++c) s.downlink(pick(downlink_scores, c), c) = 1;
  return s;
}

Schedule optimal_schedule(const DualState& duals, const Matrix& uplink_bits,
                          const Matrix& downlink_bits, const ChannelTrace& trace,
                          const std::vector<VehicleTask>& tasks, const ScenarioConfig& cfg,
                          TieBreak tie) {
  check_dual_shape(duals, trace);
  const std::size_t K = trace.num_vehicles();
  const std::size_t N = trace.num_frames();
  const auto prices = linear_prices(duals, tasks, cfg);
  Matrix up(K, N), down(K, N);
  for (std::size_t k = 0; k < K; ++k) {
    for (std::size_t n = 0; n + 2 < N; ++n) {
      if (trace.active(k, n)) {
        const double l = uplink_bits(k, n);
        up(k, n) = uplink_score(l, trace.gains(k, n), duals.lambda_u(k, n), cfg) +
                   prices.uplink(k, n) * l;
      }
      const std::size_t f = n + 2;
      if (trace.active(k, f)) {
        const double l = downlink_bits(k, f);
        down(k, f) = downlink_score(duals.lambda_d(k, n), trace.gains(k, f), cfg) +
                     prices.downlink(k, n) * l;
      }
    }
  }
  return select_schedule(up, down, trace, tie);
}

double lagrangian_value(const PrimalPlan& plan, const DualState& d, const ChannelTrace& trace,
                        const std::vector<VehicleTask>& tasks, const ScenarioConfig& cfg) {
  check_dual_shape(d, trace);
  const std::size_t K = trace.num_vehicles();
  const std::size_t U = trace.num_frames() - 2;
  const double BD = cfg.frame_bits();
  double total = 0.0;
  for (std::size_t k = 0; k < K; ++k) {
    const double L = tasks[k].input_bits;
    const double kappa = tasks[k].output_ratio;
    const double rho = plan.offload_ratio[k];
    total += local_energy((1.0 - rho) * L, tasks[k], cfg.mission_time_s);
    total += (d.u_u[k] + d.u_c[k] + kappa * d.u_d[k]) * rho * L;
    double up = 0.0, comp = 0.0, down = 0.0;
    for (std::size_t n = 0; n < U; ++n) {
      const double lu = plan.uplink_bits(k, n);
      const double lc = plan.compute_bits(k, n + 1);
      const double ld = plan.downlink_bits(k, n + 2);
      if (plan.uplink_slot(k, n)) {
        total += one_by_one_comm_energy(true, lu, trace.gains(k, n), cfg) -
                 d.lambda_u(k, n) * trace.uplink_cap(k, n) / BD;
      }
      if (plan.downlink_slot(k, n + 2)) {
        total -= d.lambda_d(k, n) * trace.downlink_cap(k, n + 2) / BD;
      }
      total += d.lambda_u(k, n) * lu / BD + d.lambda_d(k, n) * ld / BD;
      up += lu;
      comp += lc;
      down += ld;
      total += d.mu_u(k, n) * (comp - up) + d.mu_d(k, n) * (down - kappa * comp);
    }
    total -= d.u_u[k] * up + d.u_c[k] * comp + d.u_d[k] * down;
  }
  return total;
}

LagrangianPoint minimize_lagrangian(const DualState& duals, const ChannelTrace& trace,
                                    const std::vector<VehicleTask>& tasks,
                                    const ScenarioConfig& cfg, TieBreak tie) {
  check_dual_shape(duals, trace);
  const std::size_t K = trace.num_vehicles();
  const std::size_t N = trace.num_frames();
  const std::size_t U = N - 2;
  const double BD = cfg.frame_bits();
  const double floor_cost = cfg.noise_psd_w_per_hz * std::numbers::ln2;
  const auto prices = linear_prices(duals, tasks, cfg);

  LagrangianPoint out{PrimalPlan::zeros(K, N), 0.0};
  Matrix cand_u(K, N), cand_d(K, N);
  for (std::size_t k = 0; k < K; ++k) {
    const double L = tasks[k].input_bits;
    const double bound = std::min(L, kMaxSpectralEfficiency * BD);
    out.plan.offload_ratio[k] = optimal_offload_ratio(duals, k, tasks[k], cfg.mission_time_s);
    for (std::size_t n = 0; n < U; ++n) {
      const double g = trace.gains(k, n);
      // E'(l) + price = 0 on the held slot, clipped to [0, bound]
      const double want = -prices.uplink(k, n);
      if (trace.active(k, n) && g > 0.0 && want > floor_cost / g) {
        cand_u(k, n) = std::min(bound, BD * std::log2(want * g / floor_cost));
      }
      if (trace.active(k, n + 2) && prices.downlink(k, n) < 0.0) {
        cand_d(k, n + 2) = tasks[k].output_ratio * L;
      }
      out.plan.compute_bits(k, n + 1) = prices.compute(k, n) < 0.0 ? L : 0.0;
    }
  }

  auto sched = optimal_schedule(duals, cand_u, cand_d, trace, tasks, cfg, tie);
  for (std::size_t k = 0; k < K; ++k) {
    for (std::size_t c = 0; c < N; ++c) {
      out.plan.uplink_bits(k, c) = sched.uplink(k, c) ? cand_u(k, c) : 0.0;
      out.plan.downlink_bits(k, c) = sched.downlink(k, c) ? cand_d(k, c) : 0.0;
    }
  }
  out.plan.uplink_slot = std::move(sched.uplink);
  out.plan.downlink_slot = std::move(sched.downlink);
  out.value = lagrangian_value(out.plan, duals, trace, tasks, cfg);
  return out;
}

DualState update_duals(const DualState& duals, const PrimalPlan& it, const ChannelTrace& trace,
                       const std::vector<VehicleTask>& tasks, const ScenarioConfig& cfg) {
  check_dual_shape(duals, trace);
  const std::size_t K = trace.num_vehicles();
  const std::size_t U = trace.num_frames() - 2;
  const double BD = cfg.frame_bits();
  const auto& step = duals.steps;
  DualState next = duals;
  for (std::size_t k = 0; k < K; ++k) {
    const double L = tasks[k].input_bits;
    const double kappa = tasks[k].output_ratio;
    const double rho = it.offload_ratio[k];
    double up = 0.0, comp = 0.0, down = 0.0;
    for (std::size_t n = 0; n < U; ++n) {
      const double lu = it.uplink_bits(k, n);
      const double lc = it.compute_bits(k, n + 1);
      const double ld = it.downlink_bits(k, n + 2);
      const double rate_u = (lu - it.uplink_slot(k, n) * trace.uplink_cap(k, n)) / BD;
      const double rate_d = (ld - it.downlink_slot(k, n + 2) * trace.downlink_cap(k, n + 2)) / BD;
      up += lu;
      comp += lc;
      down += ld;
      next.lambda_u(k, n) = std::max(0.0, duals.lambda_u(k, n) + step[kStepUplinkRate] * rate_u);
      next.lambda_d(k, n) = std::max(0.0, duals.lambda_d(k, n) + step[kStepDownlinkRate] * rate_d);
      next.mu_u(k, n) =
          std::max(0.0, duals.mu_u(k, n) + step[kStepComputePrecedence] * (comp - up));
      next.mu_d(k, n) =
          std::max(0.0, duals.mu_d(k, n) + step[kStepDownlinkPrecedence] * (down - kappa * comp));
    }
    next.u_u[k] = duals.u_u[k] + step[kStepUplinkTotal] * (rho * L - up);
    next.u_c[k] = duals.u_c[k] + step[kStepComputeTotal] * (rho * L - comp);
    next.u_d[k] = duals.u_d[k] + step[kStepDownlinkTotal] * (kappa * rho * L - down);
  }
  next.iteration = duals.iteration + 1;
  const double decay = 1.0 / std::sqrt(static_cast<double>(next.iteration));
  for (std::size_t i = 0; i < kNumSteps; ++i) next.steps[i] = duals.initial_steps[i] * decay;
  return next;
}

PipelineChannel vehicle_channel(const Schedule& schedule, std::size_t k,
                                const VehicleTask& task, const ChannelTrace& trace,
                                const ScenarioConfig& cfg) {
  const std::size_t N = trace.num_frames();
  PipelineChannel ch;
  ch.slot_duration_s = cfg.frame_duration_s;
  ch.output_ratio = task.output_ratio;
  ch.uplink_gain.resize(N - 2);
  ch.uplink_cap.resize(N - 2);
  ch.downlink_cap.assign(N, 0.0);
  for (std::size_t n = 0; n + 2 < N; ++n) {
    ch.uplink_gain[n] = trace.gains(k, n);
    ch.uplink_cap[n] = schedule.uplink(k, n) ? trace.uplink_cap(k, n) : 0.0;
  }
  for (std::size_t f = 2; f < N; ++f) {
    ch.downlink_cap[f] = schedule.downlink(k, f) ? trace.downlink_cap(k, f) : 0.0;
  }
  return ch;
}

BitAllocation solve_bit_allocation(const Schedule& schedule, std::span<const double> ratios,
                                   const ChannelTrace& trace,
                                   const std::vector<VehicleTask>& tasks,
                                   const ScenarioConfig& cfg, const SolverConfig& solver_cfg) {
  const std::size_t K = trace.num_vehicles();
  const std::size_t N = trace.num_frames();
  if (ratios.size() != K || tasks.size() != K) throw Error("one offloading ratio per vehicle");
  BitAllocation out;
  out.uplink_bits = Matrix(K, N);
  out.compute_bits = Matrix(K, N);
  out.downlink_bits = Matrix(K, N);
  for (std::size_t k = 0; k < K; ++k) {
    if (ratios[k] < 0.0 || ratios[k] > 1.0) throw Error("offloading ratio outside [0,1]");
    const auto ch = vehicle_channel(schedule, k, tasks[k], trace, cfg);
    const double required = ratios[k] * tasks[k].input_bits;
    const auto sol = solve_uplink(ch, required, cfg);
    if (!sol) {
      out.infeasible_vehicles.push_back(k);
      continue;
    }
    const double residual = kkt_residual(ch, *sol, required, cfg);
    if (residual > solver_cfg.kkt_tolerance) {
      throw Error("bit allocation for vehicle " + std::to_string(k) +
                  " failed certification (KKT residual " + std::to_string(residual) + ")");
    }
    out.kkt_residual = std::max(out.kkt_residual, residual);
    const auto fill = fill_pipeline(ch, sol->bits);
    for (std::size_t n = 0; n + 2 < N; ++n) out.uplink_bits(k, n) = sol->bits[n];
    for (std::size_t c = 0; c < N; ++c) {
      out.compute_bits(k, c) = fill.compute[c];
      out.downlink_bits(k, c) = fill.downlink[c];
    }
    out.objective += sol->energy;
  }
  if (!out.infeasible_vehicles.empty()) out.status = AllocationStatus::kInfeasible;
  return out;
}

namespace {

// Freezes a schedule and searches each vehicle's offloading ratio. A
// vehicle's result depends only on its own slots, so results are cached on
// them.
class PrimalRecovery {
 public:
  PrimalRecovery(const ScenarioConfig& cfg, const std::vector<VehicleTask>& tasks,
                 const ChannelTrace& trace, const SolverConfig& scfg)
      : cfg_(cfg), tasks_(tasks), trace_(trace), scfg_(scfg), cache_(tasks.size()) {}

  struct Result {
    double energy = 0.0;
    std::vector<double> ratios;
    /// Largest marginal energy (J/bit) any vehicle pays at this plan.
    double marginal = 0.0;
  };

  Result evaluate(const Schedule& s) {
    Result r;
    r.ratios.resize(tasks_.size());
    for (std::size_t k = 0; k < tasks_.size(); ++k) {
      const auto& decision = decide(s, k);
      r.ratios[k] = decision.ratio;
      r.energy += decision.total;
      r.marginal = std::max(r.marginal, decision.marginal);
    }
    return r;
  }

  /// Moves single frames between vehicles while that lowers the energy.
  /// Each move only touches the two vehicles involved.
  void improve(Schedule& s, Result& r, int max_passes) {
    const std::size_t K = tasks_.size();
    const std::size_t N = trace_.num_frames();
    auto try_column = [&](Mask& owner, std::size_t c) {
      std::size_t cur = 0;
      while (!owner(cur, c)) ++cur;
      bool moved = false;
      for (std::size_t k = 0; k < K; ++k) {
        if (k == cur || !trace_.active(k, c)) continue;
        const double before = decide(s, cur).total + decide(s, k).total;
        owner(cur, c) = 0;
        owner(k, c) = 1;
        const double after = decide(s, cur).total + decide(s, k).total;
        if (after < before * (1.0 - 1e-12)) {
          cur = k;
          moved = true;
        } else {
          owner(k, c) = 0;
          owner(cur, c) = 1;
        }
      }
      return moved;
    };
    for (int pass = 0; pass < max_passes; ++pass) {
      bool moved = false;
      for (std::size_t c = 0; c + 2 < N; ++c) moved |= try_column(s.uplink, c);
      for (std::size_t c = 2; c < N; ++c) moved |= try_column(s.downlink, c);
      if (!moved) break;
    }
    r = evaluate(s);
  }

 private:
  struct Decision {
    double ratio;
    double total;
    double marginal;
  };

  const Decision& decide(const Schedule& s, std::size_t k) {
    const auto up = s.uplink.row(k);
    const auto down = s.downlink.row(k);
    std::string key(up.begin(), up.end());
    key.append(down.begin(), down.end());
    auto it = cache_[k].find(key);
    if (it != cache_[k].end()) return it->second;
    const auto ch = vehicle_channel(s, k, tasks_[k], trace_, cfg_);
    const auto d = optimize_offload_ratio(ch, tasks_[k], cfg_, scfg_.ratio_tolerance);
    double marginal =
        local_marginal_energy((1.0 - d.ratio) * tasks_[k].input_bits, tasks_[k],
                              cfg_.mission_time_s);
    for (double level : d.uplink.level) marginal = std::max(marginal, level);
    return cache_[k]
        .emplace(std::move(key), Decision{d.ratio, d.total(), marginal})
        .first->second;
  }

  const ScenarioConfig& cfg_;
  const std::vector<VehicleTask>& tasks_;
  const ChannelTrace& trace_;
  const SolverConfig& scfg_;
  std::vector<std::unordered_map<std::string, Decision>> cache_;
};

double time_shared_price(std::size_t k, const VehicleTask& task, const ChannelTrace& trace,
                         const ScenarioConfig& cfg, const SolverConfig& scfg) {
  const std::size_t N = trace.num_frames();
  const double share = static_cast<double>(trace.num_vehicles());
  PipelineChannel ch;
  ch.slot_duration_s = cfg.frame_duration_s / share;
  ch.output_ratio = task.output_ratio;
  ch.uplink_gain.resize(N - 2);
  ch.uplink_cap.resize(N - 2);
  ch.downlink_cap.assign(N, 0.0);
  for (std::size_t n = 0; n + 2 < N; ++n) {
    ch.uplink_gain[n] = trace.gains(k, n);
    ch.uplink_cap[n] = trace.uplink_cap(k, n) / share;
  }
  for (std::size_t f = 2; f < N; ++f) ch.downlink_cap[f] = trace.downlink_cap(k, f) / share;
  const auto d = optimize_offload_ratio(ch, task, cfg, scfg.ratio_tolerance);
  double price = local_marginal_energy((1.0 - d.ratio) * task.input_bits, task, cfg.mission_time_s);
  for (double level : d.uplink.level) price = std::max(price, level);
  return price;
}

}  // namespace

SolveReport run_algorithm1(const ScenarioConfig& cfg, const std::vector<VehicleTask>& tasks,
                           const ChannelTrace& trace, const SolverConfig& scfg) {
  const auto start = std::chrono::steady_clock::now();
  cfg.validate();
  scfg.validate();
  for (const auto& t : tasks) t.validate(cfg);
  check_trace_consistency(trace, cfg, tasks);

  const std::size_t K = tasks.size();
  const std::size_t N = trace.num_frames();
  const std::size_t U = N - 2;

  SolveReport rep;
  PrimalRecovery recovery(cfg, tasks, trace, scfg);
  DualState duals = DualState::zeros(K, U, {});

  // Start from an even split of every task over the frames after arrival.
  Matrix initial_up(K, N), no_down(K, N);
  for (std::size_t k = 0; k < K; ++k) {
    for (std::size_t n = 0; n < U; ++n) {
      if (trace.active(k, n)) initial_up(k, n) = tasks[k].input_bits / static_cast<double>(U);
    }
  }
  Schedule incumbent =
      optimal_schedule(duals, initial_up, no_down, trace, tasks, cfg, scfg.tie_break);
  auto best = recovery.evaluate(incumbent);

  // Steps are scaled by the marginal price each vehicle would pay if it held
  // 1/K of every frame, a cheap estimate of where the bit multipliers settle.
  double max_bits = 0.0;
  double price = 0.0;
  for (std::size_t k = 0; k < K; ++k) {
    max_bits = std::max(max_bits, tasks[k].input_bits);
    price = std::max(price, time_shared_price(k, tasks[k], trace, cfg, scfg));
  }
  duals.initial_steps = natural_step_sizes(price, max_bits, cfg, scfg.step_scale);
  duals.steps = duals.initial_steps;

  double best_dual = -std::numeric_limits<double>::infinity();
  for (int z = 1; z <= scfg.max_iterations; ++z) {
    auto point = minimize_lagrangian(duals, trace, tasks, cfg, scfg.tie_break);
    rep.dual_history.push_back(point.value);
    best_dual = std::max(best_dual, point.value);

    Schedule sched{point.plan.uplink_slot, point.plan.downlink_slot};
    auto candidate = recovery.evaluate(sched);
    rep.primal_history.push_back(candidate.energy);
    if (candidate.energy < best.energy) {
      best = std::move(candidate);
      incumbent = std::move(sched);
    }

    duals = update_duals(duals, point.plan, trace, tasks, cfg);
    rep.iterations_used = z;

    const auto w = static_cast<std::size_t>(scfg.convergence_window);
    // Converged once the dual value itself has settled over the window.
    const auto& h = rep.dual_history;
    if (scfg.stop_at_convergence && h.size() > 2 * w) {
      const double now = h.back();
      const double then = h[h.size() - 1 - w];
      const double scale = std::max({std::abs(now), std::abs(then),
                                     std::numeric_limits<double>::min()});
      if (std::abs(now - then) / scale < scfg.dual_tolerance) break;
    }
  }

  recovery.improve(incumbent, best, scfg.local_search_passes);
  auto alloc = solve_bit_allocation(incumbent, best.ratios, trace, tasks, cfg, scfg);
  if (alloc.status != AllocationStatus::kOptimal) {
    throw Error("primal recovery produced an infeasible allocation");
  }
  rep.plan = PrimalPlan{std::move(alloc.uplink_bits), std::move(alloc.compute_bits),
                        std::move(alloc.downlink_bits), std::move(incumbent.uplink),
                        std::move(incumbent.downlink), best.ratios};
  rep.kkt_residual = alloc.kkt_residual;
  rep.feasibility = check_feasibility(rep.plan, trace, tasks, cfg);
  rep.energy = evaluate_total_energy(rep.plan, trace, tasks, cfg);
  rep.best_dual = best_dual;
  rep.gap = rep.energy.total > 0.0 ? (rep.energy.total - best_dual) / rep.energy.total : 0.0;
  rep.final_duals = std::move(duals);
  rep.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

}  // namespace vecoff
