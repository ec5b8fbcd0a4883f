#include "vecoff/allocation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "vecoff/energy.hpp"
#include "vecoff/golden.hpp"

namespace vecoff {

std::vector<double> PipelineChannel::suffix_limits() const {
  const std::size_t U = num_uplink_frames();
  const std::size_t N = num_frames();
  // tail[f] = downlink capacity of frames f .. N-1
  std::vector<double> tail(N + 1, 0.0);
  for (std::size_t f = N; f-- > 2;) tail[f] = tail[f + 1] + downlink_cap[f];
  std::vector<double> limits(U);
  for (std::size_t i = 0; i < U; ++i) limits[i] = tail[i + 2] / output_ratio;
  return limits;
}

double max_offloadable_bits(const PipelineChannel& ch) {
  const std::size_t U = ch.num_uplink_frames();
  const auto limits = ch.suffix_limits();
  double prefix = 0.0;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < U; ++i) {
    best = std::min(best, prefix + limits[i]);
    prefix += ch.uplink_cap[i];
  }
  return std::min(best, prefix);
}

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kPosInf = std::numeric_limits<double>::infinity();

// The uplink problem restricted to the frames the vehicle owns. In the
// level variable x = log2(marginal energy), frame j carries
// clamp(rate * (x - start_j), 0, cap_j) bits, so partial sums are piecewise
// linear in x. Everything that does not depend on the requested total is
// computed once, so repeated solves along a ratio search stay cheap.
class UplinkProblem {
 public:
  UplinkProblem(const PipelineChannel& ch, const ScenarioConfig& cfg)
      : ch_(ch), cfg_(cfg), rate_(cfg.bandwidth_hz * ch.slot_duration_s) {
    const std::size_t U = ch.num_uplink_frames();
    const auto limits = ch.suffix_limits();
    const double floor_cost = cfg.noise_psd_w_per_hz * std::numbers::ln2;
    double prefix = 0.0;
    limit_ = kPosInf;
    for (std::size_t i = 0; i < U; ++i) {
      if (!(ch.uplink_cap[i] > 0.0 && ch.uplink_gain[i] > 0.0)) continue;
      frame_.push_back(i);
      cap_.push_back(ch.uplink_cap[i]);
      start_.push_back(std::log2(floor_cost / ch.uplink_gain[i]));
      // Before frame i nothing of this vehicle has been sent yet.
      limit_ = std::min(limit_, prefix + limits[i]);
      prefix += ch.uplink_cap[i];
    }
    limit_ = frame_.empty() ? 0.0 : std::min(limit_, prefix);
    // Bits still allowed after owned frame j: those of the next owned frame.
    after_.resize(frame_.size());
    for (std::size_t j = 0; j < frame_.size(); ++j) {
      after_[j] = j + 1 < frame_.size() ? limits[frame_[j + 1]] : 0.0;
    }
    for (std::size_t j = 0; j < frame_.size(); ++j) {
      events_.push_back({start_[j], rate_});
      events_.push_back({saturation(j), -rate_});
    }
    std::sort(events_.begin(), events_.end(),
              [](const Event& a, const Event& b) { return a.x < b.x; });
    double reach = 0.0;
    for (std::size_t j = 0; j < frame_.size(); ++j) {
      reach = std::max(reach, std::abs(start_[j]) + cap_[j] / rate_);
    }
    // Levels live in log2 space, so bits carry a rounding error of a few
    // ulps of x times the slot rate.
    rounding_ = 16.0 * std::numeric_limits<double>::epsilon() * rate_ * (1.0 + reach);
  }

  double limit() const { return limit_; }

  /// Minimum uplink energy for `required` bits; +inf when infeasible.
  /// Fills compact per-owned-frame bits and levels (log2 domain).
  double solve(double required, std::vector<double>& bits, std::vector<double>& x) const {
    const std::size_t J = frame_.size();
    bits.assign(J, 0.0);
    x.assign(J, kNegInf);
    if (required <= 0.0) return 0.0;
    if (required > limit_ * (1.0 + 1e-12)) return kPosInf;
    required = std::min(required, limit_);
    const double tol = 1e-12 * required + rounding_;
    auto need = [&](std::size_t j) { return required - after_[j]; };

    // Ignoring the downlink deadlines first; usually that already fits.
    const double x0 = level_all(required);
    double cum = 0.0;
    bool fits = true;
    for (std::size_t j = 0; j < J && fits; ++j) {
      bits[j] = this->bits(j, x0);
      x[j] = x0;
      cum += bits[j];
      fits = cum >= need(j) - tol;
    }

    if (!fits) {
      // Staircase: each segment runs at the lowest level meeting every
      // remaining cumulative requirement and ends at the last one that binds.
      std::fill(bits.begin(), bits.end(), 0.0);
      std::fill(x.begin(), x.end(), kNegInf);
      std::size_t s = 0;
      double base = 0.0;
      while (s < J) {
        bool any_need = false;
        for (std::size_t j = s; j < J && !any_need; ++j) any_need = need(j) - base > tol;
        if (!any_need) break;
        auto meets_all = [&](double level) {
          double c = base;
          for (std::size_t j = s; j < J; ++j) {
            c += this->bits(j, level);
            if (c < need(j) - tol) return false;
          }
          return true;
        };
        double lo = kPosInf, hi = kNegInf;
        for (std::size_t j = s; j < J; ++j) {
          lo = std::min(lo, start_[j]);
          hi = std::max(hi, saturation(j));
        }
        lo -= 1.0;
        for (int it = 0; it < 200 && hi - lo > 1e-13 * std::max(1.0, std::abs(hi)); ++it) {
          const double mid = 0.5 * (lo + hi);
          (meets_all(mid) ? hi : lo) = mid;
        }
        std::size_t end = s;
        double c = base;
        for (std::size_t j = s; j < J; ++j) {
          c += this->bits(j, lo);
          if (need(j) - base > tol && c < need(j) - tol) end = j;
        }
        const double level = level_range(s, end, need(end) - base);
        for (std::size_t j = s; j <= end; ++j) {
          bits[j] = this->bits(j, level);
          x[j] = level;
          base += bits[j];
        }
        s = end + 1;
      }
    }

    double energy = 0.0;
    for (std::size_t j = 0; j < J; ++j) {
      energy += link_energy(bits[j], ch_.uplink_gain[frame_[j]], ch_.slot_duration_s, cfg_);
    }
    return energy;
  }

  /// Expands a compact solution to every uplink frame. Frames the vehicle
  /// does not own carry the level of the last owned frame before them (the
  /// first one for leading frames), so drops sit exactly on owned frames.
  UplinkSolution expand(const std::vector<double>& bits, const std::vector<double>& x,
                        double energy) const {
    const std::size_t U = ch_.num_uplink_frames();
    UplinkSolution sol{std::vector<double>(U, 0.0), std::vector<double>(U, 0.0), energy};
    if (frame_.empty()) return sol;
    std::size_t j = 0;
    for (std::size_t i = 0; i < U; ++i) {
      while (j + 1 < frame_.size() && frame_[j + 1] <= i) ++j;
      sol.level[i] = x[j] == kNegInf ? 0.0 : std::exp2(x[j]);
      if (frame_[j] == i) sol.bits[i] = bits[j];
    }
    return sol;
  }

 private:
  struct Event {
    double x;
    double slope;
  };

  double saturation(std::size_t j) const { return start_[j] + cap_[j] / rate_; }

  double bits(std::size_t j, double x) const {
    if (x == kNegInf) return 0.0;
    return std::clamp(rate_ * (x - start_[j]), 0.0, cap_[j]);
  }

  static double walk(const std::vector<Event>& events, double need) {
    if (need <= 0.0) return kNegInf;
    if (events.empty()) return kPosInf;
    double sum = 0.0;
    double slope = 0.0;
    double prev = events.front().x;
    for (const auto& ev : events) {
      const double reach = sum + slope * (ev.x - prev);
      if (slope > 0.0 && reach >= need) return prev + (need - sum) / slope;
      sum = reach;
      slope += ev.slope;
      prev = ev.x;
    }
    return prev;  // every frame saturated
  }

  double level_all(double need) const { return walk(events_, need); }

  double level_range(std::size_t s, std::size_t e, double need) const {
    std::vector<Event> events;
    for (std::size_t j = s; j <= e; ++j) {
      events.push_back({start_[j], rate_});
      events.push_back({saturation(j), -rate_});
    }
    std::sort(events.begin(), events.end(),
              [](const Event& a, const Event& b) { return a.x < b.x; });
    return walk(events, need);
  }

  const PipelineChannel& ch_;
  const ScenarioConfig& cfg_;
  double rate_;
  double limit_ = 0.0;
  double rounding_ = 0.0;
  std::vector<std::size_t> frame_;
  std::vector<double> cap_;
  std::vector<double> start_;
  std::vector<double> after_;
  std::vector<Event> events_;
};

}  // namespace

std::optional<UplinkSolution> solve_uplink(const PipelineChannel& ch, double required_bits,
                                           const ScenarioConfig& cfg) {
  const UplinkProblem problem(ch, cfg);
  std::vector<double> bits, x;
  const double energy = problem.solve(required_bits, bits, x);
  if (energy == kPosInf) return std::nullopt;
  return problem.expand(bits, x, energy);
}

PipelineFill fill_pipeline(const PipelineChannel& ch, std::span<const double> uplink_bits) {
  const std::size_t N = ch.num_frames();
  PipelineFill fill{std::vector<double>(N, 0.0), std::vector<double>(N, 0.0)};
  double uplinked = 0.0;
  double returned = 0.0;
  for (std::size_t f = 2; f < N; ++f) {
    const std::size_t i = f - 2;  // uplink frame whose output may now return
    fill.compute[f - 1] = uplink_bits[i];
    uplinked += uplink_bits[i];
    const double ready = ch.output_ratio * uplinked - returned;
    const double sent = std::clamp(ready, 0.0, ch.downlink_cap[f]);
    fill.downlink[f] = sent;
    returned += sent;
  }
  return fill;
}

double kkt_residual(const PipelineChannel& ch, const UplinkSolution& sol,
                    double required_bits, const ScenarioConfig& cfg) {
  const std::size_t U = ch.num_uplink_frames();
  const double scale = std::max(required_bits, 1.0);
  const auto limits = ch.suffix_limits();
  double worst = 0.0;
  auto note = [&](double v) { worst = std::max(worst, v); };

  double total = 0.0;
  for (std::size_t i = 0; i < U; ++i) {
    const double l = sol.bits[i];
    total += l;
    note(std::max(0.0, -l) / scale);
    note(std::max(0.0, l - ch.uplink_cap[i]) / scale);
  }
  note(std::abs(total - required_bits) / scale);

  // suffix limits and complementary slackness at every level drop
  std::vector<double> tail(U + 1, 0.0);
  for (std::size_t i = U; i-- > 0;) tail[i] = tail[i + 1] + sol.bits[i];
  for (std::size_t i = 0; i < U; ++i) {
    note(std::max(0.0, tail[i] - limits[i]) / scale);
    if (i > 0 && sol.level[i - 1] > 0.0) {
      const double drop = (sol.level[i - 1] - sol.level[i]) / sol.level[i - 1];
      note(std::max(0.0, -drop));
      if (drop > 0.0) note(drop * std::max(0.0, limits[i] - tail[i]) / scale);
    } else if (i > 0 && sol.level[i] > 0.0) {
      note(1.0);  // level rises after an empty stretch
    }
  }

  // stationarity against the frame's level
  for (std::size_t i = 0; i < U; ++i) {
    const double cap = ch.uplink_cap[i];
    if (!(cap > 0.0 && ch.uplink_gain[i] > 0.0)) continue;
    const double l = sol.bits[i];
    const double w = sol.level[i];
    if (w <= 0.0) {
      note(l > 0.0 ? 1.0 : 0.0);
      continue;
    }
    const double marginal = link_marginal_energy(l, ch.uplink_gain[i], ch.slot_duration_s, cfg);
    const double edge = 1e-9 * cap;
    if (l <= edge) {
      note(std::max(0.0, w - marginal) / w);
    } else if (l >= cap - edge) {
      note(std::max(0.0, marginal - w) / w);
    } else {
      note(std::abs(marginal - w) / w);
    }
  }
  return worst;
}

double offload_cost(const PipelineChannel& ch, const VehicleTask& task,
                    const ScenarioConfig& cfg, double ratio) {
  const UplinkProblem problem(ch, cfg);
  std::vector<double> bits, x;
  return problem.solve(ratio * task.input_bits, bits, x);
}

OffloadDecision optimize_offload_ratio(const PipelineChannel& ch, const VehicleTask& task,
                                       const ScenarioConfig& cfg, double tolerance) {
  const double L = task.input_bits;
  const double T = cfg.mission_time_s;
  const UplinkProblem problem(ch, cfg);
  const double ceiling = std::clamp(problem.limit() / L * (1.0 - 1e-12), 0.0, 1.0);
  std::vector<double> bits, x;

  auto objective = [&](double rho) {
    return problem.solve(rho * L, bits, x) + local_energy((1.0 - rho) * L, task, T);
  };

  double best_rho = 0.0;
  double best_value = objective(0.0);
  if (ceiling > 0.0) {
    const double top = objective(ceiling);
    if (top < best_value) {
      best_rho = ceiling;
      best_value = top;
    }
    if (ceiling > tolerance) {
      const auto m = golden_section_minimize(objective, 0.0, ceiling, tolerance);
      if (m.value < best_value) {
        best_rho = m.x;
        best_value = m.value;
      }
    }
  }

  OffloadDecision out;
  out.ratio = best_rho;
  const double energy = problem.solve(best_rho * L, bits, x);
  out.uplink = problem.expand(bits, x, energy);
  out.comm_energy = energy;
  out.local_energy = local_energy((1.0 - best_rho) * L, task, T);
  return out;
}

}  // namespace vecoff
