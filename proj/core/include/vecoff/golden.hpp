#pragma once

#include <cmath>
#include <utility>

namespace vecoff {

struct ScalarMinimum {
  double x = 0.0;
  double value = 0.0;
  int evaluations = 0;
};

/// Golden-section search for a unimodal f on [lo, hi]; stops once the
/// bracket is narrower than `tolerance`.
template <typename F>
ScalarMinimum golden_section_minimize(F&& f, double lo, double hi, double tolerance) {
  constexpr double kInvPhi = 0.6180339887498949;
  if (hi < lo) std::swap(lo, hi);
  double c = hi - kInvPhi * (hi - lo);
  double d = lo + kInvPhi * (hi - lo);
  double fc = f(c);
  double fd = f(d);
  int evals = 2;
  while (hi - lo > tolerance) {
    if (fc <= fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - kInvPhi * (hi - lo);
      fc = f(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + kInvPhi * (hi - lo);
      fd = f(d);
    }
    ++evals;
  }
  return fc <= fd ? ScalarMinimum{c, fc, evals} : ScalarMinimum{d, fd, evals};
}

}  // namespace vecoff
