#include "ueps/core.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/core.h>

namespace ueps {

BoundsBox::BoundsBox(Vector lower, Vector upper)
    : lower_(std::move(lower)), upper_(std::move(upper)) {
  if (lower_.empty()) throw ParameterError("bounds: dimension must be at least 1");
  if (lower_.size() != upper_.size()) {
    throw ParameterError(fmt::format("bounds: lower has {} entries but upper has {}",
                                     lower_.size(), upper_.size()));
  }
  for (std::size_t i = 0; i < lower_.size(); ++i) {
    if (!(lower_[i] < upper_[i])) {
      throw ParameterError(
          fmt::format("bounds: lower[{}] = {} is not below upper[{}] = {}", i,
                      lower_[i], i, upper_[i]));
    }
  }
}

bool BoundsBox::contains(std::span<const double> x) const {
  if (x.size() != dim()) return false;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] >= lower_[i] && x[i] <= upper_[i])) return false;
  }
  return true;
}

std::string_view to_string(RngKind k) { return k == RngKind::Mt64 ? "mt64" : "numpy"; }

RngStream::RngStream(std::uint64_t seed, RngKind kind) : seed_(seed), kind_(kind) {
  if (kind_ == RngKind::Mt64) {
    mt64_.seed(seed);
  } else {
    if (seed > 0xffffffffULL) {
      throw ParameterError(fmt::format("numpy stream seeds must fit in 32 bits, got {}", seed));
    }
    mt32_.seed(static_cast<std::uint32_t>(seed));
  }
}

double RngStream::uniform() {
  if (kind_ == RngKind::Mt64) return static_cast<double>(mt64_() >> 11) * 0x1.0p-53;
  const double a = static_cast<double>(mt32_() >> 5);
  const double b = static_cast<double>(mt32_() >> 6);
  return (a * 67108864.0 + b) / 9007199254740992.0;
}

void SwarmState::refresh_global_best() {
  std::size_t best = 0;
  for (std::size_t i = 1; i < personal_best_val.size(); ++i) {
    if (personal_best_val[i] < personal_best_val[best]) best = i;
  }
  global_best_val = personal_best_val[best];
  auto row = personal_best_pos.row(best);
  global_best_pos.assign(row.begin(), row.end());
}

bool satisfies_invariants(const SwarmState& state, const BoundsBox& box) {
  const std::size_t n = state.n_particles();
  if (n == 0 || state.personal_best_val.size() != n) return false;
  if (state.dim() != box.dim()) return false;

  std::size_t best = 0;
  for (std::size_t i = 1; i < n; ++i) {
    if (state.personal_best_val[i] < state.personal_best_val[best]) best = i;
  }
  if (state.global_best_val != state.personal_best_val[best]) return false;
  auto row = state.personal_best_pos.row(best);
  if (!std::equal(row.begin(), row.end(), state.global_best_pos.begin(),
                  state.global_best_pos.end())) {
    return false;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!box.contains(state.positions.row(i))) return false;
  }
  return true;
}

bool ProgressTrace::is_non_increasing() const {
  return std::adjacent_find(best_so_far.begin(), best_so_far.end(),
                            [](double a, double b) { return b > a; }) ==
         best_so_far.end();
}

double inertia_weight(std::size_t t, double w_min, double w_max, std::size_t t_max) {
  if (t_max < 1) throw ParameterError("inertia_weight: t_max must be at least 1");
  if (t > t_max) {
    throw ParameterError(fmt::format("inertia_weight: t = {} exceeds t_max = {}", t, t_max));
  }
  if (!(w_min >= 0.0 && w_min <= w_max)) {
    throw ParameterError(fmt::format(
        "inertia_weight: need 0 <= w_min <= w_max, got w_min = {}, w_max = {}", w_min,
        w_max));
  }
  // The affine form can miss w_min by an ulp at t = t_max.
  if (t == t_max) return w_min;
  return w_max - (w_max - w_min) * static_cast<double>(t) / static_cast<double>(t_max);
}

Vector clip_to_bounds(std::span<const double> x, const BoundsBox& box) {
  Vector out(x.begin(), x.end());
  clip_in_place(out, box);
  return out;
}

void clip_in_place(std::span<double> x, const BoundsBox& box) {
  if (x.size() != box.dim()) {
    throw DimensionError(fmt::format("clip_to_bounds: vector has {} components, box has {}",
                                     x.size(), box.dim()));
  }
  for (std::size_t i = 0; i < x.size(); ++i) {
    x[i] = std::min(std::max(x[i], box.lower()[i]), box.upper()[i]);
  }
}

}  // namespace ueps
