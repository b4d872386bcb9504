#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <queue>
#include <span>
#include <vector>

#include "bf/barcode.hpp"
#include "bf/error.hpp"
#include "bf/random.hpp"
#include "bf/tree.hpp"

namespace bf {

struct AngleSampler {
  // Polar tilt of a new branch's target away from the parent's heading.
  double min_polar = std::numbers::pi / 12.0;
  double max_polar = std::numbers::pi / 3.0;

  Vec3 sample(Vec3 heading, Rng& rng) const {
    const double polar = rng.uniform(min_polar, max_polar);
    const double azimuth = rng.uniform(0.0, 2.0 * std::numbers::pi);
    return tilt(heading, polar, azimuth);
  }
};

struct TnsParams {
  double lambda = 1.0;  // 1/length
  double rho = 0.2;     // random component
  double tau = 0.3;     // target component
  double mu = 0.5;      // memory component
  double step = 0.1;    // length of one growth step
  std::uint64_t seed = 0;
  AngleSampler angles;

  void validate() const {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) throw InvalidArgument("lambda must be positive");
    if (!(step > 0.0) || !std::isfinite(step)) throw InvalidArgument("step size must be positive");
    if (rho < 0.0 || tau < 0.0 || mu < 0.0) throw InvalidArgument("rho, tau, mu must be non-negative");
    if (std::abs(rho + tau + mu - 1.0) > 1e-9) throw InvalidArgument("rho + tau + mu must equal 1");
    if (!(angles.min_polar <= angles.max_polar)) throw InvalidArgument("angle sampler range is empty");
  }
};

// Cumulative profile of a growth event aimed at `target`: the probability
// that the event has happened by distance x. It grows like exp(-lambda (target - x))
// and reaches 1 at the target, so the event falls short of the target by an
// Exp(lambda)-distributed amount.
inline double event_profile(double x, double target, double lambda) {
  return x >= target ? 1.0 : std::exp(-lambda * (target - x));
}

inline double bifurcation_probability(double x, double birth, double lambda) { return event_profile(x, birth, lambda); }
inline double termination_probability(double x, double death, double lambda) { return event_profile(x, death, lambda); }

// Probability that the event fires during the step [x, x + step), given that
// it has not fired before x. Equals 1 once the target lies within the step.
inline double step_hazard(double x, double target, double lambda, double step) {
  const double fx = event_profile(x, target, lambda);
  if (fx >= 1.0) return 1.0;
  const double fe = event_profile(std::min(x + step, target), target, lambda);
  return (fe - fx) / (1.0 - fx);
}

namespace detail {

// Where inside [x, x + step) the event fires, or nothing. The position is
// drawn from the profile restricted to the step, so the overall firing
// distance is exactly target - Exp(lambda) (truncated at the start of growth)
// for every step size.
inline std::optional<double> sample_event(Rng& rng, double x, double target, double lambda, double step) {
  const double fx = event_profile(x, target, lambda);
  if (fx >= 1.0) return x;
  const double end = std::min(x + step, target);
  const double fe = event_profile(end, target, lambda);
  const double hazard = (fe - fx) / (1.0 - fx);
  if (!(rng.uniform() < hazard)) return std::nullopt;
  const double f = fx + rng.uniform() * (fe - fx);
  const double at = target + std::log(f) / lambda;
  return std::clamp(at, x, end);
}

}  // namespace detail

struct GrowingTip {
  static constexpr std::size_t memory_depth = 20;

  Vec3 position;
  double distance = 0.0;  // path distance from the root
  std::size_t bar = 0;
  Vec3 target{0, 0, 1};
  VertexId vertex = 0;

  // Most recent segment directions, newest at memory[(head + count - 1) % depth].
  std::array<Vec3, memory_depth> memory{};
  std::size_t head = 0;
  std::size_t count = 0;

  void remember(Vec3 dir) {
    if (count < memory_depth) {
      memory[(head + count) % memory_depth] = dir;
      ++count;
    } else {
      memory[head] = dir;
      head = (head + 1) % memory_depth;
    }
  }

  // Weights (1/2)^k over the k-th most recent direction; the target when the
  // branch has no history yet.
  Vec3 memory_vector() const {
    if (count == 0) return target;
    Vec3 m{};
    double w = 1.0;
    for (std::size_t k = 0; k < count; ++k) {
      m += w * memory[(head + count - 1 - k) % memory_depth];
      w *= 0.5;
    }
    const Vec3 u = normalized(m);
    return norm(u) > 0.0 ? u : target;
  }

  Vec3 heading() const { return count == 0 ? target : memory[(head + count - 1) % memory_depth]; }
};

// Direction of the next segment: normalize(rho r + tau t + mu m).
inline Vec3 elongation_direction(const GrowingTip& tip, const TnsParams& p, Rng& rng) {
  const Vec3 m = tip.memory_vector();
  for (int attempt = 0; attempt < 16; ++attempt) {
    const Vec3 r = p.rho > 0.0 ? rng.unit_vector() : Vec3{};
    const Vec3 d = p.rho * r + p.tau * tip.target + p.mu * m;
    const double n = norm(d);
    if (n > 1e-12) return (1.0 / n) * d;
    if (p.rho == 0.0) break;  // resampling cannot help
  }
  return tip.target;
}

// Advances the tip by `length` (one step, or a partial step ending at an
// event) and returns the new position.
inline Vec3 elongation_step(GrowingTip& tip, const TnsParams& p, Rng& rng, double length) {
  const Vec3 dir = elongation_direction(tip, p, rng);
  tip.position += length * dir;
  tip.distance += length;
  tip.remember(dir);
  return tip.position;
}

inline Vec3 elongation_step(GrowingTip& tip, const TnsParams& p, Rng& rng) { return elongation_step(tip, p, rng, p.step); }

struct Synthesis {
  GeometricTree tree;
  // For bar j >= 1 (input order, sorted by birth), the bar whose tip it
  // branched from. attached_to[0] == -1.
  std::vector<int> attached_to;
  std::vector<double> bifurcation_at;  // path distance where bar j's branch started
  std::vector<double> termination_at;  // path distance of bar j's leaf
};

// Grows a tree from `bars` (sorted by birth, bar 0 containing every other
// bar; ties among the others are allowed).
//
// Every bar j >= 1 is first assigned a parent drawn uniformly from the bars
// containing it (b_i < b_j, d_j < d_i), so each valid attachment map is
// equally likely. Tips advance in order of path distance. A tip holding bar i
// aims its next bifurcation at the earliest-born of its unused children and
// can terminate only once all of them have branched off. On bifurcation it
// keeps its bar and memory; the new tip takes bar j and a fresh target from
// the angle sampler.
inline Synthesis synthesize(std::span<const Bar> bars, const TnsParams& params) {
  params.validate();
  if (bars.empty()) throw InvalidArgument("cannot synthesize from an empty barcode");
  for (std::size_t i = 1; i < bars.size(); ++i) {
    if (bars[i].birth < bars[i - 1].birth) throw InvalidArgument("bars must be sorted by birth");
    if (!bars[i].strictly_inside(bars[0])) throw NotStrict("bar " + std::to_string(i) + " is not inside bar 0");
  }

  Rng rng(params.seed);
  const double L = params.step;
  const double tiny = L * 1e-6;
  const std::size_t nb = bars.size();

  Synthesis out;
  out.attached_to.assign(nb, -1);
  out.bifurcation_at.assign(nb, 0.0);
  out.termination_at.assign(nb, 0.0);
  // children[i]: bars assigned to bar i, in birth order.
  std::vector<std::vector<std::size_t>> children(nb);
  for (std::size_t j = 1; j < nb; ++j) {
    std::vector<std::size_t> containers;
    for (std::size_t i = 0; i < j; ++i)
      if (bars[j].strictly_inside(bars[i])) containers.push_back(i);
    children[containers[rng.below(containers.size())]].push_back(j);
  }
  std::vector<std::size_t> next_child(nb, 0);

  std::vector<Vertex> vs;
  vs.push_back(Vertex{{0, 0, 0}, std::nullopt, 1, 1.0});

  std::vector<GrowingTip> tips;
  tips.push_back(GrowingTip{});

  using Entry = std::pair<double, std::size_t>;  // (distance, tip id)
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue;
  queue.emplace(0.0, 0);

  auto next_target = [&](const GrowingTip& t) -> std::optional<std::size_t> {
    if (next_child[t.bar] < children[t.bar].size()) return children[t.bar][next_child[t.bar]];
    return std::nullopt;
  };

  auto add_vertex = [&](GrowingTip& t, double length) {
    elongation_step(t, params, rng, length);
    vs.push_back(Vertex{t.position, t.vertex, 3, 1.0});
    t.vertex = vs.size() - 1;
  };

  while (!queue.empty()) {
    const std::size_t id = queue.top().second;
    queue.pop();
    GrowingTip& tip = tips[id];
    const double x = tip.distance;

    if (const auto j = next_target(tip)) {
      if (auto at = detail::sample_event(rng, x, bars[*j].birth, params.lambda, L)) {
        const double len = *at - x > 0.0 ? *at - x : tiny;
        add_vertex(tip, len);
        ++next_child[tip.bar];
        out.attached_to[*j] = static_cast<int>(tip.bar);
        out.bifurcation_at[*j] = tip.distance;

        GrowingTip child;
        child.position = tip.position;
        child.distance = tip.distance;
        child.bar = *j;
        child.vertex = tip.vertex;
        child.target = params.angles.sample(tip.heading(), rng);
        tips.push_back(child);  // invalidates `tip`
        queue.emplace(tips[id].distance, id);
        queue.emplace(tips.back().distance, tips.size() - 1);
        continue;
      }
    } else if (auto at = detail::sample_event(rng, x, bars[tip.bar].death, params.lambda, L)) {
      const double len = *at - x > 0.0 ? *at - x : tiny;
      add_vertex(tip, len);
      out.termination_at[tip.bar] = tip.distance;
      continue;
    }

    add_vertex(tip, L);
    queue.emplace(tip.distance, id);
  }

  out.tree = GeometricTree(std::move(vs));
  return out;
}

inline Synthesis synthesize(const StrictBarcode& b, const TnsParams& params) { return synthesize(b.bars(), params); }

// Accepts barcodes with tied endpoints among the non-containing bars.
inline Synthesis synthesize(const Barcode& b, const TnsParams& params) {
  std::vector<Bar> bars(b.bars().begin(), b.bars().end());
  std::stable_sort(bars.begin(), bars.end(), [](const Bar& a, const Bar& c) { return a.birth < c.birth; });
  return synthesize(std::span<const Bar>(bars), params);
}

}  // namespace bf
