#include "plait/sine_family.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "plait/error.hpp"

namespace plait {

using std::numbers::pi;

const char* classification_name(Classification c) {
  switch (c) {
    case Classification::Plaited: return "plaited";
    case Classification::Nested: return "nested";
    case Classification::Unlinked: return "unlinked";
  }
  return "unknown";
}

void SineFamilyParams::validate() const {
  if (n_arcs < 2) throw Error(ErrorCode::InvalidArgument, "N must be at least 2");
  if (!std::isfinite(amplitude)) throw Error(ErrorCode::InvalidArgument, "amplitude must be finite");
  if (!std::isfinite(window.min) || !std::isfinite(window.max) || !(window.min < window.max)) {
    throw Error(ErrorCode::InvalidArgument, "window must satisfy x_min < x_max");
  }
}

Point2 lifted_point(const SineFamilyParams& params, LiftedArcId id, double x) {
  const double phase = 2 * pi * id.k / params.n_arcs;
  return {x, params.amplitude * std::sin(x - phase) + pi * static_cast<double>(id.n)};
}

bool translate_check(const SineFamilyParams& params, LiftedArcId id, double x) {
  const double shift = 2 * pi / params.n_arcs;
  const Point2 moved = lifted_point(params, id, x) + Point2{shift, 0.0};
  const LiftedArcId next{(id.k + 1) % params.n_arcs, id.n};
  const Point2 target = lifted_point(params, next, x + shift);
  const double scale = std::max({1.0, std::abs(target.x), std::abs(target.y)});
  return distance(moved, target) <= 1e-12 * scale;
}

Point2 project(Point2 p) {
  const double r = std::exp(p.x);
  return {r * std::cos(p.y), r * std::sin(p.y)};
}

namespace {

template <class LiftFn>
Polyline sample_projected(const Window& w, double step, std::size_t budget, LiftFn lift) {
  if (!(step > 0)) throw Error(ErrorCode::InvalidArgument, "sampling step must be positive");
  const auto intervals = static_cast<std::size_t>(std::ceil(w.length() / step));
  if (intervals + 2 > budget) throw Error(ErrorCode::WindowTooCoarse, "vertex budget exceeded");

  std::vector<Point2> pts;
  pts.reserve(intervals + 2);
  pts.push_back({0.0, 0.0});
  auto image = [&](double x) { return project(lift(x)); };
  auto close_enough = [&](Point2 a, Point2 b) {
    return distance(a, b) <= step * std::max(a.norm(), b.norm());
  };

  double x0 = w.min;
  Point2 z0 = image(x0);
  pts.push_back(z0);
  struct Span {
    double x;
    Point2 z;
  };
  std::vector<Span> pending;
  for (std::size_t i = 1; i <= intervals; ++i) {
    const double x1 = i == intervals ? w.max : w.min + w.length() * static_cast<double>(i) / static_cast<double>(intervals);
    pending.push_back({x1, image(x1)});
    while (!pending.empty()) {
      const Span hi = pending.back();
      if (close_enough(z0, hi.z) || hi.x - x0 < 1e-14 * std::max(1.0, std::abs(x0))) {
        pts.push_back(hi.z);
        if (pts.size() > budget) throw Error(ErrorCode::WindowTooCoarse, "vertex budget exceeded");
        x0 = hi.x;
        z0 = hi.z;
        pending.pop_back();
      } else {
        const double xm = (x0 + hi.x) / 2;
        pending.push_back({xm, image(xm)});
      }
    }
  }
  return Polyline::from_points(std::move(pts));
}

}  // namespace

Polyline sample_gamma(const SineFamilyParams& params, int k, double step, std::size_t budget) {
  params.validate();
  return sample_projected(params.window, step, budget,
                          [&](double x) { return lifted_point(params, {k, 0}, x); });
}

Polyline sample_quotient_arc(const SineFamilyParams& params, int k, double step, std::size_t budget) {
  params.validate();
  return sample_projected(params.window, step, budget, [&](double x) {
    const Point2 p = lifted_point(params, {k, 0}, x);
    return Point2{p.x, 2 * p.y};
  });
}

Polyline sample_exp_graph(Window window, const std::function<double(double)>& y, double step,
                          std::size_t budget) {
  if (!std::isfinite(window.min) || !std::isfinite(window.max) || !(window.min < window.max)) {
    throw Error(ErrorCode::InvalidArgument, "window must satisfy x_min < x_max");
  }
  return sample_projected(window, step, budget, [&](double x) { return Point2{x, y(x)}; });
}

double lift_residual(const SineFamilyParams& params, int k, int l, long delta, double x) {
  const double n = params.n_arcs;
  return params.amplitude * (std::sin(x - 2 * pi * k / n) - std::sin(x - 2 * pi * l / n)) -
         pi * static_cast<double>(delta);
}

std::vector<LiftRoot> solve_lift_intersections(const SineFamilyParams& params, int k, int l, long delta,
                                               Window window) {
  params.validate();
  const int n = params.n_arcs;
  if (k < 0 || k >= n || l < 0 || l >= n || k == l) {
    throw Error(ErrorCode::InvalidArgument, "arc indices must be distinct and in [0, N)");
  }
  const double coeff = 2 * params.amplitude * std::sin(pi * (l - k) / n);
  const double rhs = pi * static_cast<double>(delta);
  if (coeff == 0.0) {
    if (delta == 0) throw Error(ErrorCode::IdenticalArcs, "arcs coincide: every x solves the equation");
    return {};
  }
  const double ratio = rhs / coeff;
  constexpr double kTangentTol = 1e-12;
  if (std::abs(ratio) > 1 + kTangentTol) return {};

  const double center = pi * (k + l) / n;
  std::vector<double> bases;
  bool tangent = false;
  if (std::abs(ratio) >= 1 - kTangentTol) {
    tangent = true;
    bases.push_back(ratio > 0 ? center : center + pi);
  } else {
    const double off = std::acos(ratio);
    bases.push_back(center - off);
    bases.push_back(center + off);
  }

  const double slack = 1e-12 * std::max({1.0, std::abs(window.min), std::abs(window.max)});
  std::vector<LiftRoot> roots;
  for (double b : bases) {
    const double jlo = std::ceil((window.min - slack - b) / (2 * pi));
    const double jhi = std::floor((window.max + slack - b) / (2 * pi));
    for (double j = jlo; j <= jhi; j += 1.0) roots.push_back({b + 2 * pi * j, tangent});
  }
  std::sort(roots.begin(), roots.end(), [](const LiftRoot& a, const LiftRoot& b) { return a.x < b.x; });
  return roots;
}

double plaiting_threshold(int n_arcs) {
  if (n_arcs < 2) throw Error(ErrorCode::InvalidArgument, "N must be at least 2");
  if (n_arcs % 2 == 0) return pi / 2;
  return pi / (2 * std::sin(pi * (n_arcs - 1) / (2.0 * n_arcs)));
}

Classification classify_analytic(const SineFamilyParams& params) {
  params.validate();
  if (params.amplitude == 0.0) {
    throw Error(ErrorCode::DegenerateAmplitude, "amplitude must be nonzero");
  }
  return std::abs(params.amplitude) < plaiting_threshold(params.n_arcs) ? Classification::Plaited
                                                                        : Classification::Nested;
}

}  // namespace plait
