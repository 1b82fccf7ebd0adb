#pragma once

// The explicit family of lifted arcs
//
//   Gamma_{k,n} = { (x, a sin(x - 2 pi k / N) + pi n) : x real },  0 <= k < N,
//
// their images gamma_k = exp(Gamma_{k,0}) u {0}, and the closed-form solution
// of Gamma_{k,n} n Gamma_{l,m} != {} which reduces to
//
//   2 a sin(pi (l - k) / N) cos(x - pi (k + l) / N) = pi (m - n).

#include <cstddef>
#include <functional>
#include <numbers>
#include <vector>

#include "plait/geometry.hpp"

namespace plait {

struct Window {
  double min = 0.0;
  double max = 0.0;
  double length() const { return max - min; }
};

inline constexpr Window kDefaultWindow{-8 * std::numbers::pi, 4 * std::numbers::pi};
inline constexpr std::size_t kDefaultVertexBudget = 1'000'000;
inline constexpr int kDefaultDeltaMax = 3;

struct SineFamilyParams {
  int n_arcs = 2;
  double amplitude = 1.0;
  Window window = kDefaultWindow;

  // Throws InvalidArgument unless n_arcs >= 2, the window is non-empty and
  // every value is finite.
  void validate() const;
};

struct LiftedArcId {
  int k = 0;
  long n = 0;
};

enum class Classification { Plaited, Nested, Unlinked };
const char* classification_name(Classification c);

Point2 lifted_point(const SineFamilyParams& params, LiftedArcId id, double x);

// Gamma_{k,n} + 2 pi / N == Gamma_{k+1 mod N, n}, checked at one abscissa.
bool translate_check(const SineFamilyParams& params, LiftedArcId id, double x);

// (x, y) viewed as x + iy, mapped to e^x (cos y, sin y).
Point2 project(Point2 p);

// gamma_k sampled over the window: the origin followed by exp(Gamma_{k,0}(x)).
// The x spacing never exceeds `step`, and intervals are bisected until
// consecutive image vertices satisfy |z1 - z0| <= step * max(|z0|, |z1|).
// Throws WindowTooCoarse when more than `budget` vertices would be needed.
Polyline sample_gamma(const SineFamilyParams& params, int k, double step,
                      std::size_t budget = kDefaultVertexBudget);

// Same sampling applied to exp(x + 2i a sin(x - 2 pi k / N)). Lifts of this
// arc under exp are exactly the Gamma_{k,n} for all n with the imaginary
// axis stretched by two, so it is the arc the classifiers consume.
Polyline sample_quotient_arc(const SineFamilyParams& params, int k, double step,
                             std::size_t budget = kDefaultVertexBudget);

// The origin followed by exp(x + i y(x)) over the window, sampled as above.
Polyline sample_exp_graph(Window window, const std::function<double(double)>& y, double step,
                          std::size_t budget = kDefaultVertexBudget);

// a (sin(x - 2 pi k/N) - sin(x - 2 pi l/N)) - pi delta
double lift_residual(const SineFamilyParams& params, int k, int l, long delta, double x);

struct LiftRoot {
  double x = 0.0;
  bool tangent = false;
};

// All x in the closed window solving the equation above for delta = m - n,
// in increasing order. A double root is returned once with tangent = true.
// Throws IdenticalArcs when the arcs coincide (zero coefficient, delta = 0).
std::vector<LiftRoot> solve_lift_intersections(const SineFamilyParams& params, int k, int l,
                                               long delta, Window window);

// Amplitude a*(N) separating plaiting (|a| < a*) from nesting (|a| >= a*).
double plaiting_threshold(int n_arcs);

// Throws DegenerateAmplitude for a == 0.
Classification classify_analytic(const SineFamilyParams& params);

}  // namespace plait
