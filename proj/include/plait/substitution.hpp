#pragma once

// Two-contraction substitution model of the Cantor-set example. A rectangle
// R is crossed by a straight base arc; contractions S_1, S_2 map R into two
// disjoint sub-rectangles, each crossed by the base. The template arc is the
// first approximation of the red curve, and each stage replaces the content
// of S_j(R) with S_j applied to the previous stage:
//
//   stage(0) = template
//   stage(n+1) = template outside the cells, spliced with S_j(stage(n))
//
// so stage(n+1) differs from stage(n) only inside the 2^{n+1} cells
// S_{i_1} ... S_{i_{n+1}}(R).

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "plait/geometry.hpp"
#include "plait/lift_classifier.hpp"

namespace plait {

class Contraction {
 public:
  // Row-major 2x2 linear part followed by the translation.
  static Contraction make(std::array<double, 4> linear, Point2 translation);
  static Contraction identity();

  Point2 apply(Point2 p) const {
    return {linear_[0] * p.x + linear_[1] * p.y + translation_.x,
            linear_[2] * p.x + linear_[3] * p.y + translation_.y};
  }
  // this o inner
  Contraction after(const Contraction& inner) const;
  Rect image(const Rect& r) const;

  const std::array<double, 4>& linear() const { return linear_; }
  Point2 translation() const { return translation_; }
  // Operator norm of the linear part.
  double ratio() const { return ratio_; }
  double determinant() const { return linear_[0] * linear_[3] - linear_[1] * linear_[2]; }

 private:
  Contraction(std::array<double, 4> linear, Point2 translation);
  std::array<double, 4> linear_;
  Point2 translation_;
  double ratio_;
};

// Letters are 1-based map indices; the first letter is applied last.
using Word = std::vector<int>;
std::string word_string(const Word& w);

struct Port {
  std::size_t entry = 0;  // template vertex where the curve enters S_j(R)
  std::size_t exit = 0;   // template vertex where it leaves
};

struct SubstitutionSystem {
  std::string variant;
  Rect domain;
  Polyline base{std::vector<Point2>{{0.0, 0.0}, {1.0, 0.0}}};
  std::vector<Contraction> maps;
  Polyline templ{std::vector<Point2>{{0.0, 0.0}, {1.0, 0.0}}};
  std::vector<Port> ports;

  // Throws on the first violated invariant: SpliceMismatch for ports that
  // are not the images of the template endpoints, SelfIntersection for a
  // template that is not simple, InvalidArgument otherwise.
  void validate() const;
  // Fixed point of the first map; lies on the base.
  Point2 reference_point() const;
  double max_ratio() const;

  // "nesting" or "plaiting".
  static SubstitutionSystem builtin(std::string_view name);
};

inline constexpr int kDefaultStageCap = 6;
// stage() refuses anything deeper: 2^11 cells, ~10^5 vertices.
inline constexpr int kMaxStage = 10;

Contraction compose(const SubstitutionSystem& sys, std::span<const int> word);
std::vector<Word> words_of_length(const SubstitutionSystem& sys, int depth);

struct StageCurve {
  int n = 0;
  Polyline curve{std::vector<Point2>{{0.0, 0.0}, {1.0, 0.0}}};
  std::vector<Rect> dirty_regions;  // cells of depth n + 1
  std::vector<Word> dirty_words;
};

// Throws SpliceMismatch when a contracted copy does not meet the template's
// ports within 1e-9, SelfIntersection when the result is not simple.
StageCurve stage(const SubstitutionSystem& sys, int n);

// One point per word of the given length: the word's image of the reference
// point. Depth 0 yields a base point lying outside every depth-1 cell.
std::vector<Point2> attractor_points(const SubstitutionSystem& sys, int depth);

// Crossings of the stage curve with the base, sorted along the base
// (t_first is arc length on the base, t_second on the stage curve).
std::vector<IntersectionRecord> stage_intersections(const SubstitutionSystem& sys, const StageCurve& st);
std::vector<IntersectionRecord> stage_intersections(const SubstitutionSystem& sys, int n);

// Entry d - 1, for d = 1..n: the largest distance from a crossing inside a
// depth-d cell to that cell's attractor point. Throws InvalidArgument when
// some depth-d cell holds no crossing.
std::vector<double> accumulation_profile(const SubstitutionSystem& sys, const StageCurve& st);

struct NestingWitness {
  Word word;
  Point2 point;
  bool enclosed = false;
  std::vector<Point2> cycle;
};

// For each attractor point of the given depth: does base u stage(n) contain
// a cycle around it? The base edge carrying the point is removed first (a
// cycle through the point cannot enclose it).
std::vector<NestingWitness> nesting_witness_cycles(const SubstitutionSystem& sys, const StageCurve& st, int depth);
std::vector<bool> nesting_witnesses(const SubstitutionSystem& sys, int n, int depth);

// Least p with patterns[i] == patterns[i + p] for every valid i, p <= max_period.
template <class Pattern>
std::optional<int> detect_period(std::span<const Pattern> patterns, int max_period) {
  for (int p = 1; p <= max_period; ++p) {
    if (static_cast<std::size_t>(p) >= patterns.size()) break;
    bool ok = true;
    for (std::size_t i = 0; i + static_cast<std::size_t>(p) < patterns.size() && ok; ++i) {
      ok = patterns[i] == patterns[i + static_cast<std::size_t>(p)];
    }
    if (ok) return p;
  }
  return std::nullopt;
}

// Signed crossings with the base of the content each stage adds inside each
// new cell, pulled back by the cell's word. Entry n describes the change
// from stage(n) to stage(n + 1): the distinct per-cell sign sequences.
using ChangePattern = std::vector<std::vector<int>>;
std::vector<ChangePattern> change_patterns(const SubstitutionSystem& sys, int n_max);
std::optional<int> self_similarity_period(const SubstitutionSystem& sys, int n_max);

// Local picture at an attractor point p at stage n: the base halves leaving
// p and the two halves of the stage curve joined to p through the deepest
// unresolved cell around it. Each crossing pair of (base half, curve half)
// is classified as a two-arc family.
struct LocalPair {
  std::string name;  // e.g. "base_left/curve_in"
  ArcFamily family;
};
std::vector<LocalPair> local_families(const SubstitutionSystem& sys, const StageCurve& st, const Word& word);

struct LocalClassification {
  Classification classification = Classification::Unlinked;
  std::vector<std::pair<std::string, Classification>> pairs;
};
LocalClassification classify_local(const SubstitutionSystem& sys, const StageCurve& st, const Word& word);

}  // namespace plait
