/**
 * @file pareto.hpp
 * @brief Pareto dominance, non-dominated archive, and exact hypervolume for
 *        two and three objectives.
 */

#ifndef DNL_PARETO_HPP
#define DNL_PARETO_HPP

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dnl/problem.hpp"

namespace dnl {

/// True iff a dominates b: no worse in every objective, strictly better in
/// at least one, with orientation given by sense.
inline bool dominates(const ObjVec &a, const ObjVec &b, Sense sense) {
  if (a.size() != b.size()) throw std::invalid_argument("dominates: dimension mismatch");
  bool strict = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double ai = sense == Sense::minimize ? a[i] : -a[i];
    const double bi = sense == Sense::minimize ? b[i] : -b[i];
    if (ai > bi) return false;
    if (ai < bi) strict = true;
  }
  return strict;
}

/**
 * @brief Archive of mutually non-dominated (solution, objective) pairs.
 *
 * Inserts are rejected when the candidate is dominated by or equal to an
 * existing entry; an accepted candidate evicts everything it dominates.
 * Duplicate objective vectors keep the first inserted solution.
 */
class ParetoArchive {
public:
  struct Entry {
    Solution solution;
    ObjVec objectives;
  };

  explicit ParetoArchive(Sense sense = Sense::minimize) : sense_(sense) {}

  Sense sense() const { return sense_; }
  const std::vector<Entry> &entries() const { return entries_; }
  int size() const { return static_cast<int>(entries_.size()); }
  bool empty() const { return entries_.empty(); }

  bool insert(Solution sol, ObjVec f) {
    for (const auto &e : entries_) {
      if (e.objectives == f || dominates(e.objectives, f, sense_)) return false;
    }
    entries_.erase(std::remove_if(entries_.begin(), entries_.end(),
                                  [&](const Entry &e) {
                                    return dominates(f, e.objectives, sense_);
                                  }),
                   entries_.end());
    entries_.push_back({std::move(sol), std::move(f)});
    return true;
  }

  void merge(const ParetoArchive &other) {
    for (const auto &e : other.entries_) insert(e.solution, e.objectives);
  }

  std::vector<ObjVec> front() const {
    std::vector<ObjVec> f;
    f.reserve(entries_.size());
    for (const auto &e : entries_) f.push_back(e.objectives);
    return f;
  }

private:
  Sense sense_;
  std::vector<Entry> entries_;
};

inline int nds_count(const ParetoArchive &archive) { return archive.size(); }

namespace detail {

/// 2D dominated area for minimization: union of [x_i, rx] x [y_i, ry].
inline double hv2(std::vector<std::pair<double, double>> pts, double rx, double ry) {
  if (pts.empty()) return 0.0;
  std::sort(pts.begin(), pts.end());
  double area = 0.0;
  double ceiling = ry;
  for (const auto &[x, y] : pts) {
    if (y < ceiling) {
      area += (rx - x) * (ceiling - y);
      ceiling = y;
    }
  }
  return area;
}

}  // namespace detail

/**
 * @brief Exact hypervolume (minimization orientation) dominated by `front`
 *        and bounded by `ref`.
 *
 * Points not strictly better than the reference in every coordinate are
 * dropped. m = 2 uses a sorted sweep; m = 3 slices along the third
 * coordinate and sweeps each slab.
 */
inline double hypervolume(const std::vector<ObjVec> &front, const ObjVec &ref) {
  const std::size_t m = ref.size();
  if (m != 2 && m != 3)
    throw std::invalid_argument("hypervolume: only 2 or 3 objectives are supported");

  std::vector<ObjVec> pts;
  for (const auto &p : front) {
    if (p.size() != m) throw std::invalid_argument("hypervolume: dimension mismatch");
    bool inside = true;
    for (std::size_t i = 0; i < m; ++i)
      if (!(p[i] < ref[i])) inside = false;
    if (inside) pts.push_back(p);
  }
  if (pts.empty()) return 0.0;

  if (m == 2) {
    std::vector<std::pair<double, double>> flat;
    flat.reserve(pts.size());
    for (const auto &p : pts) flat.emplace_back(p[0], p[1]);
    return detail::hv2(std::move(flat), ref[0], ref[1]);
  }

  // m == 3: integrate 2D slabs between consecutive distinct z levels.
  std::vector<double> levels;
  levels.reserve(pts.size());
  for (const auto &p : pts) levels.push_back(p[2]);
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());

  double volume = 0.0;
  for (std::size_t li = 0; li < levels.size(); ++li) {
    const double lo = levels[li];
    const double hi = li + 1 < levels.size() ? levels[li + 1] : ref[2];
    std::vector<std::pair<double, double>> active;
    for (const auto &p : pts)
      if (p[2] <= lo) active.emplace_back(p[0], p[1]);
    volume += detail::hv2(std::move(active), ref[0], ref[1]) * (hi - lo);
  }
  return volume;
}

/// Reference/ideal pair framing the hypervolume-ratio computation. For a
/// minimization frame the reference is worse than the ideal (r_i > z_i);
/// a maximization frame reverses the order.
struct HvFrame {
  ObjVec ref;
  ObjVec ideal;
  Sense sense = Sense::minimize;

  void validate() const {
    if (ref.size() != ideal.size() || ref.empty())
      throw std::invalid_argument("HvFrame: reference/ideal dimension mismatch");
    for (std::size_t i = 0; i < ref.size(); ++i) {
      if (ref[i] == ideal[i])
        throw std::invalid_argument("HvFrame: degenerate box (ref equals ideal)");
      if (sense == Sense::minimize ? ref[i] < ideal[i] : ref[i] > ideal[i])
        throw std::invalid_argument("HvFrame: reference must be worse than ideal");
    }
  }
};

/// Hypervolume normalized by the reference-to-ideal box volume. Maximization
/// fronts are sign-flipped into minimization before measuring.
inline double hv_ratio(const std::vector<ObjVec> &front, const HvFrame &frame) {
  frame.validate();
  double box = 1.0;
  for (std::size_t i = 0; i < frame.ref.size(); ++i)
    box *= std::abs(frame.ref[i] - frame.ideal[i]);

  if (frame.sense == Sense::minimize) return hypervolume(front, frame.ref) / box;

  std::vector<ObjVec> flipped;
  flipped.reserve(front.size());
  for (const auto &p : front) {
    ObjVec q(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) q[i] = -p[i];
    flipped.push_back(std::move(q));
  }
  ObjVec flipped_ref(frame.ref.size());
  for (std::size_t i = 0; i < frame.ref.size(); ++i) flipped_ref[i] = -frame.ref[i];
  return hypervolume(flipped, flipped_ref) / box;
}

/// Standardized frames keyed by benchmark name (bitsp20, bikp50, ...).
inline const std::map<std::string, HvFrame> &paper_frames() {
  static const std::map<std::string, HvFrame> frames = {
      {"bitsp20", {{20, 20}, {0, 0}, Sense::minimize}},
      {"bitsp50", {{35, 35}, {0, 0}, Sense::minimize}},
      {"bitsp100", {{65, 65}, {0, 0}, Sense::minimize}},
      {"tritsp20", {{20, 20, 20}, {0, 0, 0}, Sense::minimize}},
      {"tritsp50", {{35, 35, 35}, {0, 0, 0}, Sense::minimize}},
      {"tritsp100", {{65, 65, 65}, {0, 0, 0}, Sense::minimize}},
      {"bikp50", {{5, 5}, {30, 30}, Sense::maximize}},
      {"bikp100", {{20, 20}, {50, 50}, Sense::maximize}},
      {"bikp200", {{30, 30}, {75, 75}, Sense::maximize}},
      {"bicvrp20", {{30, 4}, {0, 0}, Sense::minimize}},
      {"bicvrp50", {{45, 4}, {0, 0}, Sense::minimize}},
      {"bicvrp100", {{80, 4}, {0, 0}, Sense::minimize}},
  };
  return frames;
}

inline HvFrame paper_frame(const std::string &name) {
  const auto &frames = paper_frames();
  const auto it = frames.find(name);
  if (it == frames.end()) {
    std::string known;
    for (const auto &[key, value] : frames) {
      if (!known.empty()) known += ", ";
      known += key;
    }
    throw std::invalid_argument("unknown paper frame '" + name + "'; known: " + known);
  }
  return it->second;
}

}  // namespace dnl

#endif  // DNL_PARETO_HPP
