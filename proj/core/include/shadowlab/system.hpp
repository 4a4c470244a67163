#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "shadowlab/rational.hpp"
#include "shadowlab/threshold.hpp"

namespace shadowlab {

/// Index into the point list; point order is part of a system's identity.
using PointId = std::uint32_t;

enum class MetricKind { Euclidean, Matrix };

struct Point {
  std::string label;
  std::optional<std::vector<Rational>> coords;
};

struct ValidationResult {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

/// Finite metric space with a total self-map. Squared distances are
/// materialized exactly; distances themselves are never formed.
class FiniteSystem {
 public:
  /// Squared distances derived from coordinates; throws std::invalid_argument
  /// when coordinates are absent or ragged (nothing to materialize).
  static FiniteSystem euclidean(std::vector<Point> points, std::vector<PointId> map,
                                std::map<std::string, std::string> meta = {});

  /// Explicit squared-distance table; throws std::invalid_argument when the
  /// table is not |X| x |X|. Metric axioms are checked by validate(), not here.
  static FiniteSystem matrix(std::vector<Point> points, std::vector<std::vector<Rational>> sq,
                             std::vector<PointId> map, std::map<std::string, std::string> meta = {});

  PointId size() const { return static_cast<PointId>(points_.size()); }
  const Point& point(PointId id) const { return points_.at(id); }
  const std::vector<Point>& points() const { return points_; }
  const std::string& label(PointId id) const { return points_.at(id).label; }
  std::optional<PointId> find_label(const std::string& label) const;

  MetricKind metric_kind() const { return metric_; }
  const std::vector<std::vector<Rational>>& squared_table() const { return sq_; }
  const Rational& squared_distance(PointId a, PointId b) const;

  PointId image(PointId x) const { return map_.at(x); }
  const std::vector<PointId>& map() const { return map_; }

  const std::map<std::string, std::string>& meta() const { return meta_; }
  std::map<std::string, std::string>& meta() { return meta_; }

  /// Metric axioms (symmetry, zero diagonal, positivity, exact triangle test
  /// on squares), map totality/range, label uniqueness.
  ValidationResult validate() const;

  /// Open ball {y : d(center, y) < radius}, ascending ids; strict comparison.
  std::vector<PointId> ball(PointId center, const Threshold& radius) const;

  bool is_surjective() const;
  bool is_injective() const;

  struct OrbitProfile {
    std::size_t preperiod = 0;
    std::size_t period = 0;
    std::vector<PointId> orbit;  // x, f(x), ..., up to the first repeat (exclusive)
  };
  OrbitProfile orbit_profile(PointId start) const;

  friend bool operator==(const FiniteSystem& a, const FiniteSystem& b);
  friend bool operator!=(const FiniteSystem& a, const FiniteSystem& b) { return !(a == b); }

 private:
  FiniteSystem() = default;

  std::vector<Point> points_;
  MetricKind metric_ = MetricKind::Matrix;
  std::vector<std::vector<Rational>> sq_;
  std::vector<PointId> map_;
  std::map<std::string, std::string> meta_;
};

}  // namespace shadowlab
