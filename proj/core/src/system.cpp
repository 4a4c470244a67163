#include "shadowlab/system.hpp"

#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace shadowlab {

FiniteSystem FiniteSystem::euclidean(std::vector<Point> points, std::vector<PointId> map,
                                     std::map<std::string, std::string> meta) {
  const std::size_t n = points.size();
  std::size_t dim = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!points[i].coords) {
      throw std::invalid_argument("euclidean system: point " + std::to_string(i) + " has no coords");
    }
    if (i == 0) {
      dim = points[i].coords->size();
    } else if (points[i].coords->size() != dim) {
      throw std::invalid_argument("euclidean system: ragged coordinate dimensions");
    }
  }
  FiniteSystem sys;
  sys.points_ = std::move(points);
  sys.metric_ = MetricKind::Euclidean;
  sys.map_ = std::move(map);
  sys.meta_ = std::move(meta);
  sys.sq_.assign(n, std::vector<Rational>(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      Rational acc(0);
      const auto& a = *sys.points_[i].coords;
      const auto& b = *sys.points_[j].coords;
      for (std::size_t k = 0; k < dim; ++k) {
        const Rational diff = a[k] - b[k];
        acc += diff * diff;
      }
      sys.sq_[i][j] = acc;
      sys.sq_[j][i] = acc;
    }
  }
  return sys;
}

FiniteSystem FiniteSystem::matrix(std::vector<Point> points, std::vector<std::vector<Rational>> sq,
                                  std::vector<PointId> map, std::map<std::string, std::string> meta) {
  const std::size_t n = points.size();
  if (sq.size() != n) throw std::invalid_argument("matrix system: table has wrong row count");
  for (const auto& row : sq) {
    if (row.size() != n) throw std::invalid_argument("matrix system: table has wrong column count");
  }
  FiniteSystem sys;
  sys.points_ = std::move(points);
  sys.metric_ = MetricKind::Matrix;
  sys.sq_ = std::move(sq);
  sys.map_ = std::move(map);
  sys.meta_ = std::move(meta);
  return sys;
}

std::optional<PointId> FiniteSystem::find_label(const std::string& label) const {
  for (PointId i = 0; i < size(); ++i) {
    if (points_[i].label == label) return i;
  }
  return std::nullopt;
}

const Rational& FiniteSystem::squared_distance(PointId a, PointId b) const {
  if (a >= size() || b >= size()) throw std::out_of_range("squared_distance: point id out of range");
  return sq_[a][b];
}

ValidationResult FiniteSystem::validate() const {
  ValidationResult result;
  auto flag = [&result](std::string message) { result.violations.push_back(std::move(message)); };
  const std::size_t n = points_.size();

  if (n == 0) flag("system has no points");

  {
    std::unordered_set<std::string> seen;
    for (std::size_t i = 0; i < n; ++i) {
      if (!seen.insert(points_[i].label).second) {
        flag("duplicate label \"" + points_[i].label + "\"");
      }
    }
  }

  for (std::size_t i = 0; i < n; ++i) {
    if (sgn(sq_[i][i]) != 0) {
      flag("nonzero diagonal at (" + std::to_string(i) + "," + std::to_string(i) + ")");
    }
    for (std::size_t j = i + 1; j < n; ++j) {
      if (sq_[i][j] != sq_[j][i]) {
        flag("asymmetry at (" + std::to_string(i) + "," + std::to_string(j) + ")");
      }
      if (sgn(sq_[i][j]) <= 0) {
        flag("nonpositive distance at (" + std::to_string(i) + "," + std::to_string(j) + ")");
      }
    }
  }

  // Triangle inequality on squares: d(i,k) <= d(i,j) + d(j,k) iff
  // C <= A + B, or (C - A - B)^2 <= 4AB otherwise (all values squared).
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = i + 1; k < n; ++k) {
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i || j == k) continue;
        const Rational& c = sq_[i][k];
        const Rational& a = sq_[i][j];
        const Rational& b = sq_[j][k];
        const Rational excess = c - a - b;
        if (sgn(excess) > 0 && excess * excess > 4 * a * b) {
          flag("triangle violation at (" + std::to_string(i) + "," + std::to_string(j) + "," +
               std::to_string(k) + ")");
        }
      }
    }
  }

  if (map_.size() != n) {
    flag("map has " + std::to_string(map_.size()) + " entries for " + std::to_string(n) + " points");
  }
  for (std::size_t i = 0; i < map_.size(); ++i) {
    if (map_[i] >= n) {
      flag("map image out of range at " + std::to_string(i));
    }
  }

  return result;
}

std::vector<PointId> FiniteSystem::ball(PointId center, const Threshold& radius) const {
  if (center >= size()) throw std::out_of_range("ball: point id out of range");
  std::vector<PointId> out;
  for (PointId y = 0; y < size(); ++y) {
    if (radius.admits_sq(sq_[center][y])) out.push_back(y);
  }
  return out;
}

bool FiniteSystem::is_surjective() const {
  std::vector<bool> hit(size(), false);
  for (const PointId y : map_) hit.at(y) = true;
  for (const bool h : hit) {
    if (!h) return false;
  }
  return true;
}

bool FiniteSystem::is_injective() const {
  std::vector<bool> hit(size(), false);
  for (const PointId y : map_) {
    if (hit.at(y)) return false;
    hit[y] = true;
  }
  return true;
}

FiniteSystem::OrbitProfile FiniteSystem::orbit_profile(PointId start) const {
  if (start >= size()) throw std::out_of_range("orbit_profile: point id out of range");
  OrbitProfile profile;
  std::unordered_map<PointId, std::size_t> first_seen;
  PointId x = start;
  while (true) {
    const auto it = first_seen.find(x);
    if (it != first_seen.end()) {
      profile.preperiod = it->second;
      profile.period = profile.orbit.size() - it->second;
      return profile;
    }
    first_seen.emplace(x, profile.orbit.size());
    profile.orbit.push_back(x);
    x = image(x);
  }
}

bool operator==(const FiniteSystem& a, const FiniteSystem& b) {
  if (a.metric_ != b.metric_ || a.map_ != b.map_ || a.meta_ != b.meta_) return false;
  if (a.points_.size() != b.points_.size()) return false;
  for (std::size_t i = 0; i < a.points_.size(); ++i) {
    if (a.points_[i].label != b.points_[i].label) return false;
    if (a.points_[i].coords != b.points_[i].coords) return false;
  }
  return a.sq_ == b.sq_;
}

}  // namespace shadowlab
