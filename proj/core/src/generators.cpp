#include "shadowlab/generators.hpp"

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace shadowlab {

namespace {

Rational frac(long num, long den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Rational pow2(int e) {
  mpz_class num = 1;
  mpz_class den = 1;
  if (e >= 0) {
    num <<= e;
  } else {
    den <<= -e;
  }
  Rational r(num, den);
  r.canonicalize();
  return r;
}

std::string letter_label(unsigned i) {
  if (i < 26) return std::string(1, static_cast<char>('a' + i));
  return "p" + std::to_string(i);
}

std::string pair_label(const Rational& x, const Rational& y) {
  return "(" + format_rational(x) + "," + format_rational(y) + ")";
}

}  // namespace

FiniteSystem gen_cycle(unsigned k) {
  if (k == 0) throw std::invalid_argument("gen_cycle: k must be at least 1");
  std::vector<Point> points;
  std::vector<std::vector<Rational>> sq(k, std::vector<Rational>(k, Rational(0)));
  std::vector<PointId> map(k);
  for (unsigned i = 0; i < k; ++i) {
    points.push_back({letter_label(i), std::nullopt});
    map[i] = static_cast<PointId>((i + 1) % k);
    for (unsigned j = 0; j < k; ++j)
      if (i != j) sq[i][j] = 1;
  }
  return FiniteSystem::matrix(std::move(points), std::move(sq), std::move(map),
                              {{"generator", "cycle(k=" + std::to_string(k) + ")"}});
}

FiniteSystem gen_two_fixed(const Rational& d) {
  if (sgn(d) <= 0) throw std::invalid_argument("gen_two_fixed: distance must be positive");
  std::vector<Point> points{{"a", std::vector<Rational>{Rational(0)}},
                            {"b", std::vector<Rational>{d}}};
  return FiniteSystem::euclidean(std::move(points), {0, 1},
                                 {{"generator", "two_fixed(d=" + format_rational(d) + ")"}});
}

FiniteSystem gen_merge() {
  std::vector<Point> points{{"p", std::nullopt}, {"q", std::nullopt}, {"r", std::nullopt}};
  std::vector<std::vector<Rational>> sq{{Rational(0), Rational(1), Rational(4)},
                                        {Rational(1), Rational(0), Rational(4)},
                                        {Rational(4), Rational(4), Rational(0)}};
  return FiniteSystem::matrix(std::move(points), std::move(sq), {2, 2, 2},
                              {{"generator", "merge()"}});
}

FiniteSystem gen_not_onto(unsigned N) {
  if (N == 0) throw std::invalid_argument("gen_not_onto: N must be at least 1");
  std::vector<Rational> values{frac(-1, 1), frac(-1, 2), Rational(0)};
  for (unsigned k = 0; k <= N; ++k) values.push_back(pow2(-static_cast<int>(k)));

  std::vector<Point> points;
  for (const Rational& v : values)
    points.push_back({format_rational(v), std::vector<Rational>{v}});

  // Indices: 0:-1  1:-1/2  2:0  3+k:1/2^k.
  std::vector<PointId> map(values.size());
  map[0] = 1;
  map[1] = 2;
  map[2] = 2;
  map[3] = 3;
  for (unsigned k = 1; k <= N; ++k) map[3 + k] = 3 + k - 1;

  return FiniteSystem::euclidean(std::move(points), std::move(map),
                                 {{"generator", "not_onto(N=" + std::to_string(N) + ")"},
                                  {"map_note", "f(-1/2)=0 continues the x+1/2 branch"}});
}

FiniteSystem gen_identity_cantor(unsigned N) {
  std::vector<Rational> values;
  for (unsigned k = 0; k <= N; ++k) values.push_back(pow2(-static_cast<int>(k)));
  values.push_back(Rational(0));

  std::vector<Point> points;
  std::vector<PointId> map;
  for (const Rational& v : values) {
    map.push_back(static_cast<PointId>(points.size()));
    points.push_back({format_rational(v), std::vector<Rational>{v}});
  }
  return FiniteSystem::euclidean(std::move(points), std::move(map),
                                 {{"generator", "identity_cantor(N=" + std::to_string(N) + ")"}});
}

namespace {

bool is_primitive(const std::string& w) {
  for (std::size_t e = 1; e < w.size(); ++e) {
    if (w.size() % e != 0) continue;
    bool periodic = true;
    for (std::size_t i = e; i < w.size() && periodic; ++i) periodic = (w[i] == w[i - e]);
    if (periodic) return false;
  }
  return true;
}

char sequence_at(const std::string& w, long i) {
  const long d = static_cast<long>(w.size());
  long r = i % d;
  if (r < 0) r += d;
  return w[static_cast<std::size_t>(r)];
}

/// Least m such that the sequences disagree at some index of magnitude m.
long first_disagreement(const std::string& u, const std::string& v, ShiftSide side) {
  const long du = static_cast<long>(u.size());
  const long dv = static_cast<long>(v.size());
  const long horizon = std::lcm(du, dv);
  for (long m = 0; m <= horizon; ++m) {
    if (sequence_at(u, m) != sequence_at(v, m)) return m;
    if (side == ShiftSide::Two && m > 0 && sequence_at(u, -m) != sequence_at(v, -m)) return m;
  }
  throw std::logic_error("periodic sequences with distinct primitive words must disagree");
}

}  // namespace

FiniteSystem gen_periodic_shift(unsigned alphabet, unsigned period_bound, ShiftSide side) {
  if (alphabet < 2 || alphabet > 10)
    throw std::invalid_argument("gen_periodic_shift: alphabet size must be in [2, 10]");
  if (period_bound == 0)
    throw std::invalid_argument("gen_periodic_shift: period bound must be at least 1");

  // Points are primitive words, period ascending then lexicographic.
  std::vector<std::string> words;
  for (unsigned d = 1; d <= period_bound; ++d) {
    std::string w(d, '0');
    while (true) {
      if (is_primitive(w)) words.push_back(w);
      std::size_t pos = d;
      while (pos > 0 && w[pos - 1] == static_cast<char>('0' + alphabet - 1)) {
        w[pos - 1] = '0';
        --pos;
      }
      if (pos == 0) break;  // wrapped past the last word
      ++w[pos - 1];
    }
  }

  std::map<std::string, PointId> index;
  std::vector<Point> points;
  for (const std::string& w : words) {
    index.emplace(w, static_cast<PointId>(points.size()));
    points.push_back({w, std::nullopt});
  }

  const std::size_t n = words.size();
  std::vector<std::vector<Rational>> sq(n, std::vector<Rational>(n, Rational(0)));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) {
      const long m = first_disagreement(words[a], words[b], side);
      sq[a][b] = pow2(-2 * static_cast<int>(m));
      sq[b][a] = sq[a][b];
    }

  std::vector<PointId> map(n);
  for (std::size_t a = 0; a < n; ++a) {
    const std::string rotated = words[a].substr(1) + words[a][0];
    map[a] = index.at(rotated);
  }

  const std::string side_text = side == ShiftSide::One ? "one" : "two";
  return FiniteSystem::matrix(std::move(points), std::move(sq), std::move(map),
                              {{"generator", "periodic_shift(alphabet=" + std::to_string(alphabet) +
                                                 ",period=" + std::to_string(period_bound) +
                                                 ",side=" + side_text + ")"}});
}

FiniteSystem gen_n_expansive(unsigned n, unsigned K, unsigned M, TruncationBoundary boundary) {
  if (n < 2) throw std::invalid_argument("gen_n_expansive: n must be at least 2");
  if (K == 0) throw std::invalid_argument("gen_n_expansive: K must be at least 1");

  // Level-0 x-coordinates, ascending: 0, Y_K, ..., Y_1, 3. Y_j spans
  // [3/2^j, 4/2^j] with n equidistant points.
  std::vector<Rational> base;
  base.push_back(Rational(0));
  for (unsigned j = K; j >= 1; --j) {
    const Rational lo = Rational(3) * pow2(-static_cast<int>(j));
    const Rational gap = pow2(-static_cast<int>(j)) / Rational(static_cast<long>(n - 1));
    for (unsigned t = 0; t < n; ++t) base.push_back(lo + gap * Rational(static_cast<long>(t)));
  }
  base.push_back(Rational(3));

  const std::size_t S = base.size();
  if (M >= S) throw std::invalid_argument("gen_n_expansive: M too large, deepest level would be empty");

  // Level k keeps the lowest S - k x-coordinates at height -(2 - 2^(1-k)).
  std::vector<Rational> height(M + 1, Rational(0));
  for (unsigned k = 1; k <= M; ++k) height[k] = height[k - 1] - pow2(1 - static_cast<int>(k));

  std::vector<std::size_t> offset(M + 1, 0);
  for (unsigned k = 1; k <= M; ++k) offset[k] = offset[k - 1] + (S - (k - 1));
  const auto id_at = [&](unsigned k, std::size_t i) {
    return static_cast<PointId>(offset[k] + i);
  };

  std::vector<Point> points;
  for (unsigned k = 0; k <= M; ++k)
    for (std::size_t i = 0; i < S - k; ++i)
      points.push_back({pair_label(base[i], height[k]),
                        std::vector<Rational>{base[i], height[k]}});
  const PointId far_id = static_cast<PointId>(points.size());
  points.push_back({pair_label(Rational(0), Rational(-2)),
                    std::vector<Rational>{Rational(0), Rational(-2)}});

  std::vector<PointId> map(points.size());
  // Level 0: anchors fixed, Y_j funnels to the leftmost point of Y_{j-1}.
  map[id_at(0, 0)] = id_at(0, 0);
  map[id_at(0, S - 1)] = id_at(0, S - 1);
  for (std::size_t i = 1; i + 1 < S; ++i) {
    const unsigned j = K - static_cast<unsigned>((i - 1) / n);
    if (boundary == TruncationBoundary::Loop && j == K) {
      map[id_at(0, i)] = id_at(0, i);
    } else if (j >= 2) {
      map[id_at(0, i)] = id_at(0, 1 + static_cast<std::size_t>(K - (j - 1)) * n);
    } else {
      map[id_at(0, i)] = id_at(0, S - 1);
    }
  }
  // Level k >= 1 climbs one level while advancing one position; the chain at
  // x = 0 climbs straight up.
  for (unsigned k = 1; k <= M; ++k) {
    map[id_at(k, 0)] = id_at(k - 1, 0);
    for (std::size_t i = 1; i < S - k; ++i) map[id_at(k, i)] = id_at(k - 1, i + 1);
  }
  map[far_id] = far_id;

  std::vector<char> has_preimage(points.size(), 0);
  for (PointId y : map) has_preimage[y] = 1;
  std::string orphans;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (has_preimage[i]) continue;
    if (!orphans.empty()) orphans += ' ';
    orphans += points[i].label;
  }

  const std::string boundary_text = boundary == TruncationBoundary::Open ? "open" : "loop";
  std::map<std::string, std::string> meta{
      {"generator", "n_expansive(n=" + std::to_string(n) + ",K=" + std::to_string(K) +
                        ",M=" + std::to_string(M) + ",boundary=" + boundary_text + ")"}};
  if (!orphans.empty()) meta.emplace("preimage_free", orphans);
  return FiniteSystem::euclidean(std::move(points), std::move(map), std::move(meta));
}

FiniteSystem gen_random(std::uint64_t seed, unsigned npoints, RandomMode mode) {
  if (npoints == 0 || npoints > 10)
    throw std::invalid_argument("gen_random: npoints must be in [1, 10]");

  std::mt19937_64 rng(seed);
  const auto draw = [&](std::uint64_t bound) { return rng() % bound; };

  std::vector<Point> points;
  std::vector<std::vector<Rational>> sq;
  if (mode == RandomMode::Plane) {
    std::vector<std::pair<std::uint64_t, std::uint64_t>> grid;
    for (unsigned i = 0; i < npoints; ++i) {
      unsigned attempts = 0;
      while (true) {
        const std::uint64_t gx = draw(1001);
        const std::uint64_t gy = draw(1001);
        const std::pair<std::uint64_t, std::uint64_t> cell{gx, gy};
        if (std::find(grid.begin(), grid.end(), cell) == grid.end()) {
          grid.push_back(cell);
          points.push_back({"r" + std::to_string(i),
                            std::vector<Rational>{frac(static_cast<long>(gx), 1000),
                                                  frac(static_cast<long>(gy), 1000)}});
          break;
        }
        if (++attempts > 1000)
          throw std::runtime_error(
              "gen_random: no distinct placement after 1000 attempts; use a different seed");
      }
    }
  } else {
    std::vector<std::vector<Rational>> dist(npoints, std::vector<Rational>(npoints, Rational(0)));
    for (unsigned i = 0; i < npoints; ++i)
      for (unsigned j = i + 1; j < npoints; ++j) {
        dist[i][j] = frac(static_cast<long>(1 + draw(96)), 32);
        dist[j][i] = dist[i][j];
      }
    // Shortest-path repair: the result satisfies the triangle inequality and
    // stays positive off the diagonal (all edges are at least 1/32).
    for (unsigned k = 0; k < npoints; ++k)
      for (unsigned i = 0; i < npoints; ++i)
        for (unsigned j = 0; j < npoints; ++j) {
          if (i == j) continue;
          const Rational via = dist[i][k] + dist[k][j];
          if (via < dist[i][j]) dist[i][j] = via;
        }
    sq.assign(npoints, std::vector<Rational>(npoints, Rational(0)));
    for (unsigned i = 0; i < npoints; ++i) {
      points.push_back({"r" + std::to_string(i), std::nullopt});
      for (unsigned j = 0; j < npoints; ++j) sq[i][j] = dist[i][j] * dist[i][j];
    }
  }

  std::vector<PointId> map(npoints);
  for (unsigned i = 0; i < npoints; ++i) map[i] = static_cast<PointId>(draw(npoints));

  const std::string mode_text = mode == RandomMode::Plane ? "plane" : "matrix";
  std::map<std::string, std::string> meta{
      {"generator", "random(seed=" + std::to_string(seed) + ",npoints=" + std::to_string(npoints) +
                        ",mode=" + mode_text + ")"}};
  FiniteSystem sys = mode == RandomMode::Plane
                         ? FiniteSystem::euclidean(std::move(points), std::move(map), std::move(meta))
                         : FiniteSystem::matrix(std::move(points), std::move(sq), std::move(map),
                                                std::move(meta));
  const ValidationResult check = sys.validate();
  if (!check.ok())
    throw std::logic_error("gen_random produced an invalid system: " + check.violations.front());
  return sys;
}

}  // namespace shadowlab
