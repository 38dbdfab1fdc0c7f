#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fsig/errors.hpp"
#include "fsig/poly.hpp"
#include "fsig/rational.hpp"
#include "fsig/rational_matrix.hpp"
#include "fsig/sigcore.hpp"

namespace fsig {

// Monomial ideal held by its unique minimal generating set (an antichain
// under componentwise divisibility), sorted lexicographically.
class MonomialIdeal {
 public:
  static constexpr std::size_t kMaxGenerators = 10'000;

  MonomialIdeal(unsigned nvars, std::vector<ExponentVec> gens) : n_(nvars) {
    if (nvars < 1 || nvars > kMaxVars) {
      throw std::invalid_argument("variable count must be in [1, 8]");
    }
    if (gens.empty()) {
      throw std::invalid_argument("monomial ideal needs at least one generator");
    }
    for (const ExponentVec& g : gens) {
      if (g.size() != nvars) {
        throw std::invalid_argument("generator arity mismatch");
      }
    }
    gens_ = reduce(std::move(gens));
  }

  unsigned nvars() const noexcept { return n_; }
  const std::vector<ExponentVec>& generators() const noexcept { return gens_; }

  bool is_unit() const {
    return gens_.size() == 1 && gens_[0].degree() == 0;
  }

  // I^a: all a-fold sums of generators, minimalized. Guards against
  // combinatorial explosion of the raw enumeration and of the result.
  MonomialIdeal power(std::uint64_t a,
                      std::size_t max_generators = kMaxGenerators) const {
    if (a == 0) {
      return MonomialIdeal(n_, {ExponentVec(n_)});
    }
    std::set<ExponentVec> sums;
    std::size_t produced = 0;
    const std::size_t work_budget =
        std::max<std::size_t>(max_generators, 1) * 400;
    enumerate_sums(0, a, ExponentVec(n_), sums, produced, max_generators,
                   work_budget);
    std::vector<ExponentVec> raw(sums.begin(), sums.end());
    return MonomialIdeal(n_, std::move(raw));
  }

 private:
  void enumerate_sums(std::size_t idx, std::uint64_t remaining,
                      const ExponentVec& acc, std::set<ExponentVec>& sums,
                      std::size_t& produced, std::size_t max_generators,
                      std::size_t work_budget) const {
    if (idx + 1 == gens_.size()) {
      sums.insert(acc.plus(gens_[idx].scaled(remaining)));
      if (++produced > work_budget || sums.size() > max_generators) {
        throw capacity_error("monomial ideal power has too many generators");
      }
      return;
    }
    ExponentVec current = acc;
    for (std::uint64_t k = 0;; ++k) {
      enumerate_sums(idx + 1, remaining - k, current, sums, produced,
                     max_generators, work_budget);
      if (k == remaining) break;
      current = current.plus(gens_[idx]);
    }
  }

  static std::vector<ExponentVec> reduce(std::vector<ExponentVec> gens) {
    std::sort(gens.begin(), gens.end());
    gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
    std::vector<ExponentVec> minimal;
    for (std::size_t i = 0; i < gens.size(); ++i) {
      bool redundant = false;
      for (std::size_t j = 0; j < gens.size() && !redundant; ++j) {
        redundant = i != j && gens[j].divides(gens[i]);
      }
      if (!redundant) minimal.push_back(gens[i]);
    }
    return minimal;
  }

  unsigned n_;
  std::vector<ExponentVec> gens_;
};

// Closed halfspace <normal, x> >= rhs.
struct HalfSpace {
  std::vector<Rational> normal;
  Rational rhs;
};

// Intersection of halfspaces; the ambient nonnegative orthant (and, for
// volume computations, the unit cube) is implicit and not stored.
class HPolytope {
 public:
  HPolytope(unsigned nvars, std::vector<HalfSpace> facets)
      : n_(nvars), facets_(std::move(facets)) {
    for (const HalfSpace& h : facets_) {
      if (h.normal.size() != nvars) {
        throw std::invalid_argument("facet normal arity mismatch");
      }
    }
  }

  unsigned nvars() const noexcept { return n_; }
  const std::vector<HalfSpace>& facets() const noexcept { return facets_; }

 private:
  unsigned n_;
  std::vector<HalfSpace> facets_;
};

namespace detail {

// All k-subsets of {0..m-1}, in lexicographic order.
template <typename F>
void for_each_combination(std::size_t m, std::size_t k, F&& fn) {
  if (k > m) return;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    fn(const_cast<const std::vector<std::size_t>&>(idx));
    std::size_t i = k;
    while (i > 0) {
      --i;
      if (idx[i] + (k - i) < m) {
        ++idx[i];
        for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
        break;
      }
      if (i == 0) return;
    }
    if (k == 0) return;
  }
}

// Unique solution of a square rational system, if it exists.
inline std::optional<std::vector<Rational>> solve_square(
    const std::vector<std::vector<Rational>>& a,
    const std::vector<Rational>& b) {
  const std::size_t n = a.size();
  RationalMatrix m(n, n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m.at(i, j) = a[i][j];
    m.at(i, n) = b[i];
  }
  const std::vector<std::size_t> pivots = rref(m);
  if (pivots.size() != n || (!pivots.empty() && pivots.back() == n)) {
    return std::nullopt;
  }
  std::vector<Rational> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = m.at(i, n);
  return x;
}

inline BigInt dot_big(const std::vector<BigInt>& w, const ExponentVec& g) {
  BigInt acc = 0;
  for (unsigned i = 0; i < g.size(); ++i) acc += w[i] * BigInt(g[i]);
  return acc;
}

}  // namespace detail

// Facets of the Newton polyhedron conv(generators) + R_{>=0}^n that are not
// coordinate hyperplanes: every returned halfspace has a nonnegative integer
// primitive normal and a positive right-hand side. Supports n <= 4.
inline HPolytope newton_facets(const MonomialIdeal& ideal) {
  const unsigned n = ideal.nvars();
  if (n > 4) {
    throw std::invalid_argument("facet enumeration supports at most 4 variables");
  }
  const std::vector<ExponentVec>& gens = ideal.generators();

  std::set<std::pair<std::vector<BigInt>, BigInt>> seen;
  std::vector<HalfSpace> facets;

  std::vector<std::size_t> axes(n);
  for (unsigned i = 0; i < n; ++i) axes[i] = i;

  for (std::size_t s = 1; s <= std::min<std::size_t>(n, gens.size()); ++s) {
    detail::for_each_combination(gens.size(), s, [&](const std::vector<std::size_t>& gsel) {
      detail::for_each_combination(n, n - s, [&](const std::vector<std::size_t>& asel) {
        // Normal w solves: w . (g_j - g_0) = 0 for j in S, w_i = 0 for i in A.
        const std::size_t rows = (s - 1) + asel.size();
        RationalMatrix m(rows == 0 ? 1 : rows, n);
        std::size_t r = 0;
        for (std::size_t j = 1; j < s; ++j, ++r) {
          for (unsigned i = 0; i < n; ++i) {
            m.at(r, i) = Rational(BigInt(gens[gsel[j]][i]) -
                                  BigInt(gens[gsel[0]][i]));
          }
        }
        for (std::size_t k = 0; k < asel.size(); ++k, ++r) {
          m.at(r, asel[k]) = 1;
        }
        const auto basis = detail::rational_nullspace(std::move(m));
        if (basis.size() != 1) return;

        // Scale to a primitive integer vector with nonnegative entries.
        BigInt common_den = 1;
        for (const Rational& c : basis[0]) {
          common_den = boost::multiprecision::lcm(common_den, denominator(c));
        }
        std::vector<BigInt> w(n);
        bool has_pos = false, has_neg = false;
        for (unsigned i = 0; i < n; ++i) {
          w[i] = numerator(basis[0][i]) * (common_den / denominator(basis[0][i]));
          if (w[i] > 0) has_pos = true;
          if (w[i] < 0) has_neg = true;
        }
        if (has_pos && has_neg) return;  // not an outer normal of the orthant sum
        if (has_neg) {
          for (BigInt& c : w) c = -c;
        }
        BigInt g = 0;
        for (const BigInt& c : w) g = boost::multiprecision::gcd(g, c);
        if (g == 0) return;
        for (BigInt& c : w) c /= g;

        // Supporting value over all generators; the chosen set must attain it.
        BigInt rhs = detail::dot_big(w, gens[0]);
        for (const ExponentVec& gen : gens) {
          rhs = std::min(rhs, detail::dot_big(w, gen));
        }
        if (rhs <= 0) return;
        for (std::size_t j = 0; j < s; ++j) {
          if (detail::dot_big(w, gens[gsel[j]]) != rhs) return;
        }

        // Facet test: touching generators plus free axis directions must span
        // an (n-1)-dimensional face.
        std::vector<std::size_t> touching;
        for (std::size_t gi = 0; gi < gens.size(); ++gi) {
          if (detail::dot_big(w, gens[gi]) == rhs) touching.push_back(gi);
        }
        std::vector<std::vector<Rational>> span_rows;
        for (std::size_t t = 1; t < touching.size(); ++t) {
          std::vector<Rational> row(n);
          for (unsigned i = 0; i < n; ++i) {
            row[i] = Rational(BigInt(gens[touching[t]][i]) -
                              BigInt(gens[touching[0]][i]));
          }
          span_rows.push_back(std::move(row));
        }
        for (unsigned i = 0; i < n; ++i) {
          if (w[i] == 0) {
            std::vector<Rational> row(n, Rational(0));
            row[i] = 1;
            span_rows.push_back(std::move(row));
          }
        }
        if (span_rows.size() < n - 1) return;
        RationalMatrix span(span_rows.size(), n);
        for (std::size_t rr = 0; rr < span_rows.size(); ++rr) {
          for (unsigned i = 0; i < n; ++i) span.at(rr, i) = span_rows[rr][i];
        }
        if (rational_rank(std::move(span)) != n - 1) return;

        if (seen.insert({w, rhs}).second) {
          HalfSpace h;
          h.normal.reserve(n);
          for (const BigInt& c : w) h.normal.push_back(Rational(c));
          h.rhs = Rational(rhs);
          facets.push_back(std::move(h));
        }
      });
    });
  }

  std::sort(facets.begin(), facets.end(),
            [](const HalfSpace& a, const HalfSpace& b) {
              return std::tie(a.normal, a.rhs) < std::tie(b.normal, b.rhs);
            });
  return HPolytope(n, std::move(facets));
}

namespace detail {

inline Rational cross2(const std::pair<Rational, Rational>& u,
                       const std::pair<Rational, Rational>& v) {
  return u.first * v.second - u.second * v.first;
}

// Strict weak order sorting direction vectors counterclockwise around the
// origin; ties (collinear, same direction) break by squared length, then
// coordinates.
struct AngularLess {
  static int half(const std::pair<Rational, Rational>& d) {
    if (d.second > 0 || (d.second == 0 && d.first > 0)) return 0;
    return 1;
  }
  bool operator()(const std::pair<Rational, Rational>& u,
                  const std::pair<Rational, Rational>& v) const {
    const int hu = half(u), hv = half(v);
    if (hu != hv) return hu < hv;
    const Rational cr = cross2(u, v);
    if (cr != 0) return cr > 0;
    const Rational nu = u.first * u.first + u.second * u.second;
    const Rational nv = v.first * v.first + v.second * v.second;
    if (nu != nv) return nu < nv;
    return std::tie(u.first, u.second) < std::tie(v.first, v.second);
  }
};

inline Rational det3(const std::array<std::array<Rational, 3>, 3>& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

}  // namespace detail

// Exact volume of (t * P) intersect [0,1]^n for n <= 3, by vertex enumeration
// and central triangulation. P's facets scale as <a, x> >= t * rhs.
inline Rational clipped_volume_exact(const HPolytope& poly, const Rational& t) {
  const unsigned n = poly.nvars();
  if (n > 3) {
    throw std::invalid_argument("exact clipped volume supports at most 3 variables");
  }
  if (t < 0) throw std::invalid_argument("t must be nonnegative");

  // Constraint list: cube faces then scaled facets.
  std::vector<std::vector<Rational>> normals;
  std::vector<Rational> rhs;
  for (unsigned i = 0; i < n; ++i) {
    std::vector<Rational> lo(n, Rational(0)), hi(n, Rational(0));
    lo[i] = 1;
    hi[i] = -1;
    normals.push_back(lo);
    rhs.push_back(Rational(0));
    normals.push_back(hi);
    rhs.push_back(Rational(-1));
  }
  for (const HalfSpace& h : poly.facets()) {
    normals.push_back(h.normal);
    rhs.push_back(t * h.rhs);
  }
  const std::size_t m = normals.size();

  auto feasible = [&](const std::vector<Rational>& x) {
    for (std::size_t i = 0; i < m; ++i) {
      Rational acc = 0;
      for (unsigned j = 0; j < n; ++j) acc += normals[i][j] * x[j];
      if (acc < rhs[i]) return false;
    }
    return true;
  };

  std::set<std::vector<Rational>> vertex_set;
  detail::for_each_combination(m, n, [&](const std::vector<std::size_t>& sel) {
    std::vector<std::vector<Rational>> a(n);
    std::vector<Rational> b(n);
    for (unsigned i = 0; i < n; ++i) {
      a[i] = normals[sel[i]];
      b[i] = rhs[sel[i]];
    }
    const auto x = detail::solve_square(a, b);
    if (x && feasible(*x)) vertex_set.insert(*x);
  });

  if (vertex_set.empty()) return Rational(0);
  std::vector<std::vector<Rational>> verts(vertex_set.begin(),
                                           vertex_set.end());

  if (n == 1) {
    Rational lo = verts.front()[0], hi = verts.front()[0];
    for (const auto& v : verts) {
      lo = std::min(lo, v[0]);
      hi = std::max(hi, v[0]);
    }
    return hi - lo;
  }

  std::vector<Rational> center(n, Rational(0));
  for (const auto& v : verts) {
    for (unsigned i = 0; i < n; ++i) center[i] += v[i];
  }
  for (unsigned i = 0; i < n; ++i) {
    center[i] /= Rational(static_cast<int>(verts.size()));
  }

  if (n == 2) {
    std::vector<std::pair<Rational, Rational>> dirs;
    for (const auto& v : verts) {
      const Rational dx = v[0] - center[0], dy = v[1] - center[1];
      if (dx == 0 && dy == 0) continue;
      dirs.emplace_back(dx, dy);
    }
    if (dirs.size() < 3) return Rational(0);
    std::sort(dirs.begin(), dirs.end(), detail::AngularLess{});
    Rational doubled = 0;
    for (std::size_t i = 0; i < dirs.size(); ++i) {
      doubled += detail::cross2(dirs[i], dirs[(i + 1) % dirs.size()]);
    }
    return boost::multiprecision::abs(doubled) / 2;
  }

  // n == 3: triangulate each supporting-plane face, coning from `center`.
  // Faces are identified by their incident vertex sets so coincident
  // constraint planes are not double counted.
  std::set<std::vector<std::size_t>> seen_faces;
  Rational six_vol = 0;
  for (std::size_t ci = 0; ci < m; ++ci) {
    std::vector<std::size_t> incident;
    for (std::size_t vi = 0; vi < verts.size(); ++vi) {
      Rational acc = 0;
      for (unsigned j = 0; j < n; ++j) acc += normals[ci][j] * verts[vi][j];
      if (acc == rhs[ci]) incident.push_back(vi);
    }
    if (incident.size() < 3) continue;
    if (!seen_faces.insert(incident).second) continue;

    // Project along the largest normal coordinate and order angularly.
    unsigned drop = 0;
    Rational best = 0;
    for (unsigned j = 0; j < n; ++j) {
      const Rational mag = boost::multiprecision::abs(normals[ci][j]);
      if (mag > best) {
        best = mag;
        drop = j;
      }
    }
    const unsigned u = (drop + 1) % 3, v = (drop + 2) % 3;
    std::vector<Rational> c2(2, Rational(0));
    for (std::size_t k : incident) {
      c2[0] += verts[k][u];
      c2[1] += verts[k][v];
    }
    c2[0] /= Rational(static_cast<int>(incident.size()));
    c2[1] /= Rational(static_cast<int>(incident.size()));
    std::vector<std::pair<std::pair<Rational, Rational>, std::size_t>> order;
    for (std::size_t k : incident) {
      order.push_back({{verts[k][u] - c2[0], verts[k][v] - c2[1]}, k});
    }
    std::sort(order.begin(), order.end(),
              [](const auto& a, const auto& b) {
                return detail::AngularLess{}(a.first, b.first);
              });

    for (std::size_t i = 1; i + 1 < order.size(); ++i) {
      const std::size_t i0 = order[0].second;
      const std::size_t i1 = order[i].second;
      const std::size_t i2 = order[i + 1].second;
      std::array<std::array<Rational, 3>, 3> mdet;
      for (unsigned j = 0; j < 3; ++j) {
        mdet[0][j] = verts[i0][j] - center[j];
        mdet[1][j] = verts[i1][j] - center[j];
        mdet[2][j] = verts[i2][j] - center[j];
      }
      six_vol += boost::multiprecision::abs(detail::det3(mdet));
    }
  }
  return six_vol / 6;
}

// Volume of (t * P_u) intersect [0,1]^n for the principal ideal <x^u>:
// the region is a box, so the volume splits per coordinate.
inline Rational principal_monomial_volume(const ExponentVec& u,
                                          const Rational& t) {
  if (t < 0) throw std::invalid_argument("t must be nonnegative");
  Rational vol = 1;
  for (unsigned i = 0; i < u.size(); ++i) {
    const Rational lower = t * Rational(std::uint64_t{u[i]});
    if (lower >= 1) return Rational(0);
    vol *= Rational(1) - lower;
  }
  return vol;
}

// Monte Carlo estimate of the clipped volume.
struct McResult {
  Rational estimate;        // hits / samples, exact
  Rational error_bound;     // 99% Hoeffding half width, rounded up
  std::uint64_t hits = 0;
  std::uint64_t samples = 0;
};

// Samples are drawn from mt19937_64(seed): for each point, n consecutive
// outputs k give coordinates k >> 11 over 2^53. Membership tests are exact
// integer comparisons, so results are reproducible across platforms.
inline McResult clipped_volume_mc(const HPolytope& poly, const Rational& t,
                                  std::uint64_t samples, std::uint64_t seed) {
  const unsigned n = poly.nvars();
  if (samples == 0) throw std::invalid_argument("need at least one sample");
  if (t < 0) throw std::invalid_argument("t must be nonnegative");

  // Scale each inequality <a, x> >= t * rhs by the common denominator and by
  // 2^53: test sum alpha_j k_j >= threshold with integer alpha, threshold.
  struct ScaledIneq {
    std::vector<__int128> alpha;
    __int128 threshold = 0;
  };
  std::vector<ScaledIneq> tests;
  const BigInt two53 = BigInt(1) << 53;
  const BigInt int128_max = (BigInt(1) << 126);
  for (const HalfSpace& h : poly.facets()) {
    const Rational scaled_rhs = t * h.rhs;
    BigInt common = denominator(scaled_rhs);
    for (const Rational& c : h.normal) {
      common = boost::multiprecision::lcm(common, denominator(c));
    }
    ScaledIneq si;
    BigInt magnitude = 0;
    for (const Rational& c : h.normal) {
      const BigInt alpha = numerator(c) * (common / denominator(c));
      magnitude += boost::multiprecision::abs(alpha);
      si.alpha.push_back(static_cast<__int128>(alpha));
    }
    const BigInt threshold =
        numerator(scaled_rhs) * (common / denominator(scaled_rhs)) * two53;
    if (magnitude * two53 >= int128_max ||
        boost::multiprecision::abs(threshold) >= int128_max) {
      throw capacity_error("inequality coefficients too large for sampling");
    }
    si.threshold = static_cast<__int128>(threshold);
    tests.push_back(std::move(si));
  }

  std::mt19937_64 engine(seed);
  std::uint64_t hits = 0;
  std::array<std::uint64_t, kMaxVars> k{};
  for (std::uint64_t s = 0; s < samples; ++s) {
    for (unsigned j = 0; j < n; ++j) k[j] = engine() >> 11;
    bool inside = true;
    for (const ScaledIneq& si : tests) {
      __int128 acc = 0;
      for (unsigned j = 0; j < n; ++j) {
        acc += si.alpha[j] * static_cast<__int128>(k[j]);
      }
      if (acc < si.threshold) {
        inside = false;
        break;
      }
    }
    if (inside) ++hits;
  }

  McResult out;
  out.hits = hits;
  out.samples = samples;
  out.estimate = Rational(BigInt(hits), BigInt(samples));
  // eps = sqrt(ln(200) / (2 N)) gives two-sided confidence 99%; ln(200) is
  // rounded up to 5298318 / 10^6 so the certificate stays valid.
  const Rational ln200_upper(5298318, 1000000);
  out.error_bound =
      sqrt_upper_bound(ln200_upper / Rational(BigInt(2) * BigInt(samples)));
  return out;
}

namespace detail {

using LatticeBox = std::vector<std::uint64_t>;  // componentwise bounds [0, b_i)

inline BigInt box_volume(const LatticeBox& b) {
  BigInt v = 1;
  for (std::uint64_t c : b) v *= BigInt(c);
  return v;
}

// Drops boxes contained in another box and duplicates; sorts descending.
inline std::vector<LatticeBox> reduce_boxes(std::vector<LatticeBox> boxes) {
  std::sort(boxes.begin(), boxes.end(), std::greater<>());
  boxes.erase(std::unique(boxes.begin(), boxes.end()), boxes.end());
  std::vector<LatticeBox> out;
  for (std::size_t i = 0; i < boxes.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < boxes.size() && !dominated; ++j) {
      if (i == j) continue;
      bool le = true;
      for (std::size_t k = 0; k < boxes[i].size(); ++k) {
        if (boxes[i][k] > boxes[j][k]) {
          le = false;
          break;
        }
      }
      if (le && boxes[i] != boxes[j]) dominated = true;
    }
    if (!dominated) out.push_back(boxes[i]);
  }
  return out;
}

struct UnionMemo {
  std::map<std::vector<std::uint64_t>, BigInt> table;
  std::size_t steps = 0;
};

// |B_1 u ... u B_m| by inclusion-exclusion over prefix intersections, with
// componentwise-minimum meets memoized on the reduced box list.
inline BigInt union_measure(const std::vector<LatticeBox>& boxes,
                            UnionMemo& memo) {
  if (boxes.empty()) return BigInt(0);
  if (++memo.steps > 2'000'000) {
    throw capacity_error("lattice union expansion too large");
  }
  std::vector<std::uint64_t> key;
  key.reserve(boxes.size() * boxes[0].size());
  for (const LatticeBox& b : boxes) {
    key.insert(key.end(), b.begin(), b.end());
  }
  if (auto it = memo.table.find(key); it != memo.table.end()) {
    return it->second;
  }

  BigInt total = 0;
  for (std::size_t i = 0; i < boxes.size(); ++i) {
    total += box_volume(boxes[i]);
    if (i == 0) continue;
    std::vector<LatticeBox> meets;
    meets.reserve(i);
    for (std::size_t j = 0; j < i; ++j) {
      LatticeBox meet(boxes[i].size());
      for (std::size_t k = 0; k < meet.size(); ++k) {
        meet[k] = std::min(boxes[i][k], boxes[j][k]);
      }
      meets.push_back(std::move(meet));
    }
    total -= union_measure(reduce_boxes(std::move(meets)), memo);
  }
  memo.table.emplace(std::move(key), total);
  return total;
}

}  // namespace detail

// ell(R / (m^[q] : I^a)) for a monomial ideal, by counting the union of the
// boxes {v : v + u < q componentwise} over generators u of I^a. Exact for any
// q; no multiplication matrix is built.
inline LengthResult monomial_colon_length(const MonomialIdeal& ideal,
                                          std::uint64_t a,
                                          const TruncationParams& tp,
                                          std::size_t max_generators =
                                              MonomialIdeal::kMaxGenerators) {
  if (ideal.nvars() != tp.n) {
    throw std::invalid_argument("ideal arity does not match truncation ring");
  }
  const MonomialIdeal power = ideal.power(a, max_generators);
  std::vector<detail::LatticeBox> boxes;
  for (const ExponentVec& u : power.generators()) {
    detail::LatticeBox b(tp.n);
    bool empty = false;
    for (unsigned i = 0; i < tp.n; ++i) {
      if (u[i] >= tp.q) {
        empty = true;
        break;
      }
      b[i] = tp.q - u[i];
    }
    if (!empty) boxes.push_back(std::move(b));
  }
  detail::UnionMemo memo;
  const BigInt count =
      detail::union_measure(detail::reduce_boxes(std::move(boxes)), memo);
  return LengthResult{count, tp.q, tp.n};
}

}  // namespace fsig
