#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "hda/errors.hpp"

namespace hda {

// Point of the unit n-cube.
using CubePoint = std::vector<double>;

enum class GlobeTag { Iota, Interior, Sigma };

// Point of the globe over a disk: the bottom class, the top class, or an
// interior point (base, time) with the base in the closed unit disk of
// dimension n-1 and time strictly between 0 and 1. The bottom and top
// classes carry no base: every (x, 0) is one point, every (x, 1) another.
struct GlobePoint {
  GlobeTag tag = GlobeTag::Iota;
  std::vector<double> base;  // Interior only
  double time = 0.0;         // Interior only

  static GlobePoint iota() { return GlobePoint{GlobeTag::Iota, {}, 0.0}; }
  static GlobePoint sigma() { return GlobePoint{GlobeTag::Sigma, {}, 1.0}; }
  static GlobePoint interior(std::vector<double> base, double time) {
    if (!(time > 0.0 && time < 1.0))
      throw std::invalid_argument("interior time must be in (0,1)");
    return GlobePoint{GlobeTag::Interior, std::move(base), time};
  }
};

inline constexpr double k_base_tolerance = 1e-9;
inline constexpr double k_roundtrip_tolerance = 1e-9;
inline constexpr double k_diagonal_guard = 1e-12;

namespace detail {

inline void check_cube_point(const CubePoint& t) {
  if (t.size() < 2)
    throw std::invalid_argument("cube dimension must be at least 2");
  for (double x : t)
    if (!(x >= 0.0 && x <= 1.0))
      throw std::invalid_argument("cube coordinates must lie in [0,1]");
}

inline double norm(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

}  // namespace detail

// The globe order: the bottom class precedes everything, the top class
// follows everything, and interior points are comparable only over the
// same base, by time.
inline bool globe_leq(const GlobePoint& p, const GlobePoint& q,
                      double base_tol = k_base_tolerance) {
  if (p.tag == GlobeTag::Iota) return true;
  if (q.tag == GlobeTag::Sigma) return true;
  if (p.tag != GlobeTag::Interior || q.tag != GlobeTag::Interior) return false;
  if (p.base.size() != q.base.size()) return false;
  for (std::size_t k = 0; k < p.base.size(); ++k)
    if (std::fabs(p.base[k] - q.base[k]) > base_tol) return false;
  return p.time <= q.time;
}

// Projection along the diagonal: (t_2 - s/n, ..., t_n - s/n) with s the
// coordinate sum. Its kernel is exactly the diagonal, and t_1 is recoverable
// from the image and s, so it is injective on each level set of s.
inline std::vector<double> h_map(const CubePoint& t) {
  detail::check_cube_point(t);
  double s = 0.0;
  for (double x : t) s += x;
  double c = s / static_cast<double>(t.size());
  std::vector<double> out;
  out.reserve(t.size() - 1);
  for (std::size_t k = 1; k < t.size(); ++k) out.push_back(t[k] - c);
  return out;
}

// Largest factor by which t may be stretched away from the diagonal point
// (s/n, ..., s/n) while staying inside the cube: the minimum over
// coordinates of the per-coordinate stretch bound. At least 1 everywhere
// off the diagonal, exactly 1 on the boundary (corners excluded).
inline double m_value(const CubePoint& t) {
  detail::check_cube_point(t);
  double s = 0.0;
  for (double x : t) s += x;
  double c = s / static_cast<double>(t.size());

  if (detail::norm(h_map(t)) < k_diagonal_guard)
    throw std::invalid_argument("m_value is undefined on the diagonal");

  double m = std::numeric_limits<double>::infinity();
  for (double x : t) {
    if (x > c) {
      m = std::min(m, (1.0 - c) / (x - c));
    } else if (x < c) {
      m = std::min(m, c / (c - x));
    }
  }
  return m;
}

// Cube-to-globe coordinate change: time is the normalized coordinate sum;
// the base is the diagonal projection rescaled so that the cube boundary
// lands on the unit sphere (norm of the base = 1/m). The two corners map
// to the bottom/top classes, the diagonal to the disk's center.
inline GlobePoint cube_to_globe(const CubePoint& t) {
  detail::check_cube_point(t);
  double s = 0.0;
  for (double x : t) s += x;
  double n = static_cast<double>(t.size());
  double time = s / n;

  std::vector<double> h = h_map(t);
  double hn = detail::norm(h);
  if (hn < k_diagonal_guard) {
    if (time <= 0.0) return GlobePoint::iota();
    if (time >= 1.0) return GlobePoint::sigma();
    return GlobePoint::interior(std::vector<double>(t.size() - 1, 0.0), time);
  }
  double scale = 1.0 / (m_value(t) * hn);
  for (double& x : h) x *= scale;
  return GlobePoint::interior(std::move(h), time);
}

// Inverse of cube_to_globe in closed form. An interior point (b, time) with
// b nonzero lifts to the direction u = (-sum(b), b_1, ..., b_{n-1}), which
// has coordinate sum 0 and diagonal projection exactly b. Walking from the
// diagonal point c = (time, ..., time) along u until the cube boundary
// gives the boundary point; the preimage sits at fraction |b| of that walk,
// because the base norm produced by cube_to_globe equals 1/m.
inline CubePoint globe_to_cube(const GlobePoint& p, int n) {
  if (n < 2) throw std::invalid_argument("cube dimension must be at least 2");
  if (p.tag == GlobeTag::Iota) return CubePoint(n, 0.0);
  if (p.tag == GlobeTag::Sigma) return CubePoint(n, 1.0);

  if (static_cast<int>(p.base.size()) != n - 1)
    throw std::invalid_argument("base dimension must be n-1");
  if (!(p.time > 0.0 && p.time < 1.0))
    throw std::invalid_argument("interior time must be in (0,1)");
  double r = detail::norm(p.base);
  if (r > 1.0 + k_base_tolerance)
    throw std::invalid_argument("base must lie in the closed unit disk");

  if (r < k_diagonal_guard) return CubePoint(n, p.time);

  std::vector<double> u;
  u.reserve(n);
  double bsum = 0.0;
  for (double x : p.base) bsum += x;
  u.push_back(-bsum);
  for (double x : p.base) u.push_back(x);

  double lambda_max = std::numeric_limits<double>::infinity();
  for (double ux : u) {
    if (ux > 0.0) lambda_max = std::min(lambda_max, (1.0 - p.time) / ux);
    else if (ux < 0.0) lambda_max = std::min(lambda_max, p.time / (-ux));
  }

  CubePoint t(n, p.time);
  double step = (r > 1.0 ? 1.0 : r) * lambda_max;
  for (int k = 0; k < n; ++k) t[k] += step * u[k];
  // Clamp away float dust so the result is a legal cube point.
  for (double& x : t) {
    if (x < 0.0) x = 0.0;
    if (x > 1.0) x = 1.0;
  }
  return t;
}

// The order the globe coordinates induce on the cube.
inline bool leq_gl(const CubePoint& x, const CubePoint& y) {
  if (x.size() != y.size())
    throw std::invalid_argument("points must have the same dimension");
  return globe_leq(cube_to_globe(x), cube_to_globe(y));
}

// The base point a sampled monotone globe path lies over. The path must
// start at the bottom class, end at the top class, be non-decreasing in
// globe order, and contain at least one interior sample; all interior
// samples must agree on the base. Composing with the inclusion
// x -> (t -> (x, t)) gives back x.
inline std::vector<double> underlying_point(
    const std::vector<GlobePoint>& path, double base_tol = k_base_tolerance) {
  if (path.empty()) throw std::invalid_argument("empty path");
  if (path.front().tag != GlobeTag::Iota)
    throw std::invalid_argument("path must start at the bottom class");
  if (path.back().tag != GlobeTag::Sigma)
    throw std::invalid_argument("path must end at the top class");
  for (std::size_t k = 0; k + 1 < path.size(); ++k)
    if (!globe_leq(path[k], path[k + 1], base_tol))
      throw std::invalid_argument("path samples are not monotone");

  const std::vector<double>* base = nullptr;
  for (const auto& p : path) {
    if (p.tag != GlobeTag::Interior) continue;
    if (!base) {
      base = &p.base;
      continue;
    }
    if (p.base.size() != base->size())
      throw std::invalid_argument("interior samples lie over different bases");
    for (std::size_t k = 0; k < base->size(); ++k)
      if (std::fabs(p.base[k] - (*base)[k]) > base_tol)
        throw std::invalid_argument(
            "interior samples lie over different bases");
  }
  if (!base)
    throw std::invalid_argument("path has no interior sample");
  return *base;
}

}  // namespace hda
