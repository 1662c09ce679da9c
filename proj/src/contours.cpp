#include "shapemotion/contours.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

namespace shapemotion {

BBox Contour::bounds() const {
  BBox box;
  if (points.empty()) return box;
  box = {points[0].x, points[0].y, points[0].x, points[0].y};
  for (const PointI& p : points) {
    box.x0 = std::min(box.x0, p.x);
    box.y0 = std::min(box.y0, p.y);
    box.x1 = std::max(box.x1, p.x);
    box.y1 = std::max(box.y1, p.y);
  }
  return box;
}

double Contour::perimeter() const {
  const std::size_t n = points.size();
  if (n < 2) return 0.0;
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const PointI& a = points[i];
    const PointI& b = points[(i + 1) % n];
    total += std::hypot(static_cast<double>(a.x - b.x), static_cast<double>(a.y - b.y));
  }
  return total;
}

namespace {

// Neighbor order: clockwise in image coordinates, starting west.
constexpr int kDx[8] = {-1, -1, 0, 1, 1, 1, 0, -1};
constexpr int kDy[8] = {0, -1, -1, -1, 0, 1, 1, 1};

int direction_index(const PointI& from, const PointI& to) {
  for (int d = 0; d < 8; ++d) {
    if (to.x - from.x == kDx[d] && to.y - from.y == kDy[d]) return d;
  }
  throw std::logic_error("direction_index: points are not 8-adjacent");
}

// Moore-neighbor border following. Terminates when the walk re-enters its
// initial state (start pixel with the original backtrack) or, for degenerate
// out-and-back regions where that state never recurs, when the state after
// the first move repeats.
std::vector<PointI> moore_trace(const BinaryMask& mask, const PointI& start) {
  std::vector<PointI> trace{start};
  const PointI b0{start.x - 1, start.y};  // start's west neighbor is black by scan order
  PointI cur = start;
  PointI back = b0;
  PointI first_cur{}, first_back{};
  const std::size_t limit = 4 * mask.pixels.size() + 8;
  for (std::size_t moves = 0; trace.size() < limit; ++moves) {
    const int from = direction_index(cur, back);
    int found = -1;
    for (int step = 1; step <= 8; ++step) {
      const int d = (from + step) % 8;
      const PointI n{cur.x + kDx[d], cur.y + kDy[d]};
      if (mask.white(n.x, n.y)) {
        found = d;
        break;
      }
      back = n;  // last black neighbor scanned before the next white one
    }
    if (found < 0) break;  // isolated pixel
    cur = {cur.x + kDx[found], cur.y + kDy[found]};
    if (cur == start && back == b0) break;
    if (moves == 0) {
      first_cur = cur;
      first_back = back;
    } else if (cur == first_cur && back == first_back) {
      break;
    }
    trace.push_back(cur);
  }
  if (trace.size() > 1 && trace.back() == trace.front()) trace.pop_back();
  return trace;
}

}  // namespace

std::vector<Contour> trace_contours(const BinaryMask& mask) {
  const int w = mask.width;
  const int h = mask.height;
  std::vector<std::uint8_t> seen(mask.pixels.size(), 0);
  std::vector<Contour> contours;
  std::vector<std::size_t> stack;

  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const std::size_t i = static_cast<std::size_t>(y) * w + x;
      if (mask.pixels[i] != 255 || seen[i]) continue;

      // Flood the component so each region is traced exactly once; the scan
      // position is the region's topmost-leftmost pixel.
      stack.clear();
      stack.push_back(i);
      seen[i] = 1;
      while (!stack.empty()) {
        const std::size_t j = stack.back();
        stack.pop_back();
        const int jx = static_cast<int>(j % w);
        const int jy = static_cast<int>(j / w);
        for (int dy = -1; dy <= 1; ++dy) {
          for (int dx = -1; dx <= 1; ++dx) {
            const int nx = jx + dx;
            const int ny = jy + dy;
            if (nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
            const std::size_t n = static_cast<std::size_t>(ny) * w + nx;
            if (mask.pixels[n] == 255 && !seen[n]) {
              seen[n] = 1;
              stack.push_back(n);
            }
          }
        }
      }

      Contour c;
      c.points = moore_trace(mask, {x, y});
      if (c.points.size() >= 4) contours.push_back(std::move(c));
    }
  }
  return contours;
}

namespace {

double point_segment_dist2(const PointD& p, const PointD& a, const PointD& b) {
  const double dx = b.x - a.x;
  const double dy = b.y - a.y;
  double px = a.x;
  double py = a.y;
  const double len2 = dx * dx + dy * dy;
  if (len2 > 0.0) {
    double t = ((p.x - a.x) * dx + (p.y - a.y) * dy) / len2;
    t = t < 0.0 ? 0.0 : (t > 1.0 ? 1.0 : t);
    px += t * dx;
    py += t * dy;
  }
  const double ex = p.x - px;
  const double ey = p.y - py;
  return ex * ex + ey * ey;
}

// Iterative RDP over pts[lo..hi]; marks kept indices. Recurses while the
// max deviation is >= eps so that eps = 0 retains every point.
void rdp_arc(const std::vector<PointD>& pts, std::size_t lo, std::size_t hi, double eps,
             std::vector<char>& keep) {
  std::vector<std::pair<std::size_t, std::size_t>> work{{lo, hi}};
  const double eps2 = eps * eps;
  while (!work.empty()) {
    const auto [a, b] = work.back();
    work.pop_back();
    keep[a] = 1;
    keep[b] = 1;
    if (b - a < 2) continue;
    double best = -1.0;
    std::size_t split = a + 1;
    for (std::size_t i = a + 1; i < b; ++i) {
      const double d2 = point_segment_dist2(pts[i], pts[a], pts[b]);
      if (d2 > best) {
        best = d2;
        split = i;
      }
    }
    if (best >= eps2) {
      work.emplace_back(a, split);
      work.emplace_back(split, b);
    }
  }
}

std::pair<std::size_t, std::size_t> farthest_pair(const std::vector<PointD>& pts) {
  const std::size_t n = pts.size();
  const auto dist2 = [&](std::size_t i, std::size_t j) {
    const double dx = pts[i].x - pts[j].x;
    const double dy = pts[i].y - pts[j].y;
    return dx * dx + dy * dy;
  };
  if (n <= 2048) {
    std::size_t bi = 0, bj = 1;
    double best = -1.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        const double d = dist2(i, j);
        if (d > best) {
          best = d;
          bi = i;
          bj = j;
        }
      }
    }
    return {bi, bj};
  }
  // Double sweep for very long contours: near-diameter, deterministic.
  std::size_t a = 0;
  for (int sweep = 0; sweep < 2; ++sweep) {
    std::size_t far = a;
    double best = -1.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double d = dist2(a, i);
      if (d > best) {
        best = d;
        far = i;
      }
    }
    std::swap(a, far);
    if (sweep == 1) return a < far ? std::pair{a, far} : std::pair{far, a};
  }
  return {0, n / 2};
}

}  // namespace

Polygon approx_polygon(const Contour& contour, double epsilon) {
  if (epsilon < 0.0) throw std::invalid_argument("approx_polygon: epsilon must be >= 0");
  if (contour.points.size() < 4) {
    throw std::invalid_argument("approx_polygon: contour shorter than 4 points");
  }
  const std::size_t n = contour.points.size();
  std::vector<PointD> pts(n);
  for (std::size_t i = 0; i < n; ++i) {
    pts[i] = {static_cast<double>(contour.points[i].x), static_cast<double>(contour.points[i].y)};
  }

  const auto [i0, j0] = farthest_pair(pts);
  // Rotate so the split points sit at positions 0 and j, then simplify the
  // two arcs 0..j and j..n (wrapping back to 0).
  std::vector<PointD> rot(n + 1);
  for (std::size_t k = 0; k < n; ++k) rot[k] = pts[(i0 + k) % n];
  rot[n] = pts[i0];
  const std::size_t j = (j0 + n - i0) % n;

  std::vector<char> keep(n + 1, 0);
  rdp_arc(rot, 0, j, epsilon, keep);
  rdp_arc(rot, j, n, epsilon, keep);

  Polygon poly;
  for (std::size_t k = 0; k < n; ++k) {  // rot[n] duplicates rot[0]
    if (!keep[k]) continue;
    const PointD& v = rot[k];
    if (!poly.vertices.empty()) {
      const PointD& prev = poly.vertices.back();
      if (prev.x == v.x && prev.y == v.y) continue;
    }
    poly.vertices.push_back(v);
  }
  if (poly.vertices.size() > 1) {
    const PointD& f = poly.vertices.front();
    const PointD& l = poly.vertices.back();
    if (f.x == l.x && f.y == l.y) poly.vertices.pop_back();
  }
  return poly;
}

ContourMetrics contour_metrics(const Polygon& polygon) {
  ContourMetrics m;
  const std::size_t n = polygon.vertices.size();
  if (n < 3) {
    m.degenerate = true;
    if (n > 0) {
      for (const PointD& v : polygon.vertices) {
        m.centroid.x += v.x / static_cast<double>(n);
        m.centroid.y += v.y / static_cast<double>(n);
      }
    }
    return m;
  }

  double signed2 = 0.0;  // twice the signed area
  double perim = 0.0;
  double cx = 0.0, cy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const PointD& a = polygon.vertices[i];
    const PointD& b = polygon.vertices[(i + 1) % n];
    const double cross = a.x * b.y - b.x * a.y;
    signed2 += cross;
    cx += (a.x + b.x) * cross;
    cy += (a.y + b.y) * cross;
    perim += std::hypot(b.x - a.x, b.y - a.y);
  }
  m.area = 0.5 * std::abs(signed2);
  m.perimeter = perim;
  m.circularity = perim > 0.0 ? 4.0 * std::numbers::pi * m.area / (perim * perim) : 0.0;

  if (std::abs(signed2) > 1e-12) {
    m.centroid = {cx / (3.0 * signed2), cy / (3.0 * signed2)};
  } else {
    m.degenerate = true;
    for (const PointD& v : polygon.vertices) {
      m.centroid.x += v.x / static_cast<double>(n);
      m.centroid.y += v.y / static_cast<double>(n);
    }
  }
  if (m.area <= 1e-12) m.degenerate = true;

  // Cross products of consecutive edges must share a sign; near-zero values
  // (relative to perimeter^2) count as collinear rather than as violations.
  const double tol = 1e-6 * perim * perim;
  int sign = 0;
  bool convex = true;
  bool any_turn = false;
  for (std::size_t i = 0; i < n; ++i) {
    const PointD& a = polygon.vertices[i];
    const PointD& b = polygon.vertices[(i + 1) % n];
    const PointD& c = polygon.vertices[(i + 2) % n];
    const double cross = (b.x - a.x) * (c.y - b.y) - (b.y - a.y) * (c.x - b.x);
    if (std::abs(cross) <= tol) continue;
    any_turn = true;
    const int s = cross > 0.0 ? 1 : -1;
    if (sign == 0) {
      sign = s;
    } else if (s != sign) {
      convex = false;
      break;
    }
  }
  m.convex = convex && any_turn;
  return m;
}

double axis_ratio(const Polygon& polygon) {
  const std::size_t n = polygon.vertices.size();
  if (n < 3) return 0.0;
  double m00 = 0.0, m10 = 0.0, m01 = 0.0, m20 = 0.0, m11 = 0.0, m02 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const PointD& a = polygon.vertices[i];
    const PointD& b = polygon.vertices[(i + 1) % n];
    const double cross = a.x * b.y - b.x * a.y;
    m00 += cross / 2.0;
    m10 += (a.x + b.x) * cross / 6.0;
    m01 += (a.y + b.y) * cross / 6.0;
    m20 += (a.x * a.x + a.x * b.x + b.x * b.x) * cross / 12.0;
    m02 += (a.y * a.y + a.y * b.y + b.y * b.y) * cross / 12.0;
    m11 += (2.0 * a.x * a.y + a.x * b.y + b.x * a.y + 2.0 * b.x * b.y) * cross / 24.0;
  }
  if (std::abs(m00) < 1e-12) return 0.0;
  const double cx = m10 / m00;
  const double cy = m01 / m00;
  const double u20 = m20 / m00 - cx * cx;
  const double u02 = m02 / m00 - cy * cy;
  const double u11 = m11 / m00 - cx * cy;
  const double tr = u20 + u02;
  const double det = std::sqrt(std::max(0.0, (u20 - u02) * (u20 - u02) + 4.0 * u11 * u11));
  const double lmax = (tr + det) / 2.0;
  const double lmin = (tr - det) / 2.0;
  if (lmax <= 0.0) return 0.0;
  return std::sqrt(std::max(0.0, lmin) / lmax);
}

}  // namespace shapemotion
