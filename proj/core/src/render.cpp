#include "gdl/render.hpp"

#include <cmath>
#include <iomanip>
#include <numbers>
#include <sstream>

namespace gdl {

namespace {

struct Point {
  double x, y;
};

Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
Point operator*(double k, Point a) { return {k * a.x, k * a.y}; }

double norm(Point a) { return std::hypot(a.x, a.y); }

std::ostream& operator<<(std::ostream& os, Point p) { return os << p.x << ',' << p.y; }

}  // namespace

std::string render_svg(const GaussDiagram& d, const RenderOptions& opts) {
  const double size = opts.size > 0 ? opts.size : 320;
  const double radius = 0.32 * size;
  const std::size_t n = d.num_components();
  const double width = size * static_cast<double>(n);

  auto center = [&](std::size_t c) { return Point{size * (static_cast<double>(c) + 0.5), size / 2}; };
  auto angle = [&](EndpointRef r) {
    const double len = static_cast<double>(d.component(r.component).size());
    return std::numbers::pi / 2 + 2 * std::numbers::pi * static_cast<double>(r.position) / len;
  };
  auto at = [&](EndpointRef r, double rad) {
    const double t = angle(r);
    return center(r.component) + Point{rad * std::cos(t), -rad * std::sin(t)};
  };

  std::ostringstream os;
  os << std::fixed << std::setprecision(2);
  os << R"(<?xml version="1.0" encoding="UTF-8"?>)" << '\n';
  os << R"(<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width=")" << width << R"(" height=")"
     << size << R"(" viewBox="0 0 )" << width << ' ' << size << R"(">)" << '\n';
  os << R"(<rect width="100%" height="100%" fill="white"/>)" << '\n';

  for (std::size_t c = 0; c < n; ++c) {
    const Point o = center(c);
    os << R"(<circle class="component" cx=")" << o.x << R"(" cy=")" << o.y << R"(" r=")" << radius
       << R"(" fill="none" stroke="#888" stroke-width="2"/>)" << '\n';
    // travel direction marker at the bottom of the circle
    const Point b = o + Point{0, radius};
    os << R"(<polygon class="orientation" points=")" << (b + Point{6, 0}) << ' ' << (b + Point{-4, -4}) << ' '
       << (b + Point{-4, 4}) << R"(" fill="#888"/>)" << '\n';
    os << R"(<text class="component-index" x=")" << o.x << R"(" y=")" << (size - 6)
       << R"(" text-anchor="middle" font-family="sans-serif" font-size="12">)" << c << "</text>\n";
  }

  for (const Arrow& a : d.arrows()) {
    const Point tail = at(a.tail, radius);
    const Point head = at(a.head, radius);
    Point ctrl;
    if (a.tail.component == a.head.component) {
      const Point o = center(a.tail.component);
      ctrl = o + 0.25 * ((0.5 * (tail + head)) - o);
    } else {
      const double lift = (static_cast<double>(a.label % 5) - 2.0) * size * 0.06;
      ctrl = 0.5 * (tail + head) + Point{0, lift};
    }
    const bool hot = opts.highlight.count(a.label) != 0;
    const char* colour = hot ? "#d62728" : "#222";
    const char* stroke_width = hot ? "2.5" : "1.5";

    os << R"(<g class="arrow" data-label=")" << a.label << R"(">)" << '\n';
    os << R"(<path d="M )" << tail << " Q " << ctrl << ' ' << head << R"(" fill="none" stroke=")" << colour
       << R"(" stroke-width=")" << stroke_width << R"("/>)" << '\n';

    Point dir = head - ctrl;
    const double len = norm(dir);
    dir = len > 0 ? (1.0 / len) * dir : Point{1, 0};
    const Point side{-dir.y, dir.x};
    const Point base = head - 10.0 * dir;
    os << R"(<polygon class="arrowhead" points=")" << head << ' ' << (base + 4.0 * side) << ' '
       << (base - 4.0 * side) << R"(" fill=")" << colour << R"("/>)" << '\n';

    const Point mid = 0.25 * tail + 0.5 * ctrl + 0.25 * head;
    os << R"(<text class="sign" x=")" << (mid.x + 4) << R"(" y=")" << (mid.y - 4)
       << R"(" font-family="sans-serif" font-size="13" fill=")" << colour << R"(">)" << sign_char(a.sign)
       << "</text>\n";
    os << "</g>\n";
  }

  for (std::size_t c = 0; c < n; ++c) {
    const Component& comp = d.component(c);
    for (std::size_t p = 0; p < comp.size(); ++p) {
      const EndpointRef r{c, p};
      const Point q = at(r, radius);
      os << R"(<circle class="endpoint" cx=")" << q.x << R"(" cy=")" << q.y << R"(" r="3" fill="#222"/>)" << '\n';
      if (opts.show_labels) {
        const Point l = at(r, radius + 14);
        os << R"(<text class="label" x=")" << l.x << R"(" y=")" << (l.y + 4)
           << R"(" text-anchor="middle" font-family="sans-serif" font-size="11">)"
           << (comp[p].end == End::Tail ? 'O' : 'U') << comp[p].label << "</text>\n";
      }
    }
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace gdl
