#include "guibench/geometry.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

namespace guibench {

double BBox::area() const noexcept {
  return std::max(0.0, width()) * std::max(0.0, height());
}

bool BBox::contains(Point p) const noexcept {
  return p.x >= left && p.x <= right && p.y >= top && p.y <= bottom;
}

bool BBox::is_valid() const noexcept {
  for (double v : {left, top, right, bottom}) {
    if (!std::isfinite(v) || v < 0) return false;
  }
  return left < right && top < bottom;
}

bool is_valid_point(Point p) noexcept {
  return std::isfinite(p.x) && std::isfinite(p.y) && p.x >= 0 && p.y >= 0;
}

std::string format_number(double v) {
  if (v == 0) v = 0;  // drop the sign of -0
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, end);
}

std::string format_element(const UiElement& e) {
  std::string out = e.text;
  out += "@[";
  out += format_number(e.box.left);
  out += ',';
  out += format_number(e.box.top);
  out += ',';
  out += format_number(e.box.right);
  out += ',';
  out += format_number(e.box.bottom);
  out += ']';
  return out;
}

}  // namespace guibench
