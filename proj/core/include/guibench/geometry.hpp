#pragma once

#include <string>
#include <string_view>

namespace guibench {

// Pixel position in screenshot space, origin top-left.
struct Point {
  double x = 0;
  double y = 0;

  friend bool operator==(const Point&, const Point&) = default;
};

// Axis-aligned box in screenshot pixels.
struct BBox {
  double left = 0;
  double top = 0;
  double right = 0;
  double bottom = 0;

  double width() const noexcept { return right - left; }
  double height() const noexcept { return bottom - top; }
  double area() const noexcept;
  bool contains(Point p) const noexcept;
  // left < right, top < bottom, finite and non-negative.
  bool is_valid() const noexcept;

  friend bool operator==(const BBox&, const BBox&) = default;
};

// One OCR'd control on the page.
struct UiElement {
  std::string text;
  BBox box;

  friend bool operator==(const UiElement&, const UiElement&) = default;
};

bool is_valid_point(Point p) noexcept;

// Shortest decimal form that parses back to the same double ("100", "12.5").
std::string format_number(double v);

// `text@[l,t,r,b]`
std::string format_element(const UiElement& e);

}  // namespace guibench
