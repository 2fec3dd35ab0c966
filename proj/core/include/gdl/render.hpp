// SVG chord diagrams.
#pragma once

#include <set>
#include <string>

#include "gdl/gauss_diagram.hpp"

namespace gdl {

struct RenderOptions {
  // Width of one circle cell; the image is size * components wide and size tall.
  int size = 320;
  bool show_labels = true;
  std::set<Label> highlight;
};

// Circles are laid out left to right, endpoints equally spaced
// counterclockwise from the top. Each arrow is a curve from tail to head
// ending in one arrowhead and annotated with its sign.
std::string render_svg(const GaussDiagram& d, const RenderOptions& opts = {});

}  // namespace gdl
