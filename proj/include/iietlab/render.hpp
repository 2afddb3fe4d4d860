#pragma once

#include <array>
#include <string>

#include "iietlab/iet.hpp"
#include "iietlab/partition.hpp"

namespace iietlab {

// Fixed color cycle assigned by alphabet order, so images are reproducible
// byte for byte.
inline constexpr std::array<const char*, 8> kPalette = {
    "#4477aa", "#ee6677", "#228833", "#ccbb44",
    "#66ccee", "#aa3377", "#bbbbbb", "#222255",
};

struct RenderSpec {
  int level = 0;
  double window = 4.0;  // horizontal half-width, in tile units
  int width = 1200;
  int height = 400;
  bool natural = false;  // natural tile widths instead of unit widths
};

// One horizontal band per address of the requested level (per letter at level
// 0): the addressed supertile drawn as colored tiles around the origin cell,
// clipped to [-window, window], at the vertical extent of its interval. Bands
// carry their extent as data attributes at full precision. x in [-W, W] maps
// to [0, width] pixels, y in [0, 1] to [height, 0].
std::string flow_view_svg(const PhiConfig& config, const RenderSpec& spec,
                          std::size_t max_addresses = kMaxAddresses);

// Same geometry as rows: address,y,height,tile_index,letter,x0,x1.
std::string flow_view_csv(const PhiConfig& config, const RenderSpec& spec,
                          std::size_t max_addresses = kMaxAddresses);

// Unit-square graph with one diagonal segment per piece and vertical
// connectors across jump discontinuities.
std::string iet_graph_svg(const FiniteIET& f, int width = 600, int height = 600);

// Segment endpoints as rows: x0,y0,x1,y1.
std::string iet_graph_csv(const FiniteIET& f);

}  // namespace iietlab
