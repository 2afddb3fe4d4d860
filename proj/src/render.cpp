#include "iietlab/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

namespace iietlab {

namespace {

std::string real17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string px(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

const char* color_of(int letter) { return kPalette[static_cast<std::size_t>(letter) % kPalette.size()]; }

struct Tile {
  int index = 0;  // 1-based position in the word
  int letter = 0;
  double x0 = 0.0;
  double x1 = 0.0;
};

struct Band {
  std::string address;
  double y = 0.0;
  double height = 0.0;
  std::vector<Tile> tiles;  // clipped to the window
};

std::vector<Band> flow_view_bands(const PhiConfig& config, const RenderSpec& spec,
                                  std::size_t max_addresses) {
  const SubstitutionRule& rule = config.rule();
  const double w = spec.window;

  auto widths = [&](int letter) {
    return spec.natural ? config.perron().natural_lengths[static_cast<std::size_t>(letter)] : 1.0;
  };

  auto make_band = [&](std::string address, double y, double height, const Word& word) {
    Band band{std::move(address), y, height, {}};
    // Horizontal layout: the origin cell starts at 0; everything else hangs
    // off the cumulative tile widths.
    std::vector<double> cum(word.size() + 1, 0.0);
    for (std::size_t i = 0; i < word.size(); ++i)
      cum[i + 1] = cum[i] + widths(rule.letter_index(word.letters[i]));
    const double origin_shift = cum[*word.origin_index - 1];
    for (std::size_t i = 0; i < word.size(); ++i) {
      const double x0 = std::max(cum[i] - origin_shift, -w);
      const double x1 = std::min(cum[i + 1] - origin_shift, w);
      if (x1 > x0)
        band.tiles.push_back({static_cast<int>(i) + 1, rule.letter_index(word.letters[i]), x0, x1});
    }
    return band;
  };

  std::vector<Band> bands;
  if (spec.level == 0) {
    // The suspension picture: one unit (or natural-width) tile per letter.
    for (int a : config.initial_order()) {
      Word word{std::string(1, rule.letter(a)), 1};
      bands.push_back(make_band(std::string(1, rule.letter(a)), config.phi0(a), config.measure(a), word));
    }
    return bands;
  }

  const std::vector<Address> addresses = enumerate_addresses(rule, spec.level, max_addresses);
  const double lam_n = std::pow(config.lambda(), spec.level);
  for (const Address& p : addresses) {
    const Word word = address_to_word(rule, p);
    bands.push_back(make_band(format_address(rule, p), phi_n(config, p),
                              config.measure(p.back().letter) / lam_n, word));
  }
  return bands;
}

}  // namespace

std::string flow_view_svg(const PhiConfig& config, const RenderSpec& spec,
                          std::size_t max_addresses) {
  const std::vector<Band> bands = flow_view_bands(config, spec, max_addresses);
  const double w = spec.window;
  auto mx = [&](double x) { return (x + w) / (2.0 * w) * spec.width; };
  auto my = [&](double y) { return (1.0 - y) * spec.height; };

  std::string svg;
  svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(spec.width) +
         "\" height=\"" + std::to_string(spec.height) + "\" viewBox=\"0 0 " +
         std::to_string(spec.width) + " " + std::to_string(spec.height) + "\">\n";
  svg += "<rect x=\"0\" y=\"0\" width=\"" + std::to_string(spec.width) + "\" height=\"" +
         std::to_string(spec.height) + "\" fill=\"#ffffff\"/>\n";
  for (const Band& band : bands) {
    svg += "<g class=\"band\" data-address=\"" + band.address + "\" data-y=\"" + real17(band.y) +
           "\" data-h=\"" + real17(band.height) + "\">\n";
    for (const Tile& tile : band.tiles) {
      svg += "  <rect x=\"" + px(mx(tile.x0)) + "\" y=\"" + px(my(band.y + band.height)) +
             "\" width=\"" + px(mx(tile.x1) - mx(tile.x0)) + "\" height=\"" +
             px(my(band.y) - my(band.y + band.height)) + "\" fill=\"" + color_of(tile.letter) +
             "\" stroke=\"#ffffff\" stroke-width=\"0.4\"/>\n";
    }
    svg += "</g>\n";
  }
  svg += "<line class=\"axis\" x1=\"" + px(mx(0.0)) + "\" y1=\"" + px(my(0.0)) + "\" x2=\"" +
         px(mx(0.0)) + "\" y2=\"" + px(my(1.0)) + "\" stroke=\"#000000\" stroke-width=\"1.5\"/>\n";
  svg += "</svg>\n";
  return svg;
}

std::string flow_view_csv(const PhiConfig& config, const RenderSpec& spec,
                          std::size_t max_addresses) {
  const std::vector<Band> bands = flow_view_bands(config, spec, max_addresses);
  const SubstitutionRule& rule = config.rule();
  std::string csv = "address,y,height,tile_index,letter,x0,x1\n";
  for (const Band& band : bands)
    for (const Tile& tile : band.tiles) {
      csv += band.address + ',' + real17(band.y) + ',' + real17(band.height) + ',' +
             std::to_string(tile.index) + ',' + rule.letter(tile.letter) + ',' + real17(tile.x0) +
             ',' + real17(tile.x1) + '\n';
    }
  return csv;
}

std::string iet_graph_svg(const FiniteIET& f, int width, int height) {
  auto mx = [&](double x) { return x * width; };
  auto my = [&](double y) { return (1.0 - y) * height; };

  std::string svg;
  svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(width) +
         "\" height=\"" + std::to_string(height) + "\" viewBox=\"0 0 " + std::to_string(width) +
         " " + std::to_string(height) + "\">\n";
  svg += "<rect class=\"frame\" x=\"0\" y=\"0\" width=\"" + std::to_string(width) + "\" height=\"" +
         std::to_string(height) + "\" fill=\"#ffffff\" stroke=\"#000000\" stroke-width=\"1\"/>\n";

  const std::vector<IetPiece>& pieces = f.pieces();
  for (std::size_t i = 0; i + 1 < pieces.size(); ++i) {
    // Connect the ends of the jump between consecutive pieces.
    const double x = pieces[i].right();
    const double y0 = pieces[i].right() + pieces[i].translation;
    const double y1 = pieces[i + 1].left + pieces[i + 1].translation;
    if (std::fabs(y1 - y0) > 1e-12)
      svg += "<line class=\"jump\" x1=\"" + px(mx(x)) + "\" y1=\"" + px(my(y0)) + "\" x2=\"" +
             px(mx(x)) + "\" y2=\"" + px(my(y1)) +
             "\" stroke=\"#4477aa\" stroke-width=\"0.5\" stroke-dasharray=\"3 2\"/>\n";
  }
  for (const IetPiece& p : pieces) {
    svg += "<line class=\"piece\" x1=\"" + px(mx(p.left)) + "\" y1=\"" +
           px(my(p.left + p.translation)) + "\" x2=\"" + px(mx(p.right())) + "\" y2=\"" +
           px(my(p.right() + p.translation)) + "\" stroke=\"#000000\" stroke-width=\"1.2\"/>\n";
  }
  svg += "</svg>\n";
  return svg;
}

std::string iet_graph_csv(const FiniteIET& f) {
  std::string csv = "x0,y0,x1,y1\n";
  for (const IetPiece& p : f.pieces())
    csv += real17(p.left) + ',' + real17(p.left + p.translation) + ',' + real17(p.right()) + ',' +
           real17(p.right() + p.translation) + '\n';
  return csv;
}

}  // namespace iietlab
