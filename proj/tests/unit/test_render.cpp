#include "doctest.h"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "helpers.hpp"
#include "iietlab/render.hpp"

using namespace iietlab;
using namespace testutil;

TEST_CASE("flow view bands tile the vertical axis") {
  const auto config = config_of(kPeriodDoubling);
  RenderSpec spec;
  spec.level = 2;
  spec.window = 6.0;
  const std::string svg = flow_view_svg(config, spec);

  CHECK(xml_well_formed(svg));
  CHECK(count_occurrences(svg, "class=\"band\"") == 8);

  auto ys = data_attribute_values(svg, "data-y");
  auto hs = data_attribute_values(svg, "data-h");
  REQUIRE(ys.size() == 8);
  REQUIRE(hs.size() == 8);
  std::vector<std::pair<double, double>> bands;
  for (std::size_t i = 0; i < ys.size(); ++i) bands.emplace_back(ys[i], hs[i]);
  std::sort(bands.begin(), bands.end());
  double total = 0.0;
  CHECK(std::fabs(bands.front().first) < 1e-9);
  for (std::size_t i = 0; i < bands.size(); ++i) {
    total += bands[i].second;
    if (i)
      CHECK(std::fabs(bands[i].first - (bands[i - 1].first + bands[i - 1].second)) < 1e-9);
  }
  CHECK(std::fabs(total - 1.0) < 1e-9);

  // Identical inputs give identical bytes.
  CHECK(flow_view_svg(config, spec) == svg);
}

TEST_CASE("level-0 flow view is the letter suspension") {
  const auto config = config_of(kPeriodDoubling);
  RenderSpec spec;
  spec.level = 0;
  const std::string svg = flow_view_svg(config, spec);
  CHECK(xml_well_formed(svg));
  CHECK(count_occurrences(svg, "class=\"band\"") == 2);
  const auto hs = data_attribute_values(svg, "data-h");
  REQUIRE(hs.size() == 2);
  CHECK(close(hs[0] + hs[1], 1.0, 1e-9));
}

TEST_CASE("natural tile widths come from the length eigenvector") {
  const auto config = config_of(kFibonacci);
  CHECK(close(config.perron().natural_lengths[0], 1.1708203932499369, 1e-12));
  CHECK(close(config.perron().natural_lengths[1], 0.72360679774997894, 1e-12));

  RenderSpec spec;
  spec.level = 0;
  spec.natural = true;
  const std::string csv = flow_view_csv(config, spec);
  // Widths appear as x-extents of the origin tiles: rows letter,...,x0=0,x1=width.
  std::istringstream lines(csv);
  std::string line;
  std::getline(lines, line);  // header
  int rows = 0;
  while (std::getline(lines, line)) {
    char addr_letter = 0, letter = 0;
    double y = 0.0, h = 0.0, x0 = 0.0, x1 = 0.0;
    int tile = 0;
    REQUIRE(std::sscanf(line.c_str(), "%c,%lf,%lf,%d,%c,%lf,%lf", &addr_letter, &y, &h, &tile,
                        &letter, &x0, &x1) == 7);
    CHECK(x0 == 0.0);
    CHECK(close(x1, config.perron().natural_lengths[config.rule().letter_index(letter)], 1e-12));
    ++rows;
  }
  CHECK(rows == 2);
}

TEST_CASE("exchange graphs") {
  const auto config = config_of(kPeriodDoubling);
  const auto f1 = build_approximant(config, 1);
  const std::string svg = iet_graph_svg(f1);
  CHECK(xml_well_formed(svg));
  CHECK(count_occurrences(svg, "class=\"piece\"") == 4);

  const std::string id_svg = iet_graph_svg(FiniteIET::identity());
  CHECK(count_occurrences(id_svg, "class=\"piece\"") == 1);
  CHECK(count_occurrences(id_svg, "class=\"jump\"") == 0);

  const auto big = power(build_approximant(config, 20), 1ULL << 8);
  const std::string big_svg = iet_graph_svg(big);
  CHECK(xml_well_formed(big_svg));
  CHECK(count_occurrences(big_svg, "class=\"piece\"") == big.piece_count());
  CHECK(iet_graph_svg(big) == big_svg);

  const std::string csv = iet_graph_csv(f1);
  CHECK(csv.rfind("x0,y0,x1,y1\n", 0) == 0);
  CHECK(count_occurrences(csv, "\n") == 5);  // header + one row per piece
}
