// Command-line front end: parse a substitution rule, build the canonical
// interval pictures, and write tables and figures. All paths are
// deterministic: identical invocations on identical files produce identical
// bytes.

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "iietlab/iet.hpp"
#include "iietlab/render.hpp"
#include "iietlab/spectral.hpp"
#include "iietlab/substitution.hpp"

namespace {

using namespace iietlab;

constexpr int kExitInvalidInput = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitAssumption = 4;
constexpr int kExitCap = 5;

struct Caps {
  std::size_t max_addresses = kMaxAddresses;
  std::size_t max_word = kMaxWordLetters;
  std::size_t max_pieces = kMaxPieces;
  unsigned long long max_duals = kMaxDualOrders;
};

struct ConfigFile {
  std::optional<std::vector<int>> initial_order;
  std::optional<std::vector<std::vector<Label>>> dual_order;
  bool assume_minimal = false;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string real15(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

std::string real17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

SubstitutionRule load_rule(const std::string& path) {
  return SubstitutionRule::parse(slurp(path));
}

Label parse_label(const SubstitutionRule& rule, const std::string& text) {
  if (text.size() < 2 || rule.letter_index(text[0]) < 0)
    throw ParseError("bad label `" + text + "`");
  int position = 0;
  for (std::size_t i = 1; i < text.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(text[i])))
      throw ParseError("bad label `" + text + "`");
    position = position * 10 + (text[i] - '0');
  }
  const int letter = rule.letter_index(text[0]);
  if (position < 1 || position > rule.image_length(letter))
    throw ParseError("label position out of range in `" + text + "`");
  return {letter, position};
}

ConfigFile load_config_file(const SubstitutionRule& rule, const std::string& path) {
  ConfigFile out;
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(slurp(path));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("config file: " + std::string(e.what()));
  }
  if (!doc.is_object()) throw ParseError("config file must hold a JSON object");
  for (const auto& [key, value] : doc.items()) {
    if (key == "initial_order") {
      std::vector<int> order;
      for (const auto& item : value) {
        const std::string letter = item.get<std::string>();
        if (letter.size() != 1 || rule.letter_index(letter[0]) < 0)
          throw ParseError("config initial_order: unknown letter `" + letter + "`");
        order.push_back(rule.letter_index(letter[0]));
      }
      out.initial_order = std::move(order);
    } else if (key == "dual_order") {
      std::vector<std::vector<Label>> dual;
      dual.reserve(static_cast<std::size_t>(rule.size()));
      for (int a = 0; a < rule.size(); ++a) dual.push_back(parent_set(rule, a));
      for (const auto& [letter, labels] : value.items()) {
        if (letter.size() != 1 || rule.letter_index(letter[0]) < 0)
          throw ParseError("config dual_order: unknown letter `" + letter + "`");
        std::vector<Label> order;
        for (const auto& item : labels) order.push_back(parse_label(rule, item.get<std::string>()));
        dual[static_cast<std::size_t>(rule.letter_index(letter[0]))] = std::move(order);
      }
      out.dual_order = std::move(dual);
    } else if (key == "assume_minimal") {
      out.assume_minimal = value.get<bool>();
    } else {
      throw ParseError("config file: unknown key `" + key + "`");
    }
  }
  return out;
}

PhiConfig make_config(const SubstitutionRule& rule, const ConfigFile& file, bool assume_flag) {
  const PerronData perron = perron_data(transition_matrix(rule));
  return default_config(rule, perron, file.initial_order, file.dual_order,
                        file.assume_minimal || assume_flag);
}

void write_file(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write file: " + path);
  out << bytes;
}

int run_analyze(const SubstitutionRule& rule) {
  const TransitionMatrix m = transition_matrix(rule);
  const PerronData perron = perron_data(m);
  const PrimitivityResult prim = primitivity_check(m);

  std::cout << "alphabet: " << rule.alphabet() << "\n";
  for (int a = 0; a < rule.size(); ++a)
    std::cout << "  " << rule.letter(a) << " -> " << rule.image(a) << "\n";
  std::cout << "transition matrix (rows = letter counts):\n";
  for (int i = 0; i < m.n; ++i) {
    std::cout << "  [";
    for (int j = 0; j < m.n; ++j) std::cout << (j ? " " : "") << m.at(i, j);
    std::cout << "]\n";
  }
  std::cout << "lambda = " << real15(perron.lambda) << "\n";
  std::cout << "frequencies r = (";
  for (int a = 0; a < m.n; ++a) std::cout << (a ? ", " : "") << real15(perron.frequencies[a]);
  std::cout << ")\n";
  std::cout << "natural lengths l = (";
  for (int a = 0; a < m.n; ++a) std::cout << (a ? ", " : "") << real15(perron.natural_lengths[a]);
  std::cout << ")\n";
  if (prim.primitive)
    std::cout << "primitive: yes (power " << *prim.witness_power << ")\n";
  else
    std::cout << "primitive: no (assume-minimal required downstream)\n";
  int k = 0;
  if (rule.constant_length(&k))
    std::cout << "constant length: " << k << "\n";
  else
    std::cout << "constant length: no\n";
  std::cout << "labels: " << rule.label_count() << "\n";
  std::cout << "dual orders: " << dual_order_count(rule) << "\n";
  std::cout << "recognizability: assumed (user assertion, not verified)\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  if (const char* precision = std::getenv("IIETLAB_PRECISION");
      precision && *precision && std::string(precision) != "binary64") {
    std::cerr << "error: IIETLAB_PRECISION=" << precision
              << " is not supported (binary64 only)\n";
    return kExitInvalidInput;
  }

  CLI::App app{"interval-exchange pictures of substitution subshifts"};
  app.require_subcommand(1);

  std::string rule_path;
  std::string config_path;
  bool assume_minimal = false;
  Caps caps;
  app.add_option("--max-addresses", caps.max_addresses, "address count cap");
  app.add_option("--max-word", caps.max_word, "word length cap");
  app.add_option("--max-pieces", caps.max_pieces, "piece count cap");
  app.add_option("--max-duals", caps.max_duals, "configuration count cap");

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("rule", rule_path, "substitution rule file")->required();
    cmd->add_option("--config", config_path, "JSON config (initial_order, dual_order, assume_minimal)");
    cmd->add_flag("--assume-minimal", assume_minimal, "accept a non-primitive matrix");
  };

  auto* analyze = app.add_subcommand("analyze", "matrix, eigendata, labels, dual count");
  add_common(analyze);

  auto* iet = app.add_subcommand("iet", "write a finite exchange table");
  int iet_level = 1;
  unsigned long long iet_power_j = 1;
  double iet_merge = -1.0;
  std::string iet_out;
  add_common(iet);
  iet->add_option("--level", iet_level, "approximant level")->required();
  iet->add_option("--power", iet_power_j, "compose the exchange with itself");
  iet->add_option("--merge", iet_merge, "merge equal translations at this tolerance");
  iet->add_option("--out", iet_out, "output CSV path")->required();

  auto* eval = app.add_subcommand("eval", "evaluate the exact exchange at a point");
  double eval_x = 0.0;
  unsigned long long eval_power = 1;
  int eval_depth = 64;
  add_common(eval);
  eval->add_option("--x", eval_x, "point in [0,1)")->required();
  eval->add_option("--power", eval_power, "number of applications");
  eval->add_option("--max-depth", eval_depth, "digit budget per application");

  auto* flowview = app.add_subcommand("flowview", "render stacked supertile bands");
  RenderSpec flow_spec;
  std::string flow_out;
  std::string flow_format = "svg";
  add_common(flowview);
  flowview->add_option("--level", flow_spec.level, "band level")->required();
  flowview->add_option("--window", flow_spec.window, "horizontal half-width in tiles");
  flowview->add_flag("--natural", flow_spec.natural, "natural tile widths");
  flowview->add_option("--width", flow_spec.width, "image width in px");
  flowview->add_option("--height", flow_spec.height, "image height in px");
  flowview->add_option("--format", flow_format, "svg or csv")
      ->check(CLI::IsMember({"svg", "csv"}));
  flowview->add_option("--out", flow_out, "output path")->required();

  auto* ietgraph = app.add_subcommand("ietgraph", "render the exchange graph");
  int graph_level = 1;
  unsigned long long graph_power = 1;
  int graph_size = 600;
  std::string graph_out;
  std::string graph_format = "svg";
  add_common(ietgraph);
  ietgraph->add_option("--level", graph_level, "approximant level")->required();
  ietgraph->add_option("--power", graph_power, "compose before rendering");
  ietgraph->add_option("--size", graph_size, "square image side in px");
  ietgraph->add_option("--format", graph_format, "svg or csv")
      ->check(CLI::IsMember({"svg", "csv"}));
  ietgraph->add_option("--out", graph_out, "output path")->required();

  auto* spectral = app.add_subcommand("spectral", "correlation coefficients with error bounds");
  int spectral_level = 10;
  std::vector<unsigned long long> spectral_powers;
  bool spectral_centered = false;
  std::string spectral_out;
  add_common(spectral);
  spectral->add_option("--level", spectral_level, "approximant level")->required();
  spectral->add_option("--powers", spectral_powers, "comma-separated shift powers")
      ->required()
      ->delimiter(',');
  spectral->add_flag("--centered", spectral_centered, "subtract the means");
  spectral->add_option("--out", spectral_out, "output CSV path")->required();

  auto* coincidence = app.add_subcommand("coincidence", "constant-length coincidence search");
  add_common(coincidence);

  auto* convergence = app.add_subcommand("convergence", "orbit-return distances over a power schedule");
  int conv_samples = 200;
  std::string conv_exps = "6..12";
  std::string conv_out;
  add_common(convergence);
  convergence->add_option("--samples", conv_samples, "sample count");
  convergence->add_option("--exps", conv_exps, "exponent range, e.g. 6..12")->required();
  convergence->add_option("--out", conv_out, "output CSV path")->required();

  auto* selfsim = app.add_subcommand("selfsim", "check the scaling relation of the canonical exchange");
  int ss_level = 25;
  int ss_grid = 10000;
  double ss_tol = 1e-6;
  add_common(selfsim);
  selfsim->add_option("--level", ss_level, "approximant level");
  selfsim->add_option("--grid", ss_grid, "grid points in [1/lambda, 1)");
  selfsim->add_option("--tol", ss_tol, "pass tolerance");

  auto* duals = app.add_subcommand("duals", "enumerate or search dual-order configurations");
  bool duals_enumerate = false;
  bool duals_search = false;
  int duals_level = 8;
  double duals_merge = 1e-9;
  add_common(duals);
  duals->add_flag("--enumerate", duals_enumerate, "list every dual-order assignment");
  duals->add_flag("--fib2-search", duals_search,
                  "merge the approximant for every initial/dual order and report piece counts");
  duals->add_option("--level", duals_level, "approximant level for the search");
  duals->add_option("--merge", duals_merge, "merge tolerance for the search");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) ? kExitInvalidInput : 0;
  }

  try {
    const SubstitutionRule rule = load_rule(rule_path);
    ConfigFile file;
    if (!config_path.empty()) file = load_config_file(rule, config_path);

    if (app.got_subcommand(analyze)) return run_analyze(rule);

    if (app.got_subcommand(iet)) {
      const PhiConfig config = make_config(rule, file, assume_minimal);
      FiniteIET f = build_approximant(config, iet_level);
      if (iet_power_j != 1) f = power(f, iet_power_j, caps.max_pieces);
      if (iet_merge >= 0.0) f = merge_adjacent(f, iet_merge);
      std::ostringstream out;
      write_iet_csv(out, f);
      write_file(iet_out, out.str());
      std::cout << "pieces: " << f.piece_count() << "\n";
      return 0;
    }

    if (app.got_subcommand(eval)) {
      const PhiConfig config = make_config(rule, file, assume_minimal);
      double x = eval_x;
      int deepest = 0;
      for (unsigned long long step = 0; step < eval_power; ++step) {
        int level = 0;
        x = evaluate_exact(config, x, eval_depth, &level);
        deepest = std::max(deepest, level);
      }
      std::cout << "F^" << eval_power << "(" << real17(eval_x) << ") = " << real17(x)
                << " (max located depth " << deepest << ")\n";
      return 0;
    }

    if (app.got_subcommand(flowview)) {
      const PhiConfig config = make_config(rule, file, assume_minimal);
      const std::string doc = flow_format == "svg"
                                  ? flow_view_svg(config, flow_spec, caps.max_addresses)
                                  : flow_view_csv(config, flow_spec, caps.max_addresses);
      write_file(flow_out, doc);
      return 0;
    }

    if (app.got_subcommand(ietgraph)) {
      const PhiConfig config = make_config(rule, file, assume_minimal);
      FiniteIET f = build_approximant(config, graph_level);
      if (graph_power != 1) f = power(f, graph_power, caps.max_pieces);
      const std::string doc = graph_format == "svg" ? iet_graph_svg(f, graph_size, graph_size)
                                                    : iet_graph_csv(f);
      write_file(graph_out, doc);
      std::cout << "pieces: " << f.piece_count() << "\n";
      return 0;
    }

    if (app.got_subcommand(spectral)) {
      const PhiConfig config = make_config(rule, file, assume_minimal);
      std::string csv = "j,value,error_bound,level\n";
      for (unsigned long long j : spectral_powers) {
        const SpectralEstimate est =
            spectral_coefficient(config, spectral_level, j, spectral_centered, caps.max_pieces);
        csv += std::to_string(est.j) + ',' + real17(est.value) + ',' + real17(est.error_bound) +
               ',' + std::to_string(est.level) + '\n';
        std::cout << "j=" << est.j << " value=" << real15(est.value)
                  << " bound=" << real15(est.error_bound) << "\n";
      }
      write_file(spectral_out, csv);
      return 0;
    }

    if (app.got_subcommand(coincidence)) {
      const auto witness = coincidence_check(rule);
      if (witness)
        std::cout << "coincidence at N=" << witness->power << ", j=" << witness->position
                  << " (letter " << rule.letter(witness->letter) << ")\n";
      else
        std::cout << "no coincidence\n";
      return 0;
    }

    if (app.got_subcommand(convergence)) {
      const std::size_t dots = conv_exps.find("..");
      if (dots == std::string::npos)
        throw ParseError("--exps expects a range like 6..12");
      const int lo = std::stoi(conv_exps.substr(0, dots));
      const int hi = std::stoi(conv_exps.substr(dots + 2));
      const PhiConfig config = make_config(rule, file, assume_minimal);
      const DiagnosticTable table =
          convergence_diagnostic(config, conv_samples, lo, hi, caps.max_pieces);

      std::string csv = "x,exponent,power,value,distance\n";
      for (const DiagnosticRow& row : table.rows)
        csv += real17(row.x) + ',' + std::to_string(row.exponent) + ',' +
               std::to_string(row.power) + ',' + real17(row.value) + ',' + real17(row.distance) +
               '\n';
      write_file(conv_out, csv);

      for (std::size_t e = 0; e < table.exponents.size(); ++e)
        std::cout << "exp " << table.exponents[e] << ": power " << table.powers[e] << ", level "
                  << table.levels[e] << ", median distance " << real15(table.median_distance[e])
                  << "\n";
      int max_clusters = 0;
      for (int c : table.cluster_counts) max_clusters = std::max(max_clusters, c);
      std::cout << "max clusters per sample (radius 0.02): " << max_clusters << "\n";
      return 0;
    }

    if (app.got_subcommand(selfsim)) {
      const PerronData perron = perron_data(transition_matrix(rule));
      const auto ss = self_similar_config(rule, perron, file.assume_minimal || assume_minimal);
      if (!ss)
        throw AssumptionError("images do not share a common first and last letter");
      const SelfSimilarityReport report =
          self_similarity_check(ss->config, ss->kappa, ss_level, ss_grid, ss_tol);
      std::cout << "kappa = " << real17(report.kappa) << "\n";
      std::cout << "points used: " << report.points_used << " of " << report.grid << "\n";
      std::cout << "max deviation, plus sign:  " << real15(report.max_dev_plus) << "\n";
      std::cout << "max deviation, minus sign: " << real15(report.max_dev_minus) << "\n";
      std::cout << "passes at tol " << real15(report.tol) << ": "
                << (report.plus_passes ? "plus" : "") << (report.minus_passes ? "minus" : "")
                << ((report.plus_passes || report.minus_passes) ? "" : "neither") << "\n";
      return 0;
    }

    if (app.got_subcommand(duals)) {
      std::cout << "dual orders: " << dual_order_count(rule) << "\n";
      if (duals_enumerate) {
        DualOrderIterator it(rule);
        std::size_t index = 0;
        do {
          std::cout << "  [" << index++ << "]";
          for (int a = 0; a < rule.size(); ++a)
            std::cout << " " << rule.letter(a) << ":" << format_address(rule, it.current()[a]);
          std::cout << "\n";
        } while (it.advance());
      }
      if (duals_search) {
        const PerronData perron = perron_data(transition_matrix(rule));
        const DualSearchResult result =
            search_minimal_exchange(rule, perron, duals_level, duals_merge,
                                    file.assume_minimal || assume_minimal, caps.max_duals,
                                    caps.max_pieces);
        for (const DualSearchEntry& entry : result.entries)
          std::cout << entry.merged_pieces << " pieces  " << entry.config_id << "\n";
        std::cout << "minimum pieces at level " << duals_level << ", merge tol "
                  << real15(duals_merge) << ": " << result.min_pieces << "\n";
        std::cout << "best: " << result.best_config_id << "\n";
      }
      return 0;
    }

    return kExitInvalidInput;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const NumericError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const AssumptionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitAssumption;
  } catch (const CapError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCap;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
