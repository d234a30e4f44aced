#include "spgof/format.hpp"
#include "spgof/study.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace spgof {
namespace {

std::string joined(const std::vector<double>& r) {
  std::string s;
  for (std::size_t k = 0; k < r.size(); ++k) s += (k ? "+" : "") + format_number(r[k]);
  return s;
}

std::string file_safe(std::string s) {
  for (char& c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '-' && c != '_') c = '_';
  return s;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '&') out += "&amp;";
    else if (c == '<') out += "&lt;";
    else if (c == '>') out += "&gt;";
    else out += c;
  }
  return out;
}

constexpr const char* kPalette[] = {"#1b9e77", "#d95f02", "#7570b3", "#e7298a", "#66a61e",
                                    "#e6ab02", "#a6761d", "#666666", "#1f78b4", "#b2182b"};

}  // namespace

void sort_rows(PowerTable& table) {
  auto key = [](const PowerRow& r) {
    return std::make_tuple(r.model, r.window, r.summary, std::string(to_string(r.statistic)),
                           std::string(to_string(r.ordering)), r.r_upper, r.m);
  };
  std::stable_sort(table.rows.begin(), table.rows.end(),
                   [&](const PowerRow& a, const PowerRow& b) { return key(a) < key(b); });
}

void write_power_csv(std::ostream& out, const PowerTable& unsorted) {
  PowerTable table = unsorted;
  sort_rows(table);
  out << "model,window,summary,statistic,ordering,rUpper,m,rejectionRate,replications,stderr,degenerate\n";
  for (const auto& r : table.rows)
    out << r.model << ',' << format_number(r.window) << ',' << r.summary << ',' << to_string(r.statistic) << ','
        << to_string(r.ordering) << ',' << joined(r.r_upper) << ',' << r.m << ',' << format_number(r.rate()) << ','
        << r.replications << ',' << format_number(r.stderr_rate()) << ',' << r.degenerate << '\n';
}

void write_power_svg(std::ostream& out, const PowerTable& table, const std::string& model,
                     const std::string& summary) {
  // One series per (statistic, ordering, window, m), points ordered by rUpper.
  std::map<std::string, std::vector<std::pair<double, double>>> series;
  double x_max = 0.0;
  for (const auto& r : table.rows) {
    if (r.model != model || r.summary != summary) continue;
    std::string name = std::string(to_string(r.statistic)) + " " + std::string(to_string(r.ordering)) + "  W=" +
                       format_number(r.window) + "  m=" + std::to_string(r.m);
    const double x = *std::max_element(r.r_upper.begin(), r.r_upper.end());
    series[name].emplace_back(x, r.rate());
    x_max = std::max(x_max, x);
  }
  x_max = x_max > 0.15 ? 0.25 : x_max > 0.0 ? 0.1 : 1.0;

  const double left = 60, top = 40, width = 480, height = 300;
  const double legend_y = top + height + 50;
  const double total_h = legend_y + 18.0 * static_cast<double>(series.size()) + 10;
  auto px = [&](double x) { return left + width * x / x_max; };
  auto py = [&](double y) { return top + height * (1.0 - y); };
  auto f = [](double v) { return format_fixed(std::round(v * 100.0) / 100.0); };

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << f(left + width + 30) << "\" height=\"" << f(total_h)
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << f(left) << "\" y=\"24\" font-size=\"14\">" << xml_escape(model) << ": "
      << xml_escape(summary) << "</text>\n";
  for (int k = 0; k <= 5; ++k) {
    const double y = 0.2 * k, x = x_max * 0.2 * k;
    out << "<line x1=\"" << f(left) << "\" x2=\"" << f(left + width) << "\" y1=\"" << f(py(y)) << "\" y2=\""
        << f(py(y)) << "\" stroke=\"#dddddd\"/>\n";
    out << "<text x=\"" << f(left - 8) << "\" y=\"" << f(py(y) + 4) << "\" text-anchor=\"end\">" << f(y)
        << "</text>\n";
    out << "<text x=\"" << f(px(x)) << "\" y=\"" << f(top + height + 18) << "\" text-anchor=\"middle\">"
        << format_number(std::round(x * 1000.0) / 1000.0) << "</text>\n";
  }
  out << "<rect x=\"" << f(left) << "\" y=\"" << f(top) << "\" width=\"" << f(width) << "\" height=\"" << f(height)
      << "\" fill=\"none\" stroke=\"black\"/>\n";
  out << "<text x=\"" << f(left + width / 2) << "\" y=\"" << f(top + height + 36)
      << "\" text-anchor=\"middle\">upper bound r</text>\n";
  out << "<text transform=\"translate(16 " << f(top + height / 2) << ") rotate(-90)\" text-anchor=\"middle\">"
      << "rejection rate</text>\n";

  std::size_t index = 0;
  for (auto& [name, points] : series) {
    std::sort(points.begin(), points.end());
    const char* colour = kPalette[index % std::size(kPalette)];
    out << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"2\" points=\"";
    for (std::size_t k = 0; k < points.size(); ++k)
      out << (k ? " " : "") << f(px(points[k].first)) << ',' << f(py(points[k].second));
    out << "\"/>\n";
    for (const auto& [x, y] : points)
      out << "<circle cx=\"" << f(px(x)) << "\" cy=\"" << f(py(y)) << "\" r=\"3\" fill=\"" << colour << "\"/>\n";
    const double ly = legend_y + 18.0 * static_cast<double>(index);
    out << "<line x1=\"" << f(left) << "\" x2=\"" << f(left + 24) << "\" y1=\"" << f(ly - 4) << "\" y2=\""
        << f(ly - 4) << "\" stroke=\"" << colour << "\" stroke-width=\"2\"/>\n";
    out << "<text x=\"" << f(left + 32) << "\" y=\"" << f(ly) << "\">" << xml_escape(name) << "</text>\n";
    ++index;
  }
  out << "</svg>\n";
}

void emit_report(const PowerTable& table, const std::string& out_dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw std::runtime_error("cannot create output directory '" + out_dir + "': " + ec.message());

  auto write = [&](const fs::path& path, const std::string& content) {
    std::ofstream file(path, std::ios::binary);
    file << content;
    if (!file) throw std::runtime_error("cannot write '" + path.string() + "'");
  };
  std::ostringstream csv;
  write_power_csv(csv, table);
  write(fs::path(out_dir) / "power_table.csv", csv.str());

  std::set<std::pair<std::string, std::string>> panels;
  for (const auto& r : table.rows) panels.emplace(r.model, r.summary);
  for (const auto& [model, summary] : panels) {
    std::ostringstream svg;
    write_power_svg(svg, table, model, summary);
    write(fs::path(out_dir) / ("power_" + file_safe(model) + "_" + file_safe(summary) + ".svg"), svg.str());
  }
}

}  // namespace spgof
