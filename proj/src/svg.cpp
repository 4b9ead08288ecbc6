#include "semnet/svg.hpp"

#include <algorithm>
#include <map>

#include <fmt/format.h>

namespace semnet::svg {

std::string escape(const std::string& text) {
  std::string out;
  for (char ch : text) {
    switch (ch) {
      case '&':
        out += "&amp;";
        break;
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '"':
        out += "&quot;";
        break;
      default:
        out += ch;
    }
  }
  return out;
}

namespace {

std::string open(int width, int height, const std::string& comment) {
  std::string s = fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{1}\" viewBox=\"0 0 {0} {1}\" "
      "font-family=\"sans-serif\" font-size=\"12\">\n",
      width, height);
  if (!comment.empty()) {
    std::string safe = comment;
    for (std::size_t p; (p = safe.find("--")) != std::string::npos;) safe.replace(p, 2, "- -");
    s += fmt::format("<!-- {} -->\n", safe);
  }
  s += fmt::format("<rect width=\"{}\" height=\"{}\" fill=\"white\"/>\n", width, height);
  return s;
}

// Axes box with tick labels for a unit square mapped onto [x0, x0+size] x [y0, y0+size].
std::string unit_axes(double x0, double y0, double size, const std::string& xlabel, const std::string& ylabel,
                      double xscale = 1.0, double xoffset = 0.0) {
  std::string s = fmt::format("<rect x=\"{:.2f}\" y=\"{:.2f}\" width=\"{:.2f}\" height=\"{:.2f}\" fill=\"none\" "
                              "stroke=\"black\"/>\n",
                              x0, y0, size, size);
  for (int t = 0; t <= 4; ++t) {
    const double f = t / 4.0;
    const double x = x0 + f * size;
    const double y = y0 + size - f * size;
    s += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"middle\">{:.2f}</text>\n", x, y0 + size + 15,
                     xoffset + f * xscale);
    s += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"end\">{:.2f}</text>\n", x0 - 5, y + 4, f);
  }
  s += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"middle\">{}</text>\n", x0 + size / 2,
                   y0 + size + 32, escape(xlabel));
  s += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"middle\" transform=\"rotate(-90 {:.2f} {:.2f})\">"
                   "{}</text>\n",
                   x0 - 38, y0 + size / 2, x0 - 38, y0 + size / 2, escape(ylabel));
  return s;
}

}  // namespace

std::string roc_plot(const RocCurve& curve, const std::string& comment) {
  const double x0 = 60, y0 = 40, size = 400;
  std::string s = open(500, 500, comment);
  s += fmt::format("<text x=\"{:.2f}\" y=\"25\" text-anchor=\"middle\">ROC, AUC = {:.4f}</text>\n", x0 + size / 2,
                   curve.auc);
  s += unit_axes(x0, y0, size, "false-positive rate", "true-positive rate");
  s += fmt::format("<line x1=\"{:.2f}\" y1=\"{:.2f}\" x2=\"{:.2f}\" y2=\"{:.2f}\" stroke=\"gray\" "
                   "stroke-dasharray=\"4 4\"/>\n",
                   x0, y0 + size, x0 + size, y0);
  s += "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"2\" points=\"";
  for (std::size_t k = 0; k < curve.points.size(); ++k) {
    const auto& p = curve.points[k];
    s += fmt::format("{}{:.2f},{:.2f}", k ? " " : "", x0 + p.fpr * size, y0 + size - p.tpr * size);
  }
  s += "\"/>\n</svg>\n";
  return s;
}

std::string trends_timeline(const std::vector<std::string>& names, const std::vector<EmergenceYear>& concepts,
                            const std::vector<EmergenceYear>& pairs, int top, const std::string& comment) {
  struct Bar {
    std::string label;
    std::uint64_t growth;
    bool pair;
  };
  std::map<int, std::vector<Bar>> lanes;
  std::map<int, bool> partial;
  std::uint64_t max_growth = 1;
  auto collect = [&](const std::vector<EmergenceYear>& groups) {
    for (const auto& g : groups) {
      partial[g.year] = g.partial;
      const int limit = std::min<int>(top, static_cast<int>(g.ranked.size()));
      for (int r = 0; r < limit; ++r) {
        const auto& e = g.ranked[r];
        const bool pair = e.b >= 0;
        lanes[g.year].push_back({pair ? names[e.a] + " + " + names[e.b] : names[e.a], e.growth, pair});
        max_growth = std::max(max_growth, e.growth);
      }
    }
  };
  collect(concepts);
  collect(pairs);

  const double bar_h = 14, label_w = 70, plot_w = 520;
  std::size_t rows = 0;
  for (const auto& [year, bars] : lanes) rows += bars.size() + 1;
  const int height = static_cast<int>(50 + rows * (bar_h + 2));
  std::string s = open(static_cast<int>(label_w + plot_w + 260), height, comment);
  s += "<text x=\"10\" y=\"20\">Emerging concepts (blue) and pairs (orange); bar length = growth in window</text>\n";
  double y = 40;
  for (const auto& [year, bars] : lanes) {
    s += fmt::format("<text x=\"10\" y=\"{:.2f}\">{}{}</text>\n", y + bar_h - 3, year, partial[year] ? "*" : "");
    for (const auto& b : bars) {
      const double w = plot_w * static_cast<double>(b.growth) / static_cast<double>(max_growth);
      s += fmt::format("<rect x=\"{:.2f}\" y=\"{:.2f}\" width=\"{:.2f}\" height=\"{:.2f}\" fill=\"{}\"/>\n", label_w,
                       y, w, bar_h, b.pair ? "darkorange" : "steelblue");
      s += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\">{} ({})</text>\n", label_w + w + 5, y + bar_h - 3,
                       escape(b.label), b.growth);
      y += bar_h + 2;
    }
    y += bar_h + 2;
  }
  s += "</svg>\n";
  return s;
}

std::string projection_panels(std::span<const SuggestionRecord> all, std::span<const SuggestionRecord> highlighted,
                              const std::string& comment) {
  // Axis 0 is pred/2 in [-0.5, 0.5]; degree and cosine live in [0, 1].
  auto coord = [](const SuggestionRecord& r, int axis) {
    switch (axis) {
      case 0:
        return 0.5 * r.prediction() + 0.5;
      case 1:
        return r.degree();
      default:
        return r.cosine();
    }
  };
  const char* labels[] = {"prediction / 2", "mean normalized degree", "cosine similarity"};
  const int panels[3][2] = {{0, 1}, {0, 2}, {1, 2}};
  const double size = 260, gap = 70, x_start = 60, y0 = 40;
  std::string s = open(static_cast<int>(x_start + 3 * (size + gap)), static_cast<int>(y0 + size + 60), comment);
  for (int p = 0; p < 3; ++p) {
    const double x0 = x_start + p * (size + gap);
    const int ax = panels[p][0], ay = panels[p][1];
    s += unit_axes(x0, y0, size, labels[ax], labels[ay], 1.0, ax == 0 ? -0.5 : 0.0);
    auto dots = [&](std::span<const SuggestionRecord> recs, const char* color, double radius) {
      for (const auto& r : recs) {
        const double cx = x0 + std::clamp(coord(r, ax), 0.0, 1.0) * size;
        const double cy = y0 + size - std::clamp(coord(r, ay), 0.0, 1.0) * size;
        s += fmt::format("<circle cx=\"{:.2f}\" cy=\"{:.2f}\" r=\"{}\" fill=\"{}\"/>\n", cx, cy, radius, color);
      }
    };
    dots(all, "lightgray", 1.5);
    dots(highlighted, "crimson", 3.0);
  }
  s += "</svg>\n";
  return s;
}

}  // namespace semnet::svg
