#pragma once

// Deterministic SVG output: one panel per point set, side by side. Edges are
// emitted sorted by id pair, points as labelled circles.

#include "ctri/tri.hpp"

#include <cstdio>
#include <fstream>

namespace ctri {

struct Panel {
  const PointSet* points = nullptr;
  std::vector<Edge> edges;
  std::string title;
};

namespace detail {

inline std::string fixed3(double v) {
  if (v > -0.0005 && v < 0.0005) v = 0;  // avoid "-0.000"
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

inline std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace detail

inline constexpr double kPanelSize = 400;
inline constexpr double kPanelMargin = 40;

/// Fits each panel's bounding box into a square cell. A zero-extent axis
/// falls back to unit extent so flat sets still render.
inline std::string render_svg(const std::vector<Panel>& panels, const std::string& caption = "") {
  const double caption_h = caption.empty() ? 0 : 30;
  const double width = kPanelSize * static_cast<double>(std::max<std::size_t>(panels.size(), 1));
  const double height = kPanelSize + caption_h;
  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " + detail::fixed3(width) + " " +
         detail::fixed3(height) + "\" width=\"" + detail::fixed3(width) + "\" height=\"" + detail::fixed3(height) +
         "\">\n";
  out += "<rect x=\"0\" y=\"0\" width=\"" + detail::fixed3(width) + "\" height=\"" + detail::fixed3(height) +
         "\" fill=\"white\"/>\n";
  for (std::size_t k = 0; k < panels.size(); ++k) {
    const Panel& panel = panels[k];
    const PointSet& s = *panel.points;
    Coord min_x = s[0].x, max_x = s[0].x, min_y = s[0].y, max_y = s[0].y;
    for (const auto& p : s) {
      if (p.x < min_x) min_x = p.x;
      if (p.x > max_x) max_x = p.x;
      if (p.y < min_y) min_y = p.y;
      if (p.y > max_y) max_y = p.y;
    }
    double ext = std::max(Coord(max_x - min_x).get_d(), Coord(max_y - min_y).get_d());
    if (ext <= 0) ext = 1;
    const double scale = (kPanelSize - 2 * kPanelMargin) / ext;
    const double cx = Coord(min_x + max_x).get_d() / 2, cy = Coord(min_y + max_y).get_d() / 2;
    const double ox = kPanelSize * static_cast<double>(k) + kPanelSize / 2, oy = caption_h + kPanelSize / 2;
    auto sx = [&](const Coord& x) { return detail::fixed3(ox + (x.get_d() - cx) * scale); };
    auto sy = [&](const Coord& y) { return detail::fixed3(oy - (y.get_d() - cy) * scale); };

    out += "<g id=\"panel" + std::to_string(k) + "\">\n";
    if (!panel.title.empty())
      out += "<text x=\"" + detail::fixed3(ox) + "\" y=\"" + detail::fixed3(caption_h + 20) +
             "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">" +
             detail::xml_escape(panel.title) + "</text>\n";
    std::vector<Edge> edges = panel.edges;
    std::sort(edges.begin(), edges.end());
    for (const auto& e : edges) {
      const Point& a = s.by_id(e.u);
      const Point& b = s.by_id(e.v);
      out += "<line x1=\"" + sx(a.x) + "\" y1=\"" + sy(a.y) + "\" x2=\"" + sx(b.x) + "\" y2=\"" + sy(b.y) +
             "\" stroke=\"#446\" stroke-width=\"1.5\"/>\n";
    }
    for (const auto& p : s) {
      out += "<circle cx=\"" + sx(p.x) + "\" cy=\"" + sy(p.y) + "\" r=\"5\" fill=\"#c33\"/>\n";
      out += "<text x=\"" + sx(p.x) + "\" y=\"" + sy(p.y) + "\" dx=\"7\" dy=\"-7\" font-family=\"sans-serif\" "
             "font-size=\"12\">" + std::to_string(p.id) + "</text>\n";
    }
    out += "</g>\n";
  }
  if (!caption.empty())
    out += "<text x=\"" + detail::fixed3(width / 2) +
           "\" y=\"20\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">" +
           detail::xml_escape(caption) + "</text>\n";
  out += "</svg>\n";
  return out;
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path);
  out << text;
  if (!out) throw Error(ErrorCode::Io, "write failed for " + path);
}

}  // namespace ctri
