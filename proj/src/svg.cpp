#include "steerkit/svg.hpp"

#include <algorithm>
#include <sstream>

#include "steerkit/io.hpp"

namespace steerkit {

namespace {

constexpr int kWidth = 680;
constexpr int kHeight = 520;
constexpr int kMarginLeft = 70;
constexpr int kMarginRight = 20;
constexpr int kMarginTop = 40;
constexpr int kMarginBottom = 50;
constexpr int kPlotW = kWidth - kMarginLeft - kMarginRight;
constexpr int kPlotH = kHeight - kMarginTop - kMarginBottom;

std::string num(double v) { return format_double(v); }

void open_svg(std::ostringstream& out, const std::string& title) {
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
        << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << ' '
        << kHeight << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n"
        << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"16\">" << title
        << "</text>\n";
}

void axis_labels(std::ostringstream& out, const std::string& x_label,
                 const std::string& y_label, double x_lo, double x_hi,
                 double y_lo, double y_hi) {
    out << "<text x=\"" << kMarginLeft + kPlotW / 2 << "\" y=\""
        << kHeight - 12 << "\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"13\">" << x_label
        << "</text>\n"
        << "<text x=\"18\" y=\"" << kMarginTop + kPlotH / 2
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
        << "font-size=\"13\" transform=\"rotate(-90 18 "
        << kMarginTop + kPlotH / 2 << ")\">" << y_label << "</text>\n";
    out << "<text x=\"" << kMarginLeft << "\" y=\"" << kHeight - 32
        << "\" font-family=\"sans-serif\" font-size=\"11\">" << num(x_lo)
        << "</text>\n"
        << "<text x=\"" << kMarginLeft + kPlotW << "\" y=\"" << kHeight - 32
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" "
        << "font-size=\"11\">" << num(x_hi) << "</text>\n"
        << "<text x=\"" << kMarginLeft - 6 << "\" y=\"" << kMarginTop + kPlotH
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" "
        << "font-size=\"11\">" << num(y_lo) << "</text>\n"
        << "<text x=\"" << kMarginLeft - 6 << "\" y=\"" << kMarginTop + 10
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" "
        << "font-size=\"11\">" << num(y_hi) << "</text>\n";
}

double map_x(double v, double lo, double hi) {
    return kMarginLeft + (v - lo) / (hi - lo) * kPlotW;
}

double map_y(double v, double lo, double hi) {
    return kMarginTop + kPlotH - (v - lo) / (hi - lo) * kPlotH;
}

}  // namespace

std::string region_svg(const RegionTable& table) {
    std::ostringstream out;
    open_svg(out, family_name(table.family) + " detection region");
    const std::size_t na = table.alpha_grid.size();
    const std::size_t nv = table.v_grid.size();
    const double cw = static_cast<double>(kPlotW) / na;
    const double ch = static_cast<double>(kPlotH) / nv;
    for (std::size_t i = 0; i < na; ++i) {
        for (std::size_t j = 0; j < nv; ++j) {
            const char* fill = "#eeeeee";
            if (table.detected_usual[i][j]) {
                fill = "#225588";
            } else if (table.detected_glsi[i][j]) {
                fill = "#66aadd";
            }
            double x = kMarginLeft + cw * i;
            double y = kMarginTop + kPlotH - ch * (j + 1);
            out << "<rect x=\"" << num(x) << "\" y=\"" << num(y)
                << "\" width=\"" << num(cw + 0.5) << "\" height=\""
                << num(ch + 0.5) << "\" fill=\"" << fill << "\"/>\n";
        }
    }
    out << "<rect x=\"" << kMarginLeft << "\" y=\"" << kMarginTop
        << "\" width=\"" << kPlotW << "\" height=\"" << kPlotH
        << "\" fill=\"none\" stroke=\"#333333\"/>\n";
    axis_labels(out, "alpha (rad)", "visibility", table.alpha_grid.front(),
                table.alpha_grid.back(), table.v_grid.front(),
                table.v_grid.back());
    out << "<g font-family=\"sans-serif\" font-size=\"11\">"
        << "<rect x=\"" << kMarginLeft + 8 << "\" y=\"" << kMarginTop + 8
        << "\" width=\"12\" height=\"12\" fill=\"#225588\"/>"
        << "<text x=\"" << kMarginLeft + 24 << "\" y=\"" << kMarginTop + 18
        << "\">both inequalities</text>"
        << "<rect x=\"" << kMarginLeft + 8 << "\" y=\"" << kMarginTop + 26
        << "\" width=\"12\" height=\"12\" fill=\"#66aadd\"/>"
        << "<text x=\"" << kMarginLeft + 24 << "\" y=\"" << kMarginTop + 36
        << "\">optimized only</text></g>\n";
    out << "</svg>\n";
    return out.str();
}

std::string curves_svg(const std::vector<CurvePoint>& rows) {
    std::ostringstream out;
    open_svg(out, "pure-state inequality curves");
    double x_lo = rows.front().alpha;
    double x_hi = rows.back().alpha;
    double y_hi = 0.0;
    for (const CurvePoint& p : rows) {
        y_hi = std::max({y_hi, p.usual_value, p.usual_bound, p.glsi_violation});
    }
    y_hi *= 1.05;
    const double y_lo = 0.0;
    auto polyline = [&](const char* color, auto value_of) {
        out << "<polyline fill=\"none\" stroke=\"" << color
            << "\" stroke-width=\"2\" points=\"";
        for (const CurvePoint& p : rows) {
            out << num(map_x(p.alpha, x_lo, x_hi)) << ','
                << num(map_y(value_of(p), y_lo, y_hi)) << ' ';
        }
        out << "\"/>\n";
    };
    out << "<line x1=\"" << num(map_x(x_lo, x_lo, x_hi)) << "\" y1=\""
        << num(map_y(rows.front().usual_bound, y_lo, y_hi)) << "\" x2=\""
        << num(map_x(x_hi, x_lo, x_hi)) << "\" y2=\""
        << num(map_y(rows.front().usual_bound, y_lo, y_hi))
        << "\" stroke=\"#888888\" stroke-dasharray=\"6 4\"/>\n";
    polyline("#225588", [](const CurvePoint& p) { return p.usual_value; });
    polyline("#22aa55", [](const CurvePoint& p) { return p.glsi_violation; });
    out << "<rect x=\"" << kMarginLeft << "\" y=\"" << kMarginTop
        << "\" width=\"" << kPlotW << "\" height=\"" << kPlotH
        << "\" fill=\"none\" stroke=\"#333333\"/>\n";
    axis_labels(out, "alpha (rad)", "value", x_lo, x_hi, y_lo, y_hi);
    out << "<g font-family=\"sans-serif\" font-size=\"11\">"
        << "<text x=\"" << kMarginLeft + 8 << "\" y=\"" << kMarginTop + 16
        << "\" fill=\"#225588\">three-setting value</text>"
        << "<text x=\"" << kMarginLeft + 8 << "\" y=\"" << kMarginTop + 32
        << "\" fill=\"#22aa55\">optimized violation</text>"
        << "<text x=\"" << kMarginLeft + 8 << "\" y=\"" << kMarginTop + 48
        << "\" fill=\"#888888\">classical bound</text></g>\n";
    out << "</svg>\n";
    return out.str();
}

}  // namespace steerkit
