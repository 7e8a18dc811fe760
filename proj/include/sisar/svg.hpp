#pragma once

#include <cstdio>
#include <sstream>
#include <string>

namespace sisar {

// Minimal deterministic SVG assembly: fixed-precision coordinates so that
// identical inputs give byte-identical documents.
class SvgWriter {
public:
    SvgWriter(double width, double height) : width_(width), height_(height) {
        out_ << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(width)
             << "\" height=\"" << fmt(height) << "\" viewBox=\"0 0 " << fmt(width) << " "
             << fmt(height) << "\">\n";
        out_ << "<rect x=\"0\" y=\"0\" width=\"" << fmt(width) << "\" height=\""
             << fmt(height) << "\" fill=\"white\"/>\n";
    }

    void line(double x1, double y1, double x2, double y2, const std::string& stroke,
              double stroke_width, const std::string& dash = "",
              const std::string& css_class = "") {
        out_ << "<line";
        if (!css_class.empty()) out_ << " class=\"" << css_class << "\"";
        out_ << " x1=\"" << fmt(x1) << "\" y1=\"" << fmt(y1) << "\" x2=\"" << fmt(x2)
             << "\" y2=\"" << fmt(y2) << "\" stroke=\"" << stroke << "\" stroke-width=\""
             << fmt(stroke_width) << "\"";
        if (!dash.empty()) out_ << " stroke-dasharray=\"" << dash << "\"";
        out_ << "/>\n";
    }

    void rect(double x, double y, double w, double h, const std::string& fill,
              const std::string& css_class = "") {
        out_ << "<rect";
        if (!css_class.empty()) out_ << " class=\"" << css_class << "\"";
        out_ << " x=\"" << fmt(x) << "\" y=\"" << fmt(y) << "\" width=\"" << fmt(w)
             << "\" height=\"" << fmt(h) << "\" fill=\"" << fill << "\"/>\n";
    }

    void text(double x, double y, const std::string& content, double size = 10.0,
              const std::string& fill = "black", const std::string& anchor = "start") {
        out_ << "<text x=\"" << fmt(x) << "\" y=\"" << fmt(y) << "\" font-size=\""
             << fmt(size) << "\" font-family=\"monospace\" fill=\"" << fill
             << "\" text-anchor=\"" << anchor << "\">" << escape(content) << "</text>\n";
    }

    void polyline(const std::string& points, const std::string& stroke,
                  double stroke_width) {
        out_ << "<polyline points=\"" << points << "\" fill=\"none\" stroke=\"" << stroke
             << "\" stroke-width=\"" << fmt(stroke_width) << "\"/>\n";
    }

    std::string finish() {
        out_ << "</svg>\n";
        return out_.str();
    }

    static std::string fmt(double v) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.2f", v);
        std::string s(buf);
        // trim trailing zeros for compactness, keep at least one decimal form
        while (s.size() > 1 && s.back() == '0') s.pop_back();
        if (!s.empty() && s.back() == '.') s.pop_back();
        return s;
    }

private:
    static std::string escape(const std::string& s) {
        std::string out;
        for (char c : s) {
            if (c == '<') out += "&lt;";
            else if (c == '>') out += "&gt;";
            else if (c == '&') out += "&amp;";
            else out += c;
        }
        return out;
    }

    double width_;
    double height_;
    std::ostringstream out_;
};

}  // namespace sisar
