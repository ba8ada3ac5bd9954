#include "sema/chart.hpp"

#include "chart_geometry.hpp"

#include <cmath>
#include <sstream>

namespace sema {
namespace {

// WinAnsi-escaped PDF string; unmapped code points become '?'
std::string pdf_string(const std::string& utf8) {
    std::string out = "(";
    std::size_t i = 0;
    while (i < utf8.size()) {
        unsigned char c = static_cast<unsigned char>(utf8[i]);
        unsigned cp;
        if (c < 0x80) {
            cp = c;
            ++i;
        } else {
            int extra = (c & 0xE0) == 0xC0 ? 1 : (c & 0xF0) == 0xE0 ? 2 : 3;
            cp = c & (0x3F >> extra);
            for (int k = 1; k <= extra && i + std::size_t(k) < utf8.size(); ++k) {
                cp = (cp << 6) | (static_cast<unsigned char>(utf8[i + std::size_t(k)]) & 0x3F);
            }
            i += std::size_t(extra) + 1;
        }
        char ch;
        if (cp == 0xB1) ch = char(0xB1);  // plus-minus exists in WinAnsi
        else if (cp >= 0x20 && cp < 0x7F) ch = char(cp);
        else ch = '?';
        if (ch == '(' || ch == ')' || ch == '\\') out += '\\';
        out += ch;
    }
    out += ")";
    return out;
}

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

void set_fill(std::ostringstream& s, const std::string& hex) {
    auto comp = [&](int pos) {
        return std::stoi(hex.substr(std::size_t(pos), 2), nullptr, 16) / 255.0;
    };
    s << num(comp(1)) << " " << num(comp(3)) << " " << num(comp(5)) << " rg\n";
}

void circle(std::ostringstream& s, double cx, double cy, double r) {
    const double k = 0.5522847498 * r;
    s << num(cx + r) << " " << num(cy) << " m\n";
    s << num(cx + r) << " " << num(cy + k) << " " << num(cx + k) << " " << num(cy + r) << " "
      << num(cx) << " " << num(cy + r) << " c\n";
    s << num(cx - k) << " " << num(cy + r) << " " << num(cx - r) << " " << num(cy + k) << " "
      << num(cx - r) << " " << num(cy) << " c\n";
    s << num(cx - r) << " " << num(cy - k) << " " << num(cx - k) << " " << num(cy - r) << " "
      << num(cx) << " " << num(cy - r) << " c\n";
    s << num(cx + k) << " " << num(cy - r) << " " << num(cx + r) << " " << num(cy - k) << " "
      << num(cx + r) << " " << num(cy) << " c\n";
    s << "f\n";
}

// crude Helvetica width estimate for right/center alignment
double text_width(const std::string& s, double size) { return 0.55 * size * double(s.size()); }

}  // namespace

std::vector<unsigned char> render_scatter_pdf(const ChartSpec& spec) {
    auto g = detail::compute_geometry(spec);
    const double h = spec.height;  // flip y: PDF origin is bottom-left

    std::ostringstream content;
    content << "1 1 1 rg\n0 0 " << spec.width << " " << spec.height << " re f\n";
    for (const auto& m : g.markers) {
        set_fill(content, g.colors[m.color_index]);
        circle(content, m.x, h - m.y, spec.marker_radius);
    }
    content << "0 0 0 rg\n";
    if (!spec.title.empty()) {
        content << "BT /F1 16 Tf " << num(g.title_x - text_width(spec.title, 16) / 2.0) << " "
                << num(h - g.title_y) << " Td " << pdf_string(spec.title) << " Tj ET\n";
    }
    for (const auto& k : g.key) {
        set_fill(content, k.color);
        circle(content, k.x, h - (k.y - 4.0), 5.0);
        content << "0 0 0 rg\nBT /F1 12 Tf " << num(k.x + 10.0) << " " << num(h - k.y)
                << " Td " << pdf_string(k.language) << " Tj ET\n";
    }
    content << "BT /F1 13 Tf " << num(g.legend_x - text_width(spec.legend.line1, 13)) << " "
            << num(h - g.legend_y1) << " Td " << pdf_string(spec.legend.line1) << " Tj ET\n";
    content << "BT /F1 13 Tf " << num(g.legend_x - text_width(spec.legend.line2, 13)) << " "
            << num(h - g.legend_y2) << " Td " << pdf_string(spec.legend.line2) << " Tj ET\n";
    const std::string stream = content.str();

    std::ostringstream pdf;
    std::vector<std::size_t> offsets;
    auto begin_obj = [&](int id) {
        offsets.push_back(std::size_t(pdf.tellp()));
        pdf << id << " 0 obj\n";
    };
    pdf << "%PDF-1.4\n";
    begin_obj(1);
    pdf << "<< /Type /Catalog /Pages 2 0 R >>\nendobj\n";
    begin_obj(2);
    pdf << "<< /Type /Pages /Kids [3 0 R] /Count 1 >>\nendobj\n";
    begin_obj(3);
    pdf << "<< /Type /Page /Parent 2 0 R /MediaBox [0 0 " << spec.width << " " << spec.height
        << "] /Contents 4 0 R /Resources << /Font << /F1 5 0 R >> >> >>\nendobj\n";
    begin_obj(4);
    pdf << "<< /Length " << stream.size() << " >>\nstream\n" << stream << "endstream\nendobj\n";
    begin_obj(5);
    pdf << "<< /Type /Font /Subtype /Type1 /BaseFont /Helvetica "
           "/Encoding /WinAnsiEncoding >>\nendobj\n";

    const std::size_t xref_pos = std::size_t(pdf.tellp());
    pdf << "xref\n0 " << offsets.size() + 1 << "\n";
    pdf << "0000000000 65535 f \n";
    for (std::size_t off : offsets) {
        char line[32];
        std::snprintf(line, sizeof line, "%010zu 00000 n \n", off);
        pdf << line;
    }
    pdf << "trailer\n<< /Size " << offsets.size() + 1
        << " /Root 1 0 R >>\nstartxref\n" << xref_pos << "\n%%EOF\n";

    const std::string s = pdf.str();
    return {s.begin(), s.end()};
}

}  // namespace sema
