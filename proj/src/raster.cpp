#include "sema/chart.hpp"

#include "chart_geometry.hpp"

#include <zlib.h>

#include <cmath>
#include <cstring>

namespace sema {
namespace {

#include "font_bitmap.inc"

constexpr int kFontHeight = 14;

const Glyph* find_glyph(unsigned cp) {
    for (const auto& g : kFont) {
        if (g.cp == cp) return &g;
    }
    return nullptr;
}

// decode one UTF-8 code point; on malformed input consumes one byte
unsigned next_codepoint(const std::string& s, std::size_t& i) {
    unsigned char c = static_cast<unsigned char>(s[i]);
    if (c < 0x80) { ++i; return c; }
    int extra = (c & 0xE0) == 0xC0 ? 1 : (c & 0xF0) == 0xE0 ? 2 : (c & 0xF8) == 0xF0 ? 3 : 0;
    if (extra == 0 || i + std::size_t(extra) >= s.size()) { ++i; return '?'; }
    unsigned cp = c & (0x3F >> extra);
    for (int k = 1; k <= extra; ++k) cp = (cp << 6) | (static_cast<unsigned char>(s[i + k]) & 0x3F);
    i += std::size_t(extra) + 1;
    return cp;
}

struct Rgb {
    unsigned char r, g, b;
};

Rgb parse_hex(const std::string& color) {
    if (color.size() != 7 || color[0] != '#') throw chart_error("bad color: " + color);
    auto hex = [&](int pos) {
        return static_cast<unsigned char>(std::stoi(color.substr(std::size_t(pos), 2), nullptr, 16));
    };
    return {hex(1), hex(3), hex(5)};
}

class Canvas {
public:
    Canvas(int w, int h) : w_(w), h_(h), pixels_(std::size_t(w) * std::size_t(h) * 3, 255) {}

    void blend(int x, int y, Rgb c, double alpha) {
        if (x < 0 || y < 0 || x >= w_ || y >= h_) return;
        auto* p = &pixels_[(std::size_t(y) * std::size_t(w_) + std::size_t(x)) * 3];
        p[0] = static_cast<unsigned char>(std::lround(p[0] * (1.0 - alpha) + c.r * alpha));
        p[1] = static_cast<unsigned char>(std::lround(p[1] * (1.0 - alpha) + c.g * alpha));
        p[2] = static_cast<unsigned char>(std::lround(p[2] * (1.0 - alpha) + c.b * alpha));
    }

    void fill_circle(double cx, double cy, double r, Rgb c, double alpha) {
        for (int y = int(std::floor(cy - r - 1)); y <= int(std::ceil(cy + r + 1)); ++y) {
            for (int x = int(std::floor(cx - r - 1)); x <= int(std::ceil(cx + r + 1)); ++x) {
                const double d = std::hypot(x + 0.5 - cx, y + 0.5 - cy);
                if (d <= r) {
                    blend(x, y, c, alpha);
                } else if (d < r + 1.0) {
                    blend(x, y, c, alpha * (r + 1.0 - d));  // soft edge
                }
            }
        }
    }

    // returns the advance width
    int draw_glyph(int x, int y, unsigned cp, Rgb c) {
        const Glyph* g = find_glyph(cp);
        if (!g) g = find_glyph('?');
        for (int row = 0; row < kFontHeight; ++row) {
            for (int col = 0; col < 16; ++col) {
                if (g->rows[row] & (1u << col)) blend(x + col, y + row, c, 1.0);
            }
        }
        return g->advance;
    }

    int text_width(const std::string& s) const {
        int w = 0;
        std::size_t i = 0;
        while (i < s.size()) {
            const Glyph* g = find_glyph(next_codepoint(s, i));
            if (!g) g = find_glyph('?');
            w += g->advance;
        }
        return w;
    }

    void draw_text(int x, int y, const std::string& s, Rgb c) {
        std::size_t i = 0;
        while (i < s.size()) x += draw_glyph(x, y, next_codepoint(s, i), c);
    }

    int width() const { return w_; }
    int height() const { return h_; }
    const std::vector<unsigned char>& pixels() const { return pixels_; }

private:
    int w_, h_;
    std::vector<unsigned char> pixels_;
};

void put_be32(std::vector<unsigned char>& out, std::uint32_t v) {
    out.push_back((v >> 24) & 0xFF);
    out.push_back((v >> 16) & 0xFF);
    out.push_back((v >> 8) & 0xFF);
    out.push_back(v & 0xFF);
}

void put_chunk(std::vector<unsigned char>& out, const char type[4],
               const std::vector<unsigned char>& data) {
    put_be32(out, std::uint32_t(data.size()));
    std::size_t crc_start = out.size();
    out.insert(out.end(), type, type + 4);
    out.insert(out.end(), data.begin(), data.end());
    const auto crc = ::crc32(0, out.data() + crc_start, uInt(out.size() - crc_start));
    put_be32(out, std::uint32_t(crc));
}

std::vector<unsigned char> encode_png(const Canvas& canvas) {
    std::vector<unsigned char> out = {0x89, 'P', 'N', 'G', 0x0D, 0x0A, 0x1A, 0x0A};

    std::vector<unsigned char> ihdr;
    put_be32(ihdr, std::uint32_t(canvas.width()));
    put_be32(ihdr, std::uint32_t(canvas.height()));
    ihdr.push_back(8);  // bit depth
    ihdr.push_back(2);  // color type: truecolor
    ihdr.push_back(0);
    ihdr.push_back(0);
    ihdr.push_back(0);
    put_chunk(out, "IHDR", ihdr);

    // raw scanlines with filter byte 0
    const std::size_t stride = std::size_t(canvas.width()) * 3;
    std::vector<unsigned char> raw;
    raw.reserve((stride + 1) * std::size_t(canvas.height()));
    for (int y = 0; y < canvas.height(); ++y) {
        raw.push_back(0);
        const auto* row = canvas.pixels().data() + std::size_t(y) * stride;
        raw.insert(raw.end(), row, row + stride);
    }
    uLongf dest_len = compressBound(uLong(raw.size()));
    std::vector<unsigned char> compressed(dest_len);
    if (compress2(compressed.data(), &dest_len, raw.data(), uLong(raw.size()), 6) != Z_OK) {
        throw chart_error("PNG deflate failed");
    }
    compressed.resize(dest_len);
    put_chunk(out, "IDAT", compressed);
    put_chunk(out, "IEND", {});
    return out;
}

}  // namespace

std::vector<unsigned char> render_scatter_png(const ChartSpec& spec) {
    auto g = detail::compute_geometry(spec);
    Canvas canvas(spec.width, spec.height);
    const Rgb black{0, 0, 0};

    if (!spec.title.empty()) {
        canvas.draw_text(int(g.title_x) - canvas.text_width(spec.title) / 2,
                         int(g.title_y) - kFontHeight + 2, spec.title, black);
    }
    for (const auto& m : g.markers) {
        canvas.fill_circle(m.x, m.y, spec.marker_radius, parse_hex(g.colors[m.color_index]),
                           spec.marker_opacity);
    }
    for (const auto& k : g.key) {
        canvas.fill_circle(k.x, k.y - 4.0, 5.0, parse_hex(k.color), 1.0);
        canvas.draw_text(int(k.x) + 10, int(k.y) - kFontHeight + 4, k.language, black);
    }
    canvas.draw_text(int(g.legend_x) - canvas.text_width(spec.legend.line1),
                     int(g.legend_y1) - kFontHeight + 2, spec.legend.line1, black);
    canvas.draw_text(int(g.legend_x) - canvas.text_width(spec.legend.line2),
                     int(g.legend_y2) - kFontHeight + 2, spec.legend.line2, black);
    return encode_png(canvas);
}

}  // namespace sema
