#include "nlmbench/image_io.hpp"

#include <png.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

namespace nlmbench {

namespace {

std::string lower_ext(const std::string& path) {
    std::string ext = std::filesystem::path(path).extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return ext;
}

// Reads the next whitespace-delimited PGM header token, skipping '#' comments.
std::string next_pgm_token(std::istream& in) {
    std::string tok;
    int ch;
    while ((ch = in.get()) != EOF) {
        if (ch == '#') {
            while (ch != EOF && ch != '\n') ch = in.get();
            continue;
        }
        if (std::isspace(ch)) continue;
        break;
    }
    if (ch == EOF) throw CorruptFile("unexpected end of PGM header");
    while (ch != EOF && !std::isspace(ch) && ch != '#') {
        tok.push_back(static_cast<char>(ch));
        ch = in.get();
    }
    if (ch == '#') in.unget();
    return tok;
}

int parse_header_int(std::istream& in, const char* what) {
    const std::string tok = next_pgm_token(in);
    try {
        std::size_t pos = 0;
        const int v = std::stoi(tok, &pos);
        if (pos != tok.size()) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        throw CorruptFile(std::string("malformed PGM header field: ") + what);
    }
}

Image load_pgm(std::ifstream& in, bool ascii) {
    const int width = parse_header_int(in, "width");
    const int height = parse_header_int(in, "height");
    const int maxval = parse_header_int(in, "maxval");
    if (width < 1 || height < 1) throw CorruptFile("non-positive PGM dimensions");
    if (maxval != 255) {
        throw UnsupportedFormat("only maxval-255 PGM is supported, got maxval " +
                                std::to_string(maxval));
    }
    const std::size_t n = static_cast<std::size_t>(width) * height;
    std::vector<double> data(n);
    if (ascii) {
        for (std::size_t i = 0; i < n; ++i) {
            int v;
            if (!(in >> v)) throw CorruptFile("truncated or non-numeric P2 pixel data");
            if (v < 0 || v > maxval) throw CorruptFile("P2 pixel value out of range");
            data[i] = static_cast<double>(v);
        }
    } else {
        // Exactly one whitespace byte separates the maxval from the raster.
        std::vector<unsigned char> raw(n);
        in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(n));
        if (static_cast<std::size_t>(in.gcount()) != n) {
            throw CorruptFile("truncated P5 pixel data");
        }
        for (std::size_t i = 0; i < n; ++i) data[i] = static_cast<double>(raw[i]);
    }
    return Image::from_data(width, height, std::move(data));
}

struct PngReadGuard {
    png_structp png = nullptr;
    png_infop info = nullptr;
    std::FILE* fp = nullptr;
    ~PngReadGuard() {
        if (png) png_destroy_read_struct(&png, info ? &info : nullptr, nullptr);
        if (fp) std::fclose(fp);
    }
};

Image load_png_file(const std::string& path) {
    PngReadGuard g;
    g.fp = std::fopen(path.c_str(), "rb");
    if (!g.fp) throw IoError("cannot open PNG file: " + path);
    g.png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!g.png) throw IoError("png_create_read_struct failed");
    g.info = png_create_info_struct(g.png);
    if (!g.info) throw IoError("png_create_info_struct failed");
    if (setjmp(png_jmpbuf(g.png))) {
        throw CorruptFile("libpng failed to decode: " + path);
    }
    png_init_io(g.png, g.fp);
    png_read_info(g.png, g.info);

    const png_uint_32 width = png_get_image_width(g.png, g.info);
    const png_uint_32 height = png_get_image_height(g.png, g.info);
    const int bit_depth = png_get_bit_depth(g.png, g.info);
    const int color_type = png_get_color_type(g.png, g.info);
    if (color_type != PNG_COLOR_TYPE_GRAY) {
        throw UnsupportedFormat("PNG is not single-channel grayscale: " + path);
    }
    if (bit_depth != 8) {
        throw UnsupportedFormat("PNG bit depth " + std::to_string(bit_depth) +
                                " is not supported (8-bit only): " + path);
    }
    png_set_interlace_handling(g.png);
    png_read_update_info(g.png, g.info);

    Image img(static_cast<int>(width), static_cast<int>(height));
    std::vector<std::vector<unsigned char>> rows(height, std::vector<unsigned char>(width));
    std::vector<png_bytep> row_ptrs(height);
    for (png_uint_32 r = 0; r < height; ++r) row_ptrs[r] = rows[r].data();
    // Buffers live above this setjmp, so the error path does not jump over
    // their construction.
    if (setjmp(png_jmpbuf(g.png))) {
        throw CorruptFile("libpng failed to decode pixel data: " + path);
    }
    png_read_image(g.png, row_ptrs.data());
    png_read_end(g.png, nullptr);
    for (png_uint_32 r = 0; r < height; ++r) {
        for (png_uint_32 c = 0; c < width; ++c) {
            img.at(static_cast<int>(r), static_cast<int>(c)) = rows[r][c];
        }
    }
    return img;
}

struct PngWriteGuard {
    png_structp png = nullptr;
    png_infop info = nullptr;
    std::FILE* fp = nullptr;
    ~PngWriteGuard() {
        if (png) png_destroy_write_struct(&png, info ? &info : nullptr);
        if (fp) std::fclose(fp);
    }
};

}  // namespace

unsigned char quantize_intensity(double value) {
    const long r = std::lround(value);  // ties away from zero
    return static_cast<unsigned char>(std::clamp(r, 0L, 255L));
}

Image load_image(const std::string& path) {
    if (!std::filesystem::exists(path)) {
        throw FileNotFound("no such file: " + path);
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open file: " + path);
    unsigned char magic[8] = {0};
    in.read(reinterpret_cast<char*>(magic), 8);
    if (in.gcount() < 2) throw CorruptFile("file too short: " + path);
    if (magic[0] == 'P' && (magic[1] == '2' || magic[1] == '5')) {
        in.seekg(2);
        return load_pgm(in, magic[1] == '2');
    }
    static const unsigned char png_sig[8] = {0x89, 'P', 'N', 'G', 0x0d, 0x0a, 0x1a, 0x0a};
    if (in.gcount() == 8 && std::equal(magic, magic + 8, png_sig)) {
        in.close();
        return load_png_file(path);
    }
    if (magic[0] == 'P' && magic[1] >= '1' && magic[1] <= '6') {
        throw UnsupportedFormat("only P2/P5 grayscale PGM netpbm variants are supported: " + path);
    }
    throw UnsupportedFormat("not a PGM or PNG file: " + path);
}

void save_pgm(const Image& img, const std::string& path, bool ascii) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open file for writing: " + path);
    out << (ascii ? "P2" : "P5") << "\n"
        << img.width() << " " << img.height() << "\n255\n";
    if (ascii) {
        for (int r = 0; r < img.height(); ++r) {
            for (int c = 0; c < img.width(); ++c) {
                out << static_cast<int>(quantize_intensity(img.at(r, c)));
                out << (c + 1 == img.width() ? '\n' : ' ');
            }
        }
    } else {
        std::vector<unsigned char> raw(img.size());
        for (std::size_t i = 0; i < img.size(); ++i) {
            raw[i] = quantize_intensity(img.data()[i]);
        }
        out.write(reinterpret_cast<const char*>(raw.data()),
                  static_cast<std::streamsize>(raw.size()));
    }
    if (!out) throw IoError("write failed: " + path);
}

void save_png(const Image& img, const std::string& path) {
    PngWriteGuard g;
    g.fp = std::fopen(path.c_str(), "wb");
    if (!g.fp) throw IoError("cannot open file for writing: " + path);
    g.png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!g.png) throw IoError("png_create_write_struct failed");
    g.info = png_create_info_struct(g.png);
    if (!g.info) throw IoError("png_create_info_struct failed");
    if (setjmp(png_jmpbuf(g.png))) {
        throw IoError("libpng failed to encode: " + path);
    }
    png_init_io(g.png, g.fp);
    png_set_IHDR(g.png, g.info, static_cast<png_uint_32>(img.width()),
                 static_cast<png_uint_32>(img.height()), 8, PNG_COLOR_TYPE_GRAY,
                 PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(g.png, g.info);
    std::vector<unsigned char> row(img.width());
    for (int r = 0; r < img.height(); ++r) {
        for (int c = 0; c < img.width(); ++c) row[c] = quantize_intensity(img.at(r, c));
        png_write_row(g.png, row.data());
    }
    png_write_end(g.png, nullptr);
}

void save_image(const Image& img, const std::string& path) {
    const std::string ext = lower_ext(path);
    if (ext == ".pgm") {
        save_pgm(img, path, /*ascii=*/false);
    } else if (ext == ".png") {
        save_png(img, path);
    } else {
        throw UnsupportedFormat("unsupported output extension '" + ext + "' (use .pgm or .png)");
    }
}

}  // namespace nlmbench
