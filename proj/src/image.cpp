#include "nlmbench/image.hpp"

#include <cmath>
#include <utility>

namespace nlmbench {

Image::Image(int width, int height, double fill) {
    if (width < 1 || height < 1) {
        throw InvalidArgument("image dimensions must be positive");
    }
    width_ = width;
    height_ = height;
    data_.assign(static_cast<std::size_t>(width) * height, fill);
}

Image Image::from_data(int width, int height, std::vector<double> data) {
    if (width < 1 || height < 1) {
        throw InvalidArgument("image dimensions must be positive");
    }
    if (data.size() != static_cast<std::size_t>(width) * height) {
        throw InvalidArgument("image buffer size does not match width*height");
    }
    for (double v : data) {
        if (!std::isfinite(v)) {
            throw InvalidArgument("image intensities must be finite");
        }
    }
    Image img;
    img.width_ = width;
    img.height_ = height;
    img.data_ = std::move(data);
    return img;
}

int mirror_index(int i, int n) {
    if (n == 1) return 0;
    // Reflect about the boundary samples until the index lands inside; the
    // period of the reflected sequence is 2(n-1).
    const int period = 2 * (n - 1);
    i = i % period;
    if (i < 0) i += period;
    if (i >= n) i = period - i;
    return i;
}

Patch extract_patch(const Image& img, int row, int col, int side) {
    if (side < 1 || side % 2 == 0) {
        throw InvalidArgument("patch side must be odd and >= 1");
    }
    if (row < 0 || row >= img.height() || col < 0 || col >= img.width()) {
        throw InvalidArgument("patch center outside image bounds");
    }
    Patch p;
    p.side = side;
    p.center_row = row;
    p.center_col = col;
    p.values.resize(static_cast<std::size_t>(side) * side);
    const int radius = side / 2;
    std::size_t k = 0;
    for (int dr = -radius; dr <= radius; ++dr) {
        const int r = mirror_index(row + dr, img.height());
        for (int dc = -radius; dc <= radius; ++dc) {
            const int c = mirror_index(col + dc, img.width());
            p.values[k++] = img.at(r, c);
        }
    }
    return p;
}

Image residual(const Image& filtered, const Image& reference) {
    if (!filtered.same_size(reference)) {
        throw DimensionMismatch("residual requires equal image dimensions");
    }
    Image out(filtered.width(), filtered.height());
    for (std::size_t i = 0; i < filtered.size(); ++i) {
        out.data()[i] = filtered.data()[i] - reference.data()[i] + 128.0;
    }
    return out;
}

Image crop_center(const Image& img, int max_width, int max_height) {
    if (max_width < 1 || max_height < 1) {
        throw InvalidArgument("crop dimensions must be positive");
    }
    const int w = std::min(img.width(), max_width);
    const int h = std::min(img.height(), max_height);
    if (w == img.width() && h == img.height()) return img;
    const int r0 = (img.height() - h) / 2;
    const int c0 = (img.width() - w) / 2;
    Image out(w, h);
    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) {
            out.at(r, c) = img.at(r0 + r, c0 + c);
        }
    }
    return out;
}

}  // namespace nlmbench
