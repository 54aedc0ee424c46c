#pragma once

#include <cstddef>
#include <vector>

#include "nlmbench/errors.hpp"

namespace nlmbench {

/// Grayscale image with real-valued intensities, row-major, top-left origin.
/// The nominal range is [0,255] but values outside it are allowed while an
/// image moves through the pipeline; quantization happens only on save.
class Image {
public:
    Image() = default;
    Image(int width, int height, double fill = 0.0);

    /// Takes ownership of a row-major buffer. Throws InvalidArgument if the
    /// buffer size does not match width*height or any value is non-finite.
    static Image from_data(int width, int height, std::vector<double> data);

    int width() const { return width_; }
    int height() const { return height_; }
    std::size_t size() const { return data_.size(); }

    double at(int row, int col) const { return data_[static_cast<std::size_t>(row) * width_ + col]; }
    double& at(int row, int col) { return data_[static_cast<std::size_t>(row) * width_ + col]; }

    const std::vector<double>& data() const { return data_; }
    std::vector<double>& data() { return data_; }

    bool same_size(const Image& other) const {
        return width_ == other.width_ && height_ == other.height_;
    }

private:
    int width_ = 0;
    int height_ = 0;
    std::vector<double> data_;
};

/// Square neighborhood of intensities around a center pixel, row-major scan
/// order. Out-of-bounds positions are filled by mirror reflection.
struct Patch {
    int side = 0;
    int center_row = 0;
    int center_col = 0;
    std::vector<double> values;
};

/// Reflects an index about the array boundaries without repeating the edge
/// sample (index -1 maps to 1, index n maps to n-2).
int mirror_index(int i, int n);

/// Extracts the side x side patch centered at (row, col). side must be odd and
/// the center must lie inside the image.
Patch extract_patch(const Image& img, int row, int col, int side);

/// Per-pixel difference (filtered - reference) shifted by +128 so that a zero
/// residual renders as mid-gray when saved.
Image residual(const Image& filtered, const Image& reference);

/// Center crop to at most (max_width, max_height); returns the input unchanged
/// when it already fits.
Image crop_center(const Image& img, int max_width, int max_height);

}  // namespace nlmbench
