#pragma once

#include <string>

#include "nlmbench/image.hpp"

namespace nlmbench {

/// Loads a PGM (P2 or P5) or 8-bit grayscale PNG file. The format is detected
/// from the file's magic bytes, not its extension. Only maxval-255 PGM and
/// 8-bit single-channel PNG are accepted; anything else throws
/// UnsupportedFormat.
Image load_image(const std::string& path);

/// Writes an 8-bit grayscale file chosen by extension: .pgm (binary P5) or
/// .png. Intensities are rounded half-away-from-zero and clamped to [0,255];
/// this is the only place in the pipeline where clamping happens.
void save_image(const Image& img, const std::string& path);

/// PGM writers usable independently of the extension dispatch.
void save_pgm(const Image& img, const std::string& path, bool ascii = false);
void save_png(const Image& img, const std::string& path);

/// Quantization rule used by the writers: round half away from zero, then
/// clamp to [0,255].
unsigned char quantize_intensity(double value);

}  // namespace nlmbench
