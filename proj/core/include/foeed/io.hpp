#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "foeed/grid.hpp"

namespace foeed {

/// Raised for unreadable, unwritable or malformed files.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// 8-bit interleaved raster as stored in a binary netpbm file.
struct Raster8 {
  int width = 0;
  int height = 0;
  int channels = 0;  // 1 (P5) or 3 (P6)
  std::vector<std::uint8_t> data;

  friend bool operator==(const Raster8&, const Raster8&) = default;
};

/// Reads a binary PGM (P5) or PPM (P6) with maxval 255.
Raster8 read_netpbm(const std::filesystem::path& path);

/// Writes P5 for one channel and P6 for three, via a temporary file renamed
/// into place.
void write_netpbm(const std::filesystem::path& path, const Raster8& raster);

/// Splits a raster into one double-precision grid per channel.
std::vector<ImageGrid> to_channels(const Raster8& raster);

/// Inverse of to_channels. Values are rounded half away from zero and
/// clamped to [0, 255].
Raster8 from_channels(const std::vector<ImageGrid>& channels);

std::uint8_t quantize(double v);

/// Mask files are single-channel PGMs: 255 known, 0 unknown. On reading,
/// values of 128 and above count as known.
Mask read_mask(const std::filesystem::path& path);
void write_mask(const std::filesystem::path& path, const Mask& mask);

/// Writes `contents` to a temporary sibling and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);

}  // namespace foeed
