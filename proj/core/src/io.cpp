#include "foeed/io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <iterator>
#include <sstream>
#include <system_error>

namespace foeed {

namespace {

class HeaderReader {
 public:
  explicit HeaderReader(const std::string& bytes) : bytes_(bytes) {}

  std::string token() {
    skip_space_and_comments();
    std::string t;
    while (pos_ < bytes_.size() && !std::isspace(static_cast<unsigned char>(bytes_[pos_]))) {
      t.push_back(bytes_[pos_++]);
    }
    return t;
  }

  int integer(const char* what) {
    const std::string t = token();
    if (t.empty() || !std::all_of(t.begin(), t.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
      throw IoError(std::string("netpbm: bad ") + what);
    }
    return std::stoi(t);
  }

  // Exactly one whitespace byte separates the header from the raster.
  std::size_t raster_offset() {
    if (pos_ >= bytes_.size() || !std::isspace(static_cast<unsigned char>(bytes_[pos_]))) {
      throw IoError("netpbm: missing separator before raster");
    }
    return pos_ + 1;
  }

 private:
  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      const char c = bytes_[pos_];
      if (c == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  const std::string& bytes_;
  std::size_t pos_ = 0;
};

std::string read_all(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

Raster8 read_netpbm(const std::filesystem::path& path) {
  const std::string bytes = read_all(path);
  HeaderReader header(bytes);
  const std::string magic = header.token();
  Raster8 r;
  if (magic == "P5") {
    r.channels = 1;
  } else if (magic == "P6") {
    r.channels = 3;
  } else {
    throw IoError(path.string() + ": not a binary PGM/PPM file");
  }
  r.width = header.integer("width");
  r.height = header.integer("height");
  const int maxval = header.integer("maxval");
  if (r.width < 1 || r.height < 1) throw IoError(path.string() + ": empty image");
  if (maxval != 255) throw IoError(path.string() + ": only maxval 255 is supported");

  const std::size_t offset = header.raster_offset();
  const std::size_t n = static_cast<std::size_t>(r.width) * r.height * r.channels;
  if (bytes.size() < offset + n) throw IoError(path.string() + ": truncated raster");
  r.data.assign(bytes.begin() + static_cast<std::ptrdiff_t>(offset),
                bytes.begin() + static_cast<std::ptrdiff_t>(offset + n));
  return r;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& contents) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + tmp.string());
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) throw IoError("write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw IoError("cannot move " + tmp.string() + " to " + path.string());
  }
}

void write_netpbm(const std::filesystem::path& path, const Raster8& r) {
  if (r.channels != 1 && r.channels != 3) throw IoError("netpbm: channels must be 1 or 3");
  const std::size_t n = static_cast<std::size_t>(r.width) * r.height * r.channels;
  if (r.data.size() != n) throw IoError("netpbm: raster size mismatch");
  std::ostringstream os;
  os << (r.channels == 1 ? "P5" : "P6") << '\n' << r.width << ' ' << r.height << "\n255\n";
  os.write(reinterpret_cast<const char*>(r.data.data()), static_cast<std::streamsize>(n));
  write_file_atomic(path, os.str());
}

std::uint8_t quantize(double v) {
  const double r = std::round(v);
  return static_cast<std::uint8_t>(std::clamp(r, 0.0, 255.0));
}

std::vector<ImageGrid> to_channels(const Raster8& r) {
  std::vector<ImageGrid> out(static_cast<std::size_t>(r.channels), ImageGrid(r.width, r.height));
  for (std::size_t i = 0; i < out[0].size(); ++i) {
    for (int c = 0; c < r.channels; ++c) {
      out[static_cast<std::size_t>(c)][i] = r.data[i * r.channels + c];
    }
  }
  return out;
}

Raster8 from_channels(const std::vector<ImageGrid>& channels) {
  if (channels.size() != 1 && channels.size() != 3) {
    throw std::invalid_argument("from_channels: expected 1 or 3 channels");
  }
  const ImageGrid& first = channels.front();
  for (const ImageGrid& c : channels) {
    if (!c.same_shape(first)) throw std::invalid_argument("from_channels: channel sizes differ");
  }
  Raster8 r{first.width(), first.height(), static_cast<int>(channels.size()), {}};
  r.data.resize(first.size() * channels.size());
  for (std::size_t i = 0; i < first.size(); ++i) {
    for (std::size_t c = 0; c < channels.size(); ++c) {
      r.data[i * channels.size() + c] = quantize(channels[c][i]);
    }
  }
  return r;
}

Mask read_mask(const std::filesystem::path& path) {
  const Raster8 r = read_netpbm(path);
  if (r.channels != 1) throw IoError(path.string() + ": mask must be a single-channel PGM");
  Mask m(r.width, r.height, false);
  for (std::size_t i = 0; i < r.data.size(); ++i) m.set(i, r.data[i] >= 128);
  return m;
}

void write_mask(const std::filesystem::path& path, const Mask& mask) {
  Raster8 r{mask.width(), mask.height(), 1, {}};
  r.data.resize(mask.size());
  for (std::size_t i = 0; i < mask.size(); ++i) r.data[i] = mask.known(i) ? 255 : 0;
  write_netpbm(path, r);
}

}  // namespace foeed
