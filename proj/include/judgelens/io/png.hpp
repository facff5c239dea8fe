#pragma once

#include <zlib.h>

#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "judgelens/common.hpp"

// Minimal PNG support for 8-bit grayscale, non-interlaced images — the only
// flavor this project reads or writes.

namespace judgelens::io {

struct GrayImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;  // row-major
};

namespace pngdetail {

inline void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  out.push_back(static_cast<std::uint8_t>(v >> 24));
  out.push_back(static_cast<std::uint8_t>(v >> 16));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
  out.push_back(static_cast<std::uint8_t>(v));
}

inline std::uint32_t read_u32(const std::uint8_t* p) {
  return (static_cast<std::uint32_t>(p[0]) << 24) | (static_cast<std::uint32_t>(p[1]) << 16) |
         (static_cast<std::uint32_t>(p[2]) << 8) | static_cast<std::uint32_t>(p[3]);
}

inline void append_chunk(std::vector<std::uint8_t>& out, const char type[4],
                         const std::vector<std::uint8_t>& data) {
  put_u32(out, static_cast<std::uint32_t>(data.size()));
  const std::size_t crc_start = out.size();
  out.insert(out.end(), type, type + 4);
  out.insert(out.end(), data.begin(), data.end());
  const std::uint32_t crc = static_cast<std::uint32_t>(
      ::crc32(0L, out.data() + crc_start, static_cast<uInt>(4 + data.size())));
  put_u32(out, crc);
}

inline int paeth(int a, int b, int c) {
  const int p = a + b - c;
  const int pa = std::abs(p - a), pb = std::abs(p - b), pc = std::abs(p - c);
  if (pa <= pb && pa <= pc) return a;
  if (pb <= pc) return b;
  return c;
}

}  // namespace pngdetail

inline std::vector<std::uint8_t> encode_gray_png(const GrayImage& img) {
  if (img.width <= 0 || img.height <= 0 ||
      img.pixels.size() != static_cast<std::size_t>(img.width) * img.height)
    throw DataError("encode_gray_png: inconsistent image dimensions");

  std::vector<std::uint8_t> raw;
  raw.reserve(static_cast<std::size_t>(img.height) * (img.width + 1));
  for (int r = 0; r < img.height; ++r) {
    raw.push_back(0);  // filter type none
    const auto* row = img.pixels.data() + static_cast<std::size_t>(r) * img.width;
    raw.insert(raw.end(), row, row + img.width);
  }

  uLongf bound = ::compressBound(static_cast<uLong>(raw.size()));
  std::vector<std::uint8_t> compressed(bound);
  if (::compress2(compressed.data(), &bound, raw.data(), static_cast<uLong>(raw.size()), 6) != Z_OK)
    throw NumericError("encode_gray_png: deflate failed");
  compressed.resize(bound);

  std::vector<std::uint8_t> out;
  static const std::uint8_t signature[8] = {137, 80, 78, 71, 13, 10, 26, 10};
  out.insert(out.end(), signature, signature + 8);

  std::vector<std::uint8_t> ihdr;
  pngdetail::put_u32(ihdr, static_cast<std::uint32_t>(img.width));
  pngdetail::put_u32(ihdr, static_cast<std::uint32_t>(img.height));
  ihdr.push_back(8);  // bit depth
  ihdr.push_back(0);  // grayscale
  ihdr.push_back(0);  // compression
  ihdr.push_back(0);  // filter
  ihdr.push_back(0);  // no interlace
  pngdetail::append_chunk(out, "IHDR", ihdr);
  pngdetail::append_chunk(out, "IDAT", compressed);
  pngdetail::append_chunk(out, "IEND", {});
  return out;
}

inline void write_gray_png(const std::filesystem::path& path, const GrayImage& img) {
  const auto bytes = encode_gray_png(img);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write file: " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw DataError("write failed: " + path.string());
}

inline GrayImage decode_gray_png(const std::vector<std::uint8_t>& bytes,
                                 const std::string& name) {
  static const std::uint8_t signature[8] = {137, 80, 78, 71, 13, 10, 26, 10};
  if (bytes.size() < 8 || std::memcmp(bytes.data(), signature, 8) != 0)
    throw DataError("not a PNG file: " + name);

  GrayImage img;
  std::vector<std::uint8_t> idat;
  bool seen_ihdr = false;
  std::size_t pos = 8;
  while (pos + 8 <= bytes.size()) {
    const std::uint32_t len = pngdetail::read_u32(bytes.data() + pos);
    if (pos + 12 + len > bytes.size()) throw DataError("truncated PNG chunk: " + name);
    const char* type = reinterpret_cast<const char*>(bytes.data() + pos + 4);
    const std::uint8_t* data = bytes.data() + pos + 8;
    if (std::memcmp(type, "IHDR", 4) == 0) {
      if (len != 13) throw DataError("bad IHDR: " + name);
      img.width = static_cast<int>(pngdetail::read_u32(data));
      img.height = static_cast<int>(pngdetail::read_u32(data + 4));
      const int bit_depth = data[8], color = data[9], interlace = data[12];
      if (bit_depth != 8 || color != 0 || interlace != 0)
        throw DataError("unsupported PNG format (need 8-bit grayscale, no interlace): " + name);
      seen_ihdr = true;
    } else if (std::memcmp(type, "IDAT", 4) == 0) {
      idat.insert(idat.end(), data, data + len);
    } else if (std::memcmp(type, "IEND", 4) == 0) {
      break;
    }
    pos += 12 + len;
  }
  if (!seen_ihdr || img.width <= 0 || img.height <= 0)
    throw DataError("missing or invalid IHDR: " + name);

  const std::size_t stride = static_cast<std::size_t>(img.width) + 1;
  std::vector<std::uint8_t> raw(stride * img.height);
  uLongf raw_len = static_cast<uLongf>(raw.size());
  if (::uncompress(raw.data(), &raw_len, idat.data(), static_cast<uLong>(idat.size())) != Z_OK ||
      raw_len != raw.size())
    throw DataError("PNG inflate failed: " + name);

  img.pixels.assign(static_cast<std::size_t>(img.width) * img.height, 0);
  std::vector<std::uint8_t> prev(img.width, 0);
  for (int r = 0; r < img.height; ++r) {
    const std::uint8_t filter = raw[static_cast<std::size_t>(r) * stride];
    const std::uint8_t* src = raw.data() + static_cast<std::size_t>(r) * stride + 1;
    std::uint8_t* dst = img.pixels.data() + static_cast<std::size_t>(r) * img.width;
    for (int c = 0; c < img.width; ++c) {
      const int left = c > 0 ? dst[c - 1] : 0;
      const int up = prev[c];
      const int up_left = c > 0 ? prev[c - 1] : 0;
      int v = src[c];
      switch (filter) {
        case 0: break;
        case 1: v += left; break;
        case 2: v += up; break;
        case 3: v += (left + up) / 2; break;
        case 4: v += pngdetail::paeth(left, up, up_left); break;
        default: throw DataError("unsupported PNG filter type: " + name);
      }
      dst[c] = static_cast<std::uint8_t>(v & 0xff);
    }
    std::memcpy(prev.data(), dst, img.width);
  }
  return img;
}

inline GrayImage read_gray_png(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open image file: " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  return decode_gray_png(bytes, path.string());
}

}  // namespace judgelens::io
