//
// Copyright (c) 2026 The ctmg authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "png_io.hpp"

#include <png.h>

#include <cmath>
#include <cstdio>
#include <vector>

namespace ctmg::cli {

namespace {

struct FileHandle {
  std::FILE* fp = nullptr;
  explicit FileHandle(const std::filesystem::path& path, const char* mode)
      : fp(std::fopen(path.string().c_str(), mode)) {}
  ~FileHandle() {
    if (fp) std::fclose(fp);
  }
  FileHandle(const FileHandle&) = delete;
  FileHandle& operator=(const FileHandle&) = delete;
};

}  // namespace

ImageTensor read_png(const std::filesystem::path& path) {
  FileHandle file(path, "rb");
  if (!file.fp) throw io_error("png: cannot open " + path.string());

  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png) throw io_error("png: allocation failure");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_read_struct(&png, nullptr, nullptr);
    throw io_error("png: allocation failure");
  }

  std::vector<png_byte> pixels;
  std::vector<png_bytep> rows;
  png_uint_32 width = 0, height = 0;

  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw io_error("png: failed to decode " + path.string());
  }

  png_init_io(png, file.fp);
  png_read_info(png, info);
  width = png_get_image_width(png, info);
  height = png_get_image_height(png, info);
  const png_byte color_type = png_get_color_type(png, info);
  const png_byte bit_depth = png_get_bit_depth(png, info);

  if (bit_depth == 16) png_set_strip_16(png);
  if (color_type == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
  if (color_type == PNG_COLOR_TYPE_GRAY && bit_depth < 8) png_set_expand_gray_1_2_4_to_8(png);
  if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(png);
  if (color_type == PNG_COLOR_TYPE_GRAY || color_type == PNG_COLOR_TYPE_GRAY_ALPHA)
    png_set_gray_to_rgb(png);
  png_set_strip_alpha(png);
  png_read_update_info(png, info);

  if (png_get_rowbytes(png, info) != static_cast<std::size_t>(width) * 3) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw io_error("png: unexpected layout after conversion in " + path.string());
  }

  pixels.resize(static_cast<std::size_t>(width) * height * 3);
  rows.resize(height);
  for (png_uint_32 r = 0; r < height; ++r)
    rows[r] = pixels.data() + static_cast<std::size_t>(r) * width * 3;
  png_read_image(png, rows.data());
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);

  ImageTensor out({static_cast<int>(height), static_cast<int>(width), 3});
  double* v = out.values().data();
  const std::size_t n = pixels.size();
  for (std::size_t i = 0; i < n; ++i) v[i] = static_cast<double>(pixels[i]) / 255.0;
  return out;
}

void write_png(const std::filesystem::path& path, const ImageTensor& image) {
  const Dims3 d = image.dims();
  if (d.n3 != 1 && d.n3 != 3)
    throw parameter_error("png: can only write 1- or 3-channel tensors, got " + to_string(d));

  FileHandle file(path, "wb");
  if (!file.fp) throw io_error("png: cannot open " + path.string() + " for writing");

  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png) throw io_error("png: allocation failure");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_write_struct(&png, nullptr);
    throw io_error("png: allocation failure");
  }

  std::vector<png_byte> pixels(static_cast<std::size_t>(d.n1) * d.n2 * d.n3);
  const double* v = image.values().data();
  for (std::size_t i = 0; i < pixels.size(); ++i) {
    const double x = std::min(std::max(v[i], 0.0), 1.0);
    pixels[i] = static_cast<png_byte>(std::floor(x * 255.0 + 0.5));
  }
  std::vector<png_bytep> rows(static_cast<std::size_t>(d.n1));
  for (int r = 0; r < d.n1; ++r)
    rows[static_cast<std::size_t>(r)] = pixels.data() + static_cast<std::size_t>(r) * d.n2 * d.n3;

  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw io_error("png: failed to encode " + path.string());
  }

  png_init_io(png, file.fp);
  png_set_IHDR(png, info, static_cast<png_uint_32>(d.n2), static_cast<png_uint_32>(d.n1), 8,
               d.n3 == 3 ? PNG_COLOR_TYPE_RGB : PNG_COLOR_TYPE_GRAY, PNG_INTERLACE_NONE,
               PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  png_write_image(png, rows.data());
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
}

}  // namespace ctmg::cli
