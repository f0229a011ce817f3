#include "darkviz/image_io.hpp"

#include <cmath>
#include <csetjmp>
#include <cstdio>
#include <cstring>
#include <memory>
#include <vector>

#include <jpeglib.h>
#include <png.h>

#include "darkviz/errors.hpp"

namespace darkviz {
namespace {

struct FileCloser {
    void operator()(std::FILE* f) const {
        if (f) {
            std::fclose(f);
        }
    }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

FilePtr open_file(const std::filesystem::path& path, const char* mode) {
    FilePtr file(std::fopen(path.string().c_str(), mode));
    if (!file) {
        throw IoError("cannot open " + path.string());
    }
    return file;
}

std::uint8_t composite_channel(std::uint8_t fg, std::uint8_t alpha, std::uint8_t bg) {
    const double a = alpha / 255.0;
    return static_cast<std::uint8_t>(std::lround(a * fg + (1.0 - a) * bg));
}

PixelImage load_png(std::FILE* file, const std::filesystem::path& path, Rgb8 alpha_bg) {
    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    png_infop info = png ? png_create_info_struct(png) : nullptr;
    if (!png || !info) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw IoError("libpng initialization failed");
    }
    std::vector<png_bytep> row_pointers;
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw IoError("failed to decode PNG " + path.string());
    }

    png_init_io(png, file);
    png_read_info(png, info);

    // Normalize every layout to 8-bit RGBA.
    png_set_palette_to_rgb(png);
    png_set_expand_gray_1_2_4_to_8(png);
    if (png_get_valid(png, info, PNG_INFO_tRNS)) {
        png_set_tRNS_to_alpha(png);
    }
    png_set_strip_16(png);
    png_set_gray_to_rgb(png);
    png_set_add_alpha(png, 0xFF, PNG_FILLER_AFTER);
    png_read_update_info(png, info);

    const int width = static_cast<int>(png_get_image_width(png, info));
    const int height = static_cast<int>(png_get_image_height(png, info));
    std::vector<std::uint8_t> rgba(static_cast<std::size_t>(width) * height * 4);
    row_pointers.resize(height);
    for (int y = 0; y < height; ++y) {
        row_pointers[y] = rgba.data() + static_cast<std::size_t>(y) * width * 4;
    }
    png_read_image(png, row_pointers.data());
    png_read_end(png, nullptr);
    png_destroy_read_struct(&png, &info, nullptr);

    PixelImage image(width, height);
    for (std::size_t i = 0; i < image.pixels.size(); ++i) {
        const std::uint8_t* px = rgba.data() + i * 4;
        image.pixels[i] = {composite_channel(px[0], px[3], alpha_bg.r),
                           composite_channel(px[1], px[3], alpha_bg.g),
                           composite_channel(px[2], px[3], alpha_bg.b)};
    }
    return image;
}

struct JpegErrorMgr {
    jpeg_error_mgr base;
    std::jmp_buf jump;
};

void jpeg_error_exit(j_common_ptr cinfo) {
    auto* mgr = reinterpret_cast<JpegErrorMgr*>(cinfo->err);
    std::longjmp(mgr->jump, 1);
}

PixelImage load_jpeg(std::FILE* file, const std::filesystem::path& path) {
    jpeg_decompress_struct cinfo{};
    JpegErrorMgr err{};
    cinfo.err = jpeg_std_error(&err.base);
    err.base.error_exit = jpeg_error_exit;
    if (setjmp(err.jump)) {
        jpeg_destroy_decompress(&cinfo);
        throw IoError("failed to decode JPEG " + path.string());
    }

    jpeg_create_decompress(&cinfo);
    jpeg_stdio_src(&cinfo, file);
    jpeg_read_header(&cinfo, TRUE);
    cinfo.out_color_space = JCS_RGB;
    jpeg_start_decompress(&cinfo);

    PixelImage image(static_cast<int>(cinfo.output_width),
                     static_cast<int>(cinfo.output_height));
    std::vector<std::uint8_t> row(static_cast<std::size_t>(image.width) * 3);
    JSAMPROW row_ptr = row.data();
    int y = 0;
    while (cinfo.output_scanline < cinfo.output_height) {
        jpeg_read_scanlines(&cinfo, &row_ptr, 1);
        for (int x = 0; x < image.width; ++x) {
            image.at(x, y) = {row[x * 3 + 0], row[x * 3 + 1], row[x * 3 + 2]};
        }
        ++y;
    }
    jpeg_finish_decompress(&cinfo);
    jpeg_destroy_decompress(&cinfo);
    return image;
}

}  // namespace

PixelImage load_image(const std::filesystem::path& path, Rgb8 alpha_background) {
    FilePtr file = open_file(path, "rb");

    std::uint8_t signature[8] = {};
    const std::size_t got = std::fread(signature, 1, sizeof(signature), file.get());
    std::rewind(file.get());

    static constexpr std::uint8_t kPngMagic[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1A, '\n'};
    if (got >= 8 && std::memcmp(signature, kPngMagic, 8) == 0) {
        return load_png(file.get(), path, alpha_background);
    }
    if (got >= 2 && signature[0] == 0xFF && signature[1] == 0xD8) {
        return load_jpeg(file.get(), path);
    }
    throw IoError("unsupported image format (expected PNG or JPEG): " + path.string());
}

void save_png(const PixelImage& image, const std::filesystem::path& path) {
    if (image.empty()) {
        throw IoError("refusing to write empty image " + path.string());
    }
    FilePtr file = open_file(path, "wb");

    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    png_infop info = png ? png_create_info_struct(png) : nullptr;
    if (!png || !info) {
        png_destroy_write_struct(&png, &info);
        throw IoError("libpng initialization failed");
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        throw IoError("failed to write PNG " + path.string());
    }

    png_init_io(png, file.get());
    png_set_IHDR(png, info, static_cast<png_uint_32>(image.width),
                 static_cast<png_uint_32>(image.height), 8, PNG_COLOR_TYPE_RGB,
                 PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);

    std::vector<std::uint8_t> row(static_cast<std::size_t>(image.width) * 3);
    for (int y = 0; y < image.height; ++y) {
        for (int x = 0; x < image.width; ++x) {
            const Rgb8 c = image.at(x, y);
            row[x * 3 + 0] = c.r;
            row[x * 3 + 1] = c.g;
            row[x * 3 + 2] = c.b;
        }
        png_write_row(png, row.data());
    }
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
}

}  // namespace darkviz
