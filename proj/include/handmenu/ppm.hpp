#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>

#include "handmenu/frame.hpp"

namespace handmenu {

/// Parses a binary PPM (P6, maxval 255). `name` is used in error messages.
/// Throws FormatError on any deviation.
Frame parse_ppm(std::span<const std::uint8_t> bytes, std::string_view name = "<memory>");

/// Reads a P6 file; errors name the file.
Frame read_ppm(const std::filesystem::path& path);

std::string encode_ppm(const Frame& frame);
void write_ppm(const std::filesystem::path& path, const Frame& frame);

/// Mask as P5 with 0/255 samples.
std::string encode_pgm(const BinaryMask& mask);
void write_pgm(const std::filesystem::path& path, const BinaryMask& mask);

}  // namespace handmenu
