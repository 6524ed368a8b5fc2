#include "handmenu/ppm.hpp"

#include <cctype>
#include <fstream>
#include <iterator>
#include <vector>

#include "handmenu/error.hpp"

namespace handmenu {

namespace {

class HeaderReader {
 public:
  HeaderReader(std::span<const std::uint8_t> bytes, std::string_view name) : bytes_(bytes), name_(name) {}

  [[noreturn]] void fail(const std::string& why) const {
    throw FormatError(std::string(name_) + ": " + why);
  }

  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      const auto c = bytes_[pos_];
      if (c == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else if (std::isspace(c)) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  long number(const char* what) {
    skip_space_and_comments();
    long value = 0;
    std::size_t digits = 0;
    while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
      value = value * 10 + (bytes_[pos_] - '0');
      if (value > 1'000'000) fail(std::string(what) + " is implausibly large");
      ++pos_;
      ++digits;
    }
    if (digits == 0) fail(std::string("expected ") + what);
    return value;
  }

  std::size_t pos_ = 0;
  std::span<const std::uint8_t> bytes_;
  std::string_view name_;
};

void write_file(const std::filesystem::path& path, const std::string& data) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError(path.string() + ": cannot open for writing");
  out.write(data.data(), static_cast<std::streamsize>(data.size()));
  if (!out) throw FormatError(path.string() + ": write failed");
}

}  // namespace

Frame parse_ppm(std::span<const std::uint8_t> bytes, std::string_view name) {
  HeaderReader in(bytes, name);
  if (bytes.size() < 2 || bytes[0] != 'P' || bytes[1] != '6') in.fail("not a binary PPM (missing P6 magic)");
  in.pos_ = 2;
  const long width = in.number("width");
  const long height = in.number("height");
  const long maxval = in.number("maxval");
  if (width < 1 || height < 1) in.fail("dimensions must be positive");
  if (maxval != 255) in.fail("maxval " + std::to_string(maxval) + " unsupported (only 255)");
  if (in.pos_ >= bytes.size() || !std::isspace(bytes[in.pos_])) in.fail("missing whitespace after maxval");
  ++in.pos_;

  const std::size_t need = static_cast<std::size_t>(width) * static_cast<std::size_t>(height) * 3;
  if (bytes.size() - in.pos_ < need) {
    in.fail("truncated pixel data (" + std::to_string(bytes.size() - in.pos_) + " of " + std::to_string(need) +
            " bytes)");
  }
  std::vector<std::uint8_t> pixels(bytes.begin() + static_cast<std::ptrdiff_t>(in.pos_),
                                   bytes.begin() + static_cast<std::ptrdiff_t>(in.pos_ + need));
  return Frame(static_cast<int>(width), static_cast<int>(height), std::move(pixels));
}

Frame read_ppm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError(path.string() + ": cannot open");
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_ppm(bytes, path.string());
}

std::string encode_ppm(const Frame& frame) {
  std::string out = "P6\n" + std::to_string(frame.width()) + " " + std::to_string(frame.height()) + "\n255\n";
  const auto px = frame.pixels();
  out.append(reinterpret_cast<const char*>(px.data()), px.size());
  return out;
}

void write_ppm(const std::filesystem::path& path, const Frame& frame) { write_file(path, encode_ppm(frame)); }

std::string encode_pgm(const BinaryMask& mask) {
  std::string out = "P5\n" + std::to_string(mask.width()) + " " + std::to_string(mask.height()) + "\n255\n";
  out.reserve(out.size() + mask.bits().size());
  for (auto b : mask.bits()) out.push_back(b ? static_cast<char>(255) : '\0');
  return out;
}

void write_pgm(const std::filesystem::path& path, const BinaryMask& mask) { write_file(path, encode_pgm(mask)); }

}  // namespace handmenu
