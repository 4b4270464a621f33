#include "cantorval/image.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <limits>
#include <vector>

namespace cantorval {

namespace {

struct Columns {
  std::vector<bool> a;
  std::vector<bool> b;
};

Columns occupied_columns(const PointCloud& cloud, int width) {
  Columns cols{std::vector<bool>(static_cast<std::size_t>(width), false),
               std::vector<bool>(static_cast<std::size_t>(width), false)};
  if (cloud.empty() || width <= 0) return cols;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const auto* pts : {&cloud.points_a, &cloud.points_b}) {
    for (double p : *pts) {
      lo = std::min(lo, p);
      hi = std::max(hi, p);
    }
  }
  const double span = hi > lo ? hi - lo : 1.0;
  auto mark = [&](const std::vector<double>& pts, std::vector<bool>& row) {
    for (double p : pts) {
      int col = static_cast<int>((p - lo) / span * (width - 1) + 0.5);
      col = std::clamp(col, 0, width - 1);
      row[static_cast<std::size_t>(col)] = true;
    }
  };
  mark(cloud.points_a, cols.a);
  mark(cloud.points_b, cols.b);
  return cols;
}

constexpr unsigned char kTop[3] = {60, 100, 220};     // blue, window a
constexpr unsigned char kBottom[3] = {235, 185, 40};  // yellow, window b
constexpr unsigned char kBlank[3] = {255, 255, 255};

}  // namespace

void render_ppm(const PointCloud& cloud, const std::string& path, int width,
                int height) {
  if (width <= 0 || height <= 0)
    fail(ErrorCode::Internal, "image dimensions must be positive");
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::IoError, "cannot write " + path);
  const Columns cols = occupied_columns(cloud, width);
  out << "P6\n" << width << ' ' << height << "\n255\n";
  std::vector<unsigned char> row(static_cast<std::size_t>(width) * 3);
  for (int y = 0; y < height; ++y) {
    const bool top = y < height / 2;
    const auto& mask = top ? cols.a : cols.b;
    const unsigned char* color = top ? kTop : kBottom;
    for (int x = 0; x < width; ++x) {
      const unsigned char* c = mask[static_cast<std::size_t>(x)] ? color : kBlank;
      row[static_cast<std::size_t>(x) * 3 + 0] = c[0];
      row[static_cast<std::size_t>(x) * 3 + 1] = c[1];
      row[static_cast<std::size_t>(x) * 3 + 2] = c[2];
    }
    out.write(reinterpret_cast<const char*>(row.data()),
              static_cast<std::streamsize>(row.size()));
  }
  if (!out) fail(ErrorCode::IoError, "write failed for " + path);
}

void render_svg(const PointCloud& cloud, const std::string& path, int width,
                int height) {
  if (width <= 0 || height <= 0)
    fail(ErrorCode::Internal, "image dimensions must be positive");
  std::ofstream out(path);
  if (!out) fail(ErrorCode::IoError, "cannot write " + path);
  const Columns cols = occupied_columns(cloud, width);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
      << "\" height=\"" << height << "\">\n";
  const int band = height / 2;
  auto emit = [&](const std::vector<bool>& mask, int y0, const char* fill) {
    for (int x = 0; x < width; ++x) {
      if (!mask[static_cast<std::size_t>(x)]) continue;
      out << "<rect x=\"" << x << "\" y=\"" << y0 << "\" width=\"1\" height=\""
          << band << "\" fill=\"" << fill << "\"/>\n";
    }
  };
  emit(cols.a, 0, "#3c64dc");
  emit(cols.b, band, "#ebb928");
  out << "</svg>\n";
  if (!out) fail(ErrorCode::IoError, "write failed for " + path);
}

}  // namespace cantorval
