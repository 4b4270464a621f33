#pragma once

#include <string>

#include "cantorval/window_ifs.hpp"

namespace cantorval {

// Two-row raster over the common hull: window a on top, window b below.
// Binary PPM (P6); byte-deterministic for a given cloud.
void render_ppm(const PointCloud& cloud, const std::string& path, int width,
                int height);

// One rect per occupied column and band.
void render_svg(const PointCloud& cloud, const std::string& path, int width,
                int height);

}  // namespace cantorval
