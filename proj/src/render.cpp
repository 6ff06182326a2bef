#include "tilebound/render.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>
#include <stdexcept>

#include "tilebound/error.hpp"

namespace tilebound {

bool PixelTransform::to_pixel(long double x, long double y, int& px, int& py) const {
  const long double fx = std::floor(width / 2.0L + (x - cx) * scale);
  const long double fy = std::floor(height / 2.0L - (y - cy) * scale);
  if (fx < 0 || fy < 0 || fx >= width || fy >= height) return false;
  px = static_cast<int>(fx);
  py = static_cast<int>(fy);
  return true;
}

RasterImage::RasterImage(int w, int h, Rgb fill) : width(w), height(h) {
  if (w <= 0 || h <= 0) throw std::invalid_argument("image size must be positive");
  pixels.resize(static_cast<std::size_t>(w) * static_cast<std::size_t>(h) * 3);
  for (std::size_t i = 0; i < pixels.size(); i += 3) {
    pixels[i] = fill.r;
    pixels[i + 1] = fill.g;
    pixels[i + 2] = fill.b;
  }
  transform.width = w;
  transform.height = h;
}

Rgb RasterImage::at(int x, int y) const {
  const std::size_t i = (static_cast<std::size_t>(y) * width + x) * 3;
  return {pixels[i], pixels[i + 1], pixels[i + 2]};
}

void RasterImage::set(int x, int y, Rgb c) {
  const std::size_t i = (static_cast<std::size_t>(y) * width + x) * 3;
  pixels[i] = c.r;
  pixels[i + 1] = c.g;
  pixels[i + 2] = c.b;
}

RasterImage rasterize(const std::vector<std::vector<long double>>& points, int width, int height, double margin,
                      Rgb color) {
  if (points.empty()) throw std::invalid_argument("rasterize: no points");
  long double lo[2] = {0, 0}, hi[2] = {0, 0};
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i].size() != 2) throw std::invalid_argument("rasterize: points must be planar");
    for (int c = 0; c < 2; ++c) {
      lo[c] = i == 0 ? points[i][c] : std::min(lo[c], points[i][c]);
      hi[c] = i == 0 ? points[i][c] : std::max(hi[c], points[i][c]);
    }
  }
  RasterImage img(width, height);
  const long double grow = 1.0L + 2.0L * margin;
  long double ex = (hi[0] - lo[0]) * grow, ey = (hi[1] - lo[1]) * grow;
  if (!(ex > 0) && !(ey > 0)) ex = ey = 1;
  long double s = std::min(ex > 0 ? width / ex : INFINITY, ey > 0 ? height / ey : INFINITY);
  img.transform.scale = s * (1.0L - 1e-9L);
  img.transform.cx = (lo[0] + hi[0]) / 2;
  img.transform.cy = (lo[1] + hi[1]) / 2;
  overlay(img, points, color);
  return img;
}

namespace {

std::vector<std::vector<long double>> real_points(unsigned k, std::size_t n, const std::vector<Coord>& coords,
                                                  const StandardPair& pair) {
  if (pair.dim() != 2 || n != 2) throw std::invalid_argument("rendering needs a planar pair");
  const LevelScale scale(pair.matrix(), k);
  std::vector<std::vector<long double>> pts;
  pts.reserve(coords.size() / 2);
  for (std::size_t p = 0; p < coords.size() / 2; ++p) pts.push_back(scale.to_real({coords.data() + 2 * p, 2}));
  return pts;
}

}  // namespace

RasterImage rasterize(const ScaledPointSet& gamma, const StandardPair& pair, int width, int height, double margin) {
  return rasterize(real_points(gamma.k, gamma.n, gamma.coords, pair), width, height, margin);
}

void overlay(RasterImage& image, const std::vector<std::vector<long double>>& points, Rgb color) {
  for (const auto& p : points) {
    int px, py;
    if (image.transform.to_pixel(p.at(0), p.at(1), px, py)) image.set(px, py, color);
  }
}

void overlay(RasterImage& image, const BoundaryPointSet& delta, const StandardPair& pair, Rgb color) {
  overlay(image, real_points(delta.k, delta.n, delta.coords, pair), color);
}

void write_pnm(const RasterImage& image, std::ostream& out) {
  out << "P6\n" << image.width << ' ' << image.height << "\n255\n";
  out.write(reinterpret_cast<const char*>(image.pixels.data()), static_cast<std::streamsize>(image.pixels.size()));
}

void write_pnm(const RasterImage& image, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  write_pnm(image, out);
  out.flush();
  if (!out) throw std::runtime_error("write failed for " + path);
}

}  // namespace tilebound
