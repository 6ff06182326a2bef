#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "tilebound/geometry.hpp"
#include "tilebound/pair.hpp"

namespace tilebound {

struct Rgb {
  std::uint8_t r = 0, g = 0, b = 0;
  friend bool operator==(const Rgb&, const Rgb&) = default;
};

inline constexpr Rgb kBackground{255, 255, 255};
inline constexpr Rgb kTileColor{40, 40, 40};
inline constexpr Rgb kBoundaryColor{220, 30, 30};

/// World (x, y) maps to pixel (floor(w/2 + (x - cx) s), floor(h/2 - (y - cy) s)).
struct PixelTransform {
  long double cx = 0, cy = 0;
  long double scale = 1;
  int width = 0, height = 0;

  /// False when the point falls outside the image.
  bool to_pixel(long double x, long double y, int& px, int& py) const;
};

struct RasterImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;  // row-major RGB, top row first
  PixelTransform transform;

  RasterImage(int w, int h, Rgb fill = kBackground);
  Rgb at(int x, int y) const;
  void set(int x, int y, Rgb c);
};

/// Plots planar points one per pixel; bounding box grown by margin (fraction
/// of the extent on each side), aspect ratio preserved.
RasterImage rasterize(const std::vector<std::vector<long double>>& points, int width, int height, double margin,
                      Rgb color = kTileColor);
RasterImage rasterize(const ScaledPointSet& gamma, const StandardPair& pair, int width, int height, double margin);

/// Plots further points through the image's existing transform.
void overlay(RasterImage& image, const std::vector<std::vector<long double>>& points, Rgb color = kBoundaryColor);
void overlay(RasterImage& image, const BoundaryPointSet& delta, const StandardPair& pair,
             Rgb color = kBoundaryColor);

/// Binary PPM (P6).
void write_pnm(const RasterImage& image, std::ostream& out);
void write_pnm(const RasterImage& image, const std::string& path);

}  // namespace tilebound
