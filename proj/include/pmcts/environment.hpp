#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "pmcts/geometry.hpp"
#include "pmcts/rng.hpp"

namespace pmcts {

// Discretized scalar field over a workspace rectangle. Cells are row-major
// with row 0 at the extent's y0 edge; hotspot_threshold is the cell median
// and is recomputed whenever a grid is constructed.
class FieldGrid {
public:
    FieldGrid() = default;

    static FieldGrid from_cells(int width, int height, const Extent& extent,
                                std::vector<double> cells);

    int width() const { return width_; }
    int height() const { return height_; }
    const Extent& extent() const { return extent_; }
    const std::vector<double>& cells() const { return cells_; }
    double hotspot_threshold() const { return hotspot_threshold_; }

    double cell(int ix, int iy) const { return cells_[static_cast<std::size_t>(iy) * width_ + ix]; }
    Point2 cell_center(int ix, int iy) const;

    // Cell containing the location (clamped to the boundary cells).
    std::pair<int, int> cell_of(const Point2& p) const;

    bool is_hotspot(int ix, int iy) const { return cell(ix, iy) > hotspot_threshold_; }
    bool is_hotspot_at(const Point2& p) const;

    // Bilinear interpolation between cell centers, constant beyond the
    // border half-cells. Throws if the location is outside the extent.
    double interpolate(const Point2& p) const;

    double min_value() const;
    double max_value() const;
    double mean_value() const;
    double stddev_value() const;

private:
    int width_ = 0;
    int height_ = 0;
    Extent extent_;
    std::vector<double> cells_;
    double hotspot_threshold_ = 0.0;
};

struct GaussianSource {
    Point2 center;
    double amplitude = 1.0;  // > 0
    double spread = 1.0;     // km, > 0
};

struct SynthRanges {
    double amplitude_min = 0.5;
    double amplitude_max = 1.0;
    double spread_min = 0.6;   // km
    double spread_max = 1.5;   // km
    double center_margin = 1.0;  // km from the extent border
};

std::vector<GaussianSource> sample_sources(std::uint64_t seed, const Extent& extent,
                                           int n_sources, const SynthRanges& ranges = {});

FieldGrid rasterize_sources(const std::vector<GaussianSource>& sources, const Extent& extent,
                            int width, int height);

// Sum of randomly placed Gaussian bumps rasterized to a grid;
// deterministic per seed.
FieldGrid synth_environment(std::uint64_t seed, const Extent& extent = {0.0, 0.0, 10.0, 10.0},
                            int n_sources = 3, const SynthRanges& ranges = {}, int width = 30,
                            int height = 30);

// Grid CSV: one header line "width,height,x0,y0,x1,y1", then width*height
// rows "x,y,value" in row-major order. '#' lines are comments.
FieldGrid load_grid(const std::filesystem::path& path);
void save_grid(const FieldGrid& grid, const std::filesystem::path& path);

// Block-mean downsampling; factor must divide both dimensions.
FieldGrid downsample(const FieldGrid& grid, int factor);

// Bilinear field value plus zero-mean Gaussian noise.
double observe(const FieldGrid& grid, const Point2& location, double noise_std, Rng& rng);

} // namespace pmcts
