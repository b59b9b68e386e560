#include "pmcts/environment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace pmcts {

namespace {

double median_of(std::vector<double> values) {
    const std::size_t n = values.size();
    auto mid = values.begin() + static_cast<std::ptrdiff_t>(n / 2);
    std::nth_element(values.begin(), mid, values.end());
    if (n % 2 == 1) return *mid;
    const double upper = *mid;
    const double lower = *std::max_element(values.begin(), mid);
    return 0.5 * (lower + upper);
}

} // namespace

FieldGrid FieldGrid::from_cells(int width, int height, const Extent& extent,
                                std::vector<double> cells) {
    if (width <= 0 || height <= 0)
        throw std::invalid_argument("FieldGrid: dimensions must be positive");
    if (cells.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height))
        throw std::invalid_argument("FieldGrid: cell count does not match dimensions");
    if (!(extent.width() > 0.0) || !(extent.height() > 0.0))
        throw std::invalid_argument("FieldGrid: extent must have positive area");
    for (double v : cells) {
        if (!std::isfinite(v)) throw std::invalid_argument("FieldGrid: non-finite cell value");
    }

    FieldGrid grid;
    grid.width_ = width;
    grid.height_ = height;
    grid.extent_ = extent;
    grid.cells_ = std::move(cells);
    grid.hotspot_threshold_ = median_of(grid.cells_);
    return grid;
}

Point2 FieldGrid::cell_center(int ix, int iy) const {
    const double cw = extent_.width() / width_;
    const double ch = extent_.height() / height_;
    return {extent_.x0 + (ix + 0.5) * cw, extent_.y0 + (iy + 0.5) * ch};
}

std::pair<int, int> FieldGrid::cell_of(const Point2& p) const {
    const double cw = extent_.width() / width_;
    const double ch = extent_.height() / height_;
    int ix = static_cast<int>(std::floor((p.x - extent_.x0) / cw));
    int iy = static_cast<int>(std::floor((p.y - extent_.y0) / ch));
    ix = std::clamp(ix, 0, width_ - 1);
    iy = std::clamp(iy, 0, height_ - 1);
    return {ix, iy};
}

bool FieldGrid::is_hotspot_at(const Point2& p) const {
    const auto [ix, iy] = cell_of(p);
    return is_hotspot(ix, iy);
}

double FieldGrid::interpolate(const Point2& p) const {
    if (!extent_.contains(p))
        throw std::out_of_range("FieldGrid::interpolate: location outside extent");

    const double cw = extent_.width() / width_;
    const double ch = extent_.height() / height_;
    // Continuous coordinates in cell-center units.
    const double u = std::clamp((p.x - extent_.x0) / cw - 0.5, 0.0, static_cast<double>(width_ - 1));
    const double v =
        std::clamp((p.y - extent_.y0) / ch - 0.5, 0.0, static_cast<double>(height_ - 1));
    const int ix0 = std::min(static_cast<int>(u), width_ - 2 >= 0 ? width_ - 2 : 0);
    const int iy0 = std::min(static_cast<int>(v), height_ - 2 >= 0 ? height_ - 2 : 0);
    const int ix1 = std::min(ix0 + 1, width_ - 1);
    const int iy1 = std::min(iy0 + 1, height_ - 1);
    const double fx = u - ix0;
    const double fy = v - iy0;

    const double top = cell(ix0, iy0) * (1.0 - fx) + cell(ix1, iy0) * fx;
    const double bottom = cell(ix0, iy1) * (1.0 - fx) + cell(ix1, iy1) * fx;
    return top * (1.0 - fy) + bottom * fy;
}

double FieldGrid::min_value() const { return *std::min_element(cells_.begin(), cells_.end()); }
double FieldGrid::max_value() const { return *std::max_element(cells_.begin(), cells_.end()); }

double FieldGrid::mean_value() const {
    double sum = 0.0;
    for (double v : cells_) sum += v;
    return sum / static_cast<double>(cells_.size());
}

double FieldGrid::stddev_value() const {
    const double mean = mean_value();
    double ss = 0.0;
    for (double v : cells_) ss += (v - mean) * (v - mean);
    return std::sqrt(ss / static_cast<double>(cells_.size()));
}

std::vector<GaussianSource> sample_sources(std::uint64_t seed, const Extent& extent,
                                           int n_sources, const SynthRanges& ranges) {
    if (n_sources < 1) throw std::invalid_argument("sample_sources: n_sources must be >= 1");
    Rng rng = make_rng(seed);
    std::vector<GaussianSource> sources;
    sources.reserve(static_cast<std::size_t>(n_sources));
    for (int i = 0; i < n_sources; ++i) {
        GaussianSource s;
        s.center.x = uniform_real(rng, extent.x0 + ranges.center_margin,
                                  extent.x1 - ranges.center_margin);
        s.center.y = uniform_real(rng, extent.y0 + ranges.center_margin,
                                  extent.y1 - ranges.center_margin);
        s.amplitude = uniform_real(rng, ranges.amplitude_min, ranges.amplitude_max);
        s.spread = uniform_real(rng, ranges.spread_min, ranges.spread_max);
        sources.push_back(s);
    }
    return sources;
}

FieldGrid rasterize_sources(const std::vector<GaussianSource>& sources, const Extent& extent,
                            int width, int height) {
    std::vector<double> cells(static_cast<std::size_t>(width) * height, 0.0);
    const double cw = extent.width() / width;
    const double ch = extent.height() / height;
    for (int iy = 0; iy < height; ++iy) {
        for (int ix = 0; ix < width; ++ix) {
            const Point2 c{extent.x0 + (ix + 0.5) * cw, extent.y0 + (iy + 0.5) * ch};
            double v = 0.0;
            for (const GaussianSource& s : sources) {
                const double dx = c.x - s.center.x;
                const double dy = c.y - s.center.y;
                v += s.amplitude * std::exp(-(dx * dx + dy * dy) / (2.0 * s.spread * s.spread));
            }
            cells[static_cast<std::size_t>(iy) * width + ix] = v;
        }
    }
    return FieldGrid::from_cells(width, height, extent, std::move(cells));
}

FieldGrid synth_environment(std::uint64_t seed, const Extent& extent, int n_sources,
                            const SynthRanges& ranges, int width, int height) {
    return rasterize_sources(sample_sources(seed, extent, n_sources, ranges), extent, width,
                             height);
}

FieldGrid load_grid(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_grid: cannot open " + path.string());

    auto next_data_line = [&in](std::string& line) {
        while (std::getline(in, line)) {
            if (!line.empty() && line[0] != '#') return true;
        }
        return false;
    };

    std::string line;
    if (!next_data_line(line))
        throw std::runtime_error("load_grid: " + path.string() + ": missing header line");

    int width = 0, height = 0;
    Extent extent;
    {
        std::istringstream ss(line);
        char c1, c2, c3, c4, c5;
        if (!(ss >> width >> c1 >> height >> c2 >> extent.x0 >> c3 >> extent.y0 >> c4 >>
              extent.x1 >> c5 >> extent.y1) ||
            c1 != ',' || c2 != ',' || c3 != ',' || c4 != ',' || c5 != ',')
            throw std::runtime_error("load_grid: " + path.string() +
                                     ": malformed header (want width,height,x0,y0,x1,y1)");
    }
    if (width <= 0 || height <= 0)
        throw std::runtime_error("load_grid: " + path.string() + ": non-positive dimensions");

    std::vector<double> cells;
    cells.reserve(static_cast<std::size_t>(width) * height);
    for (int row = 0; row < width * height; ++row) {
        if (!next_data_line(line))
            throw std::runtime_error("load_grid: " + path.string() + ": expected " +
                                     std::to_string(width * height) + " data rows, got " +
                                     std::to_string(row));
        std::istringstream ss(line);
        double x, y, value;
        char c1, c2;
        if (!(ss >> x >> c1 >> y >> c2 >> value) || c1 != ',' || c2 != ',' ||
            !std::isfinite(value))
            throw std::runtime_error("load_grid: " + path.string() + ": malformed data row " +
                                     std::to_string(row) + " (cell column " +
                                     std::to_string(row % width) + ", row " +
                                     std::to_string(row / width) + ")");
        cells.push_back(value);
    }
    return FieldGrid::from_cells(width, height, extent, std::move(cells));
}

void save_grid(const FieldGrid& grid, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("save_grid: cannot open " + path.string());
    out << "#pareto-mcts-grid v1\n";
    char buf[128];
    std::snprintf(buf, sizeof(buf), "%d,%d,%.17g,%.17g,%.17g,%.17g\n", grid.width(),
                  grid.height(), grid.extent().x0, grid.extent().y0, grid.extent().x1,
                  grid.extent().y1);
    out << buf;
    for (int iy = 0; iy < grid.height(); ++iy) {
        for (int ix = 0; ix < grid.width(); ++ix) {
            const Point2 c = grid.cell_center(ix, iy);
            std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g\n", c.x, c.y, grid.cell(ix, iy));
            out << buf;
        }
    }
    if (!out) throw std::runtime_error("save_grid: write failed for " + path.string());
}

FieldGrid downsample(const FieldGrid& grid, int factor) {
    if (factor <= 0) throw std::invalid_argument("downsample: factor must be positive");
    if (grid.width() % factor != 0 || grid.height() % factor != 0)
        throw std::invalid_argument("downsample: factor " + std::to_string(factor) +
                                    " does not divide " + std::to_string(grid.width()) + "x" +
                                    std::to_string(grid.height()));

    const int w = grid.width() / factor;
    const int h = grid.height() / factor;
    std::vector<double> cells(static_cast<std::size_t>(w) * h, 0.0);
    for (int iy = 0; iy < h; ++iy) {
        for (int ix = 0; ix < w; ++ix) {
            double sum = 0.0;
            for (int dy = 0; dy < factor; ++dy) {
                for (int dx = 0; dx < factor; ++dx) {
                    sum += grid.cell(ix * factor + dx, iy * factor + dy);
                }
            }
            cells[static_cast<std::size_t>(iy) * w + ix] =
                sum / (static_cast<double>(factor) * factor);
        }
    }
    return FieldGrid::from_cells(w, h, grid.extent(), std::move(cells));
}

double observe(const FieldGrid& grid, const Point2& location, double noise_std, Rng& rng) {
    const double value = grid.interpolate(location);  // throws if outside extent
    if (noise_std == 0.0) return value;
    return value + normal(rng, 0.0, noise_std);
}

} // namespace pmcts
