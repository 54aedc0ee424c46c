#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nlmbench/image.hpp"
#include "nlmbench/metrics.hpp"
#include "nlmbench/nlm.hpp"

namespace nlmbench {

enum class FilterKind { nlm, mknlm };

const char* to_string(FilterKind kind);
FilterKind filter_kind_from_string(std::string_view s);

/// One filter entry of an experiment. When h_auto is set, h is resolved per
/// noise level as c * sigma, with c taken from h_scale if present and from
/// the shipped calibration table otherwise.
struct FilterSpec {
    std::string id;
    FilterKind kind = FilterKind::nlm;
    FilterParams params;
    bool h_auto = true;
    std::optional<double> h_scale;
};

struct ExperimentConfig {
    std::vector<std::pair<std::string, std::string>> images;  // (id, path)
    std::vector<double> noise_levels{0.05, 0.10, 0.15, 0.20};
    std::vector<FilterSpec> filters;
    std::uint64_t seed = 1;
    std::string output_dir = "out";
    bool emit_residuals = false;
    bool write_csv_file = true;
    bool write_markdown_file = false;
    /// Center-crop inputs larger than crop x crop before processing; 0 keeps
    /// full size. Recorded in every report.
    int crop = 256;
};

/// Parses the key/value + sections experiment file format (see
/// configs/default.ini for the schema). Unknown sections or keys are errors.
ExperimentConfig load_config(const std::string& path);

struct BenchRow {
    MetricReport report;
    bool ok = true;
    std::string error;         // failure reason when !ok
    bool best_rmse = false;    // lowest RMSE among filters of this cell
    bool best_ssim = false;    // highest SSIM among filters of this cell
    std::string noisy_digest;  // digest of the shared noisy instance
};

/// One row per configured (image, noise level, filter) triple, image-major
/// then level then filter, in configuration order.
struct ResultsTable {
    std::vector<std::string> image_ids;
    std::vector<double> noise_levels;
    std::vector<std::string> filter_ids;
    std::vector<BenchRow> rows;
};

/// Per-cell noise seed: FNV-1a hash of "<base>/<image_id>/<level>", so adding
/// images or levels never perturbs existing cells.
std::uint64_t derive_seed(std::uint64_t base, std::string_view image_id, double level);

/// Shipped h calibration: h = c * sigma. c was grid-searched per filter and
/// noise level (see README); linear interpolation between table levels,
/// clamped at the ends.
double default_h_scale(FilterKind kind, double level);

/// Resolves the smoothing parameter for one run.
double resolve_h(const FilterSpec& filter, double level);

/// Dispatches to nlm_filter or mk_nlm_filter.
Image run_filter(const Image& img, FilterKind kind, const FilterParams& params);

/// Runs the full experiment: per (image, level) one noisy instance shared by
/// all filters, metrics against the clean image, outputs persisted under
/// cfg.output_dir. Cell failures are recorded in the table instead of
/// aborting the run.
ResultsTable run_experiment(const ExperimentConfig& cfg);

/// Grid search for the h scale factor: runs the filter with h = c * sigma for
/// every c in the grid and returns the c minimizing RMSE against clean.
/// Ties break toward smaller c.
double calibrate_h_scale(const Image& clean, double level, const FilterSpec& filter,
                         const std::vector<double>& c_grid, std::uint64_t seed);

/// CSV: one row per report, fixed column order (documented in the README).
void write_csv(const ResultsTable& table, const std::string& path);

/// Markdown grid: one row group per image, RMSE/SSIM column pair per noise
/// level, best value per cell and metric in bold, failed cells as em dash.
void write_markdown(const ResultsTable& table, const std::string& path);

std::uint64_t fnv1a64(const void* data, std::size_t size);
std::string image_digest(const Image& img);

}  // namespace nlmbench
