#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nlmbench/bench.hpp"
#include "nlmbench/image_io.hpp"
#include "nlmbench/mknlm.hpp"
#include "nlmbench/noise.hpp"

namespace {

using namespace nlmbench;

struct FilterFlags {
    std::string filter = "nlm";
    int patch_side = 3;
    int search_radius = 10;
    bool full_search = false;
    double rho = 1.0;
    std::string center_weight = "literal";
    int threads = 0;
};

void add_filter_flags(CLI::App* cmd, FilterFlags& f) {
    cmd->add_option("--filter", f.filter, "Filter to run")
        ->check(CLI::IsMember({"nlm", "mknlm"}));
    cmd->add_option("--patch-side", f.patch_side, "Odd patch side length");
    auto* radius =
        cmd->add_option("--search-radius", f.search_radius, "Search window half-width");
    cmd->add_flag("--full-search", f.full_search, "Search the whole image")
        ->excludes(radius);
    cmd->add_option("--rho", f.rho, "Spatial kernel std dev");
    cmd->add_option("--center-weight", f.center_weight, "Self-weight policy")
        ->check(CLI::IsMember({"literal", "max"}));
    cmd->add_option("--threads", f.threads, "Worker threads (0 = auto)");
}

FilterSpec to_spec(const FilterFlags& f) {
    FilterSpec spec;
    spec.id = f.filter;
    spec.kind = filter_kind_from_string(f.filter);
    spec.params.patch_side = f.patch_side;
    spec.params.search_radius =
        f.full_search ? std::nullopt : std::optional<int>(f.search_radius);
    spec.params.rho = f.rho;
    spec.params.center_weight =
        f.center_weight == "max" ? CenterWeight::max_of_others : CenterWeight::literal;
    spec.params.threads = f.threads;
    return spec;
}

std::string sibling_path(const std::string& out, const std::string& suffix) {
    const std::filesystem::path p(out);
    std::filesystem::path q = p.parent_path() / p.stem();
    return q.string() + suffix + p.extension().string();
}

int run_denoise(const std::string& image_path, const FilterFlags& flags,
                std::optional<double> h, std::optional<double> noise_level,
                std::uint64_t seed, const std::string& out,
                const std::string& reference_path, bool emit_residuals) {
    FilterSpec spec = to_spec(flags);
    Image input = load_image(image_path);

    Image clean;
    bool have_reference = false;
    if (!reference_path.empty()) {
        clean = load_image(reference_path);
        have_reference = true;
    }

    Image noisy = input;
    if (noise_level) {
        // The input is treated as clean ground truth and degraded first.
        noisy = add_gaussian_noise(input, NoiseSpec{*noise_level, seed});
        if (!have_reference) {
            clean = input;
            have_reference = true;
        }
    }

    if (h) {
        spec.h_auto = false;
        spec.params.h = *h;
    } else if (!noise_level) {
        throw InvalidArgument("--h is required unless --noise-level is given "
                              "(automatic h needs the noise sigma)");
    }
    FilterParams params = spec.params;
    params.h = resolve_h(spec, noise_level.value_or(0.0));

    const Image filtered = run_filter(noisy, spec.kind, params);
    save_image(filtered, out);
    std::printf("filter=%s h=%.6g out=%s\n", to_string(spec.kind), params.h,
                out.c_str());

    if (emit_residuals) {
        if (noise_level) save_image(noisy, sibling_path(out, "_noisy"));
        if (have_reference) {
            save_image(residual(filtered, clean), sibling_path(out, "_residual"));
        }
    }
    if (have_reference) {
        std::printf("rmse=%.6f ssim=%.6f (vs %s)\n", rmse(filtered, clean),
                    ssim(filtered, clean),
                    reference_path.empty() ? "input before noise" : reference_path.c_str());
        if (noise_level) {
            std::printf("noisy_rmse=%.6f sigma=%.6g seed=%llu rng=%s\n",
                        rmse(noisy, clean), *noise_level * 255.0,
                        static_cast<unsigned long long>(seed), kRngAlgorithm);
        }
    }
    return 0;
}

int run_bench(const std::string& config_path, const std::string& out_override,
              std::optional<std::uint64_t> seed_override,
              const std::vector<double>& level_override,
              const std::vector<std::string>& format_override, bool emit_residuals) {
    ExperimentConfig cfg = load_config(config_path);
    if (!out_override.empty()) cfg.output_dir = out_override;
    if (seed_override) cfg.seed = *seed_override;
    if (!level_override.empty()) cfg.noise_levels = level_override;
    if (!format_override.empty()) {
        cfg.write_csv_file = false;
        cfg.write_markdown_file = false;
        for (const std::string& f : format_override) {
            if (f == "csv") cfg.write_csv_file = true;
            else if (f == "md") cfg.write_markdown_file = true;
            else throw InvalidArgument("unknown format '" + f + "' (use csv, md)");
        }
    }
    if (emit_residuals) cfg.emit_residuals = true;

    const ResultsTable table = run_experiment(cfg);
    std::size_t failed = 0;
    for (const BenchRow& row : table.rows) {
        if (!row.ok) ++failed;
    }
    std::printf("bench: %zu rows (%zu failed) -> %s\n", table.rows.size(), failed,
                cfg.output_dir.c_str());
    for (const BenchRow& row : table.rows) {
        if (!row.ok) {
            std::printf("  failed %s/%.4f/%s: %s\n", row.report.image_id.c_str(),
                        row.report.noise_level, row.report.filter_id.c_str(),
                        row.error.c_str());
        }
    }
    return failed == 0 ? 0 : 1;
}

int run_calibrate(const std::string& image_path, const FilterFlags& flags,
                  double noise_level, std::vector<double> grid, std::uint64_t seed) {
    FilterSpec spec = to_spec(flags);
    if (grid.empty()) {
        grid = spec.kind == FilterKind::nlm
                   ? std::vector<double>{0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0, 1.2, 1.5}
                   : std::vector<double>{0.15, 0.2, 0.25, 0.3, 0.35, 0.4, 0.5, 0.65, 0.8};
    }
    Image clean = load_image(image_path);
    const double c = calibrate_h_scale(clean, noise_level, spec, grid, seed);
    std::printf("filter=%s level=%.4f best_c=%.6g h=%.6g\n", to_string(spec.kind),
                noise_level, c, c * noise_level * 255.0);
    return 0;
}

int run_metrics(const std::string& image_path, const std::string& reference_path) {
    const Image a = load_image(image_path);
    const Image b = load_image(reference_path);
    std::printf("rmse=%.6f ssim=%.6f\n", rmse(a, b), ssim(a, b));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Non-local means denoising benchmark"};
    app.require_subcommand(1);
    // --h is a real option on several subcommands, so help must not claim
    // the -h short flag.  Subcommands inherit this via the option-defaults
    // fallback only for flags we add, hence the explicit loop below.
    app.set_help_flag("--help", "Print this help message and exit");

    // denoise
    auto* denoise = app.add_subcommand("denoise", "Filter a single image");
    denoise->set_help_flag("--help", "Print this help message and exit");
    std::string d_image, d_out, d_reference;
    FilterFlags d_flags;
    std::optional<double> d_h, d_level;
    std::uint64_t d_seed = 1;
    bool d_residuals = false;
    denoise->add_option("--image", d_image, "Input image (PGM or PNG)")->required();
    denoise->add_option("--out", d_out, "Output image path")->required();
    add_filter_flags(denoise, d_flags);
    denoise->add_option("--h", d_h, "Smoothing parameter (gray levels)");
    denoise->add_option("--noise-level", d_level,
                        "Degrade the input first: sigma = level * 255");
    denoise->add_option("--seed", d_seed, "Noise seed");
    denoise->add_option("--reference", d_reference, "Clean reference for metrics");
    denoise->add_flag("--emit-residuals", d_residuals,
                      "Also write the noisy input and the residual image");

    // bench
    auto* bench = app.add_subcommand("bench", "Run a benchmark experiment");
    bench->set_help_flag("--help", "Print this help message and exit");
    std::string b_config, b_out;
    std::optional<std::uint64_t> b_seed;
    std::vector<double> b_levels;
    std::vector<std::string> b_formats;
    bool b_residuals = false;
    bench->add_option("--config", b_config, "Experiment config file")->required();
    bench->add_option("--out", b_out, "Override output directory");
    bench->add_option("--seed", b_seed, "Override base seed");
    bench->add_option("--noise-level", b_levels, "Override noise levels");
    bench->add_option("--format", b_formats, "Output table formats (csv, md)");
    bench->add_flag("--emit-residuals", b_residuals, "Write per-run images");

    // calibrate
    auto* calibrate = app.add_subcommand("calibrate", "Grid-search the h scale factor");
    calibrate->set_help_flag("--help", "Print this help message and exit");
    std::string c_image;
    FilterFlags c_flags;
    double c_level = 0.10;
    std::vector<double> c_grid;
    std::uint64_t c_seed = 1;
    calibrate->add_option("--image", c_image, "Clean calibration image")->required();
    add_filter_flags(calibrate, c_flags);
    calibrate->add_option("--noise-level", c_level, "Noise level")->required();
    calibrate->add_option("--grid", c_grid, "Candidate c values (h = c * sigma)");
    calibrate->add_option("--seed", c_seed, "Noise seed");

    // metrics
    auto* metrics = app.add_subcommand("metrics", "RMSE/SSIM between two images");
    metrics->set_help_flag("--help", "Print this help message and exit");
    std::string m_image, m_reference;
    metrics->add_option("--image", m_image, "Image under test")->required();
    metrics->add_option("--reference", m_reference, "Reference image")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (denoise->parsed()) {
            return run_denoise(d_image, d_flags, d_h, d_level, d_seed, d_out,
                               d_reference, d_residuals);
        }
        if (bench->parsed()) {
            return run_bench(b_config, b_out, b_seed, b_levels, b_formats, b_residuals);
        }
        if (calibrate->parsed()) {
            return run_calibrate(c_image, c_flags, c_level, c_grid, c_seed);
        }
        if (metrics->parsed()) {
            return run_metrics(m_image, m_reference);
        }
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s: %s\n", e.kind(), e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: error: %s\n", e.what());
        return 1;
    }
    return 0;
}
