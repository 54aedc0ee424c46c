#include "nlmbench/bench.hpp"

#include <algorithm>
#include <cstdarg>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "nlmbench/image_io.hpp"
#include "nlmbench/mknlm.hpp"
#include "nlmbench/noise.hpp"

namespace nlmbench {

namespace {

std::string strf(const char* fmt, ...) {
    va_list args;
    va_start(args, fmt);
    char buf[512];
    std::vsnprintf(buf, sizeof(buf), fmt, args);
    va_end(args);
    return buf;
}

// h = c * sigma defaults, grid-searched per filter and noise level on a
// 256x256 photographic image (see README for the procedure and the
// `calibrate` subcommand to re-derive them).
struct HScaleEntry {
    double level;
    double nlm;
    double mknlm;
};

constexpr HScaleEntry kHScaleTable[] = {
    {0.05, 1.30, 0.20},
    {0.10, 1.35, 0.30},
    {0.15, 1.40, 0.45},
    {0.20, 1.45, 0.50},
};

std::string level_token(double level) { return strf("%.4f", level); }

}  // namespace

const char* to_string(FilterKind kind) {
    return kind == FilterKind::nlm ? "nlm" : "mknlm";
}

FilterKind filter_kind_from_string(std::string_view s) {
    if (s == "nlm") return FilterKind::nlm;
    if (s == "mknlm") return FilterKind::mknlm;
    throw InvalidArgument("unknown filter kind '" + std::string(s) +
                          "' (expected nlm or mknlm)");
}

std::uint64_t fnv1a64(const void* data, std::size_t size) {
    const auto* bytes = static_cast<const unsigned char*>(data);
    std::uint64_t hash = 14695981039346656037ull;
    for (std::size_t i = 0; i < size; ++i) {
        hash ^= bytes[i];
        hash *= 1099511628211ull;
    }
    return hash;
}

std::string image_digest(const Image& img) {
    const std::uint64_t h =
        fnv1a64(img.data().data(), img.data().size() * sizeof(double));
    return strf("%016llx", static_cast<unsigned long long>(h));
}

std::uint64_t derive_seed(std::uint64_t base, std::string_view image_id, double level) {
    const std::string key = strf("%llu/", static_cast<unsigned long long>(base)) +
                            std::string(image_id) + "/" + level_token(level);
    return fnv1a64(key.data(), key.size());
}

double default_h_scale(FilterKind kind, double level) {
    const auto pick = [&](const HScaleEntry& e) {
        return kind == FilterKind::nlm ? e.nlm : e.mknlm;
    };
    constexpr std::size_t n = std::size(kHScaleTable);
    if (level <= kHScaleTable[0].level) return pick(kHScaleTable[0]);
    if (level >= kHScaleTable[n - 1].level) return pick(kHScaleTable[n - 1]);
    for (std::size_t i = 1; i < n; ++i) {
        if (level <= kHScaleTable[i].level) {
            const double t = (level - kHScaleTable[i - 1].level) /
                             (kHScaleTable[i].level - kHScaleTable[i - 1].level);
            return pick(kHScaleTable[i - 1]) +
                   t * (pick(kHScaleTable[i]) - pick(kHScaleTable[i - 1]));
        }
    }
    return pick(kHScaleTable[n - 1]);
}

double resolve_h(const FilterSpec& filter, double level) {
    if (!filter.h_auto) return filter.params.h;
    const double c =
        filter.h_scale ? *filter.h_scale : default_h_scale(filter.kind, level);
    return c * level * 255.0;
}

Image run_filter(const Image& img, FilterKind kind, const FilterParams& params) {
    return kind == FilterKind::nlm ? nlm_filter(img, params)
                                   : mk_nlm_filter(img, params);
}

namespace {

std::string search_token(const FilterParams& p) {
    return p.search_radius ? std::to_string(*p.search_radius) : std::string("full");
}

std::string params_digest_string(const FilterParams& params, double level,
                                 std::uint64_t seed, const Image& clean,
                                 bool cropped) {
    return strf("h=%.6g;h_scale=%.6g;patch_side=%d;search_radius=%s;rho=%.6g;"
                "center_weight=%s;level=%s;sigma=%.6g;seed=%llu;rng=%s;size=%dx%d;"
                "crop=%s",
                params.h, params.h / (level * 255.0), params.patch_side,
                search_token(params).c_str(), params.rho,
                params.center_weight == CenterWeight::literal ? "literal" : "max",
                level_token(level).c_str(), level * 255.0,
                static_cast<unsigned long long>(seed), kRngAlgorithm, clean.width(),
                clean.height(), cropped ? "center" : "none");
}

struct Cell {
    std::size_t first_row;
    std::size_t count;
};

void mark_best(ResultsTable& table) {
    // One best-RMSE and one best-SSIM marker per (image, level) cell; ties
    // break toward the first configured filter.
    const std::size_t nf = table.filter_ids.size();
    for (std::size_t base = 0; base + nf <= table.rows.size(); base += nf) {
        std::size_t best_r = table.rows.size();
        std::size_t best_s = table.rows.size();
        for (std::size_t i = base; i < base + nf; ++i) {
            if (!table.rows[i].ok) continue;
            if (best_r == table.rows.size() ||
                table.rows[i].report.rmse < table.rows[best_r].report.rmse) {
                best_r = i;
            }
            if (best_s == table.rows.size() ||
                table.rows[i].report.ssim > table.rows[best_s].report.ssim) {
                best_s = i;
            }
        }
        if (best_r != table.rows.size()) table.rows[best_r].best_rmse = true;
        if (best_s != table.rows.size()) table.rows[best_s].best_ssim = true;
    }
}

}  // namespace

ResultsTable run_experiment(const ExperimentConfig& cfg) {
    namespace fs = std::filesystem;
    ResultsTable table;
    for (const auto& [id, path] : cfg.images) table.image_ids.push_back(id);
    table.noise_levels = cfg.noise_levels;
    for (const FilterSpec& f : cfg.filters) table.filter_ids.push_back(f.id);

    fs::create_directories(cfg.output_dir);
    const fs::path image_dir = fs::path(cfg.output_dir) / "images";
    if (cfg.emit_residuals) fs::create_directories(image_dir);

    for (const auto& [image_id, path] : cfg.images) {
        Image clean;
        bool cropped = false;
        std::string load_error;
        try {
            clean = load_image(path);
            if (cfg.crop > 0 &&
                (clean.width() > cfg.crop || clean.height() > cfg.crop)) {
                clean = crop_center(clean, cfg.crop, cfg.crop);
                cropped = true;
            }
        } catch (const std::exception& e) {
            load_error = e.what();
        }

        for (double level : cfg.noise_levels) {
            const std::uint64_t seed = derive_seed(cfg.seed, image_id, level);
            Image noisy;
            std::string noisy_digest;
            std::string cell_error = load_error;
            if (cell_error.empty()) {
                try {
                    noisy = add_gaussian_noise(clean, NoiseSpec{level, seed});
                    noisy_digest = image_digest(noisy);
                    if (cfg.emit_residuals) {
                        const std::string name =
                            image_id + "_" + level_token(level) + "_noisy.pgm";
                        save_image(noisy, (image_dir / name).string());
                    }
                } catch (const std::exception& e) {
                    cell_error = e.what();
                }
            }

            for (const FilterSpec& f : cfg.filters) {
                BenchRow row;
                row.report.image_id = image_id;
                row.report.noise_level = level;
                row.report.filter_id = f.id;
                row.noisy_digest = noisy_digest;
                if (!cell_error.empty()) {
                    row.ok = false;
                    row.error = cell_error;
                    row.report.params_digest = "unavailable";
                    table.rows.push_back(std::move(row));
                    continue;
                }
                try {
                    FilterParams params = f.params;
                    params.h = resolve_h(f, level);
                    // Every filter of this cell consumes the same noisy
                    // instance; the digest recorded per row proves it.
                    const Image filtered = run_filter(noisy, f.kind, params);
                    row.report.rmse = rmse(filtered, clean);
                    row.report.ssim = ssim(filtered, clean);
                    row.report.params_digest =
                        params_digest_string(params, level, seed, clean, cropped);
                    if (cfg.emit_residuals) {
                        const std::string stem =
                            image_id + "_" + level_token(level) + "_" + f.id;
                        save_image(filtered, (image_dir / (stem + ".pgm")).string());
                        save_image(residual(filtered, clean),
                                   (image_dir / (stem + "_residual.pgm")).string());
                    }
                } catch (const std::exception& e) {
                    row.ok = false;
                    row.error = e.what();
                    row.report.params_digest = "unavailable";
                }
                table.rows.push_back(std::move(row));
            }
        }
    }

    mark_best(table);

    if (cfg.write_csv_file) {
        write_csv(table, (fs::path(cfg.output_dir) / "results.csv").string());
    }
    if (cfg.write_markdown_file) {
        write_markdown(table, (fs::path(cfg.output_dir) / "results.md").string());
    }
    return table;
}

double calibrate_h_scale(const Image& clean, double level, const FilterSpec& filter,
                         const std::vector<double>& c_grid, std::uint64_t seed) {
    if (c_grid.empty()) throw InvalidArgument("calibration grid is empty");
    std::vector<double> grid = c_grid;
    std::sort(grid.begin(), grid.end());
    const Image noisy = add_gaussian_noise(clean, NoiseSpec{level, seed});
    double best_c = 0.0;
    double best_rmse = 0.0;
    bool have_best = false;
    for (double c : grid) {
        FilterParams params = filter.params;
        params.h = c * level * 255.0;
        const Image filtered = run_filter(noisy, filter.kind, params);
        const double r = rmse(filtered, clean);
        if (!have_best || r < best_rmse) {
            have_best = true;
            best_rmse = r;
            best_c = c;
        }
    }
    return best_c;
}

void write_csv(const ResultsTable& table, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open file for writing: " + path);
    out << "image,noise_level,filter,rmse,ssim,best_rmse,best_ssim,status,"
           "noisy_digest,params_digest\n";
    for (const BenchRow& row : table.rows) {
        out << row.report.image_id << ',' << level_token(row.report.noise_level) << ','
            << row.report.filter_id << ',';
        if (row.ok) {
            out << strf("%.6f", row.report.rmse) << ',' << strf("%.6f", row.report.ssim);
        } else {
            out << "\xE2\x80\x94,\xE2\x80\x94";  // em dash per failed cell
        }
        out << ',' << (row.best_rmse ? '1' : '0') << ',' << (row.best_ssim ? '1' : '0')
            << ',';
        if (row.ok) {
            out << "ok";
        } else {
            std::string reason = row.error;
            std::replace(reason.begin(), reason.end(), ',', ';');
            std::replace(reason.begin(), reason.end(), '\n', ' ');
            out << "failed: " << reason;
        }
        out << ',' << row.noisy_digest << ',' << row.report.params_digest << '\n';
    }
    if (!out) throw IoError("write failed: " + path);
}

void write_markdown(const ResultsTable& table, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open file for writing: " + path);

    out << "| Image | Filter |";
    for (double level : table.noise_levels) {
        const std::string pct = strf("%g%%", level * 100.0);
        out << " RMSE " << pct << " | SSIM " << pct << " |";
    }
    out << "\n|---|---|";
    for (std::size_t i = 0; i < table.noise_levels.size(); ++i) out << "---|---|";
    out << "\n";

    // rows are (image, level, filter); the grid wants (image, filter) lines.
    const std::size_t nf = table.filter_ids.size();
    const std::size_t nl = table.noise_levels.size();
    for (std::size_t ii = 0; ii < table.image_ids.size(); ++ii) {
        for (std::size_t fi = 0; fi < nf; ++fi) {
            out << "| " << table.image_ids[ii] << " | " << table.filter_ids[fi] << " |";
            for (std::size_t li = 0; li < nl; ++li) {
                const BenchRow& row = table.rows[(ii * nl + li) * nf + fi];
                if (!row.ok) {
                    out << " \xE2\x80\x94 | \xE2\x80\x94 |";
                    continue;
                }
                const std::string r = strf("%.3f", row.report.rmse);
                const std::string s = strf("%.3f", row.report.ssim);
                out << (row.best_rmse ? " **" + r + "** |" : " " + r + " |");
                out << (row.best_ssim ? " **" + s + "** |" : " " + s + " |");
            }
            out << "\n";
        }
    }
    if (!out) throw IoError("write failed: " + path);
}

}  // namespace nlmbench
