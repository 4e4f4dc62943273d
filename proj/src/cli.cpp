#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>

#include "hyperbounds/cli.hpp"
#include "hyperbounds/genfun.hpp"

namespace hyperbounds {

namespace {

constexpr int kExitPass = 0;
constexpr int kExitClaimFailure = 1;
constexpr int kExitResourceLimit = 2;
constexpr int kExitConfigError = 3;

std::pair<int, int> parse_range(const std::string& text) {
    auto dots = text.find("..");
    if (dots == std::string::npos) {
        int v = std::stoi(text);
        return {v, v};
    }
    int lo = std::stoi(text.substr(0, dots));
    int hi = std::stoi(text.substr(dots + 2));
    if (hi < lo) throw CLI::ValidationError("range", "empty range " + text);
    return {lo, hi};
}

void write_output(const SuiteReport& rep, const RunConfig& cfg) {
    std::string text = render_report(rep);
    if (cfg.out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(cfg.out_path, std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open output path " + cfg.out_path);
        out << text;
    }
}

int run_cache_command(const std::string& action, const RunConfig& cfg) {
    if (cfg.cache_dir.empty()) {
        std::cerr << "hyperbounds: cache commands need --cache-dir or HYPERBOUNDS_CACHE\n";
        return kExitConfigError;
    }
    SeriesCache cache{cfg.cache_dir};
    if (action == "warm") {
        for (int n = cfg.n_lo; n <= cfg.n_hi; ++n) {
            TruncationBox box = staircase_rectangle(n);
            if (box.lattice_size() > cfg.coefficient_budget) {
                std::cerr << "hyperbounds: n=" << n << " exceeds the coefficient budget\n";
                return kExitResourceLimit;
            }
            cache.get_or_build("C", n, box, [&] { return build_C(n, box); });
            cache.get_or_build("Chat", n, box, [&] { return build_C_hat(n, box); });
            std::cout << "warmed n=" << n << "\n";
        }
        return kExitPass;
    }
    if (action == "inspect") {
        nlohmann::ordered_json listing = nlohmann::ordered_json::array();
        for (const auto& e : cache.inspect()) {
            listing.push_back({{"file", e.file},
                               {"bytes", e.bytes},
                               {"checksum", e.checksum_ok ? "ok" : "corrupt"}});
        }
        std::cout << listing.dump(2) << "\n";
        return kExitPass;
    }
    if (action == "purge") {
        std::size_t removed = cache.purge();
        std::cout << "purged " << removed << " entries\n";
        return kExitPass;
    }
    std::cerr << "hyperbounds: unknown cache action '" << action
              << "' (expected warm|inspect|purge)\n";
    return kExitConfigError;
}

}  // namespace

int cli_main(int argc, char** argv) {
    CLI::App app{"exact-arithmetic verification suites for the degree-bound program"};
    app.require_subcommand(1);

    RunConfig cfg;
    if (const char* env = std::getenv("HYPERBOUNDS_CACHE")) cfg.cache_dir = env;

    std::string n_range = "2..5";
    std::string r_sweep;
    long long r_single = 0;
    std::string cache_action;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--n", n_range, "n or range A..B");
        sub->add_option("--r", r_single, "single weight base r");
        sub->add_option("--r-sweep", r_sweep, "range A..B of r values");
        sub->add_option("--trunc", cfg.trunc, "certified-mode truncation threshold T");
        sub->add_option("--precision", cfg.precision_bits, "mantissa bits (>= 64)");
        sub->add_option("--samples", cfg.samples, "circle-scan sample count");
        sub->add_option("--rho", cfg.rho, "circle radius");
        sub->add_option("--cache-dir", cfg.cache_dir, "coefficient cache directory");
        sub->add_option("--out", cfg.out_path, "JSON report path (default stdout)");
        sub->add_option("--csv-dir", cfg.csv_dir, "directory for plot CSV files");
        sub->add_option("--workers", cfg.workers, "worker threads");
        sub->add_option("--mode", cfg.mode, "exact | certified | auto");
        sub->add_option("--budget", cfg.coefficient_budget, "coefficient budget");
        sub->add_option("--exact-cutoff", cfg.exact_cutoff, "largest n run in exact mode");
    };

    CLI::App* verify = app.add_subcommand("verify-conjecture", "CA >= 1 at desk scale");
    CLI::App* degree = app.add_subcommand("degree-bounds", "section 3 pipeline and gates");
    CLI::App* estimates = app.add_subcommand("estimates", "sections 8-10 estimates");
    CLI::App* circle = app.add_subcommand("circle", "section 11 circle inequalities");
    CLI::App* all = app.add_subcommand("all", "every suite");
    CLI::App* cache_cmd = app.add_subcommand("cache", "coefficient cache management");
    for (CLI::App* sub : {verify, degree, estimates, circle, all}) add_common(sub);
    cache_cmd->add_option("action", cache_action, "warm | inspect | purge")->required();
    add_common(cache_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitPass : kExitConfigError;
    }

    try {
        auto [n_lo, n_hi] = parse_range(n_range);
        cfg.n_lo = n_lo;
        cfg.n_hi = n_hi;
        if (r_single != 0 && !r_sweep.empty()) {
            std::cerr << "hyperbounds: use either --r or --r-sweep\n";
            return kExitConfigError;
        }
        if (r_single != 0) cfg.r_values = {r_single};
        if (!r_sweep.empty()) {
            auto [r_lo, r_hi] = parse_range(r_sweep);
            cfg.r_values.clear();
            for (long long r = r_lo; r <= r_hi; ++r) cfg.r_values.push_back(r);
        }
        if (cfg.n_lo < 2) throw std::domain_error("n >= 2 required");
        for (long long r : cfg.r_values) {
            if (r < 3) throw std::domain_error("r >= 3 required (nefness threshold)");
        }
        if (cfg.mode != "auto" && cfg.mode != "exact" && cfg.mode != "certified") {
            throw std::domain_error("mode must be auto|exact|certified");
        }
        if (cfg.precision_bits < 64) throw std::domain_error("precision >= 64 bits required");
        if (cfg.workers < 1) throw std::domain_error("workers >= 1 required");
        if (!(cfg.rho > 0) || cfg.rho > 0.25) {
            throw std::domain_error("rho must lie in (0, 0.25]");
        }
    } catch (const std::exception& e) {
        std::cerr << "hyperbounds: configuration error: " << e.what() << "\n";
        return kExitConfigError;
    }

    try {
        set_real_precision_bits(cfg.precision_bits);
        if (cache_cmd->parsed()) return run_cache_command(cache_action, cfg);

        SuiteReport rep;
        if (verify->parsed()) {
            rep = run_verify_conjecture(cfg);
        } else if (degree->parsed()) {
            rep = run_degree_bounds(cfg);
        } else if (estimates->parsed()) {
            rep = run_estimates(cfg);
        } else if (circle->parsed()) {
            rep = run_circle(cfg);
        } else {
            rep = run_all(cfg);
        }
        write_output(rep, cfg);
        return rep.overall_pass() ? kExitPass : kExitClaimFailure;
    } catch (const ResourceLimitError& e) {
        std::cerr << "hyperbounds: resource limit: " << e.what() << "\n";
        return kExitResourceLimit;
    } catch (const std::exception& e) {
        std::cerr << "hyperbounds: error: " << e.what() << "\n";
        return kExitClaimFailure;
    }
}

}  // namespace hyperbounds
