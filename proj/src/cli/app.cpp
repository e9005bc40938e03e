#include "feq/cli/app.hpp"

#include <cstdlib>
#include <ostream>
#include <string>

#include "CLI11.hpp"

#include "feq/cli/commands.hpp"
#include "feq/cli/config.hpp"
#include "feq/errors.hpp"
#include "feq/kernels.hpp"

namespace feq::cli {

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;

unsigned parse_threads(const std::string& text, const char* what) {
    std::size_t used = 0;
    long v = 0;
    try {
        v = std::stol(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != text.size() || v < 1 || v > 1024)
        throw ValidationError(std::string(what) + ": expected an integer in [1, 1024], got '" + text + "'");
    return static_cast<unsigned>(v);
}

}  // namespace

int run_app(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Floating-electron qubit design toolkit"};
    app.set_version_flag("--version", std::string(kToolVersion));

    std::string command;
    std::string config_path;
    std::string material;
    std::string eperp;
    std::size_t levels = 0;
    std::string out_path;
    std::string threads;
    std::string simd;

    app.add_option("command", command,
                   "spectrum | stark-sweep | couplings | readout | escape-window | convergence | reproduce-paper")
        ->required();
    app.add_option("--config", config_path, "JSON run configuration");
    app.add_option("--material", material, "helium | neon | custom");
    app.add_option("--eperp", eperp, "E_perp in V/m, or MIN:MAX:POINTS");
    app.add_option("--levels", levels, "number of Rydberg levels");
    app.add_option("--out", out_path, "output CSV path");
    app.add_option("--threads", threads, "worker threads (falls back to FEQ_THREADS)");
    app.add_option("--simd", simd, "scalar | avx2 | auto");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : kExitValidation;
    }

    try {
        RunConfig cfg = config_path.empty() ? RunConfig{} : load_config(config_path);
        cfg.command = parse_command(command);
        if (!material.empty()) cfg.material = material;
        if (!eperp.empty()) {
            const auto axis = parse_range("eperp_V_per_m", eperp);
            if (axis.points == 1 && eperp.find(':') == std::string::npos) {
                cfg.eperp_V_per_m = axis.min;
                if (cfg.sweep && cfg.sweep->name == "eperp_V_per_m") cfg.sweep.reset();
            } else {
                cfg.sweep = axis;
            }
        }
        if (app.count("--levels") > 0) cfg.levels = levels;
        if (!out_path.empty()) cfg.out = out_path;
        if (!threads.empty()) {
            cfg.threads = parse_threads(threads, "--threads");
        } else if (const char* env = std::getenv("FEQ_THREADS"); env && *env) {
            cfg.threads = parse_threads(env, "FEQ_THREADS");
        }
        if (!simd.empty()) cfg.simd = simd;
        if (!cfg.simd.empty()) kernels::set_active_level(kernels::parse_level(cfg.simd));

        const auto result = execute(cfg);
        write_outputs(result);
        for (const auto& line : result.messages) out << line << '\n';
        for (const auto& f : result.files) out << "wrote " << f.path << '\n';
        return result.exit_code;
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const nlohmann::json::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const NumericalError& e) {
        err << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const std::exception& e) {
        err << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    }
}

}  // namespace feq::cli
