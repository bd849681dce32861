#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "ptsusy/jobs.hpp"

namespace {

constexpr int kPass = 0;
constexpr int kValidation = 2;
constexpr int kConstruction = 3;
constexpr int kVerification = 4;

template <typename F>
int guarded(F&& body) {
    try {
        return body();
    } catch (const ptsusy::ValidationError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return kValidation;
    } catch (const ptsusy::ConstructionError& e) {
        std::cerr << "construction error: " << e.what() << "\n";
        return kConstruction;
    } catch (const ptsusy::Error& e) {
        std::cerr << "construction error: " << e.what() << "\n";
        return kConstruction;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Darboux partners of the trigonometric Poschl-Teller potential"};
    app.require_subcommand(1);

    std::string config;
    std::string out;
    int levels = 0;
    int grid = 0;

    auto* gen = app.add_subcommand("generate", "write potential samples and the predicted spectrum");
    gen->add_option("--config", config, "JSON job config")->required();
    gen->add_option("--out", out, "output directory")->required();

    auto* ver = app.add_subcommand("verify", "check the predicted spectrum with the finite-difference oracle");
    ver->add_option("--config", config, "JSON job config")->required();
    ver->add_option("--out", out, "output directory")->required();
    ver->add_option("--levels", levels, "number of oracle levels")->check(CLI::PositiveNumber);
    ver->add_option("--grid", grid, "oracle grid points")->check(CLI::PositiveNumber);

    auto* fig = app.add_subcommand("figures", "write the datasets behind the four figures");
    fig->add_option("--out", out, "output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kPass : kValidation;
    }

    if (*gen) {
        return guarded([&] {
            ptsusy::jobs::generate(ptsusy::jobs::load_config(config), out);
            std::cout << "wrote " << out << "\n";
            return kPass;
        });
    }
    if (*ver) {
        return guarded([&] {
            ptsusy::jobs::JobConfig cfg = ptsusy::jobs::load_config(config);
            if (levels > 0)
                cfg.oracle.levels = levels;
            if (grid > 0)
                cfg.oracle.grid_points = grid;
            cfg.oracle.validate();
            const auto outcome = ptsusy::jobs::verify_job(cfg, out);
            std::cout << (outcome.pass ? "pass" : "fail") << ": " << outcome.report.matched.size() << " matched, "
                      << outcome.report.unmatched_predicted.size() << " unmatched predicted, "
                      << outcome.report.unmatched_oracle.size() << " unmatched oracle\n";
            return outcome.pass ? kPass : kVerification;
        });
    }
    return guarded([&] {
        ptsusy::jobs::figures(out);
        std::cout << "wrote " << out << "\n";
        return kPass;
    });
}
