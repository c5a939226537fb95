#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mtt/harness.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Seeded property checks over generated well-typed terms"};
    std::size_t trials = 1000;
    std::uint64_t seed = 1;
    std::size_t fuel = 10000;
    std::vector<std::string> only;
    const std::vector<std::string> names = {"stability", "conversion", "oracle", "eta",
                                            "renaming",  "pi-inj",     "tarski"};
    app.add_option("--trials", trials, "Instances per property")->check(CLI::PositiveNumber);
    app.add_option("--seed", seed, "Generator seed");
    app.add_option("--fuel", fuel, "Oracle step budget");
    app.add_option("--property", only, "Run only these properties")->check(CLI::IsMember(names));
    CLI11_PARSE(app, argc, argv);

    mtt::AcceptanceConfig cfg;
    cfg.seed = seed;
    cfg.stability_terms = trials;
    cfg.non_pairs = trials;
    cfg.generated_pairs = std::max<std::size_t>(1, trials / 25);
    cfg.oracle_terms = trials;
    cfg.oracle_fuel = fuel;
    cfg.ren_instances = trials;
    cfg.pi_pairs = trials;

    // The η audit feeds on the normal forms produced by the first three.
    mtt::EtaAudit audit;
    const std::vector<std::pair<std::string, std::function<mtt::CriterionResult()>>> props = {
        {"stability", [&] { return mtt::criterion_stability(cfg, audit); }},
        {"conversion", [&] { return mtt::criterion_conversion(cfg, audit); }},
        {"oracle", [&] { return mtt::criterion_oracle(cfg, audit); }},
        {"eta", [&] { return mtt::criterion_eta(audit); }},
        {"renaming", [&] { return mtt::criterion_renaming(cfg); }},
        {"pi-inj", [&] { return mtt::criterion_pi_injectivity(cfg); }},
        {"tarski", [] { return mtt::criterion_weak_tarski(); }},
    };
    auto wanted = [&](const std::string& n) {
        if (only.empty()) return true;
        for (const auto& o : only) {
            if (o == n) return true;
        }
        return false;
    };

    std::cout << "seed " << seed << ", " << trials << " trials" << std::endl;
    int failed = 0;
    for (const auto& [name, run] : props) {
        if (!wanted(name)) continue;
        auto start = std::chrono::steady_clock::now();
        mtt::CriterionResult r;
        try {
            r = run();
        } catch (const std::exception& ex) {
            r = {false, std::string("aborted: ") + ex.what()};
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (!r.pass) ++failed;
        char took[32];
        std::snprintf(took, sizeof took, "%.1fs", secs);
        std::cout << (r.pass ? "ok    " : "FAIL  ") << name << ": " << r.detail << " [" << took << "]" << std::endl;
    }
    return failed ? 1 : 0;
}
