#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "mtt/harness.hpp"

#ifndef MTT_CORPUS_DIR
#define MTT_CORPUS_DIR "tests/corpus"
#endif

int main(int argc, char** argv) {
    CLI::App app{"Acceptance criteria for the kernel"};
    mtt::AcceptanceConfig cfg;
    cfg.corpus_dir = MTT_CORPUS_DIR;
    app.add_option("--seed", cfg.seed, "Generator seed");
    app.add_option("--corpus", cfg.corpus_dir, "Directory of .mtt files");
    CLI11_PARSE(app, argc, argv);

    mtt::EtaAudit audit;
    struct Row {
        int id;
        const char* name;
        std::function<mtt::CriterionResult()> run;
    };
    const Row rows[] = {
        {1, "normal-form stability", [&] { return mtt::criterion_stability(cfg, audit); }},
        {2, "conversion on pairs and non-pairs", [&] { return mtt::criterion_conversion(cfg, audit); }},
        {3, "differential oracle", [&] { return mtt::criterion_oracle(cfg, audit); }},
        {4, "eta-longness", [&] { return mtt::criterion_eta(audit); }},
        {5, "renaming equations", [&] { return mtt::criterion_renaming(cfg); }},
        {6, "Pi injectivity", [&] { return mtt::criterion_pi_injectivity(cfg); }},
        {7, "weak Tarski universe", [&] { return mtt::criterion_weak_tarski(); }},
        {8, "corpus typechecks", [&] { return mtt::criterion_corpus(cfg); }},
    };
    int failed = 0;
    for (const auto& row : rows) {
        auto start = std::chrono::steady_clock::now();
        mtt::CriterionResult r;
        try {
            r = row.run();
        } catch (const std::exception& ex) {
            r = {false, std::string("aborted: ") + ex.what()};
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (!r.pass) ++failed;
        char took[32];
        std::snprintf(took, sizeof took, "%.1fs", secs);
        std::cout << (r.pass ? "PASS" : "FAIL") << "  criterion " << row.id << " (" << row.name << "): " << r.detail
                  << " [" << took << "]" << std::endl;
    }
    std::cout << (failed ? std::to_string(failed) + " criteria failed" : "all criteria pass") << std::endl;
    return failed ? 1 : 0;
}
