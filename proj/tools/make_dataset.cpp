// Emits the deterministic benchmark stand-in datasets as raw CSV.
#include <cstdio>

#include <CLI11.hpp>

#include "ppchurn/csv.hpp"
#include "ppchurn/simulate.hpp"

int main(int argc, char** argv) {
    CLI::App app{"deterministic churn dataset generator"};
    std::string kind = "telco";
    long rows = 7043;
    std::uint64_t seed = 1;
    std::string out = "dataset.csv";
    app.add_option("--kind", kind, "telco | highdim | toy")
        ->check(CLI::IsMember({"telco", "highdim", "toy"}));
    app.add_option("--rows", rows, "number of rows")->check(CLI::PositiveNumber);
    app.add_option("--seed", seed, "generator seed");
    app.add_option("--out", out, "output CSV path")->required();
    CLI11_PARSE(app, argc, argv);

    try {
        if (kind == "telco") {
            ppchurn::write_raw_csv(ppchurn::simulate_telco(rows, seed), out);
        } else if (kind == "highdim") {
            ppchurn::write_raw_csv(ppchurn::simulate_highdim(rows, seed), out);
        } else {
            const ppchurn::Dataset d = ppchurn::simulate_gauss_mixture(rows, seed);
            ppchurn::save_dataset(d, out, out + ".schema.json", seed);
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
    return 0;
}
