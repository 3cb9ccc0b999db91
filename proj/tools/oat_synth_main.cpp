// Self-contained synthetic objective speaking the trial line protocol:
// reads one JSON request line from stdin, prints one JSON metrics line.
// The spec comes from --spec (a builtin name or a JSON file path) or the
// OAT_SYNTH_SPEC environment variable.

#include "oat/errors.hpp"
#include "oat/synthetic.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <thread>

namespace {

oat::SyntheticSpec load_spec(const std::string& selector) {
    if (std::filesystem::exists(selector)) {
        std::ifstream in(selector);
        nlohmann::json document;
        try {
            in >> document;
        } catch (const nlohmann::json::exception& e) {
            throw oat::Error(oat::ErrorKind::SchemaError, selector + ": " + e.what());
        }
        return oat::synthetic_spec_from_json(document);
    }
    return oat::builtin_spec(selector);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"synthetic tuning objective (line protocol on stdin/stdout)"};
    std::string selector;
    bool list = false;
    app.add_option("--spec", selector,
                   "builtin spec name or JSON spec file (default: $OAT_SYNTH_SPEC, "
                   "then rnn-reference)");
    app.add_flag("--list", list, "list builtin specs and exit");
    CLI11_PARSE(app, argc, argv);

    if (list) {
        for (const auto& name : oat::builtin_spec_names()) {
            std::cout << name << '\n';
        }
        return 0;
    }

    if (selector.empty()) {
        if (const char* env = std::getenv("OAT_SYNTH_SPEC")) {
            selector = env;
        } else {
            selector = "rnn-reference";
        }
    }

    try {
        const oat::SyntheticSpec spec = load_spec(selector);

        std::string line;
        if (!std::getline(std::cin, line) || line.empty()) {
            std::cerr << "oat-synth: expected one JSON request line on stdin\n";
            return 1;
        }
        nlohmann::json request;
        try {
            request = nlohmann::json::parse(line);
        } catch (const nlohmann::json::exception& e) {
            std::cerr << "oat-synth: bad request line: " << e.what() << '\n';
            return 1;
        }
        const oat::Assignment assignment =
            oat::assignment_from_json(request.at("assignment"));
        const std::uint64_t seed = request.value("seed", std::uint64_t{0});

        // Test hook: simulate slow trainings.
        if (const char* sleep_ms = std::getenv("OAT_SYNTH_SLEEP_MS")) {
            std::this_thread::sleep_for(
                std::chrono::milliseconds(std::strtol(sleep_ms, nullptr, 10)));
        }

        const oat::MetricSet metrics = oat::eval_synthetic(spec, assignment, seed);
        std::cout << oat::metric_set_to_json(metrics).dump() << std::endl;
        return 0;
    } catch (const oat::Error& e) {
        std::cerr << "oat-synth: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "oat-synth: " << e.what() << '\n';
        return 1;
    }
}
