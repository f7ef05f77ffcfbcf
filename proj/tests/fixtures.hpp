#pragma once

// Loaders for the bundled fixture files under data/.

#include <cubix/presentation.hpp>

#include <json.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#ifndef CUBIX_DATA_DIR
#error "CUBIX_DATA_DIR must point at the data/ directory"
#endif

namespace cubix::testing {

inline nlohmann::json load_json(const std::filesystem::path& p) {
    std::ifstream in(p);
    if (!in) throw std::runtime_error("cannot open " + p.string());
    return nlohmann::json::parse(in);
}

inline std::filesystem::path data_dir() { return CUBIX_DATA_DIR; }

struct DescentFixture {
    std::string name;
    int n = 0;
    ComplexPresentation complex;
    FunctionOnCubes function;
    bool extends = false;
    std::size_t solution_dim = 0;
};

inline std::vector<DescentFixture> descent_fixtures() {
    std::vector<std::filesystem::path> files;
    for (const auto& e : std::filesystem::directory_iterator(data_dir() / "descent"))
        if (e.path().extension() == ".json") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    std::vector<DescentFixture> out;
    for (const auto& f : files) {
        const auto j = load_json(f);
        DescentFixture fx{j.at("name").get<std::string>(), j.at("n").get<int>(),
                          presentation_from_json(j.at("complex")), function_from_json(j.at("function")),
                          j.at("expect").at("extends").get<bool>(), 0};
        if (fx.extends) fx.solution_dim = j.at("expect").at("solution_dim").get<std::size_t>();
        out.push_back(std::move(fx));
    }
    return out;
}

}  // namespace cubix::testing
