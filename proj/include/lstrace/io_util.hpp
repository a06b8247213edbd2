// Copyright 2026 The lstrace Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "lstrace/json_io.hpp"
#include "lstrace/pipeline.hpp"

namespace lstrace {

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::filesystem::path& path, const std::string& content) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
}

/// Loads a recipes file; subroutine names resolve to
/// <dir>/<subroutine_dir>/<name>.qasm relative to the file.
inline BenchConfig load_recipes(const std::filesystem::path& recipes_path) {
    BenchConfig cfg;
    json j = json::parse(read_file(recipes_path));
    const auto base =
        recipes_path.parent_path() / j.value("subroutine_dir", std::string("subroutines"));
    auto source = [&](const std::string& name) {
        return SubroutineSource{name, read_file(base / (name + ".qasm"))};
    };
    for (const auto& name : j.value("library", json::array()))
        cfg.library.push_back(source(name.get<std::string>()));
    for (const auto& jr : j.at("recipes")) {
        Recipe r;
        r.name = jr.at("name").get<std::string>();
        for (const auto& s : jr.at("subroutines")) r.sources.push_back(source(s.get<std::string>()));
        cfg.recipes.push_back(std::move(r));
    }
    return cfg;
}

}  // namespace lstrace
