#pragma once

// CSV/JSON emission and state serialization. All numeric CSV fields are
// written as full-precision scientific notation so regression diffs are
// bit-level; JSON goes through nlohmann with round-trip-exact doubles and
// alphabetically ordered keys, so identical runs produce identical bytes.

#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "modqm/wavefunction.hpp"

namespace modqm {

using json = nlohmann::json;

inline std::string fmt_sci(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17e", v);
    return buf;
}

class CsvWriter {
  public:
    CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header)
        : out_(path, std::ios::binary) {
        if (!out_) throw std::runtime_error("cannot open " + path.string());
        for (std::size_t i = 0; i < header.size(); ++i) {
            if (i) out_ << ',';
            out_ << header[i];
        }
        out_ << '\n';
    }

    void row(const std::vector<double>& values) {
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (i) out_ << ',';
            out_ << fmt_sci(values[i]);
        }
        out_ << '\n';
    }

  private:
    std::ofstream out_;
};

inline void write_json(const std::filesystem::path& path, const json& j) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path.string());
    out << j.dump(2) << '\n';
}

inline void ensure_dir(const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw std::runtime_error("cannot create directory " + dir.string());
}

// state as (x, Re psi, Im psi) rows
inline void save_state_csv(const std::filesystem::path& path, const WaveFunction& psi) {
    CsvWriter csv(path, {"x", "re_psi", "im_psi"});
    for (std::size_t j = 0; j < psi.size(); ++j)
        csv.row({psi.grid.x(j), psi.amp[j].real(), psi.amp[j].imag()});
}

inline WaveFunction load_state_csv(const std::filesystem::path& path, double hbar = 1.0) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::string line;
    std::vector<double> xs;
    std::vector<cplx> amps;
    bool header = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (header) {
            header = false;
            continue;
        }
        std::istringstream ss(line);
        std::string cell;
        double vals[3] = {0, 0, 0};
        for (int c = 0; c < 3 && std::getline(ss, cell, ','); ++c) vals[c] = std::stod(cell);
        xs.push_back(vals[0]);
        amps.emplace_back(vals[1], vals[2]);
    }
    if (xs.size() < 8 || xs.size() % 2 != 0)
        throw std::runtime_error("state csv: need an even number of samples >= 8");
    const double dx = xs[1] - xs[0];
    if (!(dx > 0.0)) throw std::runtime_error("state csv: x must be increasing");
    for (std::size_t j = 1; j < xs.size(); ++j)
        if (std::abs(xs[j] - xs[0] - static_cast<double>(j) * dx) > 1e-9 * dx)
            throw std::runtime_error("state csv: non-uniform x spacing");
    Grid g = make_grid(xs.size(), xs[0], xs[0] + dx * static_cast<double>(xs.size()), hbar);
    return WaveFunction{g, std::move(amps)};
}

}  // namespace modqm
