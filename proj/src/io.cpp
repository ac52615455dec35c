#include "geoprop/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace geoprop {

namespace {

using nlohmann::json;

json grid_to_json(const Grid1D& g) { return json{{"x0", g.x0}, {"dx", g.dx}, {"n", g.n}}; }

Grid1D grid_from_json(const json& j) {
    return Grid1D(j.at("x0").get<double>(), j.at("dx").get<double>(), j.at("n").get<int>());
}

json values_to_json(const std::vector<cplx>& v) {
    json arr = json::array();
    for (const auto& z : v) arr.push_back(json::array({z.real(), z.imag()}));
    return arr;
}

std::vector<cplx> values_from_json(const json& arr) {
    std::vector<cplx> v;
    v.reserve(arr.size());
    for (const auto& e : arr) {
        if (!e.is_array() || e.size() != 2) throw IoError("wavefunction JSON: values must be [re, im] pairs");
        v.emplace_back(e[0].get<double>(), e[1].get<double>());
    }
    return v;
}

std::string text_of_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open '" + path + "' for reading");
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open '" + path + "' for writing");
    f << text;
    if (!f) throw IoError("short write to '" + path + "'");
}

void append_double(std::string& out, double v) {
    char buf[40];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    out.append(buf, res.ptr);
}

}  // namespace

std::string to_json_string(const WaveFunction1D& psi) {
    json j{{"hbar", psi.hbar}, {"grid", grid_to_json(psi.grid)}, {"values", values_to_json(psi.values)}};
    return j.dump();
}

std::string to_json_string(const WaveFunction2D& psi) {
    json j{{"hbar", psi.hbar},
           {"grid", grid_to_json(psi.grid_x)},
           {"grid_y", grid_to_json(psi.grid_y)},
           {"values", values_to_json(psi.values)}};
    return j.dump();
}

AnyWave wave_from_json_string(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw IoError(std::string("wavefunction JSON parse error: ") + e.what());
    }
    try {
        AnyWave out;
        double hbar = j.at("hbar").get<double>();
        Grid1D gx = grid_from_json(j.at("grid"));
        std::vector<cplx> vals = values_from_json(j.at("values"));
        if (j.contains("grid_y")) {
            Grid1D gy = grid_from_json(j.at("grid_y"));
            out.w2 = WaveFunction2D(gx, gy, std::move(vals), hbar);
        } else {
            out.w1 = WaveFunction1D(gx, std::move(vals), hbar);
        }
        return out;
    } catch (const json::exception& e) {
        throw IoError(std::string("wavefunction JSON: ") + e.what());
    }
}

void write_wavefunction(const std::string& path, const WaveFunction1D& psi) {
    write_text(path, to_json_string(psi));
}
void write_wavefunction(const std::string& path, const WaveFunction2D& psi) {
    write_text(path, to_json_string(psi));
}
void write_wavefunction(const std::string& path, const AnyWave& w) {
    if (w.is2d())
        write_wavefunction(path, *w.w2);
    else
        write_wavefunction(path, *w.w1);
}

AnyWave read_wavefunction(const std::string& path) { return wave_from_json_string(text_of_file(path)); }

void export_csv(const std::string& path, const AnyWave& w) {
    std::string out;
    if (w.is2d()) {
        const WaveFunction2D& p = *w.w2;
        out += "x,y,re,im,abs2\n";
        for (int ix = 0; ix < p.grid_x.n; ++ix)
            for (int iy = 0; iy < p.grid_y.n; ++iy) {
                cplx z = p.at(ix, iy);
                append_double(out, p.grid_x.x(ix));
                out += ',';
                append_double(out, p.grid_y.x(iy));
                out += ',';
                append_double(out, z.real());
                out += ',';
                append_double(out, z.imag());
                out += ',';
                append_double(out, std::norm(z));
                out += '\n';
            }
    } else {
        const WaveFunction1D& p = *w.w1;
        out += "x,re,im,abs2\n";
        for (int j = 0; j < p.grid.n; ++j) {
            cplx z = p.values[j];
            append_double(out, p.grid.x(j));
            out += ',';
            append_double(out, z.real());
            out += ',';
            append_double(out, z.imag());
            out += ',';
            append_double(out, std::norm(z));
            out += '\n';
        }
    }
    write_text(path, out);
}

}  // namespace geoprop
