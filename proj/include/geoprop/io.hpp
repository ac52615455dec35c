#pragma once

#include <optional>
#include <string>

#include "geoprop/waves.hpp"

namespace geoprop {

/// A wavefunction file holds either a 1D or a 2D state (2D files carry a
/// "grid_y" member).
struct AnyWave {
    std::optional<WaveFunction1D> w1;
    std::optional<WaveFunction2D> w2;

    bool is2d() const { return w2.has_value(); }
    double hbar() const { return is2d() ? w2->hbar : w1->hbar; }
};

std::string to_json_string(const WaveFunction1D& psi);
std::string to_json_string(const WaveFunction2D& psi);
AnyWave wave_from_json_string(const std::string& text);

void write_wavefunction(const std::string& path, const WaveFunction1D& psi);
void write_wavefunction(const std::string& path, const WaveFunction2D& psi);
void write_wavefunction(const std::string& path, const AnyWave& w);
AnyWave read_wavefunction(const std::string& path);

/// CSV with header x,re,im,abs2 (1D) or x,y,re,im,abs2 (2D); shortest
/// round-trip decimal representation, locale-independent.
void export_csv(const std::string& path, const AnyWave& w);

}  // namespace geoprop
