#pragma once

#include <cmath>
#include <string>
#include <string_view>
#include <vector>

#include "rwlab/error.hpp"

namespace rwlab {

/// Microparameters of the +/-dx, dt hopping walk. V, D and tau are always
/// derived from (dx, dt), never stored.
class Params {
public:
    Params() = default;
    Params(double dx, double dt) : dx_(dx), dt_(dt)
    {
        if (!(dx > 0.0) || !(dt > 0.0) || !std::isfinite(dx) || !std::isfinite(dt))
            throw DomainError("Params: dx and dt must be positive and finite");
    }

    double dx() const noexcept { return dx_; }
    double dt() const noexcept { return dt_; }
    double velocity() const noexcept { return dx_ / dt_; }
    double diffusivity() const noexcept { return dx_ * dx_ / (2.0 * dt_); }
    double relaxation_time() const noexcept { return dt_ / 2.0; }

    friend bool operator==(const Params&, const Params&) = default;

private:
    double dx_ = 1.0;
    double dt_ = 1.0;
};

enum class Model { RW, G, TE };

enum class Quantity { Density, Gradient, Flux };

inline std::string_view to_string(Model m)
{
    switch (m) {
    case Model::RW: return "rw";
    case Model::G: return "g";
    case Model::TE: return "te";
    }
    return "?";
}

inline std::string_view to_string(Quantity q)
{
    switch (q) {
    case Quantity::Density: return "density";
    case Quantity::Gradient: return "gradient";
    case Quantity::Flux: return "flux";
    }
    return "?";
}

inline Model parse_model(std::string_view s)
{
    if (s == "rw" || s == "RW") return Model::RW;
    if (s == "g" || s == "G") return Model::G;
    if (s == "te" || s == "TE") return Model::TE;
    throw std::invalid_argument("unknown model '" + std::string(s) + "' (expected rw, g or te)");
}

inline Quantity parse_quantity(std::string_view s)
{
    if (s == "density") return Quantity::Density;
    if (s == "gradient") return Quantity::Gradient;
    if (s == "flux") return Quantity::Flux;
    throw std::invalid_argument("unknown kind '" + std::string(s) + "' (expected density, gradient or flux)");
}

/// Values of one quantity on a spatial grid at a fixed time.
struct DensityProfile {
    Model model = Model::G;
    Quantity kind = Quantity::Density;
    double t = 0.0;
    std::vector<double> xs;
    std::vector<double> values;
};

}  // namespace rwlab
