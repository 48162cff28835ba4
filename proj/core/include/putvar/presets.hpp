#pragma once

#include <span>
#include <string_view>

#include "putvar/config.hpp"

namespace putvar {

/// Named scenario applied on top of a RunConfig.
struct Preset {
    std::string_view name;
    std::string_view description;
    void (*apply)(RunConfig&);
};

std::span<const Preset> presets();

/// Throws DomainError listing the known names when `name` is unknown.
const Preset& find_preset(std::string_view name);

} // namespace putvar
