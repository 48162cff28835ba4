#include "putvar/presets.hpp"

#include <array>
#include <string>

#include "putvar/errors.hpp"

namespace putvar {

namespace {

void table_standard(RunConfig&) {}

// The worked examples (K = 100, h = 0.231; K = 105, h = 0.071293) are
// reproduced digit for digit with a 30-day option maturity and a 35-day
// liquidation date on an Actual/365 basis.
void worked_example(RunConfig& c) {
    c.days_per_year = 365;
    c.table.tau_days.standard = 30;
    c.table.gap_days.standard = 5;
}

void worked_example_relaxed(RunConfig& c) {
    worked_example(c);
    c.relax_budget = true;
}

void worked_example_k105(RunConfig& c) {
    worked_example(c);
    c.plan.strike = 105.0;
    c.plan.ratio = 0.071293;
    c.plan.var_level = 6.5666;
}

constexpr std::array kPresets = {
    Preset{"standard", "standard parameter values (tau = 35 d, T - tau = 5 d, Act/365)",
           &table_standard},
    Preset{"example", "worked-example horizon: tau = 30 d, T = 35 d, Act/365", &worked_example},
    Preset{"example-relaxed", "worked-example horizon with the budget constraint relaxed to h P <= C",
           &worked_example_relaxed},
    Preset{"example-k105", "worked-example horizon, plan K = 105, h = 0.071293, VaR 6.5666",
           &worked_example_k105},
};

} // namespace

std::span<const Preset> presets() { return kPresets; }

const Preset& find_preset(std::string_view name) {
    for (const Preset& p : kPresets) {
        if (p.name == name) return p;
    }
    std::string known;
    for (const Preset& p : kPresets) known += (known.empty() ? "" : ", ") + std::string(p.name);
    throw DomainError("unknown preset '" + std::string(name) + "' (known: " + known + ")");
}

} // namespace putvar
