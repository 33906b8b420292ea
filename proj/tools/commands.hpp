#pragma once

#include <string>
#include <vector>

#include "aswtower/lfun.hpp"
#include "report.hpp"

namespace aswtower::cli {

struct SpecSource {
  std::string path;  // "-" reads stdin
};

CommandResult cmd_formula(const RunContext& ctx, std::uint32_t p, std::uint32_t d, unsigned r, unsigned n);
CommandResult cmd_anumber(const RunContext& ctx, const SpecSource& src, std::optional<unsigned> n, unsigned r_max);
CommandResult cmd_newton(const RunContext& ctx, const SpecSource& src, std::optional<unsigned> n, std::size_t t,
                         unsigned D);
CommandResult cmd_lfunction(const RunContext& ctx, const SpecSource& src, std::optional<unsigned> n, unsigned D,
                            EulerConvention conv, bool inverse_character);
CommandResult cmd_verify(const RunContext& ctx, const SpecSource& src, std::optional<unsigned> n,
                         const std::vector<std::string>& suites);

CommandResult preset_table1(const RunContext& ctx);
CommandResult preset_dp1sequence(const RunContext& ctx);

// spec texts and expected a_2^(3) for the table1 preset
const std::vector<std::pair<std::string, std::uint64_t>>& table1_specs();

}  // namespace aswtower::cli
