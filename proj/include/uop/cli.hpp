#ifndef UOP_CLI_HPP
#define UOP_CLI_HPP

#include "uop/config.hpp"

#include <string>
#include <vector>

namespace uop::cli {

struct CommandResult {
    std::vector<std::string> outputs; // files written, in write order
};

// Each command reads everything it needs from the config; flag-style
// overrides are applied by the caller before invoking. On error the partial
// outputs are removed and the exception propagates.
CommandResult run_build_dict(const PipelineConfig& config);
CommandResult run_extract(const PipelineConfig& config);
CommandResult run_analyze(const PipelineConfig& config);
CommandResult run_compare(const PipelineConfig& config);

} // namespace uop::cli

#endif
