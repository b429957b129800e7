#pragma once

#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "acstk/deform.hpp"
#include "acstk/json_io.hpp"

namespace acstk::cli {

enum ExitCode : int {
    kOk = 0,
    kValidation = 1,
    kNumerical = 2,
    kSearchFailed = 3,
    kUsage = 64,
};

enum class Format { human, json };

/// Runs one command line (without the program name). Human text or JSON goes
/// to `out`; diagnostics and usage text go to `err`.
int execute(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Writes a report either through the human renderer or as stable JSON.
void emit_report(const Json& report, Format format, std::ostream& out,
                 const std::function<void(std::ostream&)>& human);

/// CSV with header `t,rank,sigma_k`; skipped grid points carry rank -1 and an
/// empty sigma_k field. Throws ValidationError if the path cannot be written.
void write_profile_csv(const RankProfile& profile, const std::string& path);

}  // namespace acstk::cli
