#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "curvcone/sos.hpp"

namespace curvcone {

namespace exit_code {
constexpr int kHolds = 0;
constexpr int kFails = 1;
constexpr int kUndecided = 2;
constexpr int kUsage = 64;
constexpr int kDimension = 65;
constexpr int kNotBianchi = 66;
constexpr int kSizeCap = 69;
constexpr int kIo = 74;
}  // namespace exit_code

/// Runs the command line without the program name; returns the exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Plain-text certificate sidecar; layout in README.
void write_certificate(std::ostream& out, const SosCertificate& cert);

}  // namespace curvcone
