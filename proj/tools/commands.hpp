#ifndef PSYS_TOOLS_COMMANDS_HPP
#define PSYS_TOOLS_COMMANDS_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace psys::cli {

// Exit statuses shared by every command.
enum Exit : int {
    kOk = 0,
    kUsage = 1,       // bad flags, unreadable or unparseable input
    kInvalid = 2,     // the system fails validation
    kBudget = 3,      // a budget ran out before a verdict
    kFailed = 4,      // a property or verification check failed
};

struct Streams {
    std::ostream& out;
    std::ostream& err;
    bool pretty = false;
};

int cmd_validate(const std::string& path, Streams io);

struct RunArgs {
    std::uint64_t seed = 0;
    std::uint64_t max_steps = 10'000;
    std::string policy = "enumerate-uniform";
    std::optional<std::string> accept;  // input multiset
    std::optional<int> region;          // input region, defaults to the output region
};
int cmd_run(const std::string& path, const RunArgs& args, Streams io);

struct ExploreArgs {
    std::uint64_t max_depth = 64;
    std::uint64_t max_objects = 64;
    std::uint64_t max_branches = 10'000;
    std::uint64_t max_configs = 1'000'000;
    unsigned jobs = 1;
};
int cmd_explore(const std::string& path, const ExploreArgs& args, Streams io);

int cmd_profile(const std::string& path, Streams io);
int cmd_classify(const std::string& path, Streams io);
/// Writes the compiled system to `out_path`, or to standard output when empty.
int cmd_compile_rm(const std::string& path, const std::string& out_path, Streams io);
int cmd_rm_verify(const std::string& path, std::uint64_t bound, Streams io);

/// Full command line, as used by main().
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace psys::cli

#endif  // PSYS_TOOLS_COMMANDS_HPP
