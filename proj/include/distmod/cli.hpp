#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace distmod::cli {

/// Everything that determines a run. Serialized (minus the output directory)
/// to run_config.json in every artifact directory; replaying that file
/// reproduces the artifacts byte for byte.
struct RunConfig {
    std::string command;  // detect | sweep | nullmodel | sample

    std::string edges;
    bool directed_input = false;
    bool drop_isolated = false;
    std::string attrs;
    std::string distances;

    std::string distance_source = "hops";  // rows | hops | attrs | file
    std::string metric = "euclidean";      // euclidean | manhattan | minkowski:R | chebyshev | jaccard
    std::string power = "degree";          // degree | uniform | attr:COL | file
    std::string power_file;
    std::string f = "gauss:2";             // gauss:R | rational:R | constant | window | learned
    std::optional<double> sigma;
    std::size_t bins = 10;

    std::uint64_t seed = 0;
    std::size_t passes = 1000;
    std::size_t restarts = 8;
    double min_gain = 1e-12;
    std::string order = "shuffle";  // shuffle | index

    std::size_t grid = 10;
    std::string grid_scale = "log";
    bool independent_seeds = false;

    std::size_t samples = 1000;
    std::string sampler = "poisson";  // poisson | bernoulli

    std::string out;
};

std::string to_json(const RunConfig& cfg);
RunConfig from_json(const std::string& text);

/// Artifact file name (relative to the output directory) -> contents.
using Artifacts = std::map<std::string, std::string>;

/// Runs the configured subcommand and returns its artifacts without touching
/// the filesystem beyond reading inputs. Throws on any error.
Artifacts execute(const RunConfig& cfg, std::ostream& log);

/// Writes all artifacts into `dir`, each through a temporary file and rename.
void write_artifacts(const std::string& dir, const Artifacts& artifacts);

/// Parses argv (without the program name) into a config. The `replay`
/// subcommand loads a stored run_config.json. Returns nullopt when help was
/// printed. Throws CLI errors as ValidationError.
std::optional<RunConfig> parse_args(const std::vector<std::string>& args, std::ostream& out);

/// Full entry point: parse, execute, write. Returns the process exit code;
/// errors go to `err` as lines prefixed `error:`.
int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace distmod::cli
