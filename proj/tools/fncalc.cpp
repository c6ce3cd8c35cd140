// fncalc: verify the identity suites on a model, or print a generated model.
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "fncalc/harness.hpp"

namespace {

constexpr const char* kSeedVar = "FNCALC_SEED";
constexpr int kUsageError = 3;

std::uint64_t default_seed() {
  if (const char* s = std::getenv(kSeedVar)) {
    try {
      return std::stoull(s);
    } catch (const std::exception&) {
      throw fncalc::Error(std::string(kSeedVar) + " is not an unsigned integer: " + s);
    }
  }
  return 1;
}

// "kind,n,degree,seed"; degree and seed are optional.
fncalc::ModelSpec parse_generate(const std::string& arg) {
  std::vector<std::string> parts;
  std::stringstream ss(arg);
  for (std::string item; std::getline(ss, item, ',');) parts.push_back(item);
  if (parts.empty() || parts.size() > 4) throw fncalc::Error("--generate expects kind,n[,degree[,seed]]");
  auto number = [&](std::size_t i, std::uint64_t fallback) -> std::uint64_t {
    if (i >= parts.size()) return fallback;
    try {
      return std::stoull(parts[i]);
    } catch (const std::exception&) {
      throw fncalc::Error("--generate: not a number: " + parts[i]);
    }
  };
  return fncalc::generate(fncalc::parse_model_kind(parts[0]), number(1, 1), number(2, 1), number(3, 42));
}

void write_out(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw fncalc::Error("cannot write " + path);
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact verification of Frolicher-Nijenhuis identities on polynomial models"};
  app.require_subcommand(1);

  std::string model_path, generate_arg, backend = "exact", format = "text", out_path;
  std::vector<std::string> suites{"all"};
  std::size_t samples = 100;
  std::uint64_t seed = 0;

  auto* verify = app.add_subcommand("verify", "run identity suites on a model");
  auto* source = verify->add_option("--model", model_path, "model JSON file");
  auto* gen = verify->add_option("--generate", generate_arg, "built-in model kind,n,degree,seed");
  source->excludes(gen);
  verify->add_option("--suites", suites, "suite ids or 'all'")->delimiter(',');
  verify->add_option("--backend", backend, "exact | points")->check(CLI::IsMember({"exact", "points"}));
  verify->add_option("--samples", samples, "sample points for the points backend");
  auto* seed_opt = verify->add_option("--seed", seed, std::string("sampling seed (default: $") + kSeedVar + " or 1)");
  verify->add_option("--format", format, "text | json")->check(CLI::IsMember({"text", "json"}));
  verify->add_option("--out", out_path, "write the report here instead of stdout");

  std::string gen_kind;
  std::size_t gen_n = 1, gen_degree = 1;
  std::uint64_t gen_seed = 42;
  auto* generate = app.add_subcommand("generate", "print a built-in model as JSON");
  generate->add_option("kind", gen_kind, "flat | q1 | r2 | random | r2b | q1-sheared | corrupted")->required();
  generate->add_option("n", gen_n, "half-dimension");
  generate->add_option("degree", gen_degree, "coefficient degree in x");
  generate->add_option("seed", gen_seed, "generator seed");
  generate->add_option("--out", out_path, "write the model here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsageError;
  }

  try {
    if (*generate) {
      write_out(out_path, fncalc::model_to_json(
                              fncalc::generate(fncalc::parse_model_kind(gen_kind), gen_n, gen_degree, gen_seed)));
      return 0;
    }
    if (model_path.empty() == generate_arg.empty()) {
      std::cerr << "verify: exactly one of --model and --generate is required\n";
      return kUsageError;
    }
    const fncalc::ModelSpec spec = model_path.empty() ? parse_generate(generate_arg) : fncalc::load_model(model_path);
    fncalc::RunOptions options;
    options.suites = suites;
    options.backend = fncalc::parse_backend(backend);
    options.samples = samples;
    options.seed = seed_opt->count() ? seed : default_seed();
    const fncalc::Report report = fncalc::run_suites(spec, options);
    write_out(out_path, format == "json" ? fncalc::emit_json(report) : fncalc::emit_text(report));
    return fncalc::exit_code(report);
  } catch (const fncalc::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageError;
  }
}
