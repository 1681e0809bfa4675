// nijcheck: verifies Nijenhuis-operator properties declared in a problem file.
#include <CLI11.hpp>
#include <chrono>
#include <iostream>

#include "nij/report.hpp"

namespace {

struct Options {
  std::string file;
  std::string op;
  std::string format = "human";
  double tol = -1.0;
  std::int64_t seed = -1;
  int samples = -1;
};

nij::ProblemSpec load_with_overrides(const Options& opt) {
  nij::ProblemSpec spec = nij::ProblemSpec::load(opt.file);
  if (opt.tol >= 0.0) spec.torsion_tol = opt.tol;
  if (opt.seed >= 0 || opt.samples > 0) {
    nij::Sampler s = spec.effective_sampler();
    if (opt.seed >= 0) s.seed = static_cast<std::uint64_t>(opt.seed);
    if (opt.samples > 0) s.count = opt.samples;
    spec.sampler = std::move(s);
    spec.has_sampler = true;
  }
  return spec;
}

int emit(const nij::Report& rep, const Options& opt, double wall_ms) {
  std::cout << rep.render(opt.format == "machine");
  if (opt.format != "machine")
    std::cout << "wall time: " << wall_ms << " ms\n";
  return rep.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical verification of Nijenhuis operators on local charts"};
  app.require_subcommand(1);

  Options opt;
  std::string command;
  auto add_common = [&](CLI::App* sub, bool needs_operator) {
    sub->add_option("--file", opt.file, "problem file (JSON, format nijenhuis/1)")
        ->required();
    if (needs_operator)
      sub->add_option("--operator", opt.op, "operator name declared in the file")
          ->required();
    sub->add_option("--tol", opt.tol, "override torsion tolerance");
    sub->add_option("--seed", opt.seed, "override sampler seed");
    sub->add_option("--samples", opt.samples, "override sample count");
    sub->add_option("--format", opt.format, "output format")
        ->check(CLI::IsMember({"human", "machine"}));
    sub->callback([&command, sub] { command = sub->get_name(); });
  };

  add_common(app.add_subcommand("torsion", "Nijenhuis torsion over the sample box"), true);
  add_common(app.add_subcommand("lift", "tangent-lift identities and Nijenhuis lift"), true);
  add_common(app.add_subcommand("project", "projectability along the fibration"), true);
  add_common(app.add_subcommand("liealg", "Lie-algebra torsion and homogeneous criteria"),
             false);
  add_common(app.add_subcommand("verify-all", "every applicable check"), false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) ? nij::kError : nij::kPass;
  }

  try {
    const auto t0 = std::chrono::steady_clock::now();
    const nij::ProblemSpec spec = load_with_overrides(opt);
    nij::Report rep;
    if (command == "torsion") rep = nij::cmd_torsion(spec, opt.op);
    else if (command == "lift") rep = nij::cmd_lift(spec, opt.op);
    else if (command == "project") rep = nij::cmd_project(spec, opt.op);
    else if (command == "liealg") rep = nij::cmd_liealg(spec);
    else rep = nij::cmd_verify_all(spec);
    const double wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
            .count();
    return emit(rep, opt, wall_ms);
  } catch (const nij::ParseError& e) {
    std::cerr << "error: " << e.what() << " at bytes [" << e.span.start << ","
              << e.span.end << ")\n";
    return nij::kError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return nij::kError;
  }
}
